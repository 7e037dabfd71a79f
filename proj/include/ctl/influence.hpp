#pragma once

// Expectation and Laplacian operators, influences, and total influence on the
// p-biased cube. Exact routes work from the definitions
//   E_i f = p f(x^{i<-1}) + q f(x^{i<-0}),  L_i f = f - E_i f,
//   Inf_i[f] = E[(L_i f)^2] = <f, L_i f>;
// spectral routes sum fhat(S)^2 over S containing i.

#include "ctl/decomposition.hpp"
#include "ctl/rational.hpp"
#include "ctl/space.hpp"

#include <vector>

namespace ctl {

/// Table of E_i f over all 2^n points (constant in coordinate i). i is 1-based.
std::vector<Rational> expectation_operator(const BooleanFunction& f, unsigned i, const BiasedMeasure& measure);

/// Table of L_i f = f - E_i f.
std::vector<Rational> laplacian(const BooleanFunction& f, unsigned i, const BiasedMeasure& measure);

/// E[(L_i f)^2].
Rational influence(const BooleanFunction& f, unsigned i, const BiasedMeasure& measure);

/// <f, L_i f>.
Rational influence_inner(const BooleanFunction& f, unsigned i, const BiasedMeasure& measure);

/// P[f(x^{i<-1}) != f(x^{i<-0})].
Rational pivotal_probability(const BooleanFunction& f, unsigned i, const BiasedMeasure& measure);

Rational total_influence(const BooleanFunction& f, const BiasedMeasure& measure);

/// sum_{S contains i} fhat(S)^2.
double spectral_influence(const Spectrum& spectrum, unsigned i);

/// sum_S |S| fhat(S)^2.
double spectral_total_influence(const Spectrum& spectrum);

struct InfluenceReport {
  std::vector<Rational> influence;  // exact, index i-1
  std::vector<double> spectral;
  std::vector<Rational> pivotal;
  Rational total;
  double spectral_total = 0.0;
};

InfluenceReport influence_report(const BooleanFunction& f, const BiasedMeasure& measure);

}  // namespace ctl
