#pragma once

// Orthogonal decomposition f = sum_S f^{=S} on the p-biased cube, in the basis
//   r(0) = -sqrt(p/q),  r(1) = sqrt(q/p),
// with coefficients fhat(S) = E[f(x) prod_{i in S} r(x_i)].
//
// Two families of routes are provided and cross-checked by the test suite:
//   * spectral (floating point): transform(), eval_component(), averaged_spectral()
//   * direct (exact rational):   averaged_direct(), component_by_mobius()

#include "ctl/rational.hpp"
#include "ctl/space.hpp"

#include <cstdint>
#include <vector>

namespace ctl {

/// r(bit) for the p-biased basis.
double basis_value(const BiasedMeasure& measure, int bit);

class Spectrum {
 public:
  Spectrum(unsigned n, BiasedMeasure measure, std::vector<double> coefficients);

  unsigned arity() const { return n_; }
  const BiasedMeasure& measure() const { return measure_; }
  double r0() const { return r0_; }
  double r1() const { return r1_; }

  double coefficient(Mask subset) const { return coefficients_[subset]; }
  const std::vector<double>& coefficients() const { return coefficients_; }

  /// Sum of fhat(S)^2 over all S.
  double squared_norm() const;

 private:
  unsigned n_;
  BiasedMeasure measure_;
  double r0_;
  double r1_;
  std::vector<double> coefficients_;
};

/// Butterfly over coordinates 1..n in ascending order, O(n 2^n).
Spectrum transform(const BooleanFunction& f, const BiasedMeasure& measure);

/// fhat(S) * prod_{i in S} r(x_i).
double eval_component(const Spectrum& spectrum, Mask subset, Mask x);

/// f^{subseteq S}(x): average over the coordinates outside S with x_S fixed.
Rational averaged_direct(const BooleanFunction& f, const BiasedMeasure& measure, Mask subset, Mask x);

/// sum_{J subseteq S} f^{=J}(x).
double averaged_spectral(const Spectrum& spectrum, Mask subset, Mask x);

/// f^{=S}(x) = sum_{J subseteq S} (-1)^{|S|-|J|} f^{subseteq J}(x), exact.
Rational component_by_mobius(const BooleanFunction& f, const BiasedMeasure& measure, Mask subset, Mask x);

/// f^{subseteq S}(x) for every S via a zeta transform of the per-point
/// components g_J = fhat(J) prod_{i in J} r(x_i), restricted to |J| <= max_size.
/// Entries with |S| > max_size are NaN.
std::vector<double> all_averaged_at_point(const Spectrum& spectrum, Mask x, unsigned max_size);

/// In-place variant used by the sampling paths; `scratch` is resized to 2^n and
/// entries with |S| > max_size are left unspecified.
void all_averaged_at_point(const Spectrum& spectrum, Mask x, unsigned max_size, std::vector<double>& scratch);

/// Sorted 1-based coordinate list.
std::vector<unsigned> subset_coordinates(Mask subset);

// ---------------------------------------------------------------------------
// General product spaces. f^{=S} is reachable only through inclusion-exclusion.

/// Table over all points of f^{subseteq S} (a function of x_S only).
std::vector<Rational> general_averaged_table(const GeneralFunction& g, Mask subset);

/// Table over all points of f^{=S}.
std::vector<Rational> general_component_table(const GeneralFunction& g, Mask subset);

/// E_i applied to a table over the space (i is 1-based).
std::vector<Rational> general_average_out(const GeneralProductSpace& space, const std::vector<Rational>& table,
                                          unsigned i);

/// <a, b> = E[a b] under pi^n.
Rational general_inner_product(const GeneralProductSpace& space, const std::vector<Rational>& a,
                               const std::vector<Rational>& b);

}  // namespace ctl
