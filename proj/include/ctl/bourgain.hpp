#pragma once

// Coarse-threshold analysis of a Boolean function at a fixed p:
//   * the junta-max expectation E_x[max_{0<|S|<=B} |f^{subseteq S}(x)|], exact
//     and sampled;
//   * small witnesses (sets S with 1_S <= x and f(1_S) = +1) and boosters
//     (sets S' with f(1_{S'}) = -1 and E[f | x_{S'} = 1] large);
//   * the monotone lower bound f^{subseteq S}(x) >= E[f] - 2p|S|;
//   * the internal quantities of the lower-bound argument (h_i, h, eta_i, xi
//     and the three-term split) as numeric diagnostics.

#include "ctl/decomposition.hpp"
#include "ctl/monte_carlo.hpp"
#include "ctl/rational.hpp"
#include "ctl/space.hpp"
#include "ctl/threshold.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ctl {

/// Default size cap ceil(10 C).
unsigned default_size_cap(const Rational& total_influence);

struct DefaultParameters {
  unsigned size_cap = 0;     // B = ceil(10 C)
  Rational epsilon;          // 2^(-ceil(C) - 2)
  Integer m_threshold;       // M = ceil(4 / epsilon)
};

/// Throws DomainError for C <= 0. delta' is filled in by corollary_check from
/// the measured junta-max expectation.
DefaultParameters default_parameters(const Rational& total_influence);

struct LevelMass {
  double level_mass = 0.0;  // sum_{0<|S|<=B} fhat(S)^2
  double tail = 0.0;        // sum_{|S|>B} fhat(S)^2
  double tail_bound = 0.0;  // I[f] / B from the spectrum
  bool tail_ok = false;     // tail <= tail_bound + 1e-9
};

LevelMass level_mass(const Spectrum& spectrum, unsigned size_cap);

/// Exact junta-max expectation; n <= 16 (CapacityError beyond, see lattice.hpp).
Rational junta_max_expectation(const BooleanFunction& f, const BiasedMeasure& measure, unsigned size_cap);

/// Sampled junta-max expectation using the per-point zeta transform of the spectrum.
Estimate junta_max_expectation_mc(const Spectrum& spectrum, unsigned size_cap, const SamplingOptions& options);

struct TheoremReport {
  Rational total_influence;  // C_used
  unsigned size_cap = 0;     // B
  std::optional<Rational> lhs;
  std::optional<Estimate> lhs_estimate;
  Rational balanced_defect;  // |E[f]|
};

/// Exact when n <= 16, otherwise sampled with `options`.
TheoremReport theorem_report(const BooleanFunction& f, const BiasedMeasure& measure, std::optional<unsigned> size_cap,
                             const SamplingOptions& options, bool force_sampling = false);

/// P_x[exists S subseteq support(x), |S| <= B, f(1_S) = +1], exact. Monotone f only.
Rational witness_probability(const BooleanFunction& f, const BiasedMeasure& measure, unsigned size_cap);

/// The same probability as an exact polynomial in p.
Polynomial witness_polynomial(const BooleanFunction& f, unsigned size_cap);

/// E[f | x_S = (1,...,1)].
Rational conditional_boost(const BooleanFunction& f, const BiasedMeasure& measure, Mask subset);

struct Booster {
  Mask subset = 0;
  Rational boost;
};

/// Every S' with |S'| <= B, f(1_{S'}) = -1 and boost > delta', sorted by boost
/// descending then by subset encoding. Monotone f only.
std::vector<Booster> booster_search(const BooleanFunction& f, const BiasedMeasure& measure, unsigned size_cap,
                                    const Rational& delta_prime);

inline constexpr double kBalanceTolerance = 1e-9;

struct CorollaryOptions {
  std::optional<unsigned> size_cap;       // default ceil(10 C)
  std::optional<Rational> delta_prime;    // default junta-max / 2
  double balance_tolerance = kBalanceTolerance;
};

struct CorollaryReport {
  Rational total_influence;
  unsigned size_cap = 0;
  Rational delta_prime;
  bool delta_prime_defaulted = false;
  Rational expectation;
  bool balanced = false;          // |E[f]| <= tolerance
  bool small_p = false;           // p < delta' / (20 C)
  bool hypotheses_hold = false;
  Rational witness_probability;   // alternative 1
  bool alternative1 = false;      // witness_probability > delta'
  std::vector<Booster> boosters;  // alternative 2 candidates
  bool alternative2 = false;
  bool at_least_one = false;
};

/// Monotone, non-constant f only.
CorollaryReport corollary_check(const BooleanFunction& f, const BiasedMeasure& measure,
                                const CorollaryOptions& options = {});

struct MonotoneMargin {
  Rational min_margin;  // min of f^{subseteq S}(x) - (E[f] - 2p|S|)
  Mask subset = 0;
  Mask point = 0;
};

MonotoneMargin monotone_lower_bound_check(const BooleanFunction& f, const BiasedMeasure& measure, unsigned size_cap);

inline constexpr unsigned kMaxDiagnosticsArity = 14;

struct CoordinateDiagnostics {
  double h_second_moment = 0.0;   // E[h_i^2]
  double h_q_moment = 0.0;        // E[h_i^{4/3}]
  double laplacian_q_moment = 0.0;  // E[|L_i f|^{4/3}]
  double influence = 0.0;         // E[(L_i f)^2]
  double eta_mean = 0.0;          // P[h_i > epsilon]
};

struct DiagnosticsReport {
  double epsilon = 0.0;
  double m_threshold = 0.0;
  unsigned size_cap = 0;
  double q = 4.0 / 3.0;
  double q_prime = 4.0;

  std::vector<CoordinateDiagnostics> coordinates;
  double expected_eta_sum = 0.0;       // E[sum_i eta_i]
  double expected_one_minus_xi = 0.0;  // E[1 - xi]
  double expected_h_sum = 0.0;         // E[sum_i h_i^2]
  double total_influence = 0.0;        // sum_S |S| fhat(S)^2
  double term1 = 0.0;                  // E[h^2 (1 - xi)]
  double term2 = 0.0;                  // E[sum_i h_i^2 (1 - eta_i)]
  double term3 = 0.0;                  // E[sum_{0<|S|<=B} f^{=S}^2 prod eta_i xi]
  double level_mass = 0.0;
  double h_norm4 = 0.0;                // E[h^4]^{1/4}
  double max_component_sq = 0.0;       // E[max_{0<|S|<=B} f^{=S}(x)^2]
  double weighted_max_count = 0.0;     // E[max f^{=S}^2 * #{S : prod eta_i xi = 1}]
  double max_active_count = 0.0;       // max_x #{0<|S|<=B : prod eta_i xi = 1}
  double counting_bound_log2 = 0.0;    // B log2 M

  // Inequalities of the argument, each evaluated numerically.
  bool split_ok = false;          // level_mass <= term1 + term2 + term3 + 1e-9
  bool markov_count_ok = false;   // E[1-xi] <= E[sum eta]/M
  bool markov_square_ok = false;  // E[sum eta]/M <= E[sum h_i^2]/(M eps^2)
  bool markov_influence_ok = false;  // E[sum h_i^2] <= I[f]
  bool counting_ok = false;       // pointwise count < M^B
  bool cauchy_schwarz_ok = false; // term1 <= ||h||_4^2 sqrt(E[1-xi])
  bool holder_ok = false;         // term2 <= eps^{2/3} sum_i E[h_i^{4/3}]
  bool term3_ok = false;          // term3 <= E[max f^{=S}^2 * count]
};

/// Throws DomainError unless 0 < epsilon < M and B >= 1; CapacityError for n > 14.
DiagnosticsReport proof_diagnostics(const BooleanFunction& f, const BiasedMeasure& measure, unsigned size_cap,
                                    double epsilon, double m_threshold);

}  // namespace ctl
