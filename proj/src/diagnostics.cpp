#include "ctl/bourgain.hpp"
#include "ctl/errors.hpp"
#include "ctl/influence.hpp"

#include <algorithm>
#include <cmath>

namespace ctl {

namespace {

// log2 of sum_{k=1}^{min(cap, m)} C(m, k).
double log2_active_count(unsigned m, unsigned cap) {
  double count = 0.0;
  double binom = 1.0;
  for (unsigned k = 1; k <= std::min(cap, m); ++k) {
    binom = binom * (m - k + 1) / k;
    count += binom;
  }
  return count > 0.0 ? std::log2(count) : -INFINITY;
}

}  // namespace

DiagnosticsReport proof_diagnostics(const BooleanFunction& f, const BiasedMeasure& measure, unsigned size_cap,
                                    double epsilon, double m_threshold) {
  if (!(epsilon > 0.0) || !(epsilon < m_threshold)) throw DomainError("need 0 < epsilon < M");
  if (size_cap < 1) throw DomainError("size cap B must be >= 1");
  const unsigned n = f.arity();
  if (n > kMaxDiagnosticsArity) throw CapacityError("proof diagnostics enumerate 4^n terms; n <= 14 supported");

  const Spectrum spectrum = transform(f, measure);
  const auto& coeff = spectrum.coefficients();
  const std::size_t size = std::size_t{1} << n;
  const double p = measure.p_value();
  const double q = measure.q_value();
  const double log2_bound = size_cap * std::log2(m_threshold);

  std::vector<double> weight_mass(n + 1);
  for (unsigned k = 0; k <= n; ++k) weight_mass[k] = std::pow(p, k) * std::pow(q, n - k);

  std::vector<std::uint8_t> admissible(size);
  for (std::size_t s = 0; s < size; ++s) admissible[s] = popcount(static_cast<Mask>(s)) <= size_cap;

  DiagnosticsReport r;
  r.epsilon = epsilon;
  r.m_threshold = m_threshold;
  r.size_cap = size_cap;
  r.coordinates.resize(n);
  r.counting_ok = true;

  std::vector<double> sq(size);
  std::vector<double> h_sq(n);
  for (std::size_t raw = 0; raw < size; ++raw) {
    const auto x = static_cast<Mask>(raw);
    const double w = weight_mass[popcount(x)];

    // Squared components f^{=J}(x)^2 for |J| <= B; prod r(x_i)^2 built incrementally.
    sq[0] = 1.0;
    for (std::size_t j = 1; j < size; ++j) {
      const std::size_t low = j & (~j + 1);
      const double r = (x & low) ? spectrum.r1() : spectrum.r0();
      sq[j] = sq[j ^ low] * r * r;
    }
    double h2 = 0.0;
    double level = 0.0;
    double max_sq = 0.0;
    std::fill(h_sq.begin(), h_sq.end(), 0.0);
    for (std::size_t j = 0; j < size; ++j) {
      if (!admissible[j]) {
        sq[j] = 0.0;
        continue;
      }
      sq[j] *= coeff[j] * coeff[j];
      h2 += sq[j];
      if (j == 0) continue;
      level += sq[j];
      max_sq = std::max(max_sq, sq[j]);
      for (Mask rest = static_cast<Mask>(j); rest != 0; rest &= rest - 1) h_sq[std::countr_zero(rest)] += sq[j];
    }

    Mask active = 0;
    for (unsigned i = 0; i < n; ++i) {
      if (std::sqrt(h_sq[i]) > epsilon) active |= Mask{1} << i;
    }
    const unsigned eta_sum = popcount(active);
    const bool xi = eta_sum < m_threshold;

    double term2 = 0.0;
    double h_sum = 0.0;
    for (unsigned i = 0; i < n; ++i) {
      h_sum += h_sq[i];
      if (!(active & (Mask{1} << i))) term2 += h_sq[i];
    }
    double term3 = 0.0;
    if (xi) {
      for (Mask s = active; s != 0; s = (s - 1) & active) term3 += sq[s];
    }

    r.term1 += w * h2 * (xi ? 0.0 : 1.0);
    r.term2 += w * term2;
    r.term3 += w * term3;
    r.level_mass += w * level;
    r.expected_eta_sum += w * eta_sum;
    r.expected_one_minus_xi += w * (xi ? 0.0 : 1.0);
    r.expected_h_sum += w * h_sum;
    r.h_norm4 += w * h2 * h2;
    r.max_component_sq += w * max_sq;

    const double log2_count = xi ? log2_active_count(eta_sum, size_cap) : -INFINITY;
    if (std::isfinite(log2_count)) {
      const double count = std::exp2(log2_count);
      r.weighted_max_count += w * max_sq * count;
      r.max_active_count = std::max(r.max_active_count, count);
      if (!(log2_count < log2_bound)) r.counting_ok = false;
    }

    for (unsigned i = 0; i < n; ++i) {
      auto& c = r.coordinates[i];
      const Mask bit = Mask{1} << i;
      c.h_second_moment += w * h_sq[i];
      c.h_q_moment += w * std::pow(h_sq[i], 2.0 / 3.0);
      c.eta_mean += (active & bit) ? w : 0.0;
      const double avg = p * f(x | bit) + q * f(x & ~bit);
      const double lap = f(x) - avg;
      c.laplacian_q_moment += w * std::pow(std::fabs(lap), 4.0 / 3.0);
      c.influence += w * lap * lap;
    }
  }

  r.h_norm4 = std::pow(r.h_norm4, 0.25);
  r.total_influence = spectral_total_influence(spectrum);
  r.counting_bound_log2 = log2_bound;

  const double markov_count = r.expected_eta_sum / m_threshold;
  const double markov_square = r.expected_h_sum / (m_threshold * epsilon * epsilon);
  r.split_ok = r.level_mass <= r.term1 + r.term2 + r.term3 + 1e-9;
  r.markov_count_ok = r.expected_one_minus_xi <= markov_count + 1e-12;
  r.markov_square_ok = markov_count <= markov_square + 1e-12;
  r.markov_influence_ok = r.expected_h_sum <= r.total_influence + 1e-9;
  r.cauchy_schwarz_ok = r.term1 <= r.h_norm4 * r.h_norm4 * std::sqrt(r.expected_one_minus_xi) + 1e-9;
  double holder = 0.0;
  for (const auto& c : r.coordinates) holder += c.h_q_moment;
  r.holder_ok = r.term2 <= std::pow(epsilon, 2.0 / 3.0) * holder + 1e-9;
  r.term3_ok = r.term3 <= r.weighted_max_count + 1e-9;
  return r;
}

}  // namespace ctl
