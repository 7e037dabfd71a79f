#include "ctl/bourgain.hpp"

#include "ctl/errors.hpp"
#include "ctl/influence.hpp"
#include "ctl/lattice.hpp"
#include "ctl/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace ctl {

unsigned default_size_cap(const Rational& total_influence) {
  const Integer cap = ceil(Rational(total_influence * 10));
  return std::max(1U, static_cast<unsigned>(cap.get_ui()));
}

DefaultParameters default_parameters(const Rational& total_influence) {
  if (sgn(total_influence) <= 0) throw DomainError("default parameters need a positive total influence");
  DefaultParameters d;
  d.size_cap = default_size_cap(total_influence);
  const auto c = static_cast<int>(ceil(total_influence).get_si());
  d.epsilon = pow2(-c - 2);
  d.m_threshold = ceil(Rational(4 / d.epsilon));
  return d;
}

LevelMass level_mass(const Spectrum& spectrum, unsigned size_cap) {
  if (size_cap < 1) throw DomainError("size cap B must be >= 1");
  LevelMass out;
  const auto& c = spectrum.coefficients();
  double weighted = 0.0;
  for (std::size_t s = 1; s < c.size(); ++s) {
    const unsigned size = popcount(static_cast<Mask>(s));
    const double sq = c[s] * c[s];
    weighted += size * sq;
    if (size <= size_cap) {
      out.level_mass += sq;
    } else {
      out.tail += sq;
    }
  }
  out.tail_bound = weighted / size_cap;
  out.tail_ok = out.tail <= out.tail_bound + 1e-9;
  return out;
}

Rational junta_max_expectation(const BooleanFunction& f, const BiasedMeasure& measure, unsigned size_cap) {
  return junta_max_lattice(f, measure, size_cap);
}

Estimate junta_max_expectation_mc(const Spectrum& spectrum, unsigned size_cap, const SamplingOptions& options) {
  if (options.samples < 2) throw DomainError("need at least 2 samples");
  if (size_cap < 1) throw DomainError("size cap B must be >= 1");
  const unsigned n = spectrum.arity();
  const std::size_t size = std::size_t{1} << n;
  std::vector<Mask> admissible;
  for (std::size_t s = 1; s < size; ++s) {
    if (popcount(static_cast<Mask>(s)) <= size_cap) admissible.push_back(static_cast<Mask>(s));
  }

  std::vector<double> values(options.samples);
  parallel_for(options.samples, options.threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> scratch;
    Point x;
    for (std::size_t k = begin; k < end; ++k) {
      Xorshift64Star stream(sample_stream_seed(options.seed, k));
      sample_point(spectrum.measure(), n, stream, x);
      all_averaged_at_point(spectrum, to_mask(x), size_cap, scratch);
      double best = 0.0;
      for (Mask s : admissible) best = std::max(best, std::fabs(scratch[s]));
      values[k] = best;
    }
  });
  return summarize(values, options.seed);
}

TheoremReport theorem_report(const BooleanFunction& f, const BiasedMeasure& measure, std::optional<unsigned> size_cap,
                             const SamplingOptions& options, bool force_sampling) {
  TheoremReport report;
  report.total_influence = total_influence(f, measure);
  report.size_cap = size_cap ? *size_cap : default_size_cap(report.total_influence);
  report.balanced_defect = abs(expectation(f, measure));
  if (!force_sampling && f.arity() <= kMaxLatticeArity) {
    try {
      report.lhs = junta_max_expectation(f, measure, report.size_cap);
      return report;
    } catch (const CapacityError&) {
      // numerators too wide for an exact lattice at this n; sample instead
    }
  }
  report.lhs_estimate = junta_max_expectation_mc(transform(f, measure), report.size_cap, options);
  return report;
}

namespace {

// Points x that contain a witness: upward closure of {S : |S| <= B, f(1_S) = +1}.
std::vector<std::int64_t> witness_counts_by_weight(const BooleanFunction& f, unsigned size_cap) {
  const unsigned n = f.arity();
  const std::size_t size = f.size();
  std::vector<std::uint8_t> covered(size, 0);
  for (std::size_t s = 0; s < size; ++s) {
    const auto mask = static_cast<Mask>(s);
    covered[s] = popcount(mask) <= size_cap && f.is_true(mask);
  }
  for (unsigned i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t s = 0; s < size; ++s) {
      if (s & bit) covered[s] |= covered[s ^ bit];
    }
  }
  std::vector<std::int64_t> counts(n + 1, 0);
  for (std::size_t s = 0; s < size; ++s) {
    if (covered[s]) ++counts[popcount(static_cast<Mask>(s))];
  }
  return counts;
}

}  // namespace

Rational witness_probability(const BooleanFunction& f, const BiasedMeasure& measure, unsigned size_cap) {
  require_monotone(f, "witness probability");
  const auto counts = witness_counts_by_weight(f, size_cap);
  const auto masses = measure.masses_by_weight(f.arity());
  Rational total = 0;
  for (unsigned k = 0; k < counts.size(); ++k) {
    if (counts[k] != 0) total += Rational(Integer(static_cast<long>(counts[k]))) * masses[k];
  }
  return total;
}

Polynomial witness_polynomial(const BooleanFunction& f, unsigned size_cap) {
  require_monotone(f, "witness probability");
  return weight_polynomial(witness_counts_by_weight(f, size_cap));
}

Rational conditional_boost(const BooleanFunction& f, const BiasedMeasure& measure, Mask subset) {
  const unsigned n = f.arity();
  if ((subset & ~full_mask(n)) != 0) throw DomainError("subset has coordinates beyond n");
  // E[f 1{x_S = 1}] / P[x_S = 1], summing over the points above 1_S.
  const Mask complement = full_mask(n) & ~subset;
  std::vector<std::int64_t> counts(n + 1, 0);
  for (Mask sub = complement;; sub = (sub - 1) & complement) {
    counts[popcount(subset | sub)] += f(subset | sub);
    if (sub == 0) break;
  }
  const auto masses = measure.masses_by_weight(n);
  Rational joint = 0;
  for (unsigned k = 0; k <= n; ++k) {
    if (counts[k] != 0) joint += Rational(Integer(static_cast<long>(counts[k]))) * masses[k];
  }
  return joint / power(measure.p(), popcount(subset));
}

std::vector<Booster> booster_search(const BooleanFunction& f, const BiasedMeasure& measure, unsigned size_cap,
                                    const Rational& delta_prime) {
  require_monotone(f, "booster search");
  const unsigned n = f.arity();
  // Work is sum over |S| <= B of 2^(n - |S|).
  double work = 0.0;
  double binom = 1.0;
  for (unsigned k = 0; k <= std::min(size_cap, n); ++k) {
    work += binom * std::ldexp(1.0, static_cast<int>(n - k));
    binom = binom * (n - k) / (k + 1);
  }
  if (work > 0x1.0p34) throw CapacityError("booster search over this many subsets is beyond the exact path; lower B");

  std::vector<Booster> out;
  for (std::uint64_t s = 0; s < f.size(); ++s) {
    const auto mask = static_cast<Mask>(s);
    if (popcount(mask) > size_cap || f.is_true(mask)) continue;
    Rational boost = averaged_direct(f, measure, mask, mask);
    if (boost > delta_prime) out.push_back({mask, std::move(boost)});
  }
  std::stable_sort(out.begin(), out.end(), [](const Booster& a, const Booster& b) {
    if (a.boost != b.boost) return a.boost > b.boost;
    return a.subset < b.subset;
  });
  return out;
}

CorollaryReport corollary_check(const BooleanFunction& f, const BiasedMeasure& measure, const CorollaryOptions& options) {
  require_monotone(f, "the corollary check");
  CorollaryReport report;
  report.expectation = expectation(f, measure);
  if (abs(report.expectation) == 1) {
    throw DomainError("constant function: E[f] = " + to_string(report.expectation) + " fails the balance hypothesis");
  }
  report.total_influence = total_influence(f, measure);
  report.size_cap = options.size_cap ? *options.size_cap : default_size_cap(report.total_influence);
  if (options.delta_prime) {
    report.delta_prime = *options.delta_prime;
  } else {
    report.delta_prime = junta_max_expectation(f, measure, report.size_cap) / 2;
    report.delta_prime_defaulted = true;
  }
  report.balanced = abs(report.expectation) <= from_double(options.balance_tolerance);
  report.small_p = measure.p() < report.delta_prime / (20 * report.total_influence);
  report.hypotheses_hold = report.balanced && report.small_p;

  report.witness_probability = witness_probability(f, measure, report.size_cap);
  report.alternative1 = report.witness_probability > report.delta_prime;
  report.boosters = booster_search(f, measure, report.size_cap, report.delta_prime);
  report.alternative2 = !report.boosters.empty();
  report.at_least_one = report.alternative1 || report.alternative2;
  return report;
}

MonotoneMargin monotone_lower_bound_check(const BooleanFunction& f, const BiasedMeasure& measure, unsigned size_cap) {
  require_monotone(f, "the monotone lower-bound check");
  const LatticeMinimum m = monotone_margin_lattice(f, measure, size_cap);
  return {m.value, m.subset, m.point};
}

}  // namespace ctl
