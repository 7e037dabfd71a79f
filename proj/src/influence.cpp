#include "ctl/influence.hpp"

#include "ctl/errors.hpp"

#include <array>

namespace ctl {

namespace {

void check_coordinate(const BooleanFunction& f, unsigned i) {
  if (i < 1 || i > f.arity()) {
    throw DomainError("coordinate " + std::to_string(i) + " outside 1.." + std::to_string(f.arity()));
  }
}

// Pattern of the pair (f(x^{i<-0}), f(x^{i<-1})): 2 * [f0 = +1] + [f1 = +1].
int pattern_of(int f0, int f1) { return 2 * (f0 > 0) + (f1 > 0); }
int pattern_f0(int pattern) { return (pattern & 2) ? 1 : -1; }
int pattern_f1(int pattern) { return (pattern & 1) ? 1 : -1; }

using PatternCounts = std::vector<std::array<std::int64_t, 4>>;

// counts[k][pattern] over points with x_i = 0 and k ones elsewhere.
PatternCounts pair_pattern_counts(const BooleanFunction& f, unsigned i) {
  const unsigned n = f.arity();
  const Mask bit = Mask{1} << (i - 1);
  PatternCounts counts(n, {0, 0, 0, 0});
  const std::uint64_t size = f.size();
  for (std::uint64_t raw = 0; raw < size; ++raw) {
    const auto x = static_cast<Mask>(raw);
    if (x & bit) continue;
    ++counts[popcount(x)][pattern_of(f(x), f(x | bit))];
  }
  return counts;
}

struct PairValues {
  Rational at0;  // value at x^{i<-0}
  Rational at1;  // value at x^{i<-1}
};

// E_i f for a pattern.
Rational averaged(int pattern, const BiasedMeasure& m) {
  return m.p() * pattern_f1(pattern) + m.q() * pattern_f0(pattern);
}

PairValues laplacian_pair(int pattern, const BiasedMeasure& m) {
  const Rational avg = averaged(pattern, m);
  return {pattern_f0(pattern) - avg, pattern_f1(pattern) - avg};
}

// E[g] where g(x) depends on x only through (x_i, pattern at x).
template <class PairFn>
Rational pattern_expectation(const PatternCounts& counts, const BiasedMeasure& m, PairFn&& values) {
  const unsigned others = static_cast<unsigned>(counts.size()) - 1;
  const auto masses = m.masses_by_weight(others);
  std::array<Rational, 4> per_pattern;
  for (int pattern = 0; pattern < 4; ++pattern) {
    const PairValues v = values(pattern);
    per_pattern[pattern] = m.q() * v.at0 + m.p() * v.at1;
  }
  Rational sum = 0;
  for (unsigned k = 0; k <= others; ++k) {
    Rational class_sum = 0;
    for (int pattern = 0; pattern < 4; ++pattern) {
      if (counts[k][pattern] != 0) class_sum += Rational(Integer(static_cast<long>(counts[k][pattern]))) * per_pattern[pattern];
    }
    if (sgn(class_sum) != 0) sum += class_sum * masses[k];
  }
  return sum;
}

std::vector<Rational> pattern_table(const BooleanFunction& f, unsigned i, const std::array<PairValues, 4>& values) {
  const Mask bit = Mask{1} << (i - 1);
  std::vector<Rational> table(f.size());
  for (std::uint64_t raw = 0; raw < f.size(); ++raw) {
    const auto x = static_cast<Mask>(raw);
    const int pattern = pattern_of(f(x & ~bit), f(x | bit));
    table[raw] = (x & bit) ? values[pattern].at1 : values[pattern].at0;
  }
  return table;
}

}  // namespace

std::vector<Rational> expectation_operator(const BooleanFunction& f, unsigned i, const BiasedMeasure& measure) {
  check_coordinate(f, i);
  std::array<PairValues, 4> values;
  for (int pattern = 0; pattern < 4; ++pattern) {
    const Rational avg = averaged(pattern, measure);
    values[pattern] = {avg, avg};
  }
  return pattern_table(f, i, values);
}

std::vector<Rational> laplacian(const BooleanFunction& f, unsigned i, const BiasedMeasure& measure) {
  check_coordinate(f, i);
  std::array<PairValues, 4> values;
  for (int pattern = 0; pattern < 4; ++pattern) values[pattern] = laplacian_pair(pattern, measure);
  return pattern_table(f, i, values);
}

Rational influence(const BooleanFunction& f, unsigned i, const BiasedMeasure& measure) {
  check_coordinate(f, i);
  return pattern_expectation(pair_pattern_counts(f, i), measure, [&](int pattern) {
    const PairValues l = laplacian_pair(pattern, measure);
    return PairValues{l.at0 * l.at0, l.at1 * l.at1};
  });
}

Rational influence_inner(const BooleanFunction& f, unsigned i, const BiasedMeasure& measure) {
  check_coordinate(f, i);
  return pattern_expectation(pair_pattern_counts(f, i), measure, [&](int pattern) {
    const PairValues l = laplacian_pair(pattern, measure);
    return PairValues{pattern_f0(pattern) * l.at0, pattern_f1(pattern) * l.at1};
  });
}

Rational pivotal_probability(const BooleanFunction& f, unsigned i, const BiasedMeasure& measure) {
  check_coordinate(f, i);
  return pattern_expectation(pair_pattern_counts(f, i), measure, [](int pattern) {
    const Rational pivotal = pattern_f0(pattern) != pattern_f1(pattern) ? 1 : 0;
    return PairValues{pivotal, pivotal};
  });
}

Rational total_influence(const BooleanFunction& f, const BiasedMeasure& measure) {
  Rational total = 0;
  for (unsigned i = 1; i <= f.arity(); ++i) total += influence(f, i, measure);
  return total;
}

double spectral_influence(const Spectrum& spectrum, unsigned i) {
  if (i < 1 || i > spectrum.arity()) throw DomainError("coordinate out of range");
  const Mask bit = Mask{1} << (i - 1);
  const auto& c = spectrum.coefficients();
  double sum = 0.0;
  for (std::size_t s = 0; s < c.size(); ++s) {
    if (s & bit) sum += c[s] * c[s];
  }
  return sum;
}

double spectral_total_influence(const Spectrum& spectrum) {
  const auto& c = spectrum.coefficients();
  double sum = 0.0;
  for (std::size_t s = 0; s < c.size(); ++s) sum += popcount(static_cast<Mask>(s)) * c[s] * c[s];
  return sum;
}

InfluenceReport influence_report(const BooleanFunction& f, const BiasedMeasure& measure) {
  const Spectrum spectrum = transform(f, measure);
  InfluenceReport report;
  report.total = 0;
  for (unsigned i = 1; i <= f.arity(); ++i) {
    report.influence.push_back(influence(f, i, measure));
    report.spectral.push_back(spectral_influence(spectrum, i));
    report.pivotal.push_back(pivotal_probability(f, i, measure));
    report.total += report.influence.back();
  }
  report.spectral_total = spectral_total_influence(spectrum);
  return report;
}

}  // namespace ctl
