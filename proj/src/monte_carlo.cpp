#include "ctl/monte_carlo.hpp"

#include "ctl/errors.hpp"
#include "ctl/parallel.hpp"

#include <cmath>
#include <utility>

namespace ctl {

FunctionOracle::FunctionOracle(unsigned n, Evaluator evaluate, bool monotone)
    : n_(n), evaluate_(std::move(evaluate)), monotone_(monotone) {
  if (n < 1) throw DomainError("oracle needs n >= 1");
  if (!evaluate_) throw DomainError("oracle needs an evaluation procedure");
}

Mask to_mask(const Point& x) {
  if (x.size() > 32) throw CapacityError("point too long for a mask");
  Mask m = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j]) m |= Mask{1} << j;
  }
  return m;
}

FunctionOracle table_oracle(const BooleanFunction& f) {
  return FunctionOracle(
      f.arity(), [f](const Point& x) { return f(to_mask(x)); }, is_monotone(f));
}

Estimate summarize(std::span<const double> values, std::uint64_t seed, std::uint64_t undecided) {
  Estimate e;
  e.samples = values.size();
  e.seed = seed;
  e.undecided = undecided;
  if (values.empty()) return e;
  double sum = 0.0;
  for (double v : values) sum += v;
  e.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double squares = 0.0;
    for (double v : values) squares += (v - e.mean) * (v - e.mean);
    const double sd = std::sqrt(squares / static_cast<double>(values.size() - 1));
    e.stderr_ = sd / std::sqrt(static_cast<double>(values.size()));
  }
  e.ci_low = e.mean - 1.96 * e.stderr_;
  e.ci_high = e.mean + 1.96 * e.stderr_;
  return e;
}

void sample_point(const BiasedMeasure& measure, unsigned n, Xorshift64Star& stream, Point& out) {
  out.resize(n);
  const double p = measure.p_value();
  for (unsigned j = 0; j < n; ++j) out[j] = stream.bernoulli(p) ? 1 : 0;
}

Point sample_point(const BiasedMeasure& measure, unsigned n, Xorshift64Star& stream) {
  Point x;
  sample_point(measure, n, stream, x);
  return x;
}

namespace {

void check_samples(const SamplingOptions& options) {
  if (options.samples < 2) throw DomainError("need at least 2 samples");
}

// values[k] = per_sample(x_k, k); each worker keeps its own scratch point.
template <class PerSample>
std::vector<double> sample_values(const BiasedMeasure& measure, unsigned n, const SamplingOptions& options,
                                  PerSample&& per_sample) {
  std::vector<double> values(options.samples);
  parallel_for(options.samples, options.threads, [&](std::size_t begin, std::size_t end) {
    Point x;
    for (std::size_t k = begin; k < end; ++k) {
      Xorshift64Star stream(sample_stream_seed(options.seed, k));
      sample_point(measure, n, stream, x);
      values[k] = per_sample(x, k);
    }
  });
  return values;
}

}  // namespace

Estimate estimate_expectation(const FunctionOracle& f, const BiasedMeasure& measure, const SamplingOptions& options) {
  check_samples(options);
  const auto values =
      sample_values(measure, f.arity(), options, [&](const Point& x, std::size_t) { return double(f(x)); });
  return summarize(values, options.seed);
}

Estimate estimate_influence_pivotal(const FunctionOracle& f, const BiasedMeasure& measure, unsigned i,
                                    const SamplingOptions& options) {
  check_samples(options);
  if (i < 1 || i > f.arity()) throw DomainError("coordinate out of range");
  const double scale = 4.0 * measure.p_value() * measure.q_value();
  const auto values = sample_values(measure, f.arity(), options, [&](const Point& point, std::size_t) {
    Point x = point;
    x[i - 1] = 1;
    const int hi = f(x);
    x[i - 1] = 0;
    const int lo = f(x);
    return hi != lo ? scale : 0.0;
  });
  return summarize(values, options.seed);
}

namespace {

enum class WitnessOutcome { kFound, kNone, kTruncated };

// Size-ascending search for S subseteq support with |S| <= max_size and f(1_S) = +1.
WitnessOutcome find_witness(const FunctionOracle& f, const std::vector<unsigned>& support, unsigned max_size,
                            std::uint64_t budget) {
  const unsigned m = static_cast<unsigned>(support.size());
  const unsigned top = std::min(max_size, m);
  Point indicator(f.arity(), 0);
  std::uint64_t evaluations = 0;
  std::vector<unsigned> pick;
  for (unsigned k = 0; k <= top; ++k) {
    pick.resize(k);
    for (unsigned j = 0; j < k; ++j) pick[j] = j;
    while (true) {
      if (evaluations++ >= budget) return WitnessOutcome::kTruncated;
      for (unsigned j = 0; j < k; ++j) indicator[support[pick[j]]] = 1;
      const bool hit = f(indicator) > 0;
      for (unsigned j = 0; j < k; ++j) indicator[support[pick[j]]] = 0;
      if (hit) return WitnessOutcome::kFound;
      // Next k-combination of 0..m-1 in lexicographic order.
      int j = static_cast<int>(k) - 1;
      while (j >= 0 && pick[j] == m - k + static_cast<unsigned>(j)) --j;
      if (j < 0) break;
      ++pick[j];
      for (unsigned l = static_cast<unsigned>(j) + 1; l < k; ++l) pick[l] = pick[l - 1] + 1;
    }
  }
  return WitnessOutcome::kNone;
}

}  // namespace

Estimate estimate_witness_probability(const FunctionOracle& f, const BiasedMeasure& measure, unsigned max_size,
                                      const SamplingOptions& options, unsigned support_cap) {
  check_samples(options);
  if (!f.monotone()) throw DomainError("witness estimation requires an oracle flagged monotone");
  std::vector<std::uint8_t> truncated(options.samples, 0);
  const auto values = sample_values(measure, f.arity(), options, [&](const Point& x, std::size_t k) {
    // Monotone: f(1_S) <= f(x) for S within the support, so f(x) = -1 rules out witnesses.
    if (f(x) < 0) return 0.0;
    std::vector<unsigned> support;
    for (unsigned j = 0; j < x.size(); ++j) {
      if (x[j]) support.push_back(j);
    }
    const std::uint64_t budget = support.size() <= support_cap ? ~std::uint64_t{0} : kTruncatedWitnessBudget;
    switch (find_witness(f, support, max_size, budget)) {
      case WitnessOutcome::kFound:
        return 1.0;
      case WitnessOutcome::kTruncated:
        truncated[k] = 1;
        return 0.0;
      case WitnessOutcome::kNone:
        break;
    }
    return 0.0;
  });
  std::uint64_t undecided = 0;
  for (auto t : truncated) undecided += t;
  return summarize(values, options.seed, undecided);
}

}  // namespace ctl
