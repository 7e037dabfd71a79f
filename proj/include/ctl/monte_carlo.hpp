#pragma once

// Sampling estimators against evaluation oracles, for functions beyond the
// reach of truth tables. Every sample k draws from its own stream
// (see rng.hpp), and per-sample values are reduced in index order, so an
// estimate depends only on (seed, samples, p) and never on the worker count.

#include "ctl/rng.hpp"
#include "ctl/space.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace ctl {

using Point = std::vector<std::uint8_t>;

class FunctionOracle {
 public:
  /// Must be deterministic and safe to call concurrently.
  using Evaluator = std::function<int(const Point&)>;

  FunctionOracle(unsigned n, Evaluator evaluate, bool monotone = false);

  unsigned arity() const { return n_; }
  bool monotone() const { return monotone_; }
  int operator()(const Point& x) const { return evaluate_(x); }

 private:
  unsigned n_;
  Evaluator evaluate_;
  bool monotone_;
};

/// Oracle view of a truth table; the monotone flag is computed.
FunctionOracle table_oracle(const BooleanFunction& f);

Mask to_mask(const Point& x);

struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;  // sample standard deviation / sqrt(samples)
  double ci_low = 0.0;   // mean - 1.96 stderr
  double ci_high = 0.0;  // mean + 1.96 stderr
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t undecided = 0;

  bool contains(double value) const { return ci_low <= value && value <= ci_high; }
};

/// Mean, standard error and 95% normal interval of per-sample values, summed in order.
Estimate summarize(std::span<const double> values, std::uint64_t seed, std::uint64_t undecided = 0);

struct SamplingOptions {
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

/// i.i.d. coordinates, each 1 with probability p.
void sample_point(const BiasedMeasure& measure, unsigned n, Xorshift64Star& stream, Point& out);
Point sample_point(const BiasedMeasure& measure, unsigned n, Xorshift64Star& stream);

Estimate estimate_expectation(const FunctionOracle& f, const BiasedMeasure& measure, const SamplingOptions& options);

/// 4 p q * P[f(x^{i<-1}) != f(x^{i<-0})]; i is 1-based.
Estimate estimate_influence_pivotal(const FunctionOracle& f, const BiasedMeasure& measure, unsigned i,
                                    const SamplingOptions& options);

inline constexpr unsigned kDefaultSupportCap = 24;
/// Evaluation budget per sample once |support(x)| exceeds the cap.
inline constexpr std::uint64_t kTruncatedWitnessBudget = std::uint64_t{1} << 20;

/// Fraction of samples with a witness S subseteq support(x), |S| <= max_size,
/// f(1_S) = +1. Samples whose search hit the budget count as "no witness" and
/// are reported in `undecided`. Requires the oracle's monotone flag.
Estimate estimate_witness_probability(const FunctionOracle& f, const BiasedMeasure& measure, unsigned max_size,
                                      const SamplingOptions& options, unsigned support_cap = kDefaultSupportCap);

}  // namespace ctl
