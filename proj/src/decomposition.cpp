#include "ctl/decomposition.hpp"

#include "ctl/errors.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace ctl {

namespace {

void check_subset(unsigned n, Mask subset) {
  if ((subset & ~full_mask(n)) != 0) throw DomainError("subset has coordinates beyond n = " + std::to_string(n));
}

}  // namespace

double basis_value(const BiasedMeasure& measure, int bit) {
  const double p = measure.p_value();
  const double q = measure.q_value();
  return bit ? std::sqrt(q / p) : -std::sqrt(p / q);
}

Spectrum::Spectrum(unsigned n, BiasedMeasure measure, std::vector<double> coefficients)
    : n_(n),
      measure_(std::move(measure)),
      r0_(basis_value(measure_, 0)),
      r1_(basis_value(measure_, 1)),
      coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != (std::size_t{1} << n)) throw DomainError("spectrum needs 2^n coefficients");
}

double Spectrum::squared_norm() const {
  double total = 0.0;
  for (double c : coefficients_) total += c * c;
  return total;
}

Spectrum transform(const BooleanFunction& f, const BiasedMeasure& measure) {
  const unsigned n = f.arity();
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> a(size);
  for (std::size_t x = 0; x < size; ++x) a[x] = f(static_cast<Mask>(x));

  const double p = measure.p_value();
  const double q = measure.q_value();
  const double s = std::sqrt(p * q);
  // After the pass for coordinate i, slot bit i = 0 holds E over x_i and slot
  // bit i = 1 holds E[x_i-part * r(x_i)] = sqrt(pq) (f1 - f0).
  for (unsigned i = 0; i < n; ++i) {
    const std::size_t half = std::size_t{1} << i;
    for (std::size_t block = 0; block < size; block += 2 * half) {
      for (std::size_t j = block; j < block + half; ++j) {
        const double lo = a[j];
        const double hi = a[j + half];
        a[j] = q * lo + p * hi;
        a[j + half] = s * (hi - lo);
      }
    }
  }
  return Spectrum(n, measure, std::move(a));
}

double eval_component(const Spectrum& spectrum, Mask subset, Mask x) {
  check_subset(spectrum.arity(), subset);
  double value = spectrum.coefficient(subset);
  for (Mask rest = subset; rest != 0; rest &= rest - 1) {
    const Mask bit = rest & (~rest + 1);
    value *= (x & bit) ? spectrum.r1() : spectrum.r0();
  }
  return value;
}

Rational averaged_direct(const BooleanFunction& f, const BiasedMeasure& measure, Mask subset, Mask x) {
  const unsigned n = f.arity();
  check_subset(n, subset);
  const Mask complement = full_mask(n) & ~subset;
  const Mask fixed = x & subset;
  const unsigned m = popcount(complement);

  std::vector<std::int64_t> counts(m + 1, 0);
  for (Mask sub = complement;; sub = (sub - 1) & complement) {
    counts[popcount(sub)] += f(fixed | sub);
    if (sub == 0) break;
  }
  const auto masses = measure.masses_by_weight(m);
  Rational sum = 0;
  for (unsigned k = 0; k <= m; ++k) {
    if (counts[k] != 0) sum += Rational(Integer(static_cast<long>(counts[k]))) * masses[k];
  }
  return sum;
}

double averaged_spectral(const Spectrum& spectrum, Mask subset, Mask x) {
  check_subset(spectrum.arity(), subset);
  double sum = 0.0;
  for (Mask j = subset;; j = (j - 1) & subset) {
    sum += eval_component(spectrum, j, x);
    if (j == 0) break;
  }
  return sum;
}

Rational component_by_mobius(const BooleanFunction& f, const BiasedMeasure& measure, Mask subset, Mask x) {
  check_subset(f.arity(), subset);
  const unsigned size = popcount(subset);
  Rational sum = 0;
  for (Mask j = subset;; j = (j - 1) & subset) {
    const Rational term = averaged_direct(f, measure, j, x);
    if ((size - popcount(j)) % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
    if (j == 0) break;
  }
  return sum;
}

void all_averaged_at_point(const Spectrum& spectrum, Mask x, unsigned max_size, std::vector<double>& g) {
  const unsigned n = spectrum.arity();
  const std::size_t size = std::size_t{1} << n;
  g.resize(size);
  const auto& c = spectrum.coefficients();

  // Products of r(x_i) over J, built from J minus its lowest bit.
  g[0] = 1.0;
  for (std::size_t j = 1; j < size; ++j) {
    const std::size_t low = j & (~j + 1);
    g[j] = g[j ^ low] * ((x & low) ? spectrum.r1() : spectrum.r0());
  }
  if (max_size >= n) {
    for (std::size_t j = 0; j < size; ++j) g[j] *= c[j];
  } else {
    for (std::size_t j = 0; j < size; ++j) {
      g[j] = popcount(static_cast<Mask>(j)) <= max_size ? g[j] * c[j] : 0.0;
    }
  }

  // Zeta transform: g[S] <- sum_{J subseteq S} g[J].
  for (unsigned i = 0; i < n; ++i) {
    const std::size_t half = std::size_t{1} << i;
    for (std::size_t block = 0; block < size; block += 2 * half) {
      for (std::size_t j = block; j < block + half; ++j) g[j + half] += g[j];
    }
  }
}

std::vector<double> all_averaged_at_point(const Spectrum& spectrum, Mask x, unsigned max_size) {
  std::vector<double> out;
  all_averaged_at_point(spectrum, x, max_size, out);
  if (max_size < spectrum.arity()) {
    for (std::size_t s = 0; s < out.size(); ++s) {
      if (popcount(static_cast<Mask>(s)) > max_size) out[s] = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return out;
}

std::vector<unsigned> subset_coordinates(Mask subset) {
  std::vector<unsigned> coords;
  for (unsigned i = 0; i < 32; ++i) {
    if (subset & (Mask{1} << i)) coords.push_back(i + 1);
  }
  return coords;
}

}  // namespace ctl
