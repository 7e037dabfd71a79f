#include "ctl/space.hpp"

#include "ctl/errors.hpp"

#include <numeric>
#include <utility>

namespace ctl {

BiasedMeasure::BiasedMeasure(Rational p) : p_(std::move(p)) {
  p_.canonicalize();
  if (sgn(p_) <= 0 || p_ >= 1) {
    throw DomainError("edge probability must lie strictly between 0 and 1, got " + to_string(p_));
  }
  q_ = 1 - p_;
  p_double_ = to_double(p_);
  q_double_ = to_double(q_);
}

Rational BiasedMeasure::mass(unsigned ones, unsigned m) const {
  return power(p_, ones) * power(q_, m - ones);
}

std::vector<Rational> BiasedMeasure::masses_by_weight(unsigned m) const {
  std::vector<Rational> out(m + 1);
  // Shared denominator b^m; numerators a^k c^(m-k).
  const Integer& a = p_numerator();
  const Integer& c = q_numerator();
  const Integer den = power(denominator(), m);
  std::vector<Integer> c_pow(m + 1);
  c_pow[0] = 1;
  for (unsigned k = 1; k <= m; ++k) c_pow[k] = c_pow[k - 1] * c;
  Integer a_pow = 1;
  for (unsigned k = 0; k <= m; ++k) {
    out[k] = Rational(a_pow * c_pow[m - k], den);
    out[k].canonicalize();
    a_pow *= a;
  }
  return out;
}

BiasedMeasure make_biased_measure(const Rational& p) { return BiasedMeasure(p); }

// ---------------------------------------------------------------------------

namespace {

std::size_t word_count(unsigned n) { return ((std::size_t{1} << n) + 63) / 64; }

std::uint64_t padding_mask(unsigned n) {
  // Valid bits of the last word.
  if (n >= 6) return ~std::uint64_t{0};
  return (std::uint64_t{1} << (std::uint64_t{1} << n)) - 1;
}

}  // namespace

BooleanFunction::BooleanFunction(unsigned n, std::vector<std::uint64_t> words)
    : n_(n), words_(std::move(words)) {
  if (n < 1 || n > kMaxTableArity) {
    throw CapacityError("truth tables support 1 <= n <= 24, got n = " + std::to_string(n));
  }
  if (words_.size() != word_count(n)) throw ParseError("truth table has the wrong length for n");
  if ((words_.back() & ~padding_mask(n)) != 0) throw ParseError("truth table padding bits must be zero");
}

BooleanFunction BooleanFunction::from_predicate(unsigned n, const std::function<bool(Mask)>& is_true) {
  if (n < 1 || n > kMaxTableArity) {
    throw CapacityError("truth tables support 1 <= n <= 24, got n = " + std::to_string(n));
  }
  std::vector<std::uint64_t> words(word_count(n), 0);
  const std::uint64_t size = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < size; ++x) {
    if (is_true(static_cast<Mask>(x))) words[x >> 6] |= std::uint64_t{1} << (x & 63);
  }
  return BooleanFunction(n, std::move(words));
}

BooleanFunction BooleanFunction::constant(unsigned n, int value) {
  return from_predicate(n, [value](Mask) { return value > 0; });
}

std::vector<std::int64_t> BooleanFunction::true_counts_by_weight() const {
  std::vector<std::int64_t> counts(n_ + 1, 0);
  const std::uint64_t total = size();
  for (std::uint64_t x = 0; x < total; ++x) {
    if (is_true(static_cast<Mask>(x))) ++counts[popcount(static_cast<Mask>(x))];
  }
  return counts;
}

std::vector<std::int64_t> BooleanFunction::signed_counts_by_weight() const {
  auto counts = true_counts_by_weight();
  std::int64_t binom = 1;  // C(n, k)
  for (unsigned k = 0; k <= n_; ++k) {
    counts[k] = 2 * counts[k] - binom;
    binom = binom * (n_ - k) / (k + 1);
  }
  return counts;
}

Rational point_mass(const BiasedMeasure& measure, unsigned n, Mask x) {
  if (n < 32 && (x >> n) != 0) throw DomainError("point has coordinates beyond n");
  return measure.mass(popcount(x), n);
}

Rational expectation(const BooleanFunction& f, const BiasedMeasure& measure) {
  const auto counts = f.signed_counts_by_weight();
  const auto masses = measure.masses_by_weight(f.arity());
  Rational sum = 0;
  for (unsigned k = 0; k < counts.size(); ++k) sum += Rational(Integer(static_cast<long>(counts[k]))) * masses[k];
  return sum;
}

bool is_monotone(const BooleanFunction& f) {
  const unsigned n = f.arity();
  const std::uint64_t size = f.size();
  for (unsigned i = 0; i < n; ++i) {
    const Mask bit = Mask{1} << i;
    for (std::uint64_t x = 0; x < size; ++x) {
      const auto lo = static_cast<Mask>(x);
      if (lo & bit) continue;
      if (f.is_true(lo) && !f.is_true(lo | bit)) return false;
    }
  }
  return true;
}

void require_monotone(const BooleanFunction& f, const std::string& what) {
  if (!is_monotone(f)) throw DomainError(what + " requires a monotone (increasing) function");
}

// ---------------------------------------------------------------------------

GeneralProductSpace::GeneralProductSpace(std::vector<Rational> weights, unsigned n)
    : weights_(std::move(weights)), n_(n) {
  const auto k = weights_.size();
  if (k < 2 || k > 4) throw DomainError("alphabet size must be between 2 and 4");
  if (n < 1) throw DomainError("general product space needs n >= 1");
  if (k > 2 && n > 10) throw CapacityError("general spaces with |Omega| > 2 are capped at n = 10");
  Rational total = 0;
  for (auto& w : weights_) {
    w.canonicalize();
    if (sgn(w) <= 0) throw DomainError("every symbol weight must be positive");
    total += w;
  }
  if (total != 1) throw DomainError("symbol weights must sum to exactly 1, got " + to_string(total));
  point_count_ = 1;
  strides_.reserve(n);
  for (unsigned i = 0; i < n; ++i) {
    strides_.push_back(point_count_);
    point_count_ *= k;
    if (point_count_ > kMaxGeneralPoints) throw CapacityError("|Omega|^n exceeds 2^20");
  }
}

unsigned GeneralProductSpace::digit(std::uint64_t index, unsigned i) const {
  return static_cast<unsigned>((index / strides_[i - 1]) % weights_.size());
}

std::uint64_t GeneralProductSpace::index_of(const std::vector<unsigned>& point) const {
  if (point.size() != n_) throw DomainError("point has the wrong number of coordinates");
  std::uint64_t index = 0;
  for (unsigned i = 0; i < n_; ++i) {
    if (point[i] >= weights_.size()) throw DomainError("symbol outside the alphabet");
    index += point[i] * strides_[i];
  }
  return index;
}

std::vector<unsigned> GeneralProductSpace::point_of(std::uint64_t index) const {
  std::vector<unsigned> point(n_);
  for (unsigned i = 0; i < n_; ++i) {
    point[i] = static_cast<unsigned>(index % weights_.size());
    index /= weights_.size();
  }
  return point;
}

Rational GeneralProductSpace::mass(std::uint64_t index) const {
  Rational m = 1;
  for (unsigned i = 0; i < n_; ++i) {
    m *= weights_[index % weights_.size()];
    index /= weights_.size();
  }
  return m;
}

GeneralFunction::GeneralFunction(GeneralProductSpace space, std::vector<std::int8_t> table)
    : space_(std::move(space)), table_(std::move(table)) {
  if (table_.size() != space_.point_count()) throw ParseError("general function table has the wrong length");
  for (auto v : table_) {
    if (v != 1 && v != -1) throw DomainError("general function values must be -1 or +1");
  }
}

Rational general_expectation(const GeneralFunction& g, Mask subset, const std::vector<unsigned>& point) {
  const auto& space = g.space();
  const unsigned n = space.arity();
  const unsigned k = space.alphabet_size();
  if (n < 32 && (subset >> n) != 0) throw DomainError("subset has coordinates beyond n");

  std::uint64_t base = 0;
  std::vector<unsigned> free_coords;
  for (unsigned i = 1; i <= n; ++i) {
    if (subset & (Mask{1} << (i - 1))) {
      if (point.size() < i || point[i - 1] >= k) throw DomainError("point does not supply coordinate " + std::to_string(i));
      base += point[i - 1] * space.stride(i);
    } else {
      free_coords.push_back(i);
    }
  }

  // Odometer over the free coordinates.
  std::vector<unsigned> digits(free_coords.size(), 0);
  Rational sum = 0;
  while (true) {
    std::uint64_t index = base;
    Rational weight = 1;
    for (std::size_t j = 0; j < free_coords.size(); ++j) {
      index += digits[j] * space.stride(free_coords[j]);
      weight *= space.weights()[digits[j]];
    }
    sum += weight * g(index);
    std::size_t j = 0;
    while (j < digits.size() && ++digits[j] == k) digits[j++] = 0;
    if (j == digits.size()) break;
  }
  return sum;
}

}  // namespace ctl
