#include "ctl/lattice.hpp"

#include "ctl/errors.hpp"

#include <limits>
#include <string>

namespace ctl {

namespace {

using int128 = __int128;

constexpr unsigned kMaxBigIntLatticeArity = 12;

std::uint64_t pow3(unsigned n) {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < n; ++i) v *= 3;
  return v;
}

template <class Int>
Int from_integer(const Integer& v);

template <>
std::int64_t from_integer<std::int64_t>(const Integer& v) {
  return v.get_si();
}

template <>
int128 from_integer<int128>(const Integer& v) {
  Integer magnitude = abs(v);
  const std::uint64_t lo = mpz_getlimbn(magnitude.get_mpz_t(), 0);
  const std::uint64_t hi = mpz_size(magnitude.get_mpz_t()) > 1 ? mpz_getlimbn(magnitude.get_mpz_t(), 1) : 0;
  const int128 out = static_cast<int128>((static_cast<unsigned __int128>(hi) << 64) | lo);
  return sgn(v) < 0 ? -out : out;
}

template <>
Integer from_integer<Integer>(const Integer& v) {
  return v;
}

Integer to_integer(std::int64_t v) { return Integer(static_cast<long>(v)); }

Integer to_integer(int128 v) {
  const bool negative = v < 0;
  const auto magnitude = static_cast<unsigned __int128>(negative ? -v : v);
  Integer out(static_cast<unsigned long>(static_cast<std::uint64_t>(magnitude >> 64)));
  mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), 64);
  out += Integer(static_cast<unsigned long>(static_cast<std::uint64_t>(magnitude)));
  return negative ? Integer(-out) : out;
}

const Integer& to_integer(const Integer& v) { return v; }

template <class Int>
Int absolute(const Int& v) {
  Int out = v;
  if (out < 0) out = -out;
  return out;
}

// Ternary index of each cube point x (all digits 0/1).
std::vector<std::uint64_t> cube_ternary_indices(unsigned n) {
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::uint64_t> index(size, 0);
  std::vector<std::uint64_t> p3(n, 1);
  for (unsigned i = 1; i < n; ++i) p3[i] = p3[i - 1] * 3;
  for (std::size_t x = 1; x < size; ++x) {
    const unsigned low = static_cast<unsigned>(std::countr_zero(x));
    index[x] = index[x & (x - 1)] + p3[low];
  }
  return index;
}

template <class Int>
std::vector<Int> build_lattice(const BooleanFunction& f, const Int& a, const Int& c) {
  const unsigned n = f.arity();
  const std::uint64_t total = pow3(n);
  std::vector<Int> t(total);
  const auto cube = cube_ternary_indices(n);
  for (std::size_t x = 0; x < cube.size(); ++x) t[cube[x]] = Int(f(static_cast<Mask>(x)));

  // Pass i fills every entry whose digit i is *, from its 0 and 1 neighbours.
  // The final write to an entry happens in the pass of its highest star, when
  // both inputs are already final.
  std::uint64_t stride = 1;
  for (unsigned i = 0; i < n; ++i, stride *= 3) {
    for (std::uint64_t block = 0; block < total; block += 3 * stride) {
      for (std::uint64_t j = block; j < block + stride; ++j) {
        t[j + 2 * stride] = c * t[j] + a * t[j + stride];
      }
    }
  }
  return t;
}

// Visits every ternary index in order with its star count.
template <class Fn>
void for_each_with_stars(unsigned n, std::uint64_t total, Fn&& fn) {
  std::vector<std::uint8_t> digits(n, 0);
  unsigned stars = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    fn(idx, stars);
    for (unsigned j = 0; j < n; ++j) {
      if (digits[j] == 2) {
        digits[j] = 0;
        --stars;
        continue;
      }
      if (++digits[j] == 2) ++stars;
      break;
    }
  }
}

unsigned numerator_bits(const BiasedMeasure& measure, unsigned n) {
  return static_cast<unsigned>(mpz_sizeinbase(measure.denominator().get_mpz_t(), 2)) * n;
}

enum class Width { k64, k128, kBig };

Width choose_width(const BiasedMeasure& measure, unsigned n, unsigned extra_bits) {
  if (n > kMaxLatticeArity) {
    throw CapacityError("exact lattice path supports n <= 16 (got n = " + std::to_string(n) +
                        "); use the Monte Carlo estimate");
  }
  const unsigned bits = numerator_bits(measure, n) + extra_bits;
  if (bits <= 62) return Width::k64;
  if (bits <= 126) return Width::k128;
  if (n > kMaxBigIntLatticeArity) {
    throw CapacityError("exact lattice path with this denominator of p supports n <= 12 (got n = " +
                        std::to_string(n) + "); use a simpler p or the Monte Carlo estimate");
  }
  return Width::kBig;
}

template <class Int>
Rational junta_max_impl(const BooleanFunction& f, const BiasedMeasure& measure, unsigned max_size) {
  const unsigned n = f.arity();
  const Int a = from_integer<Int>(measure.p_numerator());
  const Int c = from_integer<Int>(measure.q_numerator());
  const Int b = from_integer<Int>(measure.denominator());
  auto t = build_lattice<Int>(f, a, c);
  const std::uint64_t total = t.size();

  std::vector<Int> b_pow(n + 1);
  b_pow[0] = 1;
  for (unsigned k = 1; k <= n; ++k) b_pow[k] = b_pow[k - 1] * b;

  // Common denominator b^n; drop S = {} and |S| > max_size.
  for_each_with_stars(n, total, [&](std::uint64_t idx, unsigned stars) {
    const unsigned size = n - stars;
    if (size == 0 || size > max_size) {
      t[idx] = 0;
    } else {
      t[idx] = absolute(t[idx]) * b_pow[size];
    }
  });

  // Max over star-replacements: afterwards a star-free entry x holds the max
  // over every (S, x_S) consistent with x.
  std::uint64_t stride = 1;
  for (unsigned i = 0; i < n; ++i, stride *= 3) {
    for (std::uint64_t block = 0; block < total; block += 3 * stride) {
      for (std::uint64_t j = block; j < block + stride; ++j) {
        const Int& star = t[j + 2 * stride];
        if (t[j] < star) t[j] = star;
        if (t[j + stride] < star) t[j + stride] = star;
      }
    }
  }

  const auto cube = cube_ternary_indices(n);
  std::vector<Int> class_sums(n + 1, Int(0));
  for (std::size_t x = 0; x < cube.size(); ++x) class_sums[popcount(static_cast<Mask>(x))] += t[cube[x]];

  Integer numerator = 0;
  const auto& ia = measure.p_numerator();
  const auto& ic = measure.q_numerator();
  for (unsigned k = 0; k <= n; ++k) {
    numerator += to_integer(class_sums[k]) * power(ia, k) * power(ic, n - k);
  }
  Rational out(numerator, power(measure.denominator(), 2 * n));
  out.canonicalize();
  return out;
}

template <class Int>
LatticeMinimum margin_impl(const BooleanFunction& f, const BiasedMeasure& measure, unsigned max_size) {
  const unsigned n = f.arity();
  const Int a = from_integer<Int>(measure.p_numerator());
  const Int c = from_integer<Int>(measure.q_numerator());
  const Int b = from_integer<Int>(measure.denominator());
  const auto t = build_lattice<Int>(f, a, c);
  const std::uint64_t total = t.size();

  std::vector<Int> b_pow(n + 1);
  b_pow[0] = 1;
  for (unsigned k = 1; k <= n; ++k) b_pow[k] = b_pow[k - 1] * b;

  const Int mean = t[total - 1];  // all stars, over b^n
  bool have = false;
  Int best = 0;
  std::uint64_t best_idx = 0;
  for_each_with_stars(n, total, [&](std::uint64_t idx, unsigned stars) {
    const unsigned size = n - stars;
    if (size > max_size) return;
    Int margin = t[idx] * b_pow[size] - mean;
    if (size > 0) margin += Int(2 * size) * a * b_pow[n - 1];
    if (!have || margin < best) {
      best = margin;
      best_idx = idx;
      have = true;
    }
  });

  LatticeMinimum out;
  out.value = Rational(to_integer(best), power(measure.denominator(), n));
  out.value.canonicalize();
  std::uint64_t idx = best_idx;
  for (unsigned i = 0; i < n; ++i, idx /= 3) {
    const auto digit = idx % 3;
    if (digit == 2) continue;
    out.subset |= Mask{1} << i;
    if (digit == 1) out.point |= Mask{1} << i;
  }
  return out;
}

}  // namespace

std::uint64_t ternary_index(unsigned n, Mask subset, Mask x) {
  std::uint64_t idx = 0;
  std::uint64_t p3 = 1;
  for (unsigned i = 0; i < n; ++i, p3 *= 3) {
    const Mask bit = Mask{1} << i;
    idx += p3 * ((subset & bit) ? ((x & bit) ? 1 : 0) : 2);
  }
  return idx;
}

std::vector<Rational> averaged_lattice(const BooleanFunction& f, const BiasedMeasure& measure) {
  const unsigned n = f.arity();
  if (n > kMaxBigIntLatticeArity) throw CapacityError("averaged_lattice supports n <= 12");
  const auto t = build_lattice<Integer>(f, measure.p_numerator(), measure.q_numerator());
  std::vector<Integer> b_pow(n + 1);
  b_pow[0] = 1;
  for (unsigned k = 1; k <= n; ++k) b_pow[k] = b_pow[k - 1] * measure.denominator();
  std::vector<Rational> out(t.size());
  for_each_with_stars(n, t.size(), [&](std::uint64_t idx, unsigned stars) {
    out[idx] = Rational(t[idx], b_pow[stars]);
    out[idx].canonicalize();
  });
  return out;
}

Rational junta_max_lattice(const BooleanFunction& f, const BiasedMeasure& measure, unsigned max_size) {
  const unsigned n = f.arity();
  // Class sums add up to 2^n values of size b^n.
  switch (choose_width(measure, n, n + 1)) {
    case Width::k64:
      return junta_max_impl<std::int64_t>(f, measure, max_size);
    case Width::k128:
      return junta_max_impl<int128>(f, measure, max_size);
    case Width::kBig:
      break;
  }
  return junta_max_impl<Integer>(f, measure, max_size);
}

LatticeMinimum monotone_margin_lattice(const BooleanFunction& f, const BiasedMeasure& measure, unsigned max_size) {
  const unsigned n = f.arity();
  // |margin| <= (2 + 2n) b^n.
  switch (choose_width(measure, n, 7)) {
    case Width::k64:
      return margin_impl<std::int64_t>(f, measure, max_size);
    case Width::k128:
      return margin_impl<int128>(f, measure, max_size);
    case Width::kBig:
      break;
  }
  return margin_impl<Integer>(f, measure, max_size);
}

}  // namespace ctl
