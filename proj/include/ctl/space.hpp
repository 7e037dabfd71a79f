#pragma once

// Product probability spaces and Boolean functions stored as truth tables.
//
// Conventions used throughout the library:
//   * A point x in {0,1}^n is a Mask whose bit (j-1) holds x_j, so coordinate
//     1 is the least-significant bit of the truth-table index.
//   * A subset S of [n] = {1..n} is a Mask with bit (i-1) set for i in S.
//   * Functions take values in {-1,+1}; a set table bit means f(x) = +1.

#include "ctl/rational.hpp"

#include <bit>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace ctl {

using Mask = std::uint32_t;

inline constexpr unsigned kMaxTableArity = 24;
inline constexpr std::uint64_t kMaxGeneralPoints = std::uint64_t{1} << 20;

inline unsigned popcount(Mask m) { return static_cast<unsigned>(std::popcount(m)); }
inline Mask full_mask(unsigned n) { return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1; }

/// The p-biased measure on {0,1}: P[1] = p, P[0] = q = 1 - p.
class BiasedMeasure {
 public:
  /// Throws DomainError unless 0 < p < 1.
  explicit BiasedMeasure(Rational p);

  const Rational& p() const { return p_; }
  const Rational& q() const { return q_; }
  double p_value() const { return p_double_; }
  double q_value() const { return q_double_; }

  // p = a/b and q = c/b in lowest terms with a shared denominator.
  const Integer& p_numerator() const { return p_.get_num(); }
  const Integer& q_numerator() const { return q_.get_num(); }
  const Integer& denominator() const { return p_.get_den(); }

  /// p^ones * q^(m - ones).
  Rational mass(unsigned ones, unsigned m) const;
  /// mass(k, m) for k = 0..m.
  std::vector<Rational> masses_by_weight(unsigned m) const;

  friend bool operator==(const BiasedMeasure& a, const BiasedMeasure& b) { return a.p_ == b.p_; }

 private:
  Rational p_;
  Rational q_;
  double p_double_;
  double q_double_;
};

BiasedMeasure make_biased_measure(const Rational& p);

/// f : {0,1}^n -> {-1,+1} as a packed truth table, 1 <= n <= 24.
class BooleanFunction {
 public:
  /// `words` must hold exactly ceil(2^n / 64) words with zero padding.
  BooleanFunction(unsigned n, std::vector<std::uint64_t> words);

  static BooleanFunction from_predicate(unsigned n, const std::function<bool(Mask)>& is_true);
  static BooleanFunction constant(unsigned n, int value);

  unsigned arity() const { return n_; }
  std::uint64_t size() const { return std::uint64_t{1} << n_; }

  bool is_true(Mask x) const { return (words_[x >> 6] >> (x & 63)) & 1U; }
  int operator()(Mask x) const { return is_true(x) ? 1 : -1; }

  const std::vector<std::uint64_t>& words() const { return words_; }

  /// Number of points with f = +1 minus number with f = -1, per Hamming weight.
  std::vector<std::int64_t> signed_counts_by_weight() const;
  /// Number of points with f = +1, per Hamming weight.
  std::vector<std::int64_t> true_counts_by_weight() const;

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

 private:
  unsigned n_;
  std::vector<std::uint64_t> words_;
};

Rational point_mass(const BiasedMeasure& measure, unsigned n, Mask x);

/// E_{x ~ mu_p^n}[f(x)], exact.
Rational expectation(const BooleanFunction& f, const BiasedMeasure& measure);

/// Checks every covering edge x -> x + e_i of the cube.
bool is_monotone(const BooleanFunction& f);

/// Throws DomainError naming `what` when f is not monotone.
void require_monotone(const BooleanFunction& f, const std::string& what);

// ---------------------------------------------------------------------------
// General finite product spaces (Omega, pi)^n with |Omega| in 2..4.

class GeneralProductSpace {
 public:
  GeneralProductSpace(std::vector<Rational> weights, unsigned n);

  unsigned alphabet_size() const { return static_cast<unsigned>(weights_.size()); }
  unsigned arity() const { return n_; }
  const std::vector<Rational>& weights() const { return weights_; }
  std::uint64_t point_count() const { return point_count_; }
  /// radix^(i-1), the index stride of coordinate i (1-based).
  std::uint64_t stride(unsigned i) const { return strides_[i - 1]; }

  /// Symbol of coordinate i (1-based) at a mixed-radix index.
  unsigned digit(std::uint64_t index, unsigned i) const;
  std::uint64_t index_of(const std::vector<unsigned>& point) const;
  std::vector<unsigned> point_of(std::uint64_t index) const;
  Rational mass(std::uint64_t index) const;

 private:
  std::vector<Rational> weights_;
  unsigned n_;
  std::uint64_t point_count_;
  std::vector<std::uint64_t> strides_;
};

/// g : Omega^n -> {-1,+1}, table indexed in mixed radix with coordinate 1 least significant.
class GeneralFunction {
 public:
  GeneralFunction(GeneralProductSpace space, std::vector<std::int8_t> table);

  const GeneralProductSpace& space() const { return space_; }
  int operator()(std::uint64_t index) const { return table_[index]; }
  const std::vector<std::int8_t>& table() const { return table_; }

 private:
  GeneralProductSpace space_;
  std::vector<std::int8_t> table_;
};

/// E over coordinates outside S with x_S fixed (x supplies at least those).
Rational general_expectation(const GeneralFunction& g, Mask subset, const std::vector<unsigned>& point);

// ---------------------------------------------------------------------------
// BFT1 truth-table text format:
//   bft 1
//   <n>
//   <hex digits: table bits, least-significant bit first within each nibble>

void write_bft(std::ostream& out, const BooleanFunction& f);
BooleanFunction read_bft(std::istream& in);
void save_bft(const std::string& path, const BooleanFunction& f);
BooleanFunction load_bft(const std::string& path);

}  // namespace ctl
