#pragma once

// P_p[f = 1] as an exact polynomial in p, the Margulis-Russo identity, and
// critical-probability bisection.

#include "ctl/rational.hpp"
#include "ctl/space.hpp"

#include <optional>
#include <vector>

namespace ctl {

/// Dense polynomial with exact rational coefficients, lowest degree first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);

  const std::vector<Rational>& coefficients() const { return coefficients_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }

  Rational operator()(const Rational& x) const;
  double operator()(double x) const;
  Polynomial derivative() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();
  std::vector<Rational> coefficients_;
};

/// sum_k count_k p^k (1-p)^(n-k), expanded by exact binomial convolution.
Polynomial weight_polynomial(const std::vector<std::int64_t>& counts_by_weight);

/// P(p) = P_{mu_p}[f(x) = +1].
Polynomial threshold_polynomial(const BooleanFunction& f);

struct RussoCheck {
  Rational p;
  // +-1 range: 4 p q P'(p) = I[f].
  Rational lhs;
  Rational rhs;
  bool equal = false;
  std::optional<Rational> ratio;  // lhs / rhs when rhs != 0
  // 0/1 range: p q P'(p) = I[f] / 4.
  Rational lhs_zero_one;
  Rational rhs_zero_one;
};

/// Throws DomainError for non-monotone f.
RussoCheck margulis_russo_check(const BooleanFunction& f, const BiasedMeasure& measure);

inline constexpr double kDefaultBisectionTolerance = 1e-12;

struct CriticalProbability {
  Rational lower;
  Rational upper;
  Rational midpoint;
  unsigned iterations = 0;
  bool exact = false;  // P(midpoint) == 1/2 exactly
};

/// Bisection for P(p) = 1/2 on [2^-20, 1 - 2^-20] until upper - lower < tolerance.
/// Throws DomainError for constant or non-monotone f.
CriticalProbability critical_probability(const BooleanFunction& f, double tolerance = kDefaultBisectionTolerance);

}  // namespace ctl
