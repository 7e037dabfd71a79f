#include "ctl/threshold.hpp"

#include "ctl/errors.hpp"
#include "ctl/influence.hpp"

#include <utility>

namespace ctl {

Polynomial::Polynomial(std::vector<Rational> coefficients) : coefficients_(std::move(coefficients)) {
  for (auto& c : coefficients_) c.canonicalize();
  trim();
}

void Polynomial::trim() {
  while (!coefficients_.empty() && sgn(coefficients_.back()) == 0) coefficients_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + to_double(*it);
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coefficients_.size() <= 1) return Polynomial();
  std::vector<Rational> d(coefficients_.size() - 1);
  for (std::size_t k = 1; k < coefficients_.size(); ++k) d[k - 1] = coefficients_[k] * static_cast<unsigned long>(k);
  return Polynomial(std::move(d));
}

Polynomial weight_polynomial(const std::vector<std::int64_t>& counts_by_weight) {
  const auto n = static_cast<unsigned>(counts_by_weight.size()) - 1;
  // p^k (1-p)^(n-k) = sum_j C(n-k, j) (-1)^j p^(k+j)
  std::vector<Integer> coeffs(n + 1, Integer(0));
  for (unsigned k = 0; k <= n; ++k) {
    if (counts_by_weight[k] == 0) continue;
    const Integer count(static_cast<long>(counts_by_weight[k]));
    Integer binom = 1;
    for (unsigned j = 0; j <= n - k; ++j) {
      if (j % 2 == 0) {
        coeffs[k + j] += count * binom;
      } else {
        coeffs[k + j] -= count * binom;
      }
      binom = binom * (n - k - j) / (j + 1);
    }
  }
  std::vector<Rational> rational(coeffs.begin(), coeffs.end());
  return Polynomial(std::move(rational));
}

Polynomial threshold_polynomial(const BooleanFunction& f) { return weight_polynomial(f.true_counts_by_weight()); }

RussoCheck margulis_russo_check(const BooleanFunction& f, const BiasedMeasure& measure) {
  require_monotone(f, "the Margulis-Russo check");
  const Polynomial derivative = threshold_polynomial(f).derivative();
  RussoCheck check;
  check.p = measure.p();
  const Rational slope = derivative(measure.p());
  check.lhs = 4 * measure.p() * measure.q() * slope;
  check.rhs = total_influence(f, measure);
  check.equal = check.lhs == check.rhs;
  if (sgn(check.rhs) != 0) check.ratio = Rational(check.lhs / check.rhs);
  check.lhs_zero_one = measure.p() * measure.q() * slope;
  check.rhs_zero_one = check.rhs / 4;
  return check;
}

CriticalProbability critical_probability(const BooleanFunction& f, double tolerance) {
  if (!(tolerance > 0.0)) throw DomainError("bisection tolerance must be positive");
  require_monotone(f, "critical-probability bisection");
  const Polynomial prob = threshold_polynomial(f);
  if (prob.degree() <= 0) throw DomainError("constant function: P(p) = 1/2 has no root");

  const Rational half(1, 2);
  CriticalProbability out;
  out.lower = pow2(-20);
  out.upper = 1 - pow2(-20);
  if (prob(out.lower) > half || prob(out.upper) < half) {
    throw DomainError("no sign change of P(p) - 1/2 on [2^-20, 1 - 2^-20]");
  }
  const Rational tol = from_double(tolerance);
  while (out.upper - out.lower >= tol) {
    Rational mid = (out.lower + out.upper) / 2;
    const Rational value = prob(mid);
    ++out.iterations;
    if (value == half) {
      out.lower = mid;
      out.upper = mid;
      out.exact = true;
      break;
    }
    if (value < half) {
      out.lower = std::move(mid);
    } else {
      out.upper = std::move(mid);
    }
  }
  out.midpoint = (out.lower + out.upper) / 2;
  out.exact = out.exact || prob(out.midpoint) == half;
  return out;
}

}  // namespace ctl
