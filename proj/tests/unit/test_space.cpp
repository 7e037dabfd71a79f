#include "ctl/errors.hpp"
#include "ctl/rational.hpp"
#include "ctl/space.hpp"

#include "../support/oracles.hpp"

#include <doctest.h>

#include <sstream>

using namespace ctl;

TEST_CASE("parse_rational accepts fractions, integers and capped decimals") {
  auto r = parse_rational("6/8");
  CHECK(r.value == Rational(3, 4));
  CHECK(r.exact_literal);
  CHECK(parse_rational(" 2 ").value == 2);
  CHECK(parse_rational("-1/3").value == Rational(-1, 3));

  r = parse_rational("0.25");
  CHECK(r.value == Rational(1, 4));
  CHECK_FALSE(r.exact_literal);
  CHECK(parse_rational("2.5e-1").value == Rational(1, 4));
  CHECK(parse_rational("1e-3").value == Rational(1, 1000));
  // Digits beyond the 12th fractional place are rounded away.
  CHECK(parse_rational("0.1234567890126").value == Rational(123456789013, 1000000000000));

  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/2/3"), ParseError);
}

TEST_CASE("rational helpers") {
  CHECK(to_string(parse_rational("3/6").value) == "1/2");
  CHECK(to_string(parse_rational("4/2").value) == "2");
  CHECK(to_string(Rational(-1, 3)) == "-1/3");
  CHECK(format_decimal(1.0 / 3.0) == "0.333333333333");
  CHECK(format_decimal(0.0) == "0");
  CHECK(power(Rational(2, 3), 3) == Rational(8, 27));
  CHECK(ceil(Rational(7, 2)) == 4);
  CHECK(ceil(Rational(-7, 2)) == -3);
  CHECK(ceil(Rational(4)) == 4);
  CHECK(pow2(-3) == Rational(1, 8));
  CHECK(pow2(5) == 32);
  CHECK(from_double(0.375) == Rational(3, 8));
}

TEST_CASE("BiasedMeasure") {
  BiasedMeasure m(Rational(1, 3));
  CHECK(m.q() == Rational(2, 3));
  CHECK(m.p_numerator() == 1);
  CHECK(m.q_numerator() == 2);
  CHECK(m.denominator() == 3);
  CHECK(m.mass(1, 3) == Rational(4, 27));
  Rational sum = 0;
  const auto w = m.masses_by_weight(4);
  for (unsigned k = 0; k <= 4; ++k) {
    Integer binom = 1;
    for (unsigned j = 0; j < k; ++j) binom = binom * (4 - j) / (j + 1);
    sum += Rational(binom) * w[k];
  }
  CHECK(sum == 1);
  CHECK_THROWS_AS(BiasedMeasure(Rational(0)), DomainError);
  CHECK_THROWS_AS(BiasedMeasure(Rational(1)), DomainError);
  CHECK_THROWS_AS(BiasedMeasure(Rational(3, 2)), DomainError);
}

TEST_CASE("BooleanFunction validation and counts") {
  CHECK_THROWS_AS(BooleanFunction(0, {0}), CapacityError);
  CHECK_THROWS_AS(BooleanFunction(25, {}), CapacityError);
  CHECK_THROWS_AS(BooleanFunction(3, {0, 0}), ParseError);
  CHECK_THROWS_AS(BooleanFunction(3, {0x100}), ParseError);

  const auto f = BooleanFunction::from_predicate(3, [](Mask x) { return x == 7 || x == 1; });
  CHECK(f(7) == 1);
  CHECK(f(2) == -1);
  const auto counts = f.true_counts_by_weight();
  CHECK(counts == std::vector<std::int64_t>{0, 1, 0, 1});
  const auto signed_counts = f.signed_counts_by_weight();
  CHECK(signed_counts == std::vector<std::int64_t>{-1, -1, -3, 1});
  CHECK(BooleanFunction::constant(2, 1).words()[0] == 0xF);
}

TEST_CASE("expectation and monotonicity agree with brute force") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const unsigned n = 1 + trial % 6;
    const auto f = trial % 2 ? oracle::random_monotone(n, rng) : oracle::random_function(n, rng);
    const Rational p = oracle::random_probability(rng);
    CHECK(expectation(f, BiasedMeasure(p)) == oracle::expectation(f, p));
    CHECK(is_monotone(f) == oracle::monotone(f));
    Rational total = 0;
    for (Mask x = 0; x < f.size(); ++x) total += point_mass(BiasedMeasure(p), n, x);
    CHECK(total == 1);
  }
  CHECK_THROWS_AS(require_monotone(BooleanFunction::from_predicate(2, [](Mask x) { return x == 1; }), "x"),
                  DomainError);
}

TEST_CASE("general product space indexing") {
  GeneralProductSpace s({Rational(1, 2), Rational(1, 3), Rational(1, 6)}, 3);
  CHECK(s.point_count() == 27);
  CHECK(s.stride(2) == 3);
  for (std::uint64_t i = 0; i < 27; ++i) CHECK(s.index_of(s.point_of(i)) == i);
  CHECK(s.digit(5, 1) == 2);
  CHECK(s.digit(5, 2) == 1);
  CHECK(s.mass(5) == Rational(1, 6) * Rational(1, 3) * Rational(1, 2));
  CHECK_THROWS_AS(GeneralProductSpace({Rational(1, 2), Rational(1, 3)}, 2), DomainError);
  CHECK_THROWS_AS(GeneralProductSpace({Rational(1)}, 2), DomainError);
  CHECK_THROWS_AS(GeneralProductSpace({Rational(1, 3), Rational(1, 3), Rational(1, 3)}, 11), CapacityError);
}

TEST_CASE("general_expectation averages the free coordinates") {
  GeneralProductSpace s({Rational(1, 2), Rational(1, 4), Rational(1, 4)}, 2);
  // g = +1 iff x_1 == x_2.
  std::vector<std::int8_t> t(9);
  for (std::uint64_t i = 0; i < 9; ++i) t[i] = s.digit(i, 1) == s.digit(i, 2) ? 1 : -1;
  GeneralFunction g(s, t);
  // P[x1 == x2] = 1/4 + 1/16 + 1/16 = 3/8.
  CHECK(general_expectation(g, 0, {0, 0}) == Rational(-1, 4));
  CHECK(general_expectation(g, 1, {0, 0}) == 0);                // x1 = 0: P[x2 = 0] = 1/2
  CHECK(general_expectation(g, 1, {1, 0}) == Rational(-1, 2));  // x1 = 1: P[x2 = 1] = 1/4
  CHECK(general_expectation(g, 3, {2, 2}) == 1);
}

TEST_CASE("BFT1 round trip is bit exact") {
  std::mt19937_64 rng(5);
  for (unsigned n = 1; n <= 12; ++n) {
    const auto f = oracle::random_function(n, rng);
    std::stringstream ss;
    write_bft(ss, f);
    const std::string text = ss.str();
    const auto g = read_bft(ss);
    CHECK(g == f);
    std::stringstream again;
    write_bft(again, g);
    CHECK(again.str() == text);
  }
}

TEST_CASE("BFT1 layout and rejection") {
  // x = 1 and x = 2 true for n = 2: bits 1 and 2 -> nibble 0x6.
  const auto f = BooleanFunction::from_predicate(2, [](Mask x) { return x == 1 || x == 2; });
  std::stringstream ss;
  write_bft(ss, f);
  CHECK(ss.str() == "bft 1\n2\n6\n");

  auto parse = [](const std::string& text) {
    std::stringstream in(text);
    return read_bft(in);
  };
  CHECK(parse("bft 1\n1\n2\n")(1) == 1);
  CHECK_THROWS_AS(parse("bft 2\n1\n2\n"), ParseError);
  CHECK_THROWS_AS(parse("bft 1\n2\nA\n"), ParseError);
  CHECK_THROWS_AS(parse("bft 1\n1\n4\n"), ParseError);   // padding bit set
  CHECK_THROWS_AS(parse("bft 1\n3\n0\n"), ParseError);   // too short
  CHECK_THROWS_AS(parse("bft 1\nx\n0\n"), ParseError);
  CHECK_THROWS_AS(parse("bft 1\n30\n0\n"), CapacityError);
}
