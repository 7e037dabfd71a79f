#pragma once

// Exact conditional-expectation lattice: f^{subseteq S}(x_S) for every subset S
// and every assignment x_S, stored as one array over ternary strings
// t in {0,1,*}^n (digit i of t is x_i, or * when coordinate i is averaged).
// Coordinate 1 is the least-significant ternary digit.
//
// Built by averaging one coordinate at a time, O(n 3^(n-1)) integer
// operations on numerators over the shared denominator b^(#stars) where p = a/b.

#include "ctl/rational.hpp"
#include "ctl/space.hpp"

#include <cstdint>
#include <vector>

namespace ctl {

inline constexpr unsigned kMaxLatticeArity = 16;

std::uint64_t ternary_index(unsigned n, Mask subset, Mask x);

/// The full lattice as exact rationals; intended for n <= 10.
std::vector<Rational> averaged_lattice(const BooleanFunction& f, const BiasedMeasure& measure);

/// E_x[ max_{0 < |S| <= max_size} |f^{subseteq S}(x)| ], exact.
/// Throws CapacityError when n > 16 (or the numerators outgrow the
/// fixed-width path and n > 12).
Rational junta_max_lattice(const BooleanFunction& f, const BiasedMeasure& measure, unsigned max_size);

struct LatticeMinimum {
  Rational value;
  Mask subset = 0;
  Mask point = 0;  // restricted to subset
};

/// min over |S| <= max_size and x_S of f^{subseteq S}(x_S) - (E[f] - 2 p |S|).
LatticeMinimum monotone_margin_lattice(const BooleanFunction& f, const BiasedMeasure& measure, unsigned max_size);

}  // namespace ctl
