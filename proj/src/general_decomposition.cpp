#include "ctl/decomposition.hpp"
#include "ctl/errors.hpp"

namespace ctl {

std::vector<Rational> general_average_out(const GeneralProductSpace& space, const std::vector<Rational>& table,
                                          unsigned i) {
  if (i < 1 || i > space.arity()) throw DomainError("coordinate out of range");
  if (table.size() != space.point_count()) throw DomainError("table does not match the space");
  const std::uint64_t stride = space.stride(i);
  const unsigned k = space.alphabet_size();
  const auto& w = space.weights();
  std::vector<Rational> out(table.size());
  for (std::uint64_t index = 0; index < table.size(); ++index) {
    const std::uint64_t base = index - space.digit(index, i) * stride;
    Rational sum = 0;
    for (unsigned s = 0; s < k; ++s) sum += w[s] * table[base + s * stride];
    out[index] = sum;
  }
  return out;
}

std::vector<Rational> general_averaged_table(const GeneralFunction& g, Mask subset) {
  const auto& space = g.space();
  if ((subset & ~full_mask(space.arity())) != 0) throw DomainError("subset has coordinates beyond n");
  std::vector<Rational> table(g.table().begin(), g.table().end());
  for (unsigned i = 1; i <= space.arity(); ++i) {
    if (!(subset & (Mask{1} << (i - 1)))) table = general_average_out(space, table, i);
  }
  return table;
}

std::vector<Rational> general_component_table(const GeneralFunction& g, Mask subset) {
  const unsigned size = popcount(subset);
  std::vector<Rational> out(g.space().point_count(), Rational(0));
  for (Mask j = subset;; j = (j - 1) & subset) {
    const auto averaged = general_averaged_table(g, j);
    const bool add = (size - popcount(j)) % 2 == 0;
    for (std::size_t x = 0; x < out.size(); ++x) {
      if (add) {
        out[x] += averaged[x];
      } else {
        out[x] -= averaged[x];
      }
    }
    if (j == 0) break;
  }
  return out;
}

Rational general_inner_product(const GeneralProductSpace& space, const std::vector<Rational>& a,
                               const std::vector<Rational>& b) {
  if (a.size() != space.point_count() || b.size() != space.point_count()) {
    throw DomainError("tables do not match the space");
  }
  Rational sum = 0;
  for (std::uint64_t x = 0; x < a.size(); ++x) {
    if (sgn(a[x]) == 0 || sgn(b[x]) == 0) continue;
    sum += space.mass(x) * a[x] * b[x];
  }
  return sum;
}

}  // namespace ctl
