#include "ctl/catalog.hpp"

#include "ctl/errors.hpp"
#include "ctl/rng.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <numeric>
#include <sstream>

namespace ctl {

namespace {

constexpr std::uint64_t kMaxOracleArity = 1 << 20;
constexpr unsigned kMaxGraphTableVertices = 7;

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_param(std::string_view raw, std::string_view whole) {
  const auto s = trim(raw);
  if (s.empty() || s.size() > 19 || s.find_first_not_of("0123456789") != std::string_view::npos) {
    throw ParseError("bad parameter '" + std::string(raw) + "' in function spec '" + std::string(whole) + "'");
  }
  return std::stoull(std::string(s));
}

struct Arity {
  std::size_t min_params;
  std::size_t max_params;
};

Arity family_arity(const std::string& family) {
  if (family == "dictator") return {1, 2};
  if (family == "and" || family == "or" || family == "majority" || family == "parity") return {1, 1};
  if (family == "threshold" || family == "tribes") return {2, 2};
  if (family == "graph-triangle" || family == "graph-connected") return {1, 1};
  if (family == "random-monotone-dnf") return {4, 4};
  throw ParseError("unknown function family '" + family + "'");
}

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

void validate(const FunctionSpec& spec) {
  const auto& f = spec.family;
  const auto& a = spec.params;
  if (f == "dictator") {
    require(a[0] >= 1, "dictator coordinate must be >= 1");
    if (a.size() == 2) require(a[0] <= a[1], "dictator coordinate must not exceed n");
  } else if (f == "and" || f == "or" || f == "parity") {
    require(a[0] >= 1, f + " needs n >= 1");
  } else if (f == "majority") {
    require(a[0] >= 1 && a[0] % 2 == 1, "majority needs an odd n");
  } else if (f == "threshold") {
    require(a[0] >= 1, "threshold needs n >= 1");
    require(a[1] <= a[0] + 1, "threshold k must lie in 0..n+1");
  } else if (f == "tribes") {
    require(a[0] >= 1 && a[1] >= 1, "tribes needs width and count >= 1");
  } else if (f == "graph-triangle" || f == "graph-connected") {
    require(a[0] >= 2, f + " needs v >= 2");
  } else if (f == "random-monotone-dnf") {
    require(a[0] >= 1 && a[1] >= 1 && a[2] >= 1, "random-monotone-dnf needs n, t, w >= 1");
    require(a[2] <= a[0], "random-monotone-dnf term width must not exceed n");
  }
}

std::uint64_t raw_arity(const FunctionSpec& spec) {
  const auto& f = spec.family;
  const auto& a = spec.params;
  if (f == "dictator") return a.size() == 2 ? a[1] : a[0];
  if (f == "threshold" || f == "random-monotone-dnf") return a[0];
  if (f == "tribes") {
    if (a[0] > kMaxOracleArity || a[1] > kMaxOracleArity) return kMaxOracleArity + 1;
    return a[0] * a[1];
  }
  if (f == "graph-triangle" || f == "graph-connected") {
    if (a[0] > 4096) return kMaxOracleArity + 1;
    return a[0] * (a[0] - 1) / 2;
  }
  return a[0];
}

// Evaluates a catalog family through a bit accessor, so the same logic serves
// truth tables (Mask) and oracles (Point).
class FamilyEvaluator {
 public:
  explicit FamilyEvaluator(const FunctionSpec& spec) : spec_(spec), n_(static_cast<unsigned>(raw_arity(spec))) {
    if (spec.family == "graph-triangle" || spec.family == "graph-connected") {
      vertices_ = static_cast<unsigned>(spec.params[0]);
      edge_index_.assign(std::size_t{vertices_} * vertices_, 0);
      const auto edges = graph_edges(vertices_);
      for (unsigned e = 0; e < edges.size(); ++e) {
        edge_index_[edges[e].first * vertices_ + edges[e].second] = e;
        edge_index_[edges[e].second * vertices_ + edges[e].first] = e;
      }
    } else if (spec.family == "random-monotone-dnf") {
      terms_ = random_dnf_terms(n_, static_cast<unsigned>(spec.params[1]), static_cast<unsigned>(spec.params[2]),
                                spec.params[3]);
    }
  }

  unsigned arity() const { return n_; }

  template <class Bit>
  bool operator()(const Bit& bit) const {
    const auto& f = spec_.family;
    const auto& a = spec_.params;
    if (f == "dictator") return bit(static_cast<unsigned>(a[0] - 1));
    if (f == "and") return count_ones(bit, n_) == n_;
    if (f == "or") return any(bit);
    if (f == "majority") return 2 * count_ones(bit, n_) > n_;
    if (f == "parity") return count_ones(bit, n_) % 2 == 1;
    if (f == "threshold") return count_ones(bit, n_) >= a[1];
    if (f == "tribes") {
      const auto w = static_cast<unsigned>(a[0]);
      const auto s = static_cast<unsigned>(a[1]);
      for (unsigned t = 0; t < s; ++t) {
        bool all = true;
        for (unsigned j = 0; j < w && all; ++j) all = bit(t * w + j);
        if (all) return true;
      }
      return false;
    }
    if (f == "graph-triangle") return has_triangle(bit);
    if (f == "graph-connected") return connected(bit);
    if (f == "random-monotone-dnf") {
      for (const auto& term : terms_) {
        bool all = true;
        for (unsigned j : term) {
          if (!bit(j)) {
            all = false;
            break;
          }
        }
        if (all) return true;
      }
      return false;
    }
    throw ParseError("unknown family");
  }

 private:
  template <class Bit>
  static unsigned count_ones(const Bit& bit, unsigned n) {
    unsigned c = 0;
    for (unsigned j = 0; j < n; ++j) c += bit(j) ? 1 : 0;
    return c;
  }

  template <class Bit>
  bool any(const Bit& bit) const {
    for (unsigned j = 0; j < n_; ++j) {
      if (bit(j)) return true;
    }
    return false;
  }

  template <class Bit>
  bool edge(const Bit& bit, unsigned u, unsigned v) const {
    return bit(edge_index_[u * vertices_ + v]);
  }

  template <class Bit>
  bool has_triangle(const Bit& bit) const {
    for (unsigned u = 0; u < vertices_; ++u) {
      for (unsigned v = u + 1; v < vertices_; ++v) {
        if (!edge(bit, u, v)) continue;
        for (unsigned w = v + 1; w < vertices_; ++w) {
          if (edge(bit, u, w) && edge(bit, v, w)) return true;
        }
      }
    }
    return false;
  }

  template <class Bit>
  bool connected(const Bit& bit) const {
    std::vector<std::uint8_t> seen(vertices_, 0);
    std::vector<unsigned> stack{0};
    seen[0] = 1;
    unsigned reached = 1;
    while (!stack.empty()) {
      const unsigned u = stack.back();
      stack.pop_back();
      for (unsigned v = 0; v < vertices_; ++v) {
        if (v == u || seen[v] || !edge(bit, u, v)) continue;
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
    return reached == vertices_;
  }

  FunctionSpec spec_;
  unsigned n_;
  unsigned vertices_ = 0;
  std::vector<unsigned> edge_index_;
  std::vector<std::vector<unsigned>> terms_;
};

}  // namespace

FunctionSpec parse_function_spec(std::string_view text) {
  const auto whole = trim(text);
  const auto colon = whole.find(':');
  if (colon == std::string_view::npos) throw ParseError("function spec needs 'family:parameters', got '" + std::string(whole) + "'");
  FunctionSpec spec;
  spec.family = lowercase(trim(whole.substr(0, colon)));
  const auto rest = whole.substr(colon + 1);
  if (spec.family == "table") {
    if (rest.empty()) throw ParseError("table spec needs a path");
    spec.path = std::string(rest);
    return spec;
  }
  const Arity arity = family_arity(spec.family);
  std::size_t start = 0;
  while (true) {
    const auto comma = rest.find(',', start);
    spec.params.push_back(parse_param(rest.substr(start, comma == std::string_view::npos ? rest.npos : comma - start), whole));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (spec.params.size() < arity.min_params || spec.params.size() > arity.max_params) {
    throw ParseError("wrong number of parameters for '" + spec.family + "'");
  }
  validate(spec);
  return spec;
}

std::string canonical_name(const FunctionSpec& spec) {
  if (spec.family == "table") return "table:" + spec.path;
  std::string out = spec.family + ":";
  for (std::size_t j = 0; j < spec.params.size(); ++j) {
    if (j > 0) out += ',';
    out += std::to_string(spec.params[j]);
  }
  return out;
}

unsigned spec_arity(const FunctionSpec& spec) {
  if (spec.family == "table") return load_bft(spec.path).arity();
  const auto n = raw_arity(spec);
  if (n > kMaxOracleArity) throw CapacityError("function has more than 2^20 variables");
  return static_cast<unsigned>(n);
}

BooleanFunction build(const FunctionSpec& spec) {
  if (spec.family == "table") return load_bft(spec.path);
  const auto n = raw_arity(spec);
  if (n > kMaxTableArity) {
    throw CapacityError("'" + canonical_name(spec) + "' has n = " + std::to_string(n) +
                        " variables; truth tables stop at 24 (use an oracle-based estimate)");
  }
  if ((spec.family == "graph-triangle" || spec.family == "graph-connected") && spec.params[0] > kMaxGraphTableVertices) {
    throw CapacityError("graph families are tabulated for v <= 7");
  }
  const FamilyEvaluator eval(spec);
  return BooleanFunction::from_predicate(static_cast<unsigned>(n), [&](Mask x) {
    return eval([x](unsigned j) { return ((x >> j) & 1U) != 0; });
  });
}

BooleanFunction build(std::string_view text) { return build(parse_function_spec(text)); }

FunctionOracle build_oracle(const FunctionSpec& spec) {
  if (spec.family == "table") return table_oracle(load_bft(spec.path));
  const unsigned n = spec_arity(spec);
  auto eval = std::make_shared<const FamilyEvaluator>(spec);
  const bool monotone = spec.family != "parity";
  return FunctionOracle(
      n,
      [eval, n](const Point& x) {
        if (x.size() != n) throw DomainError("point has the wrong number of coordinates");
        return (*eval)([&x](unsigned j) { return x[j] != 0; }) ? 1 : -1;
      },
      monotone);
}

const std::vector<FamilyInfo>& catalog_families() {
  static const std::vector<FamilyInfo> families = {
      {"dictator", "i[,n]", "+1 iff x_i = 1; n defaults to i", true},
      {"and", "n", "+1 iff every coordinate is 1", true},
      {"or", "n", "+1 iff some coordinate is 1", true},
      {"majority", "n (odd)", "+1 iff more than n/2 coordinates are 1", true},
      {"parity", "n", "+1 iff an odd number of coordinates are 1", false},
      {"threshold", "n,k", "+1 iff at least k coordinates are 1 (0 <= k <= n+1)", true},
      {"tribes", "w,s", "OR of s disjoint ANDs of width w; n = w*s", true},
      {"graph-triangle", "v", "edge variables of K_v; +1 iff the graph contains a triangle", true},
      {"graph-connected", "v", "edge variables of K_v; +1 iff the graph is connected and spanning", true},
      {"random-monotone-dnf", "n,t,w,seed", "OR of t random width-w terms drawn with xorshift64*", true},
      {"table", "<path>", "truth table read from a BFT1 file", false},
  };
  return families;
}

std::vector<std::pair<unsigned, unsigned>> graph_edges(unsigned v) {
  std::vector<std::pair<unsigned, unsigned>> edges;
  for (unsigned a = 0; a < v; ++a) {
    for (unsigned b = a + 1; b < v; ++b) edges.emplace_back(a, b);
  }
  return edges;
}

std::vector<std::vector<unsigned>> random_dnf_terms(unsigned n, unsigned terms, unsigned width, std::uint64_t seed) {
  if (width > n) throw DomainError("term width exceeds n");
  Xorshift64Star rng(seed);
  std::vector<unsigned> pool(n);
  std::vector<std::vector<unsigned>> out;
  out.reserve(terms);
  for (unsigned t = 0; t < terms; ++t) {
    // Partial Fisher-Yates over a freshly ordered pool.
    std::iota(pool.begin(), pool.end(), 0U);
    for (unsigned j = 0; j < width; ++j) {
      const auto r = j + static_cast<unsigned>(rng.below(n - j));
      std::swap(pool[j], pool[r]);
    }
    std::vector<unsigned> term(pool.begin(), pool.begin() + width);
    std::sort(term.begin(), term.end());
    out.push_back(std::move(term));
  }
  return out;
}

}  // namespace ctl
