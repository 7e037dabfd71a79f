#pragma once

// Standard Boolean functions and small monotone graph properties, built from
// compact spec strings such as `majority:5`, `tribes:2,3` or `table:f.bft`.
//
// Graph families use one variable per edge of K_v, in lexicographic order
// (1,2),(1,3),...,(1,v),(2,3),...; vertex pairs are 1-based in that listing.

#include "ctl/monte_carlo.hpp"
#include "ctl/space.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ctl {

struct FunctionSpec {
  std::string family;                 // lowercase
  std::vector<std::uint64_t> params;  // empty for `table`
  std::string path;                   // `table` only, verbatim
};

/// Throws ParseError for malformed strings and DomainError for parameters
/// outside a family's range (e.g. even majority).
FunctionSpec parse_function_spec(std::string_view text);

/// Lowercase `family:p1,p2,...`; parse_function_spec(canonical_name(s)) == s.
std::string canonical_name(const FunctionSpec& spec);

/// Number of variables (requires loading the file for `table`).
unsigned spec_arity(const FunctionSpec& spec);

/// Truth table; throws CapacityError beyond n = 24.
BooleanFunction build(const FunctionSpec& spec);
BooleanFunction build(std::string_view text);

/// Evaluation oracle, usable beyond the truth-table cap.
FunctionOracle build_oracle(const FunctionSpec& spec);

struct FamilyInfo {
  std::string name;
  std::string parameters;
  std::string description;
  bool monotone;
};

const std::vector<FamilyInfo>& catalog_families();

/// Edge list of K_v in the documented order, 0-based vertices.
std::vector<std::pair<unsigned, unsigned>> graph_edges(unsigned v);

/// Terms (0-based variable lists) of `random-monotone-dnf:n,t,w,seed`.
std::vector<std::vector<unsigned>> random_dnf_terms(unsigned n, unsigned terms, unsigned width, std::uint64_t seed);

}  // namespace ctl
