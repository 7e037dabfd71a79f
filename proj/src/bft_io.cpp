#include "ctl/errors.hpp"
#include "ctl/space.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace ctl {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
  return -1;
}

std::size_t nibble_count(unsigned n) { return ((std::size_t{1} << n) + 3) / 4; }

}  // namespace

void write_bft(std::ostream& out, const BooleanFunction& f) {
  const unsigned n = f.arity();
  out << "bft 1\n" << n << '\n';
  const auto& words = f.words();
  const std::size_t nibbles = nibble_count(n);
  std::string hex(nibbles, '0');
  for (std::size_t j = 0; j < nibbles; ++j) {
    const std::size_t bit = 4 * j;
    hex[j] = kHexDigits[(words[bit >> 6] >> (bit & 63)) & 0xF];
  }
  out << hex << '\n';
}

BooleanFunction read_bft(std::istream& in) {
  std::string magic;
  if (!std::getline(in, magic)) throw ParseError("BFT1: missing header line");
  if (!magic.empty() && magic.back() == '\r') magic.pop_back();
  if (magic != "bft 1") throw ParseError("BFT1: first line must be 'bft 1'");

  std::string n_line;
  if (!std::getline(in, n_line)) throw ParseError("BFT1: missing arity line");
  if (!n_line.empty() && n_line.back() == '\r') n_line.pop_back();
  if (n_line.empty() || n_line.size() > 2 || n_line.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("BFT1: arity line must be a decimal integer");
  }
  const unsigned n = static_cast<unsigned>(std::stoul(n_line));
  if (n < 1 || n > kMaxTableArity) throw CapacityError("BFT1: n must be between 1 and 24");

  std::string hex;
  if (!std::getline(in, hex)) throw ParseError("BFT1: missing table line");
  if (!hex.empty() && hex.back() == '\r') hex.pop_back();
  if (hex.size() != nibble_count(n)) {
    throw ParseError("BFT1: expected " + std::to_string(nibble_count(n)) + " hex digits, got " +
                     std::to_string(hex.size()));
  }

  std::vector<std::uint64_t> words(((std::size_t{1} << n) + 63) / 64, 0);
  const std::uint64_t size = std::uint64_t{1} << n;
  for (std::size_t j = 0; j < hex.size(); ++j) {
    const int v = hex_value(hex[j]);
    if (v < 0) throw ParseError("BFT1: table must be lowercase hex");
    const std::uint64_t bit = 4 * j;
    for (unsigned b = 0; b < 4; ++b) {
      if (!((v >> b) & 1)) continue;
      if (bit + b >= size) throw ParseError("BFT1: padding bits must be zero");
      words[(bit + b) >> 6] |= std::uint64_t{1} << ((bit + b) & 63);
    }
  }
  return BooleanFunction(n, std::move(words));
}

void save_bft(const std::string& path, const BooleanFunction& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  write_bft(out, f);
  if (!out) throw ParseError("failed writing '" + path + "'");
}

BooleanFunction load_bft(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_bft(in);
}

}  // namespace ctl
