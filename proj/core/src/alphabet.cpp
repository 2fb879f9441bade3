#include "treeshift/alphabet.hpp"

#include <limits>
#include <utility>

namespace treeshift {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw_parse("alphabet must contain at least one symbol");
  index_.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw_parse("alphabet symbol names must be nonempty");
    auto [_, inserted] = index_.emplace(names_[i], static_cast<SymbolId>(i));
    if (!inserted) throw_parse("duplicate symbol '" + names_[i] + "' in alphabet");
  }
}

std::optional<SymbolId> Alphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t tuple_count(int k, int d) {
  if (k < 1 || d < 1) throw_domain("tuple_count requires k >= 1 and d >= 1");
  constexpr std::uint64_t cap = std::uint64_t{1} << 62;
  std::uint64_t count = 1;
  for (int i = 0; i < d; ++i) {
    if (count > cap / static_cast<std::uint64_t>(k))
      throw_budget("k^d does not fit in 62 bits; child tuples of this spec cannot be indexed");
    count *= static_cast<std::uint64_t>(k);
  }
  return count;
}

std::uint64_t tuple_index(const ChildTuple& tuple, int k) {
  std::uint64_t rank = 0;
  for (SymbolId s : tuple) rank = rank * static_cast<std::uint64_t>(k) + static_cast<std::uint64_t>(s);
  return rank;
}

ChildTuple tuple_from_index(std::uint64_t index, int k, int d) {
  ChildTuple tuple(static_cast<std::size_t>(d), 0);
  for (int pos = d - 1; pos >= 0; --pos) {
    tuple[static_cast<std::size_t>(pos)] = static_cast<SymbolId>(index % static_cast<std::uint64_t>(k));
    index /= static_cast<std::uint64_t>(k);
  }
  return tuple;
}

std::string format_tuple(const Alphabet& alphabet, const ChildTuple& tuple) {
  std::string out = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i > 0) out += ",";
    out += alphabet.name(tuple[i]);
  }
  out += ")";
  return out;
}

std::string format_pattern(const Alphabet& alphabet, const Pattern2& pattern) {
  return alphabet.name(pattern.root) + " -> " + format_tuple(alphabet, pattern.children);
}

}  // namespace treeshift
