#ifndef TREESHIFT_ALPHABET_HPP
#define TREESHIFT_ALPHABET_HPP

// Symbols, child tuples, and height-2 patterns.
//
// Design notes
// ------------
// * A symbol is an index into an Alphabet; names exist only at the I/O
//   boundary.  Everything downstream works with dense 0-based ids, which keeps
//   the hot loops (tuple enumeration, brute-force counting) on plain ints.
// * A ChildTuple is the ordered tuple of the d children under one node.  Order
//   matters: (a,b) and (b,a) are different patterns even though they induce
//   the same multiset (and therefore the same weighted-adjacency column
//   counts).
// * Tuples are ranked lexicographically with the first component most
//   significant.  tuple_index/tuple_from_index is the codec used for indicator
//   columns and for enumerating complements of allowed sets.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "treeshift/errors.hpp"

namespace treeshift {

using SymbolId = int;

class Alphabet {
public:
  // Empty placeholder; real alphabets come from the validating constructor.
  Alphabet() = default;

  // Validates: at least one symbol, names nonempty and pairwise distinct.
  explicit Alphabet(std::vector<std::string> names);

  int size() const noexcept { return static_cast<int>(names_.size()); }
  const std::string& name(SymbolId id) const { return names_.at(static_cast<std::size_t>(id)); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<SymbolId> find(std::string_view name) const;

  bool operator==(const Alphabet& other) const { return names_ == other.names_; }

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, SymbolId> index_;
};

// Ordered tuple of d child symbols.
using ChildTuple = std::vector<SymbolId>;

// Height-2 pattern: a root symbol together with its d children.
struct Pattern2 {
  SymbolId root = 0;
  ChildTuple children;

  friend auto operator<=>(const Pattern2&, const Pattern2&) = default;
};

// ── tuple codec ────────────────────────────────────────────────────────────
//
// Lexicographic rank of a tuple over a k-symbol alphabet; first component most
// significant.  tuple_count throws a budget error once k^d stops fitting in
// 63 bits — far beyond anything the rest of the toolkit can enumerate anyway.

std::uint64_t tuple_count(int k, int d);
std::uint64_t tuple_index(const ChildTuple& tuple, int k);
ChildTuple tuple_from_index(std::uint64_t index, int k, int d);

// Human-readable rendering, e.g. "(a,b,b)"; used by error messages and tests.
std::string format_tuple(const Alphabet& alphabet, const ChildTuple& tuple);
std::string format_pattern(const Alphabet& alphabet, const Pattern2& pattern);

}  // namespace treeshift

#endif  // TREESHIFT_ALPHABET_HPP
