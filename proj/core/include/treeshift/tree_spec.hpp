#ifndef TREESHIFT_TREE_SPEC_HPP
#define TREESHIFT_TREE_SPEC_HPP

// Tree-shift specifications: which height-2 patterns are allowed on the
// d-ary tree.
//
// Design notes
// ------------
// * A specification over alphabet A with arity d assigns to every root symbol
//   the set of allowed child tuples.  The forbidden set is always the exact
//   complement, so we store only the allowed tables (for sparse allowed sets
//   the complement is astronomically large) and expose the forbidden count
//   arithmetically.
// * Only height-2 ("Markov") constraints are expressible.  The document
//   format makes deeper patterns unrepresentable on purpose; the parser points
//   at the restriction when someone tries to nest tuples.
// * The document format is a single JSON object:
//
//     { "d": 2,
//       "alphabet": ["a", "b"],
//       "forbidden": [["a", ["a","b"]], ["b", ["b","b"]]] }
//
//   with exactly one of "forbidden" / "allowed" present, entries referring to
//   symbols by name.  Canonical serialization always emits the allowed form,
//   entries sorted by root name and then child names, with compact spacing —
//   so byte equality of serializations means equality of specifications.
// * Pruning removes symbols that root no allowed tuple, together with every
//   tuple mentioning a removed symbol, to fixpoint.  On a pruned spec every
//   locally consistent finite labeling extends to a point of the shift, which
//   is what makes the height-n block counters meaningful.

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "treeshift/alphabet.hpp"

namespace treeshift {

class TreeShiftSpec {
public:
  // Empty placeholder; real specs come from the validating constructor.
  TreeShiftSpec() = default;

  // `allowed` is indexed by root symbol; tuples are deduplicated and kept
  // sorted lexicographically.  Validates tuple arity and symbol range.
  TreeShiftSpec(Alphabet alphabet, int arity,
                std::vector<std::vector<ChildTuple>> allowed);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  int arity() const noexcept { return arity_; }
  int symbol_count() const noexcept { return alphabet_.size(); }

  const std::vector<ChildTuple>& allowed(SymbolId root) const {
    return allowed_.at(static_cast<std::size_t>(root));
  }
  const std::vector<std::vector<ChildTuple>>& allowed_tables() const noexcept {
    return allowed_;
  }

  bool is_allowed(const Pattern2& pattern) const;

  // Number of allowed patterns over all roots.
  std::uint64_t allowed_count() const noexcept;
  // |A|^(d+1) − allowed_count(), computed exactly.
  mpz_class forbidden_count() const;

  // True iff every symbol roots at least one tuple (pruning fixpoint:
  // tuples only mention present symbols by construction).
  bool is_pruned() const noexcept;

  bool operator==(const TreeShiftSpec& other) const {
    return alphabet_ == other.alphabet_ && arity_ == other.arity_ &&
           allowed_ == other.allowed_;
  }

private:
  Alphabet alphabet_;
  int arity_ = 0;
  std::vector<std::vector<ChildTuple>> allowed_;
};

// ── parsing and serialization ──────────────────────────────────────────────

// Parses the JSON document format described above.  Throws Parse errors with
// entry locations for malformed documents; throws a Budget error when a
// forbidden-form document would require enumerating more than ~4M child
// tuples per root (use the allowed form for such alphabets).
TreeShiftSpec parse_spec(std::string_view document);

// Canonical serialization (see design notes).  parse_spec ∘ serialize_spec is
// the identity on specs, and serialize_spec ∘ parse_spec is the identity on
// canonical documents.
std::string serialize_spec(const TreeShiftSpec& spec);

// ── pruning ────────────────────────────────────────────────────────────────

struct PruneResult {
  TreeShiftSpec spec;                  // over the surviving sub-alphabet
  std::vector<std::string> removed;    // names of removed symbols, in removal order
  bool changed = false;
};

// Removes symbols with no allowed tuple and tuples referencing removed
// symbols, to fixpoint.  Throws a Domain error ("empty shift") when every
// symbol is removed.
PruneResult prune_dead_symbols(const TreeShiftSpec& spec);

}  // namespace treeshift

#endif  // TREESHIFT_TREE_SPEC_HPP
