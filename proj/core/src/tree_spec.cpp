#include "treeshift/tree_spec.hpp"

#include <algorithm>
#include <utility>

#include <json.hpp>

namespace treeshift {

namespace {

using nlohmann::json;

// Complement enumeration caps for forbidden-form documents.  The allowed form
// has no cap (entries are explicit), so these only bound how large an
// alphabet may describe itself by its complement.
constexpr std::uint64_t kComplementColumnCap = std::uint64_t{1} << 18;
constexpr std::uint64_t kComplementTotalCap = std::uint64_t{1} << 20;

}  // namespace

TreeShiftSpec::TreeShiftSpec(Alphabet alphabet, int arity,
                             std::vector<std::vector<ChildTuple>> allowed)
    : alphabet_(std::move(alphabet)), arity_(arity), allowed_(std::move(allowed)) {
  if (arity_ < 1) throw_parse("arity d must be at least 1");
  const int k = alphabet_.size();
  if (static_cast<int>(allowed_.size()) != k)
    throw_domain("allowed tables must have one entry per symbol");
  for (auto& table : allowed_) {
    for (const auto& tuple : table) {
      if (static_cast<int>(tuple.size()) != arity_)
        throw_domain("allowed tuple arity does not match d");
      for (SymbolId s : tuple)
        if (s < 0 || s >= k) throw_domain("allowed tuple references an out-of-range symbol");
    }
    std::sort(table.begin(), table.end());
    table.erase(std::unique(table.begin(), table.end()), table.end());
  }
}

bool TreeShiftSpec::is_allowed(const Pattern2& pattern) const {
  if (pattern.root < 0 || pattern.root >= symbol_count()) return false;
  const auto& table = allowed_[static_cast<std::size_t>(pattern.root)];
  return std::binary_search(table.begin(), table.end(), pattern.children);
}

std::uint64_t TreeShiftSpec::allowed_count() const noexcept {
  std::uint64_t n = 0;
  for (const auto& table : allowed_) n += table.size();
  return n;
}

mpz_class TreeShiftSpec::forbidden_count() const {
  mpz_class total;
  mpz_ui_pow_ui(total.get_mpz_t(), static_cast<unsigned long>(alphabet_.size()),
                static_cast<unsigned long>(arity_ + 1));
  return total - mpz_class(static_cast<unsigned long>(allowed_count()));
}

bool TreeShiftSpec::is_pruned() const noexcept {
  for (const auto& table : allowed_)
    if (table.empty()) return false;
  return true;
}

// ── parsing ────────────────────────────────────────────────────────────────

namespace {

// Reads one [root, [child...]] entry; `where` names the list for messages.
Pattern2 parse_entry(const json& entry, const Alphabet& alphabet, int arity,
                     const char* where, std::size_t index) {
  const std::string at = std::string(where) + " entry #" + std::to_string(index);
  if (!entry.is_array() || entry.size() != 2)
    throw_parse(at + ": expected [root, [child_1, ..., child_d]]");
  if (!entry[0].is_string())
    throw_parse(at + ": root must be a symbol name");
  const auto root = alphabet.find(entry[0].get<std::string>());
  if (!root) throw_parse(at + ": unknown symbol '" + entry[0].get<std::string>() + "'");
  if (!entry[1].is_array())
    throw_parse(at + ": children must be an array of symbol names");
  const auto& children = entry[1];
  if (static_cast<int>(children.size()) != arity)
    throw_parse(at + ": expected exactly " + std::to_string(arity) +
                " children (got " + std::to_string(children.size()) + ")");
  Pattern2 pattern;
  pattern.root = *root;
  pattern.children.reserve(children.size());
  for (const auto& child : children) {
    if (child.is_array() || child.is_object())
      throw_parse(at + ": nested patterns are not expressible; only height-2 "
                       "(Markov) constraints are supported");
    if (!child.is_string())
      throw_parse(at + ": children must be symbol names");
    const auto id = alphabet.find(child.get<std::string>());
    if (!id) throw_parse(at + ": unknown symbol '" + child.get<std::string>() + "'");
    pattern.children.push_back(*id);
  }
  return pattern;
}

std::vector<Pattern2> parse_entries(const json& list, const Alphabet& alphabet,
                                    int arity, const char* where) {
  if (!list.is_array()) throw_parse(std::string(where) + " must be an array of entries");
  std::vector<Pattern2> patterns;
  patterns.reserve(list.size());
  for (std::size_t i = 0; i < list.size(); ++i)
    patterns.push_back(parse_entry(list[i], alphabet, arity, where, i));
  // Duplicate detection with a location: report the second occurrence.
  auto seen = patterns;
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    std::vector<Pattern2> prefix;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
      if (std::find(prefix.begin(), prefix.end(), patterns[i]) != prefix.end())
        throw_parse(std::string(where) + " entry #" + std::to_string(i) + " duplicates " +
                    format_pattern(alphabet, patterns[i]));
      prefix.push_back(patterns[i]);
    }
  }
  return patterns;
}

std::vector<std::vector<ChildTuple>> tables_from_allowed(const std::vector<Pattern2>& patterns,
                                                         int k) {
  std::vector<std::vector<ChildTuple>> tables(static_cast<std::size_t>(k));
  for (const auto& p : patterns) tables[static_cast<std::size_t>(p.root)].push_back(p.children);
  return tables;
}

std::vector<std::vector<ChildTuple>> tables_from_forbidden(const std::vector<Pattern2>& patterns,
                                                           int k, int d) {
  const std::uint64_t cols = tuple_count(k, d);
  if (cols > kComplementColumnCap ||
      cols * static_cast<std::uint64_t>(k) > kComplementTotalCap)
    throw_budget("forbidden-form document needs all k^d child tuples enumerated "
                 "(k^d = " + std::to_string(cols) + "); list the allowed patterns instead");
  std::vector<std::vector<std::uint64_t>> forbidden_ranks(static_cast<std::size_t>(k));
  for (const auto& p : patterns)
    forbidden_ranks[static_cast<std::size_t>(p.root)].push_back(tuple_index(p.children, k));
  std::vector<std::vector<ChildTuple>> tables(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    auto& ranks = forbidden_ranks[static_cast<std::size_t>(i)];
    std::sort(ranks.begin(), ranks.end());
    auto next = ranks.begin();
    for (std::uint64_t c = 0; c < cols; ++c) {
      if (next != ranks.end() && *next == c) {
        ++next;
        continue;
      }
      tables[static_cast<std::size_t>(i)].push_back(tuple_from_index(c, k, d));
    }
  }
  return tables;
}

}  // namespace

TreeShiftSpec parse_spec(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw_parse(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw_parse("document must be a single JSON object");

  for (const auto& [key, _] : doc.items()) {
    if (key != "d" && key != "alphabet" && key != "forbidden" && key != "allowed")
      throw_parse("unknown field '" + key + "' (expected d, alphabet, and one of forbidden/allowed)");
  }
  if (!doc.contains("d") || !doc["d"].is_number_integer())
    throw_parse("field 'd' (integer arity) is required");
  const std::int64_t d_raw = doc["d"].get<std::int64_t>();
  if (d_raw < 1 || d_raw > 64) throw_parse("arity d must be in [1, 64]");
  const int d = static_cast<int>(d_raw);

  if (!doc.contains("alphabet") || !doc["alphabet"].is_array())
    throw_parse("field 'alphabet' (array of symbol names) is required");
  std::vector<std::string> names;
  for (const auto& name : doc["alphabet"]) {
    if (!name.is_string()) throw_parse("alphabet entries must be strings");
    names.push_back(name.get<std::string>());
  }
  Alphabet alphabet(std::move(names));
  const int k = alphabet.size();

  const bool has_forbidden = doc.contains("forbidden");
  const bool has_allowed = doc.contains("allowed");
  if (has_forbidden == has_allowed)
    throw_parse("exactly one of 'forbidden' / 'allowed' must be present");

  std::vector<std::vector<ChildTuple>> tables;
  if (has_allowed) {
    auto patterns = parse_entries(doc["allowed"], alphabet, d, "allowed");
    tables = tables_from_allowed(patterns, k);
  } else {
    auto patterns = parse_entries(doc["forbidden"], alphabet, d, "forbidden");
    tables = tables_from_forbidden(patterns, k, d);
  }
  return TreeShiftSpec(std::move(alphabet), d, std::move(tables));
}

std::string serialize_spec(const TreeShiftSpec& spec) {
  // Entries sorted by (root name, child names) — see header design notes.
  std::vector<std::pair<std::string, std::vector<std::string>>> entries;
  const auto& alphabet = spec.alphabet();
  for (SymbolId i = 0; i < spec.symbol_count(); ++i) {
    for (const auto& tuple : spec.allowed(i)) {
      std::vector<std::string> children;
      children.reserve(tuple.size());
      for (SymbolId s : tuple) children.push_back(alphabet.name(s));
      entries.emplace_back(alphabet.name(i), std::move(children));
    }
  }
  std::sort(entries.begin(), entries.end());

  json doc;
  doc["d"] = spec.arity();
  doc["alphabet"] = alphabet.names();
  json list = json::array();
  for (auto& [root, children] : entries) list.push_back(json::array({root, children}));
  doc["allowed"] = std::move(list);
  return doc.dump();
}

// ── pruning ────────────────────────────────────────────────────────────────

PruneResult prune_dead_symbols(const TreeShiftSpec& spec) {
  const int k = spec.symbol_count();
  std::vector<bool> alive(static_cast<std::size_t>(k), true);
  std::vector<std::string> removed;

  auto tuple_alive = [&](const ChildTuple& tuple) {
    for (SymbolId s : tuple)
      if (!alive[static_cast<std::size_t>(s)]) return false;
    return true;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (SymbolId i = 0; i < k; ++i) {
      if (!alive[static_cast<std::size_t>(i)]) continue;
      bool roots_something = false;
      for (const auto& tuple : spec.allowed(i)) {
        if (tuple_alive(tuple)) {
          roots_something = true;
          break;
        }
      }
      if (!roots_something) {
        alive[static_cast<std::size_t>(i)] = false;
        removed.push_back(spec.alphabet().name(i));
        changed = true;
      }
    }
  }

  std::vector<std::string> surviving;
  std::vector<SymbolId> remap(static_cast<std::size_t>(k), -1);
  for (SymbolId i = 0; i < k; ++i) {
    if (alive[static_cast<std::size_t>(i)]) {
      remap[static_cast<std::size_t>(i)] = static_cast<SymbolId>(surviving.size());
      surviving.push_back(spec.alphabet().name(i));
    }
  }
  if (surviving.empty())
    throw_domain("empty shift: pruning removed every symbol");

  std::vector<std::vector<ChildTuple>> tables(surviving.size());
  for (SymbolId i = 0; i < k; ++i) {
    if (!alive[static_cast<std::size_t>(i)]) continue;
    for (const auto& tuple : spec.allowed(i)) {
      if (!tuple_alive(tuple)) continue;
      ChildTuple remapped;
      remapped.reserve(tuple.size());
      for (SymbolId s : tuple) remapped.push_back(remap[static_cast<std::size_t>(s)]);
      tables[static_cast<std::size_t>(remap[static_cast<std::size_t>(i)])].push_back(std::move(remapped));
    }
  }

  PruneResult result{
      TreeShiftSpec(Alphabet(std::move(surviving)), spec.arity(), std::move(tables)),
      std::move(removed), false};
  result.changed = !result.removed.empty();
  return result;
}

}  // namespace treeshift
