#include "treeshift/minimality.hpp"

#include <algorithm>
#include <cmath>

namespace treeshift {

// ── saving symbols ─────────────────────────────────────────────────────────

std::vector<bool> saving_symbols(const TreeShiftSpec& spec) {
  const int k = spec.symbol_count();
  std::vector<bool> saving(static_cast<std::size_t>(k), true);
  for (SymbolId a = 0; a < k; ++a) {
    for (SymbolId root = 0; root < k && saving[static_cast<std::size_t>(a)]; ++root) {
      if (root == a) continue;  // only patterns rooted elsewhere matter
      for (const auto& tuple : spec.allowed(root)) {
        if (std::find(tuple.begin(), tuple.end(), a) == tuple.end()) {
          saving[static_cast<std::size_t>(a)] = false;
          break;
        }
      }
    }
  }
  return saving;
}

// ── full entropy ───────────────────────────────────────────────────────────

FullEntropyCheck full_entropy_check(const TreeShiftSpec& spec, const EntropyOptions& options) {
  FullEntropyCheck check;
  const Snre snre = build_snre(spec);
  const auto essential = essential_symbols(snre);
  check.all_essential =
      std::all_of(essential.begin(), essential.end(), [](bool e) { return e; });
  check.report = tsft_entropy(snre, options);
  check.entropy = check.report.entropy;
  check.log_arity = std::log(static_cast<double>(spec.arity()));
  check.implication_ok =
      !check.all_essential || std::abs(check.entropy - check.log_arity) <= check.tolerance;
  return check;
}

// ── entropy drop under pattern removal ─────────────────────────────────────

namespace {

std::vector<std::string> names_where(const Alphabet& alphabet, const std::vector<bool>& flags) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < flags.size(); ++i)
    if (flags[i]) out.push_back(alphabet.name(static_cast<SymbolId>(i)));
  return out;
}

}  // namespace

DropAnalysis entropy_drop_analysis(const TreeShiftSpec& x, const Pattern2& removed,
                                   const EntropyOptions& options) {
  if (!x.is_allowed(removed))
    throw_domain("pattern " + format_pattern(x.alphabet(), removed) +
                 " is not allowed, so there is nothing to remove");

  DropAnalysis analysis;
  analysis.removed = removed;
  analysis.h1 = true;

  const Snre snre_x = build_snre(x);
  analysis.report_x = tsft_entropy(snre_x, options);
  analysis.h_x = analysis.report_x.entropy;
  analysis.saving_x = names_where(x.alphabet(), saving_symbols(x));
  {
    const auto essential = essential_symbols(snre_x);
    analysis.x_all_essential =
        std::all_of(essential.begin(), essential.end(), [](bool e) { return e; });
  }

  // Y: the same shift with the one pattern deleted.
  auto tables = x.allowed_tables();
  auto& table = tables[static_cast<std::size_t>(removed.root)];
  table.erase(std::remove(table.begin(), table.end(), removed.children), table.end());
  const TreeShiftSpec y_raw(x.alphabet(), x.arity(), std::move(tables));

  bool y_live = true;
  TreeShiftSpec y = y_raw;
  try {
    PruneResult prune = prune_dead_symbols(y_raw);
    analysis.y_pruned = prune.removed;
    y = std::move(prune.spec);
    if (!prune.changed) {
      // Pruning-stable; demand every surviving symbol occur as root or child.
      std::vector<bool> occurs(static_cast<std::size_t>(y.symbol_count()), false);
      for (SymbolId root = 0; root < y.symbol_count(); ++root) {
        if (!y.allowed(root).empty()) occurs[static_cast<std::size_t>(root)] = true;
        for (const auto& tuple : y.allowed(root))
          for (SymbolId child : tuple) occurs[static_cast<std::size_t>(child)] = true;
      }
      analysis.h2 = std::all_of(occurs.begin(), occurs.end(), [](bool o) { return o; });
    }
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::Domain) throw;
    y_live = false;  // pruning emptied the shift entirely
  }

  if (y_live) {
    const Snre snre_y = build_snre(y);
    analysis.report_y = tsft_entropy(snre_y, options);
    analysis.h_y = analysis.report_y.entropy;
    const auto essential_y = essential_symbols(snre_y);
    for (SymbolId s = 0; s < x.symbol_count(); ++s) {
      const auto& name = x.alphabet().name(s);
      const auto in_y = y.alphabet().find(name);
      if (!in_y || !essential_y[static_cast<std::size_t>(*in_y)])
        analysis.inessential_y.push_back(name);
    }
  } else {
    analysis.y_empty = true;
    analysis.h_y = 0.0;
    analysis.y_pruned = x.alphabet().names();
    analysis.inessential_y = x.alphabet().names();
  }

  analysis.predicted_drop = std::any_of(
      analysis.saving_x.begin(), analysis.saving_x.end(), [&](const std::string& name) {
        return std::find(analysis.inessential_y.begin(), analysis.inessential_y.end(), name) !=
               analysis.inessential_y.end();
      });
  analysis.observed_drop = analysis.h_y < analysis.h_x - analysis.tolerance;
  analysis.consistent = analysis.predicted_drop == analysis.observed_drop;
  analysis.hypotheses_ok =
      analysis.h1 && analysis.h2 && analysis.x_all_essential && !analysis.saving_x.empty();
  analysis.out_of_hypothesis = !analysis.hypotheses_ok;
  if (analysis.predicted_drop && x.arity() >= 2)
    analysis.drop_bound = std::log(static_cast<double>(x.arity() - 1));
  return analysis;
}

}  // namespace treeshift
