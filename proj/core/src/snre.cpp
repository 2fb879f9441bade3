#include "treeshift/snre.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace treeshift {

Snre build_snre(const TreeShiftSpec& spec) {
  if (!spec.is_pruned())
    throw_domain("counting system requires a pruned spec: some symbol roots no allowed tuple "
                 "(run prune_dead_symbols first)");
  Snre snre;
  snre.alphabet = spec.alphabet();
  snre.arity = spec.arity();
  snre.terms = spec.allowed_tables();
  snre.initial.reserve(snre.terms.size());
  for (const auto& table : snre.terms)
    snre.initial.push_back(static_cast<std::int64_t>(table.size()));
  return snre;
}

// ── indicator matrix ───────────────────────────────────────────────────────

IndicatorMatrix indicator_matrix(const Snre& snre) {
  IndicatorMatrix im;
  im.rows = snre.symbol_count();
  im.arity = snre.arity;
  im.cols = tuple_count(im.rows, im.arity);
  im.row_cols.reserve(snre.terms.size());
  for (const auto& table : snre.terms) {
    std::vector<std::uint64_t> cols;
    cols.reserve(table.size());
    // terms are sorted lexicographically, and lexicographic order equals rank
    // order, so the column ids come out sorted for free.
    for (const auto& tuple : table) cols.push_back(tuple_index(tuple, im.rows));
    im.row_cols.push_back(std::move(cols));
  }
  return im;
}

std::vector<std::vector<std::uint8_t>> IndicatorMatrix::to_dense(std::uint64_t max_cells) const {
  const std::uint64_t cells = static_cast<std::uint64_t>(rows) * cols;
  if (cols != 0 && cells / cols != static_cast<std::uint64_t>(rows))
    throw_budget("indicator matrix too large to densify");
  if (cells > max_cells)
    throw_budget("dense indicator matrix would need " + std::to_string(cells) +
                 " cells (cap " + std::to_string(max_cells) + ")");
  std::vector<std::vector<std::uint8_t>> dense(
      static_cast<std::size_t>(rows), std::vector<std::uint8_t>(static_cast<std::size_t>(cols), 0));
  for (int i = 0; i < rows; ++i)
    for (std::uint64_t c : row_cols[static_cast<std::size_t>(i)])
      dense[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] = 1;
  return dense;
}

std::vector<std::vector<ChildTuple>> terms_from_indicator(const IndicatorMatrix& im) {
  std::vector<std::vector<ChildTuple>> terms;
  terms.reserve(im.row_cols.size());
  for (const auto& cols : im.row_cols) {
    std::vector<ChildTuple> table;
    table.reserve(cols.size());
    for (std::uint64_t c : cols) table.push_back(tuple_from_index(c, im.rows, im.arity));
    terms.push_back(std::move(table));
  }
  return terms;
}

// ── trajectories ───────────────────────────────────────────────────────────

std::vector<std::vector<mpz_class>> evaluate_exact(const Snre& snre, int n_max,
                                                   const ExactEvalOptions& options) {
  if (n_max < 1) throw_domain("evaluate_exact requires n_max >= 1");
  const int k = snre.symbol_count();
  std::vector<std::vector<mpz_class>> levels;
  levels.reserve(static_cast<std::size_t>(n_max));

  std::vector<mpz_class> current(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    if (snre.initial[static_cast<std::size_t>(i)] < 1)
      throw_domain("initial counts must be >= 1");
    current[static_cast<std::size_t>(i)] = snre.initial[static_cast<std::size_t>(i)];
  }
  levels.push_back(current);

  for (int n = 2; n <= n_max; ++n) {
    std::vector<mpz_class> next(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      mpz_class sum = 0;
      for (const auto& tuple : snre.terms[static_cast<std::size_t>(i)]) {
        mpz_class prod = current[static_cast<std::size_t>(tuple[0])];
        for (std::size_t j = 1; j < tuple.size(); ++j)
          prod *= current[static_cast<std::size_t>(tuple[j])];
        sum += prod;
      }
      if (static_cast<std::int64_t>(mpz_sizeinbase(sum.get_mpz_t(), 10)) > options.digit_budget)
        throw_budget("exact count at level " + std::to_string(n) + " exceeds the digit budget of " +
                     std::to_string(options.digit_budget));
      next[static_cast<std::size_t>(i)] = std::move(sum);
    }
    levels.push_back(next);
    current = std::move(next);
  }
  return levels;
}

std::vector<std::vector<double>> evaluate_log(const Snre& snre, int n_max) {
  if (n_max < 1) throw_domain("evaluate_log requires n_max >= 1");
  const int k = snre.symbol_count();
  std::vector<std::vector<double>> levels;
  levels.reserve(static_cast<std::size_t>(n_max));

  std::vector<double> current(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    if (snre.initial[static_cast<std::size_t>(i)] < 1)
      throw_domain("initial counts must be >= 1");
    current[static_cast<std::size_t>(i)] =
        std::log(static_cast<double>(snre.initial[static_cast<std::size_t>(i)]));
  }
  levels.push_back(current);

  std::vector<double> exponents;
  for (int n = 2; n <= n_max; ++n) {
    std::vector<double> next(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      exponents.clear();
      for (const auto& tuple : snre.terms[static_cast<std::size_t>(i)]) {
        double s = 0.0;
        for (SymbolId j : tuple) s += current[static_cast<std::size_t>(j)];
        exponents.push_back(s);
      }
      // log-sum-exp across the tuples of this symbol
      const double m = *std::max_element(exponents.begin(), exponents.end());
      double acc = 0.0;
      for (double s : exponents) acc += std::exp(s - m);
      next[static_cast<std::size_t>(i)] = m + std::log(acc);
    }
    levels.push_back(next);
    current = std::move(next);
  }
  return levels;
}

// ── entropy estimator ──────────────────────────────────────────────────────

EstimatorResult entropy_estimate(const Snre& snre, int n_max, EstimatorVariant variant) {
  const auto logs = evaluate_log(snre, n_max);
  EstimatorResult result;
  result.values.reserve(logs.size());
  for (std::size_t level = 0; level < logs.size(); ++level) {
    const auto& b = logs[level];
    double inner;
    if (variant == EstimatorVariant::SumCounts) {
      // ln Σ_i a_n(i) via log-sum-exp of the b_n
      const double m = *std::max_element(b.begin(), b.end());
      double acc = 0.0;
      for (double v : b) acc += std::exp(v - m);
      inner = m + std::log(acc);
    } else {
      // Σ_i ln a_n(i)
      inner = 0.0;
      for (double v : b) inner += v;
    }
    if (inner <= 0.0) {
      // Every count is still 1 (single-symbol degenerate systems): the
      // double-log is undefined here and stays undefined, so stop.
      result.degenerate = true;
      break;
    }
    result.values.push_back(std::log(inner) / static_cast<double>(level + 1));
  }
  return result;
}

// ── essential symbols ──────────────────────────────────────────────────────

std::vector<bool> essential_symbols(const Snre& snre) {
  const int k = snre.symbol_count();
  // Reverse adjacency of "i mentions j in some tuple".
  std::vector<std::vector<int>> mentioned_by(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    for (const auto& tuple : snre.terms[static_cast<std::size_t>(i)])
      for (SymbolId j : tuple) {
        if (!seen[static_cast<std::size_t>(j)]) {
          seen[static_cast<std::size_t>(j)] = true;
          mentioned_by[static_cast<std::size_t>(j)].push_back(i);
        }
      }
  }
  std::vector<bool> essential(static_cast<std::size_t>(k), false);
  std::deque<int> queue;
  for (int i = 0; i < k; ++i) {
    if (snre.initial[static_cast<std::size_t>(i)] >= 2) {
      essential[static_cast<std::size_t>(i)] = true;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    const int j = queue.front();
    queue.pop_front();
    for (int i : mentioned_by[static_cast<std::size_t>(j)]) {
      if (!essential[static_cast<std::size_t>(i)]) {
        essential[static_cast<std::size_t>(i)] = true;
        queue.push_back(i);
      }
    }
  }
  return essential;
}

// ── brute-force oracle ─────────────────────────────────────────────────────

namespace {

// Node count of the complete d-ary tree with `height` levels; saturates at
// the budget checks downstream (heights here are tiny by construction).
std::uint64_t node_count(int d, int height) {
  std::uint64_t n = 0;
  std::uint64_t level = 1;
  for (int h = 0; h < height; ++h) {
    n += level;
    if (level > (std::uint64_t{1} << 40)) throw_budget("tree too deep for the brute-force oracle");
    level *= static_cast<std::uint64_t>(d);
  }
  return n;
}

}  // namespace

std::vector<mpz_class> brute_force_count(const TreeShiftSpec& spec, int height,
                                         const BruteForceOptions& options) {
  if (height < 1) throw_domain("brute_force_count requires height >= 1");
  if (!spec.is_pruned())
    throw_domain("brute-force counting requires a pruned spec (local consistency must imply "
                 "extendability for the counts to mean block counts)");
  const int k = spec.symbol_count();
  const int d = spec.arity();
  const std::uint64_t n_nodes = node_count(d, height);

  // Total enumeration size = k^n_nodes across all root symbols.
  std::uint64_t total = 1;
  for (std::uint64_t v = 0; v < n_nodes; ++v) {
    if (total > options.enumeration_budget / static_cast<std::uint64_t>(k))
      throw_budget("brute-force enumeration of " + std::to_string(n_nodes) +
                   "-node labelings exceeds the budget of " +
                   std::to_string(options.enumeration_budget));
    total *= static_cast<std::uint64_t>(k);
  }
  (void)total;

  std::vector<mpz_class> counts(static_cast<std::size_t>(k), mpz_class(0));
  if (height == 1) {
    // A single root node; no constraint applies.
    for (auto& c : counts) c = 1;
    return counts;
  }

  // Flat allowed mask over tuple ranks, per root symbol.
  const std::uint64_t cols = tuple_count(k, d);
  std::vector<std::vector<std::uint8_t>> allowed_mask(
      static_cast<std::size_t>(k), std::vector<std::uint8_t>(static_cast<std::size_t>(cols), 0));
  for (SymbolId r = 0; r < k; ++r)
    for (const auto& tuple : spec.allowed(r))
      allowed_mask[static_cast<std::size_t>(r)][static_cast<std::size_t>(tuple_index(tuple, k))] = 1;

  // BFS indexing: node v has children v*d+1 .. v*d+d.  Internal nodes are the
  // first `internal` indices (levels 0..height-2).
  const std::uint64_t internal = node_count(d, height - 1);

  std::vector<int> labels(static_cast<std::size_t>(n_nodes), 0);
  for (SymbolId root = 0; root < k; ++root) {
    labels.assign(labels.size(), 0);
    labels[0] = root;
    std::uint64_t valid = 0;
    while (true) {
      // Validity: every internal node's (label, children labels) is allowed.
      bool ok = true;
      for (std::uint64_t v = 0; v < internal; ++v) {
        std::uint64_t rank = 0;
        const std::uint64_t base = v * static_cast<std::uint64_t>(d) + 1;
        for (int c = 0; c < d; ++c)
          rank = rank * static_cast<std::uint64_t>(k) +
                 static_cast<std::uint64_t>(labels[static_cast<std::size_t>(base + static_cast<std::uint64_t>(c))]);
        if (!allowed_mask[static_cast<std::size_t>(labels[static_cast<std::size_t>(v)])]
                         [static_cast<std::size_t>(rank)]) {
          ok = false;
          break;
        }
      }
      if (ok) ++valid;

      // Odometer over the non-root nodes, last index fastest.
      std::size_t pos = labels.size() - 1;
      while (pos > 0) {
        if (++labels[pos] < k) break;
        labels[pos] = 0;
        --pos;
      }
      if (pos == 0) break;  // wrapped past the root: done
    }
    counts[static_cast<std::size_t>(root)] = valid;
  }
  return counts;
}

}  // namespace treeshift
