#ifndef TREESHIFT_SNRE_HPP
#define TREESHIFT_SNRE_HPP

// The recursive counting system attached to a tree-shift specification.
//
// Design notes
// ------------
// * For each symbol i let a_n(i) be the number of valid labelings of the
//   complete d-ary tree with n+1 levels whose root is labeled i ("blocks of
//   height n+1 rooted at i").  These satisfy the recursion
//
//       a_n(i)  =  Σ_{t ∈ terms(i)}  Π_{j=1..d} a_{n-1}(t_j),
//       a_1(i)  =  |terms(i)|,
//
//   where terms(i) is the set of allowed child tuples under root i.  The
//   whole module is different views of that recursion:
//
//     evaluate_exact — arbitrary-precision trajectories (counts are doubly
//                      exponential: expect ~λ^n digits);
//     evaluate_log   — log-domain trajectories via log-sum-exp, overflow-free
//                      far past n = 60;
//     entropy_estimate — the normalized double-log sequence whose limit is
//                      the topological entropy.
//
// * brute_force_count is the independent oracle: it enumerates every labeling
//   of the height-n tree with an odometer and checks each against the allowed
//   tables.  It shares no code with the recursion, which is the point — on
//   pruned specs, brute_force_count(spec, n) must equal level n−1 of
//   evaluate_exact, entry by entry.
// * A symbol is *essential* when its counts eventually exceed 1.  By the
//   recursion this is a reachability question: i is essential iff i can reach
//   (via "j occurs in a tuple of terms(i)") some symbol with initial count
//   ≥ 2.  Inessential symbols contribute nothing to entropy, which is why the
//   spectral machinery later restricts attention to components that feed an
//   initial count ≥ 2.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "treeshift/tree_spec.hpp"

namespace treeshift {

struct Snre {
  Alphabet alphabet;
  int arity = 0;
  // terms[i]: allowed child tuples under root i, sorted lexicographically.
  std::vector<std::vector<ChildTuple>> terms;
  // initial[i] = a_1(i); equals |terms[i]| for systems derived from a spec,
  // but is carried explicitly so derived systems (reductions, realizations)
  // can override it.
  std::vector<std::int64_t> initial;

  int symbol_count() const noexcept { return static_cast<int>(terms.size()); }
};

// Derives the counting system of a spec.  Pre: spec is pruned (every symbol
// roots at least one tuple); throws a Domain error otherwise.
Snre build_snre(const TreeShiftSpec& spec);

// ── indicator matrix ───────────────────────────────────────────────────────
//
// The k × k^d 0/1 matrix whose (i, c) entry says whether the c-th child tuple
// (in lexicographic rank order) is allowed under root i.  Stored sparsely as
// sorted column ids per row; the dense form is only materialized on demand
// and is capped, since its width is exponential by construction.

struct IndicatorMatrix {
  int rows = 0;            // k
  int arity = 0;           // d
  std::uint64_t cols = 0;  // k^d
  std::vector<std::vector<std::uint64_t>> row_cols;  // sorted ranks per row

  // Throws a Budget error when rows*cols exceeds `max_cells`.
  std::vector<std::vector<std::uint8_t>> to_dense(
      std::uint64_t max_cells = (1u << 22)) const;
};

IndicatorMatrix indicator_matrix(const Snre& snre);

// Inverse of indicator_matrix up to the terms table: decodes every column id
// back into a tuple.  Round-trips with Snre::terms exactly.
std::vector<std::vector<ChildTuple>> terms_from_indicator(const IndicatorMatrix& im);

// ── trajectories ───────────────────────────────────────────────────────────

struct ExactEvalOptions {
  // Upper bound on the decimal digit count of any single a_n(i).  The counts
  // square every level, so this is the knob that keeps runaway requests from
  // exhausting memory.
  std::int64_t digit_budget = 10'000'000;
};

// Levels 1..n_max of the exact trajectory; result[n-1][i] = a_n(i).
// Throws a Budget error when a value would exceed the digit budget.
std::vector<std::vector<mpz_class>> evaluate_exact(const Snre& snre, int n_max,
                                                   const ExactEvalOptions& options = {});

// Levels 1..n_max of b_n(i) = ln a_n(i), computed entirely in the log domain
// (log-sum-exp across tuples).  No overflow concerns at any practical level.
std::vector<std::vector<double>> evaluate_log(const Snre& snre, int n_max);

// ── entropy estimator ──────────────────────────────────────────────────────
//
// Two equivalent normalizations of the double-log growth rate:
//   SumCounts: e_n = ln( ln Σ_i a_n(i) ) / n   (sum the counts, then ln ln)
//   SumLogs:   e_n = ln( Σ_i ln a_n(i) ) / n   (sum the logs, then ln)
// Both converge to the entropy; SumCounts is the literal definition, SumLogs
// trades one log for a sum and converges at the same rate.

enum class EstimatorVariant { SumCounts, SumLogs };

struct EstimatorResult {
  std::vector<double> values;   // e_1..e_n_max (may stop early if degenerate)
  bool degenerate = false;      // hit ln(0): every count still equals 1
};

EstimatorResult entropy_estimate(const Snre& snre, int n_max,
                                 EstimatorVariant variant = EstimatorVariant::SumCounts);

// ── essential symbols ──────────────────────────────────────────────────────

// essential[i] == true iff a_n(i) ≥ 2 for some n.  Least fixpoint of
// "initial ≥ 2, or some tuple contains an essential symbol".
std::vector<bool> essential_symbols(const Snre& snre);

// ── brute-force oracle ─────────────────────────────────────────────────────

struct BruteForceOptions {
  // Cap on k^(node count): the total number of labelings enumerated across
  // all root symbols.  The default admits d=2, k=3, height 4 (3^15 ≈ 14.3M).
  std::uint64_t enumeration_budget = 20'000'000;
};

// counts[i] = number of valid labelings of the complete d-ary tree of
// `height` levels whose root is labeled i, by exhaustive enumeration.
// Pre: spec pruned, height ≥ 1.  Throws a Budget error over budget.
std::vector<mpz_class> brute_force_count(const TreeShiftSpec& spec, int height,
                                         const BruteForceOptions& options = {});

}  // namespace treeshift

#endif  // TREESHIFT_SNRE_HPP
