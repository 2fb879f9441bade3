#ifndef TREESHIFT_REDUCTION_HPP
#define TREESHIFT_REDUCTION_HPP

// Reductions of a counting system and the entropy maximization over them.
//
// Design notes
// ------------
// * A reduction picks exactly one tuple from terms(i) for every symbol i and
//   keeps the initial conditions.  The counting recursion of a reduction is a
//   single monomial per symbol, so in the log domain it is *linear*:
//   b_n = M b_{n-1}, where M(i,j) is the number of occurrences of symbol j in
//   the chosen tuple of i (the weighted adjacency matrix; rows sum to the
//   arity d).
// * The growth rate of b_n = M^{n-1} b_1 is governed only by the part of the
//   digraph that can reach the support of b_1 = ln(initial), i.e. symbols
//   with initial count ≥ 2.  Hence the *effective* spectral radius: the max
//   of component Perron roots over strongly connected components with a
//   directed path to some symbol of initial ≥ 2, and 0 if there is none.
//   The entropy contributed by the reduction is ln(ρ_eff), or 0 in the
//   degenerate case.  Using the raw ρ(M) instead would overcount components
//   whose counts never leave 1 — the realization construction deliberately
//   plants such a component (the tail symbol's full-shift block), so this
//   distinction is load-bearing, and reports carry both numbers.
// * The entropy of the original system is the maximum over all reductions.
//   The choice space is the product of the terms tables; it is enumerated as
//   a mixed-radix odometer in lexicographic order, which makes the scan
//   restartable, chunkable across threads, and deterministic.  Ties on the
//   max are broken toward the lexicographically smallest choice vector, and
//   the parallel fold merges with the same rule, so the witness does not
//   depend on the partitioning.
// * Past the configured cap the scan switches to a documented sampled pass
//   (fixed-seed PRNG plus the lexicographic extremes) and the report is
//   labeled a lower bound.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "treeshift/snre.hpp"
#include "treeshift/spectral.hpp"

namespace treeshift {

// ── reduced systems ────────────────────────────────────────────────────────

struct ReducedSnre {
  Alphabet alphabet;
  int arity = 0;
  std::vector<ChildTuple> choice;        // choice[i] ∈ terms(i) of the base
  std::vector<std::int64_t> initial;     // copied from the base system

  int symbol_count() const noexcept { return static_cast<int>(choice.size()); }
};

// M(i,j) = multiplicity of j in choice[i].  Rows sum to the arity.
IntMatrix weighted_adjacency(const ReducedSnre& reduced);

struct ComponentValue {
  std::vector<int> vertices;
  double rho = 0.0;
  bool nontrivial = false;
  bool qualifying = false;  // has a directed path to a symbol with initial ≥ 2
};

struct ReducedEntropy {
  double value = 0.0;          // ln(rho_effective), or 0 when degenerate
  double rho_effective = 0.0;  // max Perron root over qualifying components
  double rho_raw = 0.0;        // ρ(M) without the reachability restriction
  IntMatrix matrix;
  std::vector<ComponentValue> components;  // topological order
};

ReducedEntropy reduced_entropy(const ReducedSnre& reduced);

// ── enumeration ────────────────────────────────────────────────────────────

// Lexicographic stream over the product space Π_i terms(i): index 0 picks the
// first tuple everywhere; the last coordinate varies fastest.
class ReductionStream {
public:
  explicit ReductionStream(const Snre& base);

  const mpz_class& total() const noexcept { return total_; }

  // Decodes a global index (0 ≤ index < total) into its reduction.
  ReducedSnre at(const mpz_class& index) const;

  // In-place odometer step on a choice-index vector (amortized O(1)); returns
  // false when the vector wraps around to all zeros.
  bool advance(std::vector<std::uint32_t>& digits) const;
  ReducedSnre make(const std::vector<std::uint32_t>& digits) const;
  std::vector<std::uint32_t> digits_at(const mpz_class& index) const;

private:
  const Snre* base_;
  std::vector<std::uint32_t> radix_;
  mpz_class total_;
};

// First min(total, limit) reductions in lexicographic order.
std::vector<ReducedSnre> enumerate_reductions(const Snre& base, std::uint64_t limit);

// ── entropy of the full system ─────────────────────────────────────────────

struct EntropyOptions {
  std::uint64_t reduction_cap = 1'000'000;  // exhaustive scan bound
  std::uint64_t sample_size = 65'536;       // sampled pass size beyond the cap
  int estimator_level = 40;                 // n for the independent estimator
  EstimatorVariant estimator_variant = EstimatorVariant::SumCounts;
  double agreement_tol = 0.05;              // |spectral − estimator tail|
  double tie_epsilon = 1e-12;               // witness tie-break band
  int threads = 1;                          // workers for the exhaustive scan
};

struct EntropyReport {
  double entropy = 0.0;
  double rho_effective = 0.0;
  double rho_raw = 0.0;               // of the witness matrix
  ReducedSnre witness;                // lexicographically smallest maximizer
  IntMatrix witness_matrix;
  std::vector<mpz_class> witness_char_poly;  // empty when over the dimension cap
  // Perron classification of the witness component certifying the entropy
  // (the SCC attaining ρ_eff); a zero/undetermined stub in degenerate cases.
  PerronAnalysis perron;
  std::vector<int> support_component;  // vertices that analysis ran on
  EstimatorResult estimator;           // independent double-log estimator
  double estimator_tail = 0.0;         // last finite estimator value
  bool agreement = false;              // |entropy − tail| ≤ agreement_tol
  mpz_class reduction_total;           // Π_i |terms(i)|
  std::uint64_t evaluated = 0;         // reductions actually scanned
  bool exhaustive = true;              // total ≤ cap
  bool lower_bound_only = false;       // sampled pass: entropy is a lower bound
};

// Maximizes reduced_entropy over all reductions of the system.
// Pre: base derived from a pruned, nonempty spec (every terms(i) nonempty).
EntropyReport tsft_entropy(const Snre& base, const EntropyOptions& options = {});

}  // namespace treeshift

#endif  // TREESHIFT_REDUCTION_HPP
