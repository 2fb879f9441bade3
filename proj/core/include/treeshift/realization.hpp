#ifndef TREESHIFT_REALIZATION_HPP
#define TREESHIFT_REALIZATION_HPP

// Realizing a prescribed nonnegative integer matrix as a tree-shift.
//
// Design notes
// ------------
// * Given a k×k nonnegative integer matrix M (not all zero), the construction
//   produces a tree-shift over k+1 symbols a1..a{k+1} on the d-ary tree,
//   d = max row sum of M, whose entropy is ln ρ(M):
//
//     V  =  [ M   U ]      U(i) = d − Σ_{j≤k} M(i,j),
//           [ 0   d ]      (so every row of V sums to exactly d)
//
//   Each base symbol i ≤ k gets two allowed tuples: the "V-monomial" tuple
//   containing V(i,j) copies of symbol j (ascending symbol order), and the
//   all-tail tuple (a_{k+1})^d.  The tail symbol gets only the all-tail
//   tuple.  That is 2k+1 allowed patterns (2k when some row of M is zero,
//   because its V-monomial collapses into the all-tail tuple — flagged).
// * Convention note, recorded in every report: the tail-symbol exponent in
//   the i-th monomial is V(i,k+1) itself (the row deficit d − Σ_{j≤k} M(i,j)),
//   which is what keeps every monomial at total degree d.
// * Initial counts are (2,...,2,1): each base symbol roots two allowed
//   tuples, the tail symbol one.  The tail symbol is inessential by design —
//   its counts are frozen at 1 — so the effective spectral radius of the best
//   reduction is exactly ρ(M) even though the raw matrix contains a
//   ρ = d block.
// * verify_realization closes the loop: it runs the full entropy pipeline on
//   the synthesized spec and checks (a) the entropy equals ln ρ(M) within
//   tolerance, (b) the witness matrix restricted to the essential symbols is
//   M itself (up to simultaneous permutation), and (c) the independent
//   estimator agrees.  Nilpotent inputs (ρ = 0) realize entropy 0 and are
//   flagged rather than rejected.

#include <cstdint>
#include <string>
#include <vector>

#include "treeshift/int_matrix.hpp"
#include "treeshift/reduction.hpp"
#include "treeshift/snre.hpp"
#include "treeshift/tree_spec.hpp"

namespace treeshift {

// V as above, (k+1)×(k+1).  Throws a Domain error for the all-zero matrix
// (d would be 0) — and inherits IntMatrix validation for nonnegativity.
IntMatrix extend_matrix(const IntMatrix& m);

// The realized counting system over a1..a{k+1} with initial (2,...,2,1).
Snre realize_snre(const IntMatrix& m);

struct RealizationPlan {
  int arity = 0;                        // d = max row sum of M
  IntMatrix input;                      // M
  IntMatrix extended;                   // V
  Snre snre;                            // realized counting system
  TreeShiftSpec spec;                   // allowed = the pattern set below
  std::vector<Pattern2> allowed_patterns;  // 2k+1 (or 2k) patterns, sorted
  std::vector<int> zero_rows;           // rows of M that are all zero (flagged)
  double expected_rho = 0.0;            // ρ(M)
  double expected_entropy = 0.0;        // ln ρ(M), or 0 for nilpotent M
};

RealizationPlan realize_tsft(const IntMatrix& m);

struct RealizationCheck {
  bool pass = false;
  double entropy = 0.0;           // from the full pipeline on the spec
  double expected = 0.0;          // ln ρ(M) (or 0 for nilpotent M)
  double spectral_diff = 0.0;     // |entropy − expected|
  bool spectral_ok = false;
  double estimator_tail = 0.0;
  double estimator_diff = 0.0;    // |tail − expected|
  bool estimator_ok = false;
  bool essential_block_ok = false;  // witness essential block ≂ M
  std::vector<std::string> notes;
  RealizationPlan plan;
  EntropyReport report;
};

struct RealizationCheckOptions {
  double spectral_tol = 1e-6;
  double estimator_tol = 0.05;
  int estimator_level = 40;
  std::uint64_t reduction_cap = 1'000'000;
};

RealizationCheck verify_realization(const IntMatrix& m,
                                    const RealizationCheckOptions& options = {});

}  // namespace treeshift

#endif  // TREESHIFT_REALIZATION_HPP
