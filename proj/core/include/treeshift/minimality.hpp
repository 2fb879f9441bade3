#ifndef TREESHIFT_MINIMALITY_HPP
#define TREESHIFT_MINIMALITY_HPP

// Entropy minimality: when does deleting one allowed pattern strictly lower
// the entropy?
//
// Design notes
// ------------
// * A symbol a is *saving* when every allowed pattern rooted at any other
//   symbol contains a among its children.  (With a single-symbol alphabet the
//   condition is vacuous and the symbol is trivially saving.)  Saving symbols
//   are the pivot of the drop criterion: deleting a pattern can only destroy
//   entropy if it disconnects everything from the saving symbol's counts.
// * full_entropy_check packages the implication "every symbol essential ⇒
//   entropy = ln d": it computes both sides and reports whether the
//   implication held on this input.
// * entropy_drop_analysis removes one allowed pattern (hypothesis H1) and
//   tests hypothesis H2 on the result Y: pruning removes nothing, and every
//   symbol still occurs in some allowed pattern of Y as root or child.  (H2
//   has a weaker reading — "roots at least one infinite tree" — which pruning
//   stability already captures; the operationalization here additionally
//   demands occurrence, and reports record the convention.)  The analysis
//   additionally requires every symbol of X to be essential — the standing
//   assumption that makes h(X) = ln d — before claiming the predicted/observed
//   comparison is in hypothesis.
// * In hypothesis, the criterion: entropy drops strictly iff some saving
//   symbol of X is inessential in Y.  When it drops, it drops hard:
//   h(Y) ≤ ln(d−1).  Out of hypothesis the analysis still runs and reports
//   both entropies; it just refuses to grade the criterion.

#include <string>
#include <vector>

#include "treeshift/reduction.hpp"
#include "treeshift/snre.hpp"
#include "treeshift/tree_spec.hpp"

namespace treeshift {

// saving[i] == true iff every allowed pattern rooted at a symbol ≠ i contains
// i among its children.
std::vector<bool> saving_symbols(const TreeShiftSpec& spec);

struct FullEntropyCheck {
  bool all_essential = false;
  double entropy = 0.0;
  double log_arity = 0.0;        // ln d
  bool implication_ok = false;   // !all_essential || |entropy − ln d| ≤ tol
  double tolerance = 1e-9;
  EntropyReport report;
};

FullEntropyCheck full_entropy_check(const TreeShiftSpec& spec,
                                    const EntropyOptions& options = {});

struct DropAnalysis {
  Pattern2 removed;

  double h_x = 0.0;
  double h_y = 0.0;

  std::vector<std::string> saving_x;        // saving symbols of X, by name
  std::vector<std::string> inessential_y;   // symbols inessential in Y, by name
  std::vector<std::string> y_pruned;        // symbols pruning removed from Y
  bool y_empty = false;                     // Y pruned to nothing (h_y := 0)

  bool h1 = true;                 // pattern was allowed in X (else: error)
  bool h2 = false;                // pruning-stable + full symbol occurrence
  bool x_all_essential = false;   // standing assumption for the criterion
  bool hypotheses_ok = false;     // h1 ∧ h2 ∧ x_all_essential ∧ saving_x ≠ ∅

  bool predicted_drop = false;    // some saving symbol of X inessential in Y
  bool observed_drop = false;     // h_y < h_x − tolerance
  bool consistent = false;        // predicted == observed
  bool out_of_hypothesis = false; // !hypotheses_ok: verdict not graded

  double drop_bound = 0.0;        // ln(d−1) when predicted and d ≥ 2
  double tolerance = 1e-6;

  EntropyReport report_x;
  EntropyReport report_y;
};

// Pre: `removed` is allowed in X (H1); Domain error otherwise.
DropAnalysis entropy_drop_analysis(const TreeShiftSpec& x, const Pattern2& removed,
                                   const EntropyOptions& options = {});

}  // namespace treeshift

#endif  // TREESHIFT_MINIMALITY_HPP
