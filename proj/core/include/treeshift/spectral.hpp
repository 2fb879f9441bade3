#ifndef TREESHIFT_SPECTRAL_HPP
#define TREESHIFT_SPECTRAL_HPP

// Spectral toolkit for nonnegative integer matrices.
//
// Design notes
// ------------
// * Everything routes through the condensation: Tarjan's algorithm splits the
//   digraph (edge i→j iff M(i,j) > 0) into strongly connected components in
//   topological order, and per-component Perron roots are computed by power
//   iteration on I + M_C.  The +I shift makes every irreducible block
//   primitive, so the iteration converges for periodic components too; the
//   Perron root of the block is the converged Rayleigh quotient minus one.
// * char_poly is Faddeev–LeVerrier over arbitrary-precision integers: exact
//   coefficients, monic, descending powers.  Dimension is capped at 64 — the
//   coefficients grow combinatorially and nothing desk-sized needs more.
// * largest_real_root isolates the dominant real root of an integer
//   polynomial by downward grid scan + sign-change bisection on
//   [0, 1 + max row sum].  It is the cross-check on the power iteration and
//   the derivation path for frozen constants in the tests.
// * period is the gcd of closed-walk lengths through one vertex of a
//   component, read off BFS level differences.
// * perron_analysis classifies the dominant component:
//     perron        — aperiodic, ρ > 1, and ρ strictly dominates every other
//                     root modulus of the characteristic polynomial;
//     perron-power  — periodic with period p; ρ^p passes the same dominance
//                     test against char_poly(M^p restricted to the dominant
//                     component) (multiple copies of ρ^p itself are expected
//                     there — one per cyclic class — and are not violations);
//     zero          — no cycle at all (nilpotent, ρ = 0);
//     undetermined  — dominance within tolerance of a tie, or ρ ≤ 1 with
//                     nothing else applicable (degenerate bound cases are
//                     flagged, not misclassified).
//   The dominance test needs the moduli of the *other* characteristic roots.
//   Those are obtained without any general eigensolver: deflate the known
//   real root (all numerically detected copies), then bound the remaining
//   max root modulus by winding-number root counting on circles (argument
//   principle) driven by bisection.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "treeshift/int_matrix.hpp"

namespace treeshift {

// ── strongly connected components ──────────────────────────────────────────

struct SccDecomposition {
  // Components in topological order: every edge u→v has
  // component_of[u] <= component_of[v].
  std::vector<std::vector<int>> components;
  std::vector<int> component_of;
  // nontrivial[c]: the component carries at least one internal edge (size ≥ 2
  // or a self-loop).  Trivial components contribute spectral radius 0.
  std::vector<bool> nontrivial;
};

SccDecomposition scc_decompose(const IntMatrix& m);

// ── spectral radius ────────────────────────────────────────────────────────

struct SpectralOptions {
  double tolerance = 1e-13;     // successive Rayleigh-quotient agreement
  int max_iterations = 200000;  // per component; Domain error beyond
};

// ρ(M): max over components of the component Perron root (0 for nilpotent).
double spectral_radius(const IntMatrix& m, const SpectralOptions& options = {});

// Perron root of one strongly connected component (pre: `component` is an SCC
// of m and nontrivial).  Exposed for the reduction module, which needs
// per-component values.
double component_spectral_radius(const IntMatrix& m, const std::vector<int>& component,
                                 const SpectralOptions& options = {});

// ── characteristic polynomial ──────────────────────────────────────────────

inline constexpr int kCharPolyDimensionCap = 64;

// det(xI − M) as exact integer coefficients, monic, descending powers:
// result[0] = 1, result[j] = coefficient of x^(n−j).  Throws a Budget error
// for dimensions beyond kCharPolyDimensionCap.
std::vector<mpz_class> char_poly(const IntMatrix& m);

// p(x) with double arithmetic (Horner).  Coefficients descending.
double poly_eval(const std::vector<mpz_class>& poly, double x);

// Largest real root of an integer polynomial on [0, hint], isolated by a
// downward grid scan for a sign change and then bisection.  Returns nullopt
// when no sign change is found (e.g. the dominant real root has even
// multiplicity).  `hint` must satisfy p(hint) > 0; for characteristic
// polynomials use 1 + max row sum.
std::optional<double> largest_real_root(const std::vector<mpz_class>& poly, double hint);

// ── period ─────────────────────────────────────────────────────────────────

// gcd of closed-walk lengths within one nontrivial strongly connected
// component (pre: `component` is such an SCC of m; Domain error otherwise).
int component_period(const IntMatrix& m, const std::vector<int>& component);

// Convenience: period of the unique nontrivial SCC of an irreducible matrix.
// Domain error when m is not strongly connected with an internal edge.
int period(const IntMatrix& m);

// ── Perron classification ──────────────────────────────────────────────────

enum class PerronVerdict { Perron, PerronPower, Zero, Undetermined };

std::string to_string(PerronVerdict verdict);

struct PerronAnalysis {
  double rho = 0.0;                    // spectral radius of the input matrix
  std::vector<int> dominant_component; // vertices of the component attaining ρ
  int period = 0;                      // period of that component (0 if none)
  PerronVerdict verdict = PerronVerdict::Undetermined;
  std::vector<mpz_class> characteristic;  // char_poly of the input (empty if over cap)
  // Largest modulus among characteristic roots other than the dominant root
  // itself (of M, or of M^p on the dominant component for the power branch).
  double second_modulus = 0.0;
  bool degenerate_power_bound = false;  // periodic case with ρ^p ≤ 1
  std::vector<std::string> notes;
};

PerronAnalysis perron_analysis(const IntMatrix& m, double dominance_tol = 1e-9);

}  // namespace treeshift

#endif  // TREESHIFT_SPECTRAL_HPP
