#include "treeshift/realization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace treeshift {

// ── matrix extension ───────────────────────────────────────────────────────

IntMatrix extend_matrix(const IntMatrix& m) {
  if (m.is_zero())
    throw_domain("cannot extend the zero matrix: the target arity would be 0");
  const int k = m.size();
  const std::int64_t d = m.max_row_sum();
  IntMatrix v(k + 1);
  for (int i = 0; i < k; ++i) {
    std::int64_t row_sum = 0;
    for (int j = 0; j < k; ++j) {
      v.at(i, j) = m.at(i, j);
      row_sum += m.at(i, j);
    }
    v.at(i, k) = d - row_sum;  // pad with the sink symbol up to arity d
  }
  v.at(k, k) = d;
  return v;
}

// ── realized system ────────────────────────────────────────────────────────

namespace {

// The tuple spelled by row i of the extended matrix: V(i,j) copies of symbol
// j, in ascending symbol order.  Row sums all equal d, so the length is d.
ChildTuple monomial_tuple(const IntMatrix& v, int i) {
  ChildTuple tuple;
  for (int j = 0; j < v.size(); ++j)
    tuple.insert(tuple.end(), static_cast<std::size_t>(v.at(i, j)), j);
  return tuple;
}

Alphabet realization_alphabet(int k) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i <= k; ++i) names.push_back("a" + std::to_string(i + 1));
  return Alphabet(std::move(names));
}

}  // namespace

Snre realize_snre(const IntMatrix& m) {
  const IntMatrix v = extend_matrix(m);
  const int k = m.size();
  const int d = static_cast<int>(m.max_row_sum());

  Snre snre;
  snre.alphabet = realization_alphabet(k);
  snre.arity = d;
  const ChildTuple sink_tuple(static_cast<std::size_t>(d), k);
  for (int i = 0; i < k; ++i) {
    std::vector<ChildTuple> table{monomial_tuple(v, i), sink_tuple};
    std::sort(table.begin(), table.end());
    table.erase(std::unique(table.begin(), table.end()), table.end());
    snre.terms.push_back(std::move(table));
  }
  snre.terms.push_back({sink_tuple});
  for (const auto& table : snre.terms)
    snre.initial.push_back(static_cast<std::int64_t>(table.size()));
  return snre;
}

RealizationPlan realize_tsft(const IntMatrix& m) {
  RealizationPlan plan;
  plan.input = m;
  plan.extended = extend_matrix(m);
  plan.arity = static_cast<int>(m.max_row_sum());
  plan.snre = realize_snre(m);

  for (int i = 0; i < m.size(); ++i) {
    bool zero = true;
    for (int j = 0; j < m.size(); ++j)
      if (m.at(i, j) != 0) zero = false;
    if (zero) plan.zero_rows.push_back(i);
  }

  plan.spec = TreeShiftSpec(plan.snre.alphabet, plan.arity, plan.snre.terms);
  for (int i = 0; i < plan.spec.symbol_count(); ++i)
    for (const auto& tuple : plan.spec.allowed(i))
      plan.allowed_patterns.push_back(Pattern2{i, tuple});

  plan.expected_rho = m.is_zero() ? 0.0 : spectral_radius(m);
  plan.expected_entropy = plan.expected_rho > 1.0 ? std::log(plan.expected_rho) : 0.0;
  return plan;
}

// ── verification ───────────────────────────────────────────────────────────

namespace {

bool same_up_to_simultaneous_permutation(const IntMatrix& a, const IntMatrix& b,
                                         std::vector<std::string>& notes) {
  if (a.size() != b.size()) return false;
  if (a == b) return true;
  const int n = a.size();
  if (n > 9) {
    notes.push_back("essential block differs from the input as written; permutation search "
                    "skipped above dimension 9");
    return false;
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  while (std::next_permutation(perm.begin(), perm.end())) {
    bool match = true;
    for (int i = 0; i < n && match; ++i)
      for (int j = 0; j < n && match; ++j)
        if (a.at(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) !=
            b.at(i, j))
          match = false;
    if (match) {
      notes.push_back("essential block matches the input after a simultaneous permutation");
      return true;
    }
  }
  return false;
}

}  // namespace

RealizationCheck verify_realization(const IntMatrix& m, const RealizationCheckOptions& options) {
  RealizationCheck check;
  check.plan = realize_tsft(m);
  const int k = m.size();

  if (!check.plan.zero_rows.empty())
    check.notes.push_back("input has zero rows: their monomial tuple collapses onto the sink "
                          "tuple, so the pattern count drops below 2k+1");
  if (check.plan.expected_rho == 0.0)
    check.notes.push_back("input is nilpotent: the realized shift has entropy 0");

  EntropyOptions entropy_options;
  entropy_options.reduction_cap = options.reduction_cap;
  entropy_options.estimator_level = options.estimator_level;
  check.report = tsft_entropy(check.plan.snre, entropy_options);

  check.entropy = check.report.entropy;
  check.expected = check.plan.expected_entropy;
  check.spectral_diff = std::abs(check.entropy - check.expected);
  check.spectral_ok = check.spectral_diff <= options.spectral_tol;

  check.estimator_tail = check.report.estimator_tail;
  check.estimator_diff = std::abs(check.estimator_tail - check.expected);
  check.estimator_ok = check.estimator_diff <= options.estimator_tol ||
                       (check.report.estimator.degenerate && check.expected == 0.0);

  // The essential symbols of the realized system must be exactly the
  // non-collapsed input symbols, and the witness matrix restricted to them
  // must reproduce the corresponding block of the input.
  const auto essential = essential_symbols(check.plan.snre);
  if (essential[static_cast<std::size_t>(k)]) {
    check.essential_block_ok = false;
    check.notes.push_back("sink symbol is unexpectedly essential");
  } else {
    std::vector<int> block;
    for (int i = 0; i < k; ++i)
      if (essential[static_cast<std::size_t>(i)]) block.push_back(i);
    if (static_cast<int>(block.size()) < k)
      check.notes.push_back("some input symbols are inessential in the realization; the block "
                            "comparison is restricted to the essential ones");
    check.essential_block_ok = same_up_to_simultaneous_permutation(
        check.report.witness_matrix.principal_submatrix(block), m.principal_submatrix(block),
        check.notes);
  }

  check.pass = check.spectral_ok && check.estimator_ok && check.essential_block_ok;
  return check;
}

}  // namespace treeshift
