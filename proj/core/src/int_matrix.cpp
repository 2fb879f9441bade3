#include "treeshift/int_matrix.hpp"

#include <algorithm>

namespace treeshift {

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  if (rows.empty()) throw_domain("matrix must be nonempty");
  const int n = static_cast<int>(rows.size());
  IntMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
      throw_domain("matrix must be square (row " + std::to_string(i) + " has " +
                   std::to_string(rows[static_cast<std::size_t>(i)].size()) + " entries, expected " +
                   std::to_string(n) + ")");
    for (int j = 0; j < n; ++j) {
      const std::int64_t v = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (v < 0)
        throw_domain("matrix entries must be nonnegative (entry (" + std::to_string(i) + "," +
                     std::to_string(j) + ") = " + std::to_string(v) + ")");
      m.at(i, j) = v;
    }
  }
  return m;
}

std::vector<std::int64_t> IntMatrix::row_sums() const {
  std::vector<std::int64_t> sums(static_cast<std::size_t>(n_), 0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) sums[static_cast<std::size_t>(i)] += at(i, j);
  return sums;
}

std::int64_t IntMatrix::max_row_sum() const {
  std::int64_t best = 0;
  for (std::int64_t s : row_sums()) best = std::max(best, s);
  return best;
}

bool IntMatrix::is_zero() const noexcept {
  return std::all_of(a_.begin(), a_.end(), [](std::int64_t v) { return v == 0; });
}

IntMatrix IntMatrix::principal_submatrix(const std::vector<int>& vertices) const {
  const int m = static_cast<int>(vertices.size());
  if (m == 0) throw_domain("principal submatrix needs at least one vertex");
  IntMatrix sub(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      sub.at(i, j) = at(vertices[static_cast<std::size_t>(i)], vertices[static_cast<std::size_t>(j)]);
  return sub;
}

std::vector<std::vector<std::int64_t>> IntMatrix::to_rows() const {
  std::vector<std::vector<std::int64_t>> rows(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    rows[static_cast<std::size_t>(i)].reserve(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) rows[static_cast<std::size_t>(i)].push_back(at(i, j));
  }
  return rows;
}

}  // namespace treeshift
