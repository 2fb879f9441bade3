#ifndef TREESHIFT_INT_MATRIX_HPP
#define TREESHIFT_INT_MATRIX_HPP

// Square nonnegative integer matrices.
//
// These show up as weighted adjacency matrices of reduced systems (entries
// bounded by the arity) and as user-supplied inputs to the Perron analysis
// and the realization construction.  Entries are validated nonnegative at
// construction; anything that can outgrow int64 (characteristic polynomial
// coefficients, matrix powers) is done in arbitrary precision by the
// spectral toolkit instead of here.

#include <cstdint>
#include <string>
#include <vector>

#include "treeshift/errors.hpp"

namespace treeshift {

class IntMatrix {
public:
  IntMatrix() = default;
  explicit IntMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0) {}

  // Validates: nonempty, square, entries ≥ 0.
  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  int size() const noexcept { return n_; }

  std::int64_t at(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)];
  }
  std::int64_t& at(int i, int j) {
    return a_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)];
  }

  std::vector<std::int64_t> row_sums() const;
  std::int64_t max_row_sum() const;
  bool is_zero() const noexcept;

  // Principal submatrix on the given (distinct, in-range) vertex list, in the
  // order given.
  IntMatrix principal_submatrix(const std::vector<int>& vertices) const;

  std::vector<std::vector<std::int64_t>> to_rows() const;

  bool operator==(const IntMatrix& other) const {
    return n_ == other.n_ && a_ == other.a_;
  }

private:
  int n_ = 0;
  std::vector<std::int64_t> a_;  // row-major
};

}  // namespace treeshift

#endif  // TREESHIFT_INT_MATRIX_HPP
