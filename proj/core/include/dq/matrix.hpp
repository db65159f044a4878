#pragma once

#include "dq/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace dq {

// Dense rational matrix, row-major. Only used on small blocks extracted from
// sparse maps.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RowReduction {
  Matrix rref;                       // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

// Fraction-free (Bareiss) forward elimination on the denominator-cleared
// matrix, followed by rational back substitution to reduced form.
RowReduction row_reduce(const Matrix& m);

// Kernel basis from a reduction: one vector per free column.
std::vector<std::vector<Rational>> kernel_from_rref(const RowReduction& red, std::size_t cols);

// Sparse column-oriented routines. `columns[j]` is column j as a map from row
// index to value; elimination happens per connected block of the
// row/column incidence graph.
struct SparseKernelImage {
  std::vector<SparseVec> kernel;           // vectors indexed by column
  std::vector<std::size_t> image_columns;  // columns forming a basis of the image
};

SparseKernelImage sparse_kernel_image(const std::vector<SparseVec>& columns);
std::size_t sparse_rank(const std::vector<SparseVec>& columns);

// Some x with sum_j x_j columns[j] == rhs, if one exists.
std::optional<SparseVec> sparse_solve(const std::vector<SparseVec>& columns, const SparseVec& rhs);

}  // namespace dq
