#include "dq/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace dq {

RowReduction row_reduce(const Matrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    Integer lcm = 1;
    for (std::size_t c = 0; c < cols; ++c) {
      const Integer& den = m(r, c).get_den();
      if (den != 1) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const Rational& v = m(r, c);
      a[r][c] = v.get_num() * (lcm / v.get_den());
    }
  }

  std::vector<std::size_t> pivots;
  Integer prev = 1;
  std::size_t k = 0;
  for (std::size_t col = 0; col < cols && k < rows; ++col) {
    std::size_t p = k;
    while (p < rows && a[p][col] == 0) ++p;
    if (p == rows) continue;
    if (p != k) std::swap(a[p], a[k]);
    for (std::size_t i = k + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        Integer t = a[k][col] * a[i][j] - a[i][col] * a[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = t;
      }
      a[i][col] = 0;
    }
    prev = a[k][col];
    pivots.push_back(col);
    ++k;
  }

  RowReduction out{Matrix(pivots.size(), cols), pivots};
  Matrix& r = out.rref;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    Rational lead(a[i][pivots[i]]);
    for (std::size_t j = 0; j < cols; ++j) {
      r(i, j) = Rational(a[i][j]) / lead;
    }
  }
  for (std::size_t i = pivots.size(); i-- > 0;) {
    const std::size_t pc = pivots[i];
    for (std::size_t u = 0; u < i; ++u) {
      Rational f = r(u, pc);
      if (is_zero(f)) continue;
      for (std::size_t j = pc; j < cols; ++j) r(u, j) -= f * r(i, j);
    }
  }
  return out;
}

std::vector<std::vector<Rational>> kernel_from_rref(const RowReduction& red, std::size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  for (auto p : red.pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < red.pivots.size(); ++i) v[red.pivots[i]] = -red.rref(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

struct Block {
  std::vector<std::size_t> cols;
  std::vector<std::size_t> rows;
};

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// Groups columns that share rows. Zero columns form singleton blocks.
std::vector<Block> connected_blocks(const std::vector<SparseVec>& columns) {
  const std::size_t n = columns.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::unordered_map<std::size_t, std::size_t> row_owner;
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& [row, v] : columns[j]) {
      auto [it, inserted] = row_owner.try_emplace(row, j);
      if (!inserted) {
        auto a = find_root(parent, it->second);
        auto b = find_root(parent, j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::map<std::size_t, Block> by_root;
  for (std::size_t j = 0; j < n; ++j) by_root[find_root(parent, j)].cols.push_back(j);
  for (auto& [root, block] : by_root) {
    std::vector<std::size_t> rows;
    for (auto j : block.cols)
      for (const auto& [row, v] : columns[j]) rows.push_back(row);
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    block.rows = std::move(rows);
  }
  std::vector<Block> out;
  out.reserve(by_root.size());
  for (auto& [root, block] : by_root) out.push_back(std::move(block));
  return out;
}

Matrix dense_block(const std::vector<SparseVec>& columns, const Block& b) {
  Matrix m(b.rows.size(), b.cols.size());
  for (std::size_t c = 0; c < b.cols.size(); ++c) {
    for (const auto& [row, v] : columns[b.cols[c]]) {
      auto r = std::lower_bound(b.rows.begin(), b.rows.end(), row) - b.rows.begin();
      m(static_cast<std::size_t>(r), c) = v;
    }
  }
  return m;
}

}  // namespace

SparseKernelImage sparse_kernel_image(const std::vector<SparseVec>& columns) {
  SparseKernelImage out;
  for (const Block& b : connected_blocks(columns)) {
    if (b.rows.empty()) {
      for (auto j : b.cols) out.kernel.push_back(SparseVec{{j, Rational(1)}});
      continue;
    }
    RowReduction red = row_reduce(dense_block(columns, b));
    for (auto p : red.pivots) out.image_columns.push_back(b.cols[p]);
    for (const auto& k : kernel_from_rref(red, b.cols.size())) {
      SparseVec v;
      for (std::size_t c = 0; c < k.size(); ++c)
        if (!is_zero(k[c])) v.emplace(b.cols[c], k[c]);
      out.kernel.push_back(std::move(v));
    }
  }
  std::sort(out.image_columns.begin(), out.image_columns.end());
  return out;
}

std::size_t sparse_rank(const std::vector<SparseVec>& columns) {
  std::size_t rank = 0;
  for (const Block& b : connected_blocks(columns)) {
    if (b.rows.empty()) continue;
    rank += row_reduce(dense_block(columns, b)).pivots.size();
  }
  return rank;
}

std::optional<SparseVec> sparse_solve(const std::vector<SparseVec>& columns, const SparseVec& rhs) {
  // Append rhs as an extra column; solvable iff it is not a pivot column of
  // its block.
  std::vector<SparseVec> aug = columns;
  aug.push_back(rhs);
  const std::size_t rhs_col = columns.size();
  SparseVec x;
  for (const Block& b : connected_blocks(aug)) {
    auto pos = std::find(b.cols.begin(), b.cols.end(), rhs_col);
    if (pos == b.cols.end()) continue;
    if (b.rows.empty()) continue;
    RowReduction red = row_reduce(dense_block(aug, b));
    const std::size_t local_rhs = static_cast<std::size_t>(pos - b.cols.begin());
    for (std::size_t i = 0; i < red.pivots.size(); ++i) {
      if (red.pivots[i] == local_rhs) return std::nullopt;
      const Rational& v = red.rref(i, local_rhs);
      if (!is_zero(v)) x.emplace(b.cols[red.pivots[i]], v);
    }
  }
  return x;
}

}  // namespace dq
