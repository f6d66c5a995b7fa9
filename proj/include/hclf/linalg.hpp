// Dense exact linear algebra over a finite field: row reduction, solving,
// and nullspace bases.  Matrices are row-major vectors of element indices.
#pragma once

#include <optional>

#include "hclf/field.hpp"

namespace hclf {

using FMatrix = std::vector<std::vector<i64>>;

namespace detail {

/// In-place reduced row echelon form; returns the pivot column of each
/// nonzero row (rows below the returned size are zero).
inline std::vector<int> rref(const Field& F, FMatrix& a) {
  std::vector<int> pivots;
  if (a.empty()) return pivots;
  int rows = static_cast<int>(a.size());
  int cols = static_cast<int>(a[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][c] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(a[piv], a[r]);
    i64 inv = F.inv(a[r][c]);
    for (int j = c; j < cols; ++j) a[r][j] = F.mul(a[r][j], inv);
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      i64 t = a[i][c];
      for (int j = c; j < cols; ++j) a[i][j] = F.sub(a[i][j], F.mul(t, a[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

/// One solution of A x = b, or nullopt when inconsistent.
inline std::optional<std::vector<i64>> solve_linear(const Field& F, FMatrix a,
                                                    const std::vector<i64>& b) {
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  for (int i = 0; i < rows; ++i) a[i].push_back(b[i]);
  auto pivots = detail::rref(F, a);
  std::vector<i64> x(cols, 0);
  for (size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == cols) return std::nullopt;  // pivot in the rhs column
    x[pivots[r]] = a[r][cols];
  }
  return x;
}

/// Basis of the right nullspace of A (each vector has length = #columns).
inline std::vector<std::vector<i64>> nullspace(const Field& F, FMatrix a) {
  if (a.empty()) return {};
  int cols = static_cast<int>(a[0].size());
  auto pivots = detail::rref(F, a);
  std::vector<char> is_pivot(cols, 0);
  for (int c : pivots) is_pivot[c] = 1;
  std::vector<std::vector<i64>> basis;
  for (int fc = 0; fc < cols; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<i64> v(cols, 0);
    v[fc] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F.neg(a[r][fc]);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace hclf
