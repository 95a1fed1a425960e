#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dfi/errors.hpp"

namespace dfi {

template <typename T>
using Matrix = std::vector<std::vector<T>>;

// Fraction-free Bareiss determinant. Over a field the divisions are trivially
// exact; over an integral domain Bareiss guarantees exactness.
template <typename T, typename DivFn>
T det_bareiss(Matrix<T> a, DivFn div, const T& zero) {
  const size_t n = a.size();
  if (n == 0) return zero;
  bool negate = false;
  T prev_pivot = zero;
  bool have_prev = false;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == zero) {
      size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == zero) ++swap_row;
      if (swap_row == n) return zero;  // singular
      std::swap(a[k], a[swap_row]);
      negate = !negate;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        T v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        a[i][j] = have_prev ? div(v, prev_pivot) : v;
      }
      a[i][k] = zero;
    }
    prev_pivot = a[k][k];
    have_prev = true;
  }
  T d = a[n - 1][n - 1];
  if (negate) d = zero - d;
  return d;
}

template <typename T, typename DivFn>
T det_bareiss(Matrix<T> a, DivFn div) {
  return det_bareiss(std::move(a), div, T());
}

// Exact rank by Gaussian elimination over a field.
template <typename T, typename DivFn>
size_t rank_exact(Matrix<T> a, DivFn div, const T& zero) {
  if (a.empty()) return 0;
  const size_t rows = a.size(), cols = a[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && a[piv][c] == zero) ++piv;
    if (piv == rows) continue;
    std::swap(a[r], a[piv]);
    for (size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == zero) continue;
      T factor = div(a[i][c], a[r][c]);
      for (size_t j = c; j < cols; ++j) a[i][j] = a[i][j] - factor * a[r][j];
    }
    ++r;
  }
  return r;
}

template <typename T, typename DivFn>
size_t rank_exact(Matrix<T> a, DivFn div) {
  return rank_exact(std::move(a), div, T());
}

// Solves A x = b over a field; nullopt when inconsistent. A may be
// rectangular; a particular solution is returned (free variables zero).
template <typename T, typename DivFn>
std::optional<std::vector<T>> solve_linear(Matrix<T> a, std::vector<T> b,
                                           DivFn div, const T& zero) {
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && a[piv][c] == zero) ++piv;
    if (piv == rows) continue;
    std::swap(a[r], a[piv]);
    std::swap(b[r], b[piv]);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == zero) continue;
      T factor = div(a[i][c], a[r][c]);
      for (size_t j = c; j < cols; ++j) a[i][j] = a[i][j] - factor * a[r][j];
      b[i] = b[i] - factor * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (!(b[i] == zero)) return std::nullopt;
  std::vector<T> x(cols, zero);
  for (size_t i = 0; i < pivot_col.size(); ++i)
    x[pivot_col[i]] = div(b[i], a[i][pivot_col[i]]);
  return x;
}

template <typename T, typename DivFn>
std::optional<std::vector<T>> solve_linear(Matrix<T> a, std::vector<T> b,
                                           DivFn div) {
  return solve_linear(std::move(a), std::move(b), div, T());
}

}  // namespace dfi
