#pragma once

// Gaussian elimination over an exact field (Rational or QuadraticNumber).

#include <cstddef>
#include <utility>
#include <vector>

namespace nbint {

template <class F>
using ExactMatrix = std::vector<std::vector<F>>;

/// Reduced row echelon form in place; returns the pivot columns.
template <class F>
std::vector<std::size_t> row_reduce(ExactMatrix<F>& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == F(0)) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const F inv = F(1) / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] = a[r][j] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == F(0)) continue;
      const F f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
std::size_t exact_rank(ExactMatrix<F> a) {
  return row_reduce(a).size();
}

/// Basis of {x : a x = 0}.
template <class F>
std::vector<std::vector<F>> exact_null_space(ExactMatrix<F> a) {
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  const auto pivots = row_reduce(a);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<F>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(cols, F(0));
    v[free] = F(1);
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = F(0) - a[k][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class F>
ExactMatrix<F> shifted(ExactMatrix<F> a, const F& mu) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i][i] = a[i][i] - mu;
  return a;
}

}  // namespace nbint
