#ifndef RSL_LINALG_HPP
#define RSL_LINALG_HPP

#include <cmath>
#include <vector>

#include "rsl/scalar.hpp"

namespace rsl {

template <class T>
using Matrix = std::vector<std::vector<T>>;  // row-major

// Reduced row echelon form in place. Exact arithmetic pivots on any nonzero
// entry; float mode uses column-pivoted elimination with a threshold relative
// to the largest entry. Returns the pivot columns.
template <class T>
std::vector<int> rref(Matrix<T>& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  size_t rows = m.size(), cols = m[0].size();
  double thr = 0;
  if constexpr (!ScalarTraits<T>::exact) {
    double mx = 0;
    for (auto& r : m)
      for (auto& x : r) mx = std::max(mx, std::abs(x));
    thr = 1e-10 * std::max(1.0, mx);
  }
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t best = row;
    if constexpr (ScalarTraits<T>::exact) {
      while (best < rows && m[best][col] == 0) ++best;
      if (best == rows) continue;
    } else {
      for (size_t r = row + 1; r < rows; ++r)
        if (std::abs(m[r][col]) > std::abs(m[best][col])) best = r;
      if (std::abs(m[best][col]) <= thr) continue;
    }
    std::swap(m[row], m[best]);
    T inv = T(1) / m[row][col];
    for (size_t j = 0; j < cols; ++j) m[row][j] = m[row][j] * inv;
    m[row][col] = T(1);
    for (size_t r = 0; r < rows; ++r) {
      if (r == row) continue;
      T f = m[r][col];
      if (f == 0) continue;
      for (size_t j = 0; j < cols; ++j) m[r][j] = m[r][j] - f * m[row][j];
      m[r][col] = T(0);
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  return pivots;
}

// Nullspace basis of m, canonicalized by running rref on the basis vectors
// themselves (vectors as rows, coordinates in their natural order).
template <class T>
Matrix<T> nullspace(Matrix<T> m) {
  size_t cols = m.empty() ? 0 : m[0].size();
  auto pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  Matrix<T> basis;
  for (size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(cols, T(0));
    v[free] = T(1);
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
    basis.push_back(std::move(v));
  }
  rref(basis);
  return basis;
}

// Coordinates of v in the span of an rref basis (rows), or empty if outside.
template <class T>
std::vector<T> coordinates_in_rref_span(const Matrix<T>& basis, std::vector<T> v, double tol) {
  std::vector<T> coords;
  for (auto& b : basis) {
    size_t lead = 0;
    while (lead < b.size() && b[lead] == 0) ++lead;
    if (lead == b.size()) {
      coords.push_back(T(0));
      continue;
    }
    T c = v[lead];
    coords.push_back(c);
    for (size_t j = 0; j < v.size(); ++j) v[j] = v[j] - c * b[j];
  }
  for (auto& x : v)
    if (!scalar_is_zero(x, tol)) return {};
  return coords;
}

}  // namespace rsl

#endif
