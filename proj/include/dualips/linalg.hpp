// Exact integer elimination (fraction-free Bareiss) for determinants and
// ranks of small matrices, plus a tolerance-based floating-point rank.
// Rank/determinant checks on pairing tables must stay exact, hence the
// integer path is the default everywhere a table has integer entries.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace dualips {

using Int = long long;
using IntMatrix = std::vector<std::vector<Int>>;

namespace detail {
using Wide = __int128;

inline void check_wide(Wide v) {
  constexpr Wide lim = (Wide(1) << 126);
  if (v >= lim || v <= -lim) throw std::overflow_error("integer elimination overflow");
}
}  // namespace detail

// Fraction-free Gaussian elimination. Returns the exact determinant of a
// square integer matrix. Intermediate entries are minors of the input, so
// they stay bounded (Hadamard) for the small tables handled here.
inline Int int_determinant(IntMatrix m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("int_determinant: matrix not square");
  if (n == 0) return 1;

  std::vector<std::vector<detail::Wide>> a(n, std::vector<detail::Wide>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];

  detail::Wide prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        detail::Wide num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        detail::check_wide(num);
        a[i][j] = num / prev;  // divides exactly (Bareiss)
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  detail::Wide det = sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
  detail::check_wide(det);
  return static_cast<Int>(det);
}

// Exact rank via fraction-free elimination with full pivoting.
inline std::size_t int_rank(IntMatrix m) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m[0].size();
  for (const auto& row : m)
    if (row.size() != cols) throw std::invalid_argument("int_rank: ragged matrix");

  std::vector<std::vector<detail::Wide>> a(rows, std::vector<detail::Wide>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m[i][j];

  detail::Wide prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = r; i < rows && pr == rows; ++i)
      for (std::size_t j = c; j < cols; ++j)
        if (a[i][j] != 0) {
          pr = i;
          pc = j;
          break;
        }
    if (pr == rows) break;
    std::swap(a[r], a[pr]);
    if (pc != c)
      for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][c], a[i][pc]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        detail::Wide num = a[i][j] * a[r][c] - a[i][c] * a[r][j];
        detail::check_wide(num);
        a[i][j] = num / prev;
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

inline std::size_t double_rank(std::vector<std::vector<double>> a, double tol = 1e-9) {
  const std::size_t rows = a.size();
  if (rows == 0) return 0;
  const std::size_t cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    for (std::size_t i = r + 1; i < rows; ++i)
      if (std::fabs(a[i][c]) > std::fabs(a[pivot][c])) pivot = i;
    if (std::fabs(a[pivot][c]) <= tol) continue;
    std::swap(a[r], a[pivot]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      double f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

// Dense LU solve with partial pivoting; returns false when a pivot is
// numerically zero (singular system). Solves a*x = b in place.
inline bool lu_solve(std::vector<std::vector<double>> a, std::vector<double> b,
                     std::vector<double>& x, double pivot_tol = 1e-12) {
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(a[i][k]) > std::fabs(a[pivot][k])) pivot = i;
    if (std::fabs(a[pivot][k]) <= pivot_tol) return false;
    std::swap(a[k], a[pivot]);
    std::swap(b[k], b[pivot]);
    for (std::size_t i = k + 1; i < n; ++i) {
      double f = a[i][k] / a[k][k];
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= a[ii][j] * x[j];
    x[ii] = s / a[ii][ii];
  }
  return true;
}

}  // namespace dualips
