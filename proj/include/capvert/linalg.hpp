#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

#include "capvert/scalar.hpp"

namespace capvert {

template <class F>
using Matrix = std::vector<std::vector<F>>;

inline bool is_zero_of(const GroundScalar& x) { return x.is_zero(); }
inline bool is_zero_of(const mpq_class& x) { return x == 0; }
inline std::size_t weight_of(const GroundScalar& x) { return x.weight(); }
inline std::size_t weight_of(const mpq_class& x) {
  return mpz_sizeinbase(x.get_num_mpz_t(), 2) + mpz_sizeinbase(x.get_den_mpz_t(), 2);
}

/// Result of Gaussian elimination on an augmented system.
template <class F>
struct Solution {
  bool consistent = false;
  std::size_t rank = 0;
  std::vector<F> x;  // free variables set to zero
};

/// Solves A x = b exactly (A is m x n). Pivots are chosen by smallest size
/// to limit expression swell.
template <class F>
Solution<F> solve(Matrix<F> a, std::vector<F> b) {
  const std::size_t m = a.size();
  const std::size_t n = m == 0 ? 0 : a[0].size();
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t best = m;
    for (std::size_t r = row; r < m; ++r) {
      if (is_zero_of(a[r][col])) continue;
      if (best == m || weight_of(a[r][col]) < weight_of(a[best][col])) best = r;
    }
    if (best == m) continue;
    std::swap(a[row], a[best]);
    std::swap(b[row], b[best]);
    const F inv = F(1) / a[row][col];
    for (std::size_t c = col; c < n; ++c) a[row][c] = a[row][c] * inv;
    b[row] = b[row] * inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || is_zero_of(a[r][col])) continue;
      const F f = a[r][col];
      for (std::size_t c = col; c < n; ++c)
        if (!is_zero_of(a[row][c])) a[r][c] = a[r][c] - f * a[row][c];
      if (!is_zero_of(b[row])) b[r] = b[r] - f * b[row];
    }
    pivot_col.push_back(col);
    ++row;
  }
  Solution<F> s;
  s.rank = row;
  s.consistent = true;
  for (std::size_t r = row; r < m; ++r)
    if (!is_zero_of(b[r])) s.consistent = false;
  s.x.assign(n, F(0));
  if (s.consistent)
    for (std::size_t r = 0; r < row; ++r) s.x[pivot_col[r]] = b[r];
  return s;
}

/// Inverse of a square matrix, or nullopt when singular.
template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
  const std::size_t n = a.size();
  Matrix<F> work = a;
  Matrix<F> inv(n, std::vector<F>(n, F(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = F(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = n;
    for (std::size_t r = col; r < n; ++r) {
      if (is_zero_of(work[r][col])) continue;
      if (best == n || weight_of(work[r][col]) < weight_of(work[best][col])) best = r;
    }
    if (best == n) return std::nullopt;
    std::swap(work[col], work[best]);
    std::swap(inv[col], inv[best]);
    const F p = F(1) / work[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      work[col][c] = work[col][c] * p;
      inv[col][c] = inv[col][c] * p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || is_zero_of(work[r][col])) continue;
      const F f = work[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        if (!is_zero_of(work[col][c])) work[r][c] = work[r][c] - f * work[col][c];
        if (!is_zero_of(inv[col][c])) inv[r][c] = inv[r][c] - f * inv[col][c];
      }
    }
  }
  return inv;
}

/// Fraction-free Gauss-Jordan elimination over Z[x^{+-1/2}] on [A | B].
/// Every division is exact, so entries stay polynomial. Pivot rows end with
/// diagonal `det` (the determinant of the pivot block), and the solution of
/// A X = B is X[pivot_col[r]] = rhs[r] / det.
struct FractionFree {
  bool consistent = false;
  std::size_t rank = 0;
  Poly det{1};
  std::vector<std::size_t> pivot_col;
  Matrix<Poly> rhs;
};
FractionFree fraction_free(Matrix<Poly> a, Matrix<Poly> b);

/// Scales a row of scalars by a common denominator so that every entry
/// becomes a Laurent polynomial.
std::vector<Poly> clear_denominators(const std::vector<GroundScalar>& row);

/// num/den, exact when den divides num, otherwise as a quotient of scalars.
GroundScalar poly_ratio(const Poly& num, const Poly& den);

/// solve() for scalar systems through fraction-free elimination.
Solution<GroundScalar> solve_ff(const Matrix<GroundScalar>& a, const std::vector<GroundScalar>& b);
/// inverse() for scalar matrices through fraction-free elimination.
std::optional<Matrix<GroundScalar>> inverse_ff(const Matrix<GroundScalar>& a);

}  // namespace capvert
