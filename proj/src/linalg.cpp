#include "capvert/linalg.hpp"

#include <map>
#include <stdexcept>

namespace capvert {

namespace {

Poly exact(const Poly& num, const Poly& den) {
  auto q = num.divide_exact(den);
  if (!q) throw std::logic_error("fraction-free elimination: inexact division");
  return std::move(*q);
}

}  // namespace

FractionFree fraction_free(Matrix<Poly> a, Matrix<Poly> b) {
  const std::size_t m = a.size();
  const std::size_t n = m == 0 ? 0 : a[0].size();
  const std::size_t k = m == 0 ? 0 : b[0].size();
  FractionFree out;
  Poly prev(1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t best = m;
    for (std::size_t r = row; r < m; ++r) {
      if (a[r][col].is_zero()) continue;
      if (best == m || a[r][col].size() < a[best][col].size()) best = r;
    }
    if (best == m) continue;
    std::swap(a[row], a[best]);
    std::swap(b[row], b[best]);
    const Poly p = a[row][col];
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row) continue;
      const Poly f = a[i][col];
      for (std::size_t j = 0; j < n; ++j) {
        if (j == col) continue;
        Poly v = p * a[i][j];
        if (!f.is_zero() && !a[row][j].is_zero()) v -= f * a[row][j];
        a[i][j] = exact(v, prev);
      }
      for (std::size_t j = 0; j < k; ++j) {
        Poly v = p * b[i][j];
        if (!f.is_zero() && !b[row][j].is_zero()) v -= f * b[row][j];
        b[i][j] = exact(v, prev);
      }
      a[i][col] = Poly{};
    }
    // Earlier pivot rows keep their pivot equal to the running determinant.
    prev = p;
    out.pivot_col.push_back(col);
    ++row;
  }
  out.rank = row;
  out.det = prev;
  out.consistent = true;
  for (std::size_t r = row; r < m; ++r)
    for (std::size_t j = 0; j < k; ++j)
      if (!b[r][j].is_zero()) out.consistent = false;
  b.resize(row);
  out.rhs = std::move(b);
  return out;
}

std::vector<Poly> clear_denominators(const std::vector<GroundScalar>& row) {
  GroundScalar scale(1);
  std::map<const Factor*, std::pair<FactorPtr, int>> need;
  mpz_class l = 1;
  for (const auto& x : row) {
    if (x.is_zero()) continue;
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.coeff().get_den_mpz_t());
    for (const auto& [f, e] : x.factors()) {
      if (e >= 0) continue;
      auto& slot = need[f.get()];
      slot.first = f;
      slot.second = std::max(slot.second, -e);
    }
  }
  scale = GroundScalar(l);
  for (const auto& [key, fe] : need) scale *= GroundScalar::from_poly(fe.first->poly).pow(fe.second);
  std::vector<Poly> out;
  out.reserve(row.size());
  for (const auto& x : row) {
    if (x.is_zero()) {
      out.emplace_back();
      continue;
    }
    auto [num, den] = (x * scale).num_den();
    if (!(den == Poly(1))) out.push_back(exact(num, den));
    else out.push_back(std::move(num));
  }
  return out;
}

GroundScalar poly_ratio(const Poly& num, const Poly& den) {
  if (auto q = exact_quotient(num, den)) return *q;
  return GroundScalar::from_poly(num) / GroundScalar::from_poly(den);
}

Solution<GroundScalar> solve_ff(const Matrix<GroundScalar>& a, const std::vector<GroundScalar>& b) {
  Matrix<Poly> pa;
  Matrix<Poly> pb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::vector<GroundScalar> row = a[i];
    row.push_back(b[i]);
    auto polys = clear_denominators(row);
    pb.push_back({polys.back()});
    polys.pop_back();
    pa.push_back(std::move(polys));
  }
  const std::size_t n = a.empty() ? 0 : a[0].size();
  FractionFree ff = fraction_free(std::move(pa), std::move(pb));
  Solution<GroundScalar> s;
  s.rank = ff.rank;
  s.consistent = ff.consistent;
  s.x.assign(n, GroundScalar(0));
  if (s.consistent)
    for (std::size_t r = 0; r < ff.rank; ++r) s.x[ff.pivot_col[r]] = poly_ratio(ff.rhs[r][0], ff.det);
  return s;
}

std::optional<Matrix<GroundScalar>> inverse_ff(const Matrix<GroundScalar>& a) {
  const std::size_t n = a.size();
  Matrix<Poly> pa;
  Matrix<Poly> pb;
  std::vector<GroundScalar> scales;
  for (std::size_t i = 0; i < n; ++i) {
    // Row i is scaled by s_i, so column i of the inverse picks up s_i.
    std::vector<GroundScalar> row = a[i];
    row.emplace_back(1);
    auto polys = clear_denominators(row);
    const Poly s = polys.back();
    polys.pop_back();
    pa.push_back(std::move(polys));
    std::vector<Poly> e(n);
    e[i] = s;
    pb.push_back(std::move(e));
  }
  FractionFree ff = fraction_free(std::move(pa), std::move(pb));
  if (ff.rank != n) return std::nullopt;
  Matrix<GroundScalar> inv(n, std::vector<GroundScalar>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < n; ++j)
      if (!ff.rhs[r][j].is_zero()) inv[ff.pivot_col[r]][j] = poly_ratio(ff.rhs[r][j], ff.det);
  return inv;
}

}  // namespace capvert
