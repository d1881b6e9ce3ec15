#include "capvert/reconstruct.hpp"

#include "capvert/linalg.hpp"

namespace capvert {

namespace {

void trim(ZSeries& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

}  // namespace

RationalZ rational_reconstruct(const ZSeries& s, int dn, int dd) {
  if (dn < 0 || dd < 0) throw std::invalid_argument("degrees must be non-negative");
  if (static_cast<int>(s.size()) < dn + dd + 2)
    throw ReconstructError("need at least " + std::to_string(dn + dd + 2) + " coefficients");
  auto at = [&](int i) { return i < 0 ? GroundScalar{} : s[static_cast<std::size_t>(i)]; };

  // sum_{j=0}^{dd} d_j s_{i-j} = 0 for i = dn+1 .. dn+dd+1, with d_0 = 1.
  Matrix<GroundScalar> a;
  std::vector<GroundScalar> b;
  for (int i = dn + 1; i <= dn + dd + 1; ++i) {
    std::vector<GroundScalar> row;
    for (int j = 1; j <= dd; ++j) row.push_back(at(i - j));
    a.push_back(std::move(row));
    b.push_back(-at(i));
  }
  RationalZ r;
  r.den.push_back(GroundScalar(1));
  if (dd > 0) {
    auto sol = solve_ff(a, b);
    if (!sol.consistent)
      throw ReconstructError("no rational function of degrees (" + std::to_string(dn) + "," + std::to_string(dd) +
                             ") fits");
    for (auto& x : sol.x) r.den.push_back(x);
  } else {
    for (const auto& rhs : b)
      if (!rhs.is_zero()) throw ReconstructError("no polynomial of degree " + std::to_string(dn) + " fits");
  }
  for (int i = 0; i <= dn; ++i) {
    GroundScalar acc;
    for (int j = 0; j <= std::min(i, dd); ++j)
      if (!r.den[j].is_zero()) acc += r.den[j] * at(i - j);
    r.num.push_back(acc);
  }
  trim(r.num);
  trim(r.den);
  return r;
}

ZSeries expand_rational(const RationalZ& r, int n) {
  if (r.den.empty() || r.den[0].is_zero()) throw ReconstructError("denominator vanishes at z = 0");
  ZSeries out;
  const GroundScalar d0inv = GroundScalar(1) / r.den[0];
  for (int i = 0; i <= n; ++i) {
    GroundScalar acc = i < static_cast<int>(r.num.size()) ? r.num[i] : GroundScalar{};
    for (int j = 1; j <= i && j < static_cast<int>(r.den.size()); ++j)
      if (!r.den[j].is_zero() && !out[i - j].is_zero()) acc -= r.den[j] * out[i - j];
    out.push_back(acc * d0inv);
  }
  return out;
}

int certify(const RationalZ& r, const ZSeries& s) {
  if (s.empty()) return -1;
  const ZSeries e = expand_rational(r, static_cast<int>(s.size()) - 1);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!(e[i] == s[i])) return static_cast<int>(i);
  return -1;
}

}  // namespace capvert
