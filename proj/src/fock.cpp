#include "capvert/fock.hpp"

namespace capvert {

GroundScalar heis_d(int k, const Ground& g) {
  return (g.var(Var::T1, k) - g.var(Var::T1, -k)) * (g.var(Var::T2, k) - g.var(Var::T2, -k));
}

GroundScalar heis_n(int k, const Ground& g) {
  return heis_d(k, g) * (g.hbar(k) - g.hbar(-k)) / GroundScalar(k);
}

std::map<int, TruncatedSeries> jj0_shifts(int n, int ny, int nz, const Ground& g, JJRule rule) {
  std::map<int, TruncatedSeries> s;
  for (int k = 1; k <= n; ++k) {
    GroundScalar c;
    if (rule == JJRule::Printed) {
      c = g.hbar(2 * k) * (g.hbar(2 * k) - g.hbar(-2 * k));
      if (k % 2) c = -c;
    } else {
      c = -(g.hbar(k) - g.hbar(-k));
    }
    const TruncatedSeries zk = TruncatedSeries::term(ny, nz, 0, k, GroundScalar(1));
    s.emplace(k, zk * geom(zk) * c);
  }
  return s;
}

TensorFockElement<TruncatedSeries> jj0_substitute(const TensorFockElement<TruncatedSeries>& t, int ny, int nz,
                                                  const Ground& g, JJRule rule) {
  return substitute_second(t, jj0_shifts(t.truncation(), ny, nz, g, rule));
}

}  // namespace capvert
