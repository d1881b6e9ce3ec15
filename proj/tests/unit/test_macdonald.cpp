#include <doctest.h>

#include "capvert/macdonald.hpp"
#include "support/random.hpp"

using namespace capvert;

namespace {

std::size_t index_of(const Partition& mu) {
  const auto ps = partitions(size(mu));
  return static_cast<std::size_t>(std::find(ps.begin(), ps.end(), mu) - ps.begin());
}

// omega p_mu = (-1)^{|mu| - l(mu)} p_mu
SymVec omega(const SymVec& v, int n) {
  const auto ps = partitions(n);
  SymVec out = v;
  for (std::size_t i = 0; i < ps.size(); ++i)
    if ((n - static_cast<int>(ps[i].size())) % 2) out[i] = -out[i];
  return out;
}

bool proportional(const SymVec& a, const SymVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (!(a[i] * b[j] - a[j] * b[i]).is_zero()) return false;
  return true;
}

bool equal(const SymVec& a, const SymVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] - b[i]).is_zero()) return false;
  return a.size() == b.size();
}

const GroundScalar qv = GroundScalar::var(Var::T1), tv = GroundScalar::var(Var::T2);

}  // namespace

TEST_CASE("schur characters") {
  CHECK(schur_character({2}, {1, 1}) == 1);
  CHECK(schur_character({1, 1}, {2}) == -1);
  CHECK(schur_character({2, 1}, {3}) == -1);
  CHECK(schur_character({2, 1}, {1, 1, 1}) == 2);
  // column orthogonality at n = 4
  const auto ps = partitions(4);
  for (const auto& rho : ps)
    for (const auto& sig : ps) {
      long s = 0;
      for (const auto& l : ps) s += schur_character(l, rho) * schur_character(l, sig);
      CHECK(mpz_class(s) == (rho == sig ? z_of(rho) : mpz_class(0)));
    }
}

TEST_CASE("H~ at n = 1 and n = 2") {
  const auto h1 = modified_macdonald_gs(1, qv, tv);
  CHECK(h1.at({1}).size() == 1);
  CHECK(h1.at({1})[0] == GroundScalar(1));

  // H~_(2) = s_2 + q s_11, H~_(11) = s_2 + t s_11 with s_2 = (p1^2 + p2)/2, s_11 = (p1^2 - p2)/2
  const auto h2 = modified_macdonald_gs(2, qv, tv);
  const std::size_t i2 = index_of({2}), i11 = index_of({1, 1});
  const GroundScalar half(mpq_class(1, 2));
  auto expect = [&](const GroundScalar& c) {
    SymVec v(2);
    v[i11] = half * (GroundScalar(1) + c);
    v[i2] = half * (GroundScalar(1) - c);
    return v;
  };
  CHECK(equal(h2.at({2}), expect(qv)));
  CHECK(equal(h2.at({1, 1}), expect(tv)));

  // the Fock basis is omega H~ at q = t1^-2, t = t2^-2, up to scale
  const MacdonaldBasis basis;
  const GroundScalar qm = GroundScalar::var(Var::T1, -4), tm = GroundScalar::var(Var::T2, -4);
  const auto hm = modified_macdonald_gs(2, qm, tm);
  for (const auto& mu : partitions(2)) CHECK(proportional(basis.vec(mu), omega(hm.at(mu), 2)));
  CHECK(basis.vec({1}).size() == 1);
}

TEST_CASE("Gram-Schmidt agrees with the triangularity characterization") {
  for (int n = 1; n <= 4; ++n) {
    const auto gs = modified_macdonald_gs(n, qv, tv);
    const auto ax = modified_macdonald_axioms(n, qv, tv);
    for (const auto& mu : partitions(n)) CHECK_MESSAGE(equal(gs.at(mu), ax.at(mu)), to_string(mu));
  }
}

TEST_CASE("q <-> t duality") {
  for (int n = 1; n <= 5; ++n) {
    const auto a = modified_macdonald_gs(n, qv, tv);
    const auto b = modified_macdonald_gs(n, tv, qv);
    for (const auto& mu : partitions(n)) CHECK_MESSAGE(equal(a.at(mu), b.at(conjugate(mu))), to_string(mu));
  }
}

TEST_CASE("rational P at a point matches the symbolic interpolation") {
  const mpq_class q(2, 3), t(5, 7);
  const auto at = modified_macdonald_at(3, q, t);
  const auto sym = modified_macdonald_gs(3, GroundScalar(q), GroundScalar(t));
  for (const auto& mu : partitions(3))
    for (std::size_t i = 0; i < at.at(mu).size(); ++i) CHECK(sym.at(mu)[i] == GroundScalar(at.at(mu)[i]));
}

TEST_CASE("fixed-point decomposition") {
  const MacdonaldBasis basis;
  std::mt19937 rng(31);
  for (int n = 0; n <= 5; ++n) {
    std::map<Partition, GroundScalar> eig;
    for (const auto& mu : partitions(n)) eig.emplace(mu, capvert::testing::random_poly_scalar(rng));
    const auto f = basis.localization_sum([&](const Partition& mu) { return eig.at(mu); },
                                          [](const Partition&) { return GroundScalar(1); }, n, n);
    const auto back = basis.fixed_point_decompose(f, n, GroundScalar{});
    for (const auto& mu : partitions(n)) CHECK(back.at(mu) == eig.at(mu));
  }
  const auto zero = basis.fixed_point_decompose(FockElement<GroundScalar>(3), 3, GroundScalar{});
  for (const auto& [mu, c] : zero) CHECK(c.is_zero());
}
