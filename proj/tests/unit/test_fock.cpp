#include <doctest.h>

#include "capvert/fock.hpp"
#include "support/random.hpp"

using namespace capvert;

namespace {

const GroundScalar one(1);
GroundScalar half(Var v, int doubled) { return GroundScalar::var(v, doubled); }

// D_k = (t1^{-k/2} - t1^{k/2})(t2^{-k/2} - t2^{k/2})
GroundScalar D(int k) {
  return (half(Var::T1, -k) - half(Var::T1, k)) * (half(Var::T2, -k) - half(Var::T2, k));
}

FockElement<GroundScalar> p(const Partition& mu, int n, const GroundScalar& c = GroundScalar(1)) {
  FockElement<GroundScalar> f(n);
  f.add_term(mu, c);
  return f;
}

std::vector<Partition> all_upto(int n) {
  std::vector<Partition> out;
  for (int d = 0; d <= n; ++d)
    for (const auto& mu : partitions(d)) out.push_back(mu);
  return out;
}

template <class C>
bool same(const FockElement<C>& a, const FockElement<C>& b) {
  return !a.first_difference(b);
}

using TS = TruncatedSeries;
using Tensor = TensorFockElement<TS>;

Tensor tensor_term(const Partition& m1, const Partition& m2, const TS& c, int n = 4) {
  Tensor t(n);
  t.add_term(m1, m2, c);
  return t;
}

}  // namespace

TEST_CASE("Heisenberg action examples") {
  CHECK(same(heis(1, p({1}, 3)), p({}, 3, GroundScalar(-1))));
  CHECK(same(heis(-1, p({}, 3)), p({1}, 3, GroundScalar(-1) / D(1))));
  CHECK(heis(2, p({1}, 3)).is_zero());
  CHECK_THROWS(heis(0, p({}, 3)));
}

TEST_CASE("Heisenberg commutator") {
  for (int k = 1; k <= 4; ++k) {
    for (const auto& mu : all_upto(6)) {
      const auto f = p(mu, 10);
      const auto lhs = heis(k, heis(-k, f)) - heis(-k, heis(k, f));
      CHECK(same(lhs, f.scaled(GroundScalar(k) / D(k))));
      for (int j = 1; j <= 4; ++j)
        if (j != k) CHECK(same(heis(j, heis(-k, f)), heis(-k, heis(j, f))));
    }
  }
  CHECK(heis_n(2) == heis_d(2) * (GroundScalar::hbar(2) - GroundScalar::hbar(-2)) / GroundScalar(2));
}

TEST_CASE("exp_linear and pexp") {
  const GroundScalar x = GroundScalar::var(Var::U) + one, w = GroundScalar::var(Var::Q);
  auto e = exp_linear(std::map<int, GroundScalar>{{1, x}}, 2, one);
  CHECK(same(e, p({}, 2) + p({1}, 2, x) + p({1, 1}, 2, x * x / GroundScalar(2))));
  e = exp_linear(std::map<int, GroundScalar>{{1, x}, {2, w}}, 2, one);
  CHECK(same(e, p({}, 2) + p({1}, 2, x) + p({1, 1}, 2, x * x / GroundScalar(2)) + p({2}, 2, w)));
  // mu = (2,1,1): c_2 c_1^2 / 2!
  e = exp_linear(std::map<int, GroundScalar>{{1, x}, {2, w}}, 4, one);
  CHECK(*e.find({2, 1, 1}) == w * x * x / GroundScalar(2));

  CHECK(same(pexp(GroundScalar{}, 4, one), p({}, 4)));
  std::mt19937 rng(21);
  for (int i = 0; i < 10; ++i) {
    const GroundScalar c = capvert::testing::random_nonzero(rng), d = capvert::testing::random_nonzero(rng);
    CHECK(same(pexp(c + d, 3, one), pexp(c, 3, one) * pexp(d, 3, one)));
    const auto f = pexp(c, 3, one);
    for (int k = 1; k <= 3; ++k) CHECK(*f.find({k}) == c.adams(k) / GroundScalar(k));
  }
}

TEST_CASE("fock_exp agrees with exp_linear") {
  const GroundScalar x = GroundScalar::var(Var::T1), w = GroundScalar::var(Var::T2);
  CHECK(same(fock_exp(p({1}, 4, x) + p({2}, 4, w), one), exp_linear(std::map<int, GroundScalar>{{1, x}, {2, w}}, 4, one)));
}

TEST_CASE("tensor exponential") {
  const GroundScalar x = GroundScalar::var(Var::U);
  const std::map<int, GroundScalar> none;
  const std::map<int, GroundScalar> c{{1, x}, {2, x * x}};
  const auto t = tensor_exp(c, none, 3, one);
  const auto e = exp_linear(c, 3, one);
  for (const auto& [key, v] : t.terms()) {
    CHECK(key.second.empty());
    CHECK(v == *e.find(key.first));
  }
  CHECK(t.terms().size() == e.terms().size());
  const auto u = tensor_exp(none, std::map<int, GroundScalar>{{1, x}}, 1, one);
  TensorFockElement<GroundScalar> expected = TensorFockElement<GroundScalar>::constant(1, one);
  expected.add_term({}, {1}, x);
  CHECK(!u.first_difference(expected));
}

TEST_CASE("J(z)J(0)^{-1} substitution") {
  const int ny = 2, nz = 5;
  const GroundScalar h = GroundScalar::hbar();
  const TS unit = TS::constant(ny, nz, one);
  // p1 (x) 1 is fixed
  CHECK(!jj0_substitute(tensor_term({1}, {}, unit), ny, nz).first_difference(tensor_term({1}, {}, unit)));
  // 1 (x) p_k -> 1 (x) p_k + (-1)^k z^k hbar^k (hbar^k - hbar^-k) / (1 - z^k) p_k (x) 1
  for (int k = 1; k <= 2; ++k) {
    TS s(ny, nz);
    for (int j = k; j <= nz; j += k) s.add_term(0, j, h.pow(k) * (h.pow(k) - h.pow(-k)) * GroundScalar(k % 2 ? -1 : 1));
    const Tensor expected = tensor_term({}, {k}, unit) + tensor_term({k}, {}, s);
    CHECK(!jj0_substitute(tensor_term({}, {k}, unit), ny, nz).first_difference(expected));
  }
}

TEST_CASE("J(z)J(0)^{-1} is multiplicative and trivial at z^0") {
  std::mt19937 rng(22);
  const int n = 4, ny = 4, nz = 4;
  for (int i = 0; i < 50; ++i) {
    const Tensor a = capvert::testing::random_tensor(rng, n, ny, nz, 2);
    const Tensor b = capvert::testing::random_tensor(rng, n, ny, nz, 2);
    const Tensor lhs = jj0_substitute(a * b, ny, nz);
    const Tensor rhs = jj0_substitute(a, ny, nz) * jj0_substitute(b, ny, nz);
    CHECK(!lhs.first_difference(rhs));
  }
  const Tensor c = capvert::testing::random_tensor(rng, n, ny, 0, 3);
  CHECK(!jj0_substitute(c, ny, 0).first_difference(c));
}

TEST_CASE("project_second") {
  const TS unit = TS::constant(1, 0, one);
  CHECK(project_second(tensor_term({}, {1}, unit)).is_zero());
  const auto f = project_second(tensor_term({1}, {}, unit));
  CHECK(f.terms().size() == 1);
  CHECK(f.find({1}) != nullptr);
}
