#include <doctest.h>

#include "capvert/reconstruct.hpp"
#include "capvert/series.hpp"
#include "support/random.hpp"

using namespace capvert;
using capvert::testing::random_nonzero;
using capvert::testing::random_scalar;
using capvert::testing::random_series;

namespace {

GroundScalar T1(int d = 2) { return GroundScalar::var(Var::T1, d); }
GroundScalar T2(int d = 2) { return GroundScalar::var(Var::T2, d); }
GroundScalar A(int d = 2) { return GroundScalar::var(Var::A, d); }
GroundScalar one(1);

// Cross-multiplication on expanded numerators and denominators.
bool cross_equal(const GroundScalar& x, const GroundScalar& y) {
  auto [a, b] = x.num_den();
  auto [c, d] = y.num_den();
  return a * d == c * b;
}

}  // namespace

TEST_CASE("scalar arithmetic examples") {
  CHECK((T1() * T2()) / GroundScalar::hbar() == one);
  CHECK(GroundScalar::hbar(1) * GroundScalar::hbar(1) == GroundScalar::hbar());
  const GroundScalar x = (one - T1(4)) / (one - T1());
  CHECK(cross_equal(x, one + T1()));
  CHECK(x == one + T1());
  CHECK_THROWS(one / GroundScalar{});
}

TEST_CASE("canonical text renders half exponents") {
  CHECK(GroundScalar::var(Var::T1, 3).to_string() == "t1^(3/2)");
  CHECK((one + T1()).to_string() == (T1() + one).to_string());
}

TEST_CASE("field axioms on random triples") {
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    const GroundScalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    CHECK(cross_equal((a + b) + c, a + (b + c)));
    CHECK(cross_equal((a * b) * c, a * (b * c)));
    CHECK(cross_equal(a * (b + c), a * b + a * c));
    CHECK((a - a).is_zero());
    if (!b.is_zero()) CHECK(cross_equal(a / b * b, a));
  }
}

TEST_CASE("series exp and log") {
  const int ny = 2, nz = 3;
  CHECK(series_exp(TruncatedSeries(ny, nz)) == TruncatedSeries::constant(ny, nz, one));
  const GroundScalar c = T1() + GroundScalar::var(Var::U);
  const TruncatedSeries f = TruncatedSeries::constant(ny, nz, one) + TruncatedSeries::term(ny, nz, 0, 1, c);
  CHECK(series_exp(series_log(f)) == f);
  TruncatedSeries expected = TruncatedSeries::constant(2, 0, one) + TruncatedSeries::term(2, 0, 1, 0, c) +
                             TruncatedSeries::term(2, 0, 2, 0, c * c / GroundScalar(2));
  CHECK(series_exp(TruncatedSeries::term(2, 0, 1, 0, c)) == expected);
  CHECK_THROWS(series_exp(TruncatedSeries::constant(ny, nz, one)));
}

TEST_CASE("exp/log roundtrip on random series") {
  std::mt19937 rng(12);
  for (int i = 0; i < 100; ++i) {
    const int ny = capvert::testing::uniform(rng, 0, 4), nz = capvert::testing::uniform(rng, 0, 6);
    const TruncatedSeries f = random_series(rng, ny, nz, true, 2);
    CHECK(series_log(series_exp(f)) == f);
  }
}

TEST_CASE("truncation bounds are respected") {
  const TruncatedSeries a = TruncatedSeries::term(2, 2, 1, 2, one);
  CHECK((a * a).is_zero());
  CHECK(TruncatedSeries::term(2, 2, 3, 0, one).is_zero());
}

TEST_CASE("geom") {
  const TruncatedSeries z = TruncatedSeries::term(0, 3, 0, 1, one);
  TruncatedSeries expected(0, 3);
  for (int j = 0; j <= 3; ++j) expected.add_term(0, j, one);
  CHECK(geom(z) == expected);
  // 1/(1 - z hbar/q) coefficientwise
  const GroundScalar r = GroundScalar::hbar() / GroundScalar::var(Var::Q);
  const TruncatedSeries g = geom(TruncatedSeries::term(0, 5, 0, 1, r));
  for (int j = 0; j <= 5; ++j) CHECK(g.coeff(0, j) == r.pow(j));
  CHECK_THROWS(geom(TruncatedSeries::constant(0, 3, one)));

  std::mt19937 rng(13);
  for (int i = 0; i < 100; ++i) {
    const TruncatedSeries s = random_series(rng, 3, 4, true, 2);
    CHECK((TruncatedSeries::constant(3, 4, one) - s) * geom(s) == TruncatedSeries::constant(3, 4, one));
  }
}

TEST_CASE("adams") {
  CHECK(GroundScalar::hbar().adams(3) == GroundScalar::hbar(6));
  const GroundScalar u = GroundScalar::var(Var::U);
  CHECK(((one - u) / (one - T1(4))).adams(2) == (one - u.pow(2)) / (one - T1(8)));
  std::mt19937 rng(14);
  for (int i = 0; i < 100; ++i) {
    const GroundScalar x = random_scalar(rng), y = random_scalar(rng);
    const int j = capvert::testing::uniform(rng, 1, 3), k = capvert::testing::uniform(rng, 1, 3);
    CHECK((x * y).adams(k) == x.adams(k) * y.adams(k));
    CHECK((x + y).adams(k) == x.adams(k) + y.adams(k));
    CHECK(x.adams(j).adams(k) == x.adams(j * k));
  }
  const TruncatedSeries s = TruncatedSeries::term(4, 4, 1, 1, T1());
  CHECK(s.adams(2) == TruncatedSeries::term(4, 4, 2, 2, T1(4)));
}

TEST_CASE("a-adic valuation and limit") {
  CHECK(((A(4)) * T1()).a_valuation2() == 4);
  CHECK((one / (A() * (one - T1()))).a_valuation2() == -2);
  CHECK((one - A() * T2()).a_valuation2() == 0);
  CHECK((A() * T1() + T2()).a_limit() == T2());
  // 1/(1 - t1/a) = a/(a - t1) = -(a/t1)(1 + a/t1 + ...) vanishes at a = 0.
  const GroundScalar x = one / (one - T1() / A());
  CHECK(x.a_valuation2() == 2);
  CHECK(x.a_limit().is_zero());
  CHECK_THROWS(A(-2).a_limit());
}

TEST_CASE("a_limit matches the a^0 coefficient of the a-adic expansion") {
  std::mt19937 rng(15);
  for (int i = 0; i < 100; ++i) {
    // x = (n0 + a n1) / (d0 + a d1) with a-free n0, n1, d0, d1
    const GroundScalar n0 = random_nonzero(rng), n1 = random_scalar(rng);
    const GroundScalar d0 = random_nonzero(rng), d1 = random_scalar(rng);
    const GroundScalar x = (n0 + A() * n1) / (d0 + A() * d1);
    CHECK(x.a_valuation2() == 0);
    CHECK(x.a_limit() == n0 / d0);
  }
}

TEST_CASE("rational reconstruction examples") {
  ZSeries geo(6, one);
  RationalZ r = rational_reconstruct(geo, 0, 1);
  REQUIRE(r.num.size() >= 1);
  CHECK(r.num[0] == one);
  CHECK(r.den[0] == one);
  CHECK(r.den[1] == GroundScalar(-1));

  // (hbar - 1/hbar) w / (1 - w), w = z hbar / q
  const GroundScalar h = GroundScalar::hbar();
  const GroundScalar w = h / GroundScalar::var(Var::Q);
  ZSeries s{GroundScalar{}};
  for (int j = 1; j <= 5; ++j) s.push_back((h - one / h) * w.pow(j));
  r = rational_reconstruct(s, 1, 1);
  CHECK(certify(r, s) == -1);
  // cross-multiplied against the closed form
  CHECK(r.num[0].is_zero());
  CHECK(r.num[1] / r.den[0] == (h - one / h) * w);
  CHECK(r.den[1] / r.den[0] == -w);

  const ZSeries bad{one, one, GroundScalar{}, one};
  CHECK_THROWS_AS(rational_reconstruct(bad, 0, 1), ReconstructError);
}

TEST_CASE("rational reconstruction roundtrip on random instances") {
  std::mt19937 rng(16);
  for (int i = 0; i < 100; ++i) {
    const int dn = capvert::testing::uniform(rng, 0, 2), dd = capvert::testing::uniform(rng, 0, 2);
    RationalZ f;
    for (int k = 0; k <= dn; ++k) f.num.push_back(capvert::testing::random_poly_scalar(rng));
    f.den.push_back(one);
    for (int k = 1; k <= dd; ++k) f.den.push_back(capvert::testing::random_poly_scalar(rng));
    const ZSeries s = expand_rational(f, dn + dd + 4);
    const RationalZ g = rational_reconstruct(s, dn, dd);
    CHECK(certify(g, s) == -1);
    CHECK(expand_rational(g, dn + dd + 4) == s);
  }
}
