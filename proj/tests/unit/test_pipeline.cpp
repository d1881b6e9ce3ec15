#include <doctest.h>

#include "capvert/pipeline.hpp"

using namespace capvert;

namespace {

const Context& ctx() {
  static const Context c;
  return c;
}

GroundScalar at(const GroundScalar& x, const mpq_class& t1, const mpq_class& t2) {
  return x.substitute(Var::T1, t1).substitute(Var::T2, t2);
}

}  // namespace

TEST_CASE("localization identities at small order") {
  CHECK(check_kernel_identity(ctx(), 2).pass);
  CHECK(check_mellit(ctx(), 2).pass);
  CHECK(check_osum(ctx(), 2).pass);
  CHECK(check_main(ctx(), 2, 3).pass);
  CHECK(check_ook(ctx(), 2, 3).pass);
  CHECK(check_degenerate(ctx(), 3).pass);
}

TEST_CASE("kernel slice decomposes into inverse tangent weights") {
  for (int n = 0; n <= 3; ++n) {
    const auto rhs = kernel_rhs(ctx(), n);
    const auto c = ctx().basis().fixed_point_decompose(rhs, n, GroundScalar{});
    for (const auto& lam : partitions(n))
      CHECK(c.at(lam) == GroundScalar(1) / ctx().tangent_lambda(lam, LambdaConvention::Tangent));
  }
}

TEST_CASE("t1 <-> t2 symmetry with conjugation") {
  const mpq_class a(4), b(9);
  for (int n = 1; n <= 3; ++n)
    for (const auto& lam : partitions(n)) {
      const auto x = ctx().tangent_lambda(lam, LambdaConvention::Tangent);
      const auto y = ctx().tangent_lambda(conjugate(lam), LambdaConvention::Tangent);
      CHECK(at(x, a, b) == at(y, b, a));
    }
  const auto f = kernel_lhs(ctx(), 3);
  for (const auto& [mu, c] : f.terms()) CHECK(at(c, a, b) == at(c, b, a));
}

TEST_CASE("main theorem detail fields") {
  const auto r = check_main(ctx(), 2, 3);
  CHECK(r.details.at("winning_shift") == "z/hbar*q");
  CHECK(r.details.at("winning_o_factor") == "dual");
  CHECK(r.details.at("matches_printed_shift") == false);
}

TEST_CASE("capped vertex at n = 0 and n = 1") {
  const auto t0 = capped_vertex_table(ctx(), 0, 4);
  REQUIRE(t0.entries.size() == 1);
  CHECK(t0.entries[0].f.num.size() == 1);
  CHECK(t0.entries[0].f.num[0] == GroundScalar(1));

  const auto t1 = capped_vertex_table(ctx(), 1, 6);
  REQUIRE(t1.entries.size() == 1);
  const auto& e = t1.entries[0];
  CHECK(e.denominator_divides);
  CHECK(e.q_free);
  // the w^0 coefficient is the u-deformed kernel value 1 - u
  CHECK(e.f.num[0] == GroundScalar(1) - GroundScalar::var(Var::U));
  CHECK(check_vertex(ctx(), 2, 8).pass);
}

TEST_CASE("propositions at small n") {
  CHECK(check_prop1(ctx(), 0).pass);
  CHECK(check_prop1(ctx(), 1).pass);
  const auto r = check_prop1(ctx(), 2);
  CHECK(r.pass);
  CHECK(r.details.contains("a_power_resolution"));
  for (int n = 0; n <= 3; ++n)
    for (int k = 0; k <= n; ++k) CHECK_MESSAGE(check_prop4(ctx(), n, k).pass, n << " " << k);
  CHECK_THROWS(check_prop4(ctx(), 2, 3));
}

TEST_CASE("calibration") {
  const auto cal = calibrate();
  CHECK(cal.conventions.to_json() == Conventions{}.to_json());
  CHECK_THROWS_AS(calibrate(Ground{}, 1, Orientation::ArmsT2), CalibrationError);
}

TEST_CASE("conventions roundtrip through json") {
  Conventions c;
  c.descendent_sign = 1;
  c.main_shift = Shift{-1, 1, 0};
  CHECK(Conventions::from_json(c.to_json()).to_json() == c.to_json());
  CHECK(Shift::family().size() == 18);
}
