#include <doctest.h>

#include "capvert/character.hpp"
#include "capvert/partition.hpp"

using namespace capvert;

namespace {

Character weights(std::initializer_list<Monomial> ws) {
  Character c;
  for (const auto& w : ws) c.add(w);
  return c;
}

GroundScalar mono(const Monomial& m) { return GroundScalar::from_mono(m); }

std::vector<std::pair<Partition, Partition>> fixed_points(int n) {
  std::vector<std::pair<Partition, Partition>> out;
  for (int n1 = 0; n1 <= n; ++n1)
    for (const auto& a : partitions(n1))
      for (const auto& b : partitions(n - n1)) out.emplace_back(a, b);
  return out;
}

}  // namespace

TEST_CASE("partitions") {
  CHECK(partitions(0) == std::vector<Partition>{{}});
  CHECK(partitions(4).size() == 5);
  CHECK(partitions(2) == std::vector<Partition>{{2}, {1, 1}});
  // Euler's pentagonal recurrence as an independent count
  std::vector<long> p{1};
  for (int n = 1; n <= 10; ++n) {
    long s = 0;
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
      if (g1 > n) break;
      const long sign = k % 2 ? 1 : -1;
      s += sign * p[n - g1];
      if (g2 <= n) s += sign * p[n - g2];
    }
    p.push_back(s);
    CHECK(static_cast<long>(partitions(n).size()) == s);
  }
  CHECK(to_string(Partition{3, 1, 1}) == "3,1,1");
}

TEST_CASE("tautological character") {
  CHECK(taut_character({{1}}, {Monomial{}}) == weights({Monomial{}}));
  const Character two = taut_character({{2}}, {Monomial{}});
  CHECK(two.rank() == 2);
  CHECK(two.multiplicity(Monomial{}) == 1);
  CHECK(two.multiplicity(t1_pow(1)) + two.multiplicity(t2_pow(1)) == 1);
  CHECK(taut_character({{1}, {1}}, {Monomial{}, a_pow(1)}) == weights({Monomial{}, a_pow(1)}));
}

TEST_CASE("Hilbert scheme tangent characters") {
  CHECK(tangent_hilb({1}) == weights({t1_pow(1), t2_pow(1)}));
  CHECK(tangent_hilb({2}) == weights({t1_pow(2), t2_pow(1) * t1_pow(-1), t1_pow(1), t2_pow(1)}));
  for (int n = 0; n <= 6; ++n) {
    for (const auto& p : partitions(n)) {
      CHECK(tangent_hilb(p).rank() == 2 * n);
      CHECK(tangent_hilb(conjugate(p)).swap_t() == tangent_hilb(p));
    }
  }
}

TEST_CASE("lambda_dot") {
  const GroundScalar one(1);
  CHECK(lambda_dot(weights({t1_pow(1)})) == one - mono(t1_pow(-1)));
  CHECK(lambda_dot(weights({t1_pow(1), t2_pow(1)})) ==
        (one - mono(t1_pow(-1))) * (one - mono(t2_pow(-1))));
  const Character c1 = tangent_hilb({2, 1}), c2 = tangent_hilb({3});
  CHECK(lambda_dot(c1 + c2) == lambda_dot(c1) * lambda_dot(c2));
  CHECK(lambda_dot(c1 - c2) == lambda_dot(c1) / lambda_dot(c2));
  CHECK_THROWS_AS(lambda_dot(weights({Monomial{}})), TrivialWeightError);
}

TEST_CASE("character algebra") {
  const Character c = tangent_M2({2}, {1}, {Monomial{}, a_pow(1)});
  CHECK(c.dual().dual() == c);
  const Character d = tangent_hilb({2, 1});
  CHECK((c + d).det() == c.det() * d.det());
}

TEST_CASE("polarization") {
  const std::vector<Monomial> fr{Monomial{}, a_pow(1)};
  CHECK(polarization_M2({}, {}, PolarizationVariant::Printed, fr).empty());
  // The proof writes V = V_1 a + V_2, i.e. framing (a, 1).
  CHECK(polarization_M2({}, {1}, PolarizationVariant::Proof, {a_pow(1), Monomial{}}) ==
        weights({hbar_pow(1) * a_pow(-1), hbar_pow(1)}));
  CHECK(polarization_M2({}, {1}, PolarizationVariant::Proof, fr) == weights({hbar_pow(1) * a_pow(1), hbar_pow(1)}));
  for (int n = 0; n <= 3; ++n) {
    for (const auto& [l1, l2] : fixed_points(n)) {
      const Character full = tangent_M2(l1, l2, fr);
      CHECK(full.rank() == 4 * n);
      CHECK(full.a_part(0) == tangent_hilb(l1) + tangent_hilb(l2));
      // the printed half has rank 2n - n^2, so it is not half of T for n > 0
      const Character half = polarization_M2(l1, l2, PolarizationVariant::Printed, fr);
      CHECK(half.rank() == 2 * n - n * n);
      CHECK(polarization_M2(l1, l2, PolarizationVariant::Proof, fr).rank() == 2 * n);
    }
  }
}

TEST_CASE("stable envelope diagonal") {
  const std::vector<Monomial> fr{Monomial{}, a_pow(1)};
  for (auto v : {PolarizationVariant::Printed, PolarizationVariant::Proof})
    for (auto r : {DeltaRoute::Normalization, DeltaRoute::ProofDisplay})
      CHECK(delta_11({}, {}, v, r, fr) == GroundScalar(1));
  // monomial times a product of (1 - w^{-1}): dividing out Lambda(N^-) leaves a monomial
  const Character nminus = tangent_M2({2}, {1}, fr).a_part(-1);
  const GroundScalar ratio =
      delta_11({2}, {1}, PolarizationVariant::Printed, DeltaRoute::Normalization, fr) / lambda_dot(nminus);
  CHECK(ratio.reduced().is_monomial());
}

TEST_CASE("line bundle eigenvalues") {
  CHECK(o_line_eigen({1}, {}, LineComponent::Full) == mono(a_pow(-1)));
  CHECK(o_line_eigen({}, {2}, LineComponent::Full) == mono(t1_pow(-1)));
  CHECK(o_line_eigen({}, {}, LineComponent::Full) == GroundScalar(1));
  CHECK(o_line_eigen({2}, {1}, LineComponent::First) * o_line_eigen({2}, {1}, LineComponent::Second) *
            mono(a_pow(-2)) ==
        o_line_eigen({2}, {1}, LineComponent::Full));
}

TEST_CASE("Chern class eigenvalues") {
  const std::vector<Monomial> fr{Monomial{}, a_pow(1)};
  CHECK(chern_eigen({{2, 1}}, {Monomial{}}, 0, false) == GroundScalar(1));
  CHECK(chern_eigen({{1}}, {Monomial{}}, 1, false) == GroundScalar(1));
  CHECK(chern_eigen({{1}, {1}}, fr, 2, false) == mono(a_pow(1)));
  CHECK(chern_eigen({{1}, {1}}, fr, 1, false) == GroundScalar(1) + mono(a_pow(1)));
  CHECK(chern_eigen({{1}, {1}}, fr, 1, true) == GroundScalar(1) + mono(a_pow(-1)));
  CHECK_THROWS(chern_eigen({{1}}, {Monomial{}}, 2, false));
}
