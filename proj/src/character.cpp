#include "capvert/character.hpp"

#include <stdexcept>

namespace capvert {

void Character::add(const Monomial& w, int mult) {
  if (mult == 0) return;
  auto [it, inserted] = w_.try_emplace(w, mult);
  if (!inserted) {
    it->second += mult;
    if (it->second == 0) w_.erase(it);
  }
}

int Character::rank() const {
  int r = 0;
  for (const auto& [w, m] : w_) r += m;
  return r;
}

int Character::multiplicity(const Monomial& w) const {
  auto it = w_.find(w);
  return it == w_.end() ? 0 : it->second;
}

Character Character::operator+(const Character& o) const {
  Character r = *this;
  for (const auto& [w, m] : o.w_) r.add(w, m);
  return r;
}

Character Character::operator-() const {
  Character r;
  for (const auto& [w, m] : w_) r.add(w, -m);
  return r;
}

Character Character::operator-(const Character& o) const { return *this + (-o); }

Character Character::operator*(const Character& o) const {
  Character r;
  for (const auto& [a, ma] : w_)
    for (const auto& [b, mb] : o.w_) r.add(a * b, ma * mb);
  return r;
}

Character Character::operator*(const Monomial& m) const {
  Character r;
  for (const auto& [w, k] : w_) r.add(w * m, k);
  return r;
}

Character Character::dual() const {
  Character r;
  for (const auto& [w, m] : w_) r.add(w.inverse(), m);
  return r;
}

Character Character::adams(int k) const {
  Character r;
  for (const auto& [w, m] : w_) r.add(w.pow(k), m);
  return r;
}

Monomial Character::det() const {
  Monomial d;
  for (const auto& [w, m] : w_) d = d * w.pow(m);
  return d;
}

Character Character::a_part(int sign) const {
  Character r;
  for (const auto& [w, m] : w_) {
    const int e = w.doubled(Var::A);
    if ((sign < 0 && e < 0) || (sign == 0 && e == 0) || (sign > 0 && e > 0)) r.add(w, m);
  }
  return r;
}

Character Character::swap_t() const {
  Character r;
  for (const auto& [w, m] : w_) {
    auto ex = w.exponents();
    std::swap(ex[0], ex[1]);
    r.add(Monomial(ex), m);
  }
  return r;
}

std::string Character::to_string() const {
  if (w_.empty()) return "0";
  std::string s;
  for (const auto& [w, m] : w_) {
    if (!s.empty()) s += m < 0 ? " - " : " + ";
    else if (m < 0) s += "-";
    const int a = m < 0 ? -m : m;
    if (a != 1) s += std::to_string(a) + "*";
    s += w.to_string();
  }
  return s;
}

Monomial t1_pow(int e) { return Monomial::var(Var::T1, 2 * e); }
Monomial t2_pow(int e) { return Monomial::var(Var::T2, 2 * e); }
Monomial hbar_pow(int e) { return t1_pow(e) * t2_pow(e); }

Character taut_character(const std::vector<Partition>& parts, const std::vector<Monomial>& framing) {
  if (parts.size() != framing.size()) throw std::invalid_argument("framing size mismatch");
  Character v;
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (const auto& b : boxes(parts[i])) v.add(framing[i] * t1_pow(b.c) * t2_pow(b.r));
  return v;
}

Character tangent_hilb(const Partition& p, Orientation o) {
  const Partition conj = conjugate(p);
  Character t;
  for (const auto& b : boxes(p)) {
    const int a = arm(p, b), l = leg(p, conj, b);
    t.add(t1_pow(a + 1) * t2_pow(-l));
    t.add(t1_pow(-a) * t2_pow(l + 1));
  }
  return o == Orientation::ArmsT1 ? t : t.swap_t();
}

namespace {

Character framing_character(const std::vector<Monomial>& framing) {
  Character w;
  for (const auto& m : framing) w.add(m);
  return w;
}

}  // namespace

Character tangent_M2(const Partition& p1, const Partition& p2, const std::vector<Monomial>& framing) {
  const Character v = taut_character({p1, p2}, framing);
  const Character w = framing_character(framing);
  Character q;
  q.add(t1_pow(1));
  q.add(t2_pow(1));
  q.add(Monomial{}, -1);
  q.add(hbar_pow(1), -1);
  return w * v.dual() + w.dual() * v * hbar_pow(1) + q * v * v.dual();
}

Character polarization_M2(const Partition& p1, const Partition& p2, PolarizationVariant variant,
                          const std::vector<Monomial>& framing) {
  const Character v = taut_character({p1, p2}, framing);
  const Character w = framing_character(framing);
  if (variant == PolarizationVariant::Proof) return w.dual() * v * hbar_pow(1);
  const Character vv = v.dual() * v;
  return w.dual() * v + vv * t2_pow(-1) - vv * hbar_pow(-1) - vv;
}

GroundScalar lambda_dot(const Character& c) {
  GroundScalar r(1);
  for (const auto& [w, m] : c.weights()) {
    if (w.is_one()) throw TrivialWeightError("lambda_dot: trivial weight with multiplicity " + std::to_string(m));
    Poly f = Poly(1) - Poly(w.inverse(), 1);
    r *= GroundScalar::from_poly(f).pow(m);
  }
  return r;
}

namespace {

Monomial half(const Monomial& m) {
  auto ex = m.exponents();
  for (auto& e : ex) {
    if (e % 2 != 0) throw ArithmeticError("square root needs quarter exponents");
    e /= 2;
  }
  return Monomial(ex);
}

}  // namespace

GroundScalar delta_11(const Partition& p1, const Partition& p2, PolarizationVariant variant, DeltaRoute route,
                      const std::vector<Monomial>& framing) {
  const int n = size(p1) + size(p2);
  const Character nminus = tangent_M2(p1, p2, framing).a_part(-1);
  const Character pol = polarization_M2(p1, p2, variant, framing);
  const GroundScalar lam = lambda_dot(nminus);
  if (route == DeltaRoute::ProofDisplay) {
    return GroundScalar::from_mono(hbar_pow(-n)) * lam / GroundScalar::from_mono(pol.a_part(-1).det());
  }
  const Character nonzero = pol.a_part(-1) + pol.a_part(1);
  const Monomial ratio = nminus.det() * nonzero.det().inverse();
  return GroundScalar::from_mono(hbar_pow(-n) * half(ratio)) * lam;
}

GroundScalar o_line_eigen(const Partition& p1, const Partition& p2, LineComponent which) {
  Monomial m;
  if (which != LineComponent::Second)
    for (const auto& b : boxes(p1)) m = m * t1_pow(-b.c) * t2_pow(-b.r);
  if (which != LineComponent::First)
    for (const auto& b : boxes(p2)) m = m * t1_pow(-b.c) * t2_pow(-b.r);
  if (which == LineComponent::Full) m = m * a_pow(-size(p1));
  return GroundScalar::from_mono(m);
}

GroundScalar chern_eigen(const std::vector<Partition>& parts, const std::vector<Monomial>& framing, int k,
                         bool dual) {
  const Character v = taut_character(parts, framing);
  if (k < 0 || k > v.rank()) throw std::out_of_range("chern_eigen: k out of range");
  std::vector<GroundScalar> e(static_cast<std::size_t>(k) + 1);
  e[0] = GroundScalar(1);
  for (const auto& [w, m] : v.weights()) {
    const GroundScalar x = GroundScalar::from_mono(dual ? w.inverse() : w);
    for (int rep = 0; rep < m; ++rep)
      for (int j = k; j >= 1; --j)
        if (!e[j - 1].is_zero()) e[j] += x * e[j - 1];
  }
  return e[k];
}

}  // namespace capvert
