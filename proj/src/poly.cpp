#include "capvert/poly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace capvert {

namespace {

bool term_greater(const Term& a, const Term& b) { return a.mono > b.mono; }

// Merge two descending term lists: a + sign*b.
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool negate_b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono > b[j].mono)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].mono > a[i].mono) {
      out.push_back(b[j]);
      if (negate_b) out.back().coeff = -out.back().coeff;
      ++j;
    } else {
      mpz_class c = negate_b ? mpz_class(a[i].coeff - b[j].coeff) : mpz_class(a[i].coeff + b[j].coeff);
      if (c != 0) out.push_back(Term{a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly::Poly(const mpz_class& c) {
  if (c != 0) terms_.push_back(Term{Monomial{}, c});
}

Poly::Poly(const Monomial& m, const mpz_class& c) {
  if (c != 0) terms_.push_back(Term{m, c});
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  Poly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

Poly Poly::operator+(const Poly& o) const {
  Poly p;
  p.terms_ = merge(terms_, o.terms_, false);
  return p;
}

Poly Poly::operator-(const Poly& o) const {
  Poly p;
  p.terms_ = merge(terms_, o.terms_, true);
  return p;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly{};
  if (o.terms_.size() == 1) return shifted(o.terms_[0].mono).scaled(o.terms_[0].coeff);
  if (terms_.size() == 1) return o.shifted(terms_[0].mono).scaled(terms_[0].coeff);
  std::unordered_map<Monomial, mpz_class, MonomialHash> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      auto& slot = acc[a.mono * b.mono];
      mpz_addmul(slot.get_mpz_t(), a.coeff.get_mpz_t(), b.coeff.get_mpz_t());
    }
  }
  Poly p;
  p.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) p.terms_.push_back(Term{m, std::move(c)});
  std::sort(p.terms_.begin(), p.terms_.end(), term_greater);
  return p;
}

Poly Poly::scaled(const mpz_class& c) const {
  if (c == 0) return Poly{};
  Poly p = *this;
  if (c != 1)
    for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

Poly Poly::shifted(const Monomial& m) const {
  Poly p = *this;
  if (!m.is_one())
    for (auto& t : p.terms_) t.mono = t.mono * m;
  return p;
}

Poly Poly::pow(unsigned k) const {
  Poly result(1);
  Poly base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

mpz_class Poly::content() const {
  mpz_class g = 0;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Monomial Poly::monomial_content() const {
  if (terms_.empty()) return Monomial{};
  Monomial m = terms_.front().mono;
  for (const auto& t : terms_) m = Monomial::min(m, t.mono);
  return m;
}

Poly Poly::adams(int k) const {
  if (k == 1) return *this;
  Poly p = *this;
  for (auto& t : p.terms_) t.mono = t.mono.pow(k);
  if (k < 0) std::sort(p.terms_.begin(), p.terms_.end(), term_greater);
  return p;
}

std::int32_t Poly::min_exponent(Var v) const {
  std::int32_t m = std::numeric_limits<std::int32_t>::max();
  for (const auto& t : terms_) m = std::min(m, t.mono.doubled(v));
  return terms_.empty() ? 0 : m;
}

std::int32_t Poly::max_exponent(Var v) const {
  std::int32_t m = std::numeric_limits<std::int32_t>::min();
  for (const auto& t : terms_) m = std::max(m, t.mono.doubled(v));
  return terms_.empty() ? 0 : m;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  if (is_zero()) return Poly{};
  if (d.terms_.size() == 1) {
    const auto& dc = d.terms_[0].coeff;
    Poly p = shifted(d.terms_[0].mono.inverse());
    for (auto& t : p.terms_) {
      if (!mpz_divisible_p(t.coeff.get_mpz_t(), dc.get_mpz_t())) return std::nullopt;
      mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), dc.get_mpz_t());
    }
    return p;
  }
  // Shift both into the polynomial ring; the quotient (if any) is then a
  // polynomial times the ratio of the shifts.
  const Monomial shift_a = monomial_content();
  const Monomial shift_d = d.monomial_content();
  const Poly dd = d.shifted(shift_d.inverse());
  const Term& lt = dd.terms_.front();
  // Remainder kept in an ordered map so each step only touches |d| terms.
  std::map<Monomial, mpz_class, std::greater<>> r;
  for (const auto& t : terms_) r.emplace(t.mono * shift_a.inverse(), t.coeff);
  std::vector<Term> quotient;
  mpz_class prod;
  while (!r.empty()) {
    auto top = r.begin();
    if (!top->first.divisible_by(lt.mono)) return std::nullopt;
    if (!mpz_divisible_p(top->second.get_mpz_t(), lt.coeff.get_mpz_t())) return std::nullopt;
    Term qt{top->first * lt.mono.inverse(), 0};
    mpz_divexact(qt.coeff.get_mpz_t(), top->second.get_mpz_t(), lt.coeff.get_mpz_t());
    r.erase(top);
    for (std::size_t i = 1; i < dd.terms_.size(); ++i) {
      const Term& t = dd.terms_[i];
      auto [it, inserted] = r.try_emplace(t.mono * qt.mono, 0);
      mpz_submul(it->second.get_mpz_t(), t.coeff.get_mpz_t(), qt.coeff.get_mpz_t());
      if (it->second == 0) r.erase(it);
    }
    quotient.push_back(std::move(qt));
  }
  Poly q;
  q.terms_ = std::move(quotient);  // generated in descending order
  return q.shifted(shift_a * shift_d.inverse());
}

bool Poly::operator==(const Poly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].mono != o.terms_[i].mono || terms_[i].coeff != o.terms_[i].coeff) return false;
  return true;
}

int Poly::compare(const Poly& o) const {
  const std::size_t n = std::min(terms_.size(), o.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = terms_[i].mono <=> o.terms_[i].mono; c != 0) return c < 0 ? -1 : 1;
    if (int c = cmp(terms_[i].coeff, o.terms_[i].coeff); c != 0) return c < 0 ? -1 : 1;
  }
  if (terms_.size() == o.terms_.size()) return 0;
  return terms_.size() < o.terms_.size() ? -1 : 1;
}

std::size_t Poly::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ terms_.size();
  for (const auto& t : terms_) {
    h = (h ^ t.mono.hash()) * 1099511628211ull;
    h = (h ^ mpz_fdiv_ui(t.coeff.get_mpz_t(), 2147483647ul)) * 1099511628211ull;
    if (t.coeff < 0) h ^= 0x5555;
  }
  return static_cast<std::size_t>(h);
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    const bool neg = t.coeff < 0;
    mpz_class mag = neg ? mpz_class(-t.coeff) : t.coeff;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    if (t.mono.is_one()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += t.mono.to_string();
    }
  }
  return out;
}

Normalized normalize(const Poly& p) {
  if (p.is_zero()) return Normalized{0, Monomial{}, Poly{}};
  mpz_class c = p.content();
  if (p.leading().coeff < 0) c = -c;
  const Monomial m = p.monomial_content();
  Poly prim = p.shifted(m.inverse());
  if (c != 1) {
    Poly q;
    std::vector<Term> ts = prim.terms();
    for (auto& t : ts) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
    prim = Poly::from_terms(std::move(ts));
  }
  return Normalized{c, m, std::move(prim)};
}

}  // namespace capvert
