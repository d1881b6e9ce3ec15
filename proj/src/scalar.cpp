#include "capvert/scalar.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace capvert {

namespace {

FactorPtr make_factor(Poly p) {
  const std::size_t h = p.hash();
  return std::make_shared<const Factor>(Factor{std::move(p), h, 0, Monomial{}});
}

// Phi_d as a coefficient list, built from x^d - 1 and all Phi_e, e | d.
std::vector<mpz_class> cyclotomic(int d) {
  static std::mutex mu;
  static std::map<int, std::vector<mpz_class>> cache;
  std::lock_guard<std::mutex> lock(mu);
  for (int m = 1; m <= d; ++m) {
    if (cache.count(m)) continue;
    std::vector<mpz_class> num(static_cast<std::size_t>(m) + 1);
    num[0] = -1;
    num[static_cast<std::size_t>(m)] = 1;
    for (int e = 1; e < m; ++e) {
      if (m % e) continue;
      const auto& div = cache.at(e);
      std::vector<mpz_class> q(num.size() - div.size() + 1);
      for (std::size_t i = q.size(); i-- > 0;) {
        q[i] = num[i + div.size() - 1];
        for (std::size_t j = 0; j < div.size(); ++j) num[i + j] -= q[i] * div[j];
      }
      num = std::move(q);
    }
    cache.emplace(m, std::move(num));
  }
  return cache.at(d);
}

// Interned cyclotomic atoms so that equal atoms share one pointer.
FactorPtr atom(int d, const Monomial& r) {
  static std::mutex mu;
  static std::map<std::pair<int, Monomial>, FactorPtr> table;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = table.find({d, r});
    if (it != table.end()) return it->second;
  }
  const std::vector<mpz_class> coeffs = cyclotomic(d);
  std::vector<Term> ts;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) ts.push_back(Term{r.pow(static_cast<std::int32_t>(i)), coeffs[i]});
  Normalized n = normalize(Poly::from_terms(std::move(ts)));
  const std::size_t h = n.primitive.hash();
  auto f = std::make_shared<const Factor>(Factor{std::move(n.primitive), h, d, r});
  std::lock_guard<std::mutex> lock(mu);
  return table.emplace(std::pair{d, r}, f).first->second;
}

int gcd_int(int a, int b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    const int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// r^g - 1 (sign < 0) or r^g + 1 (sign > 0) as cyclotomic atoms in r.
std::vector<int> binomial_orders(int g, int sign) {
  std::vector<int> out;
  if (sign < 0) {
    for (int d = 1; d <= g; ++d)
      if (g % d == 0) out.push_back(d);
  } else {
    for (int d = 1; d <= 2 * g; ++d)
      if ((2 * g) % d == 0 && g % d != 0) out.push_back(d);
  }
  return out;
}

// Splits a primitive polynomial into factors; binomials become atoms.
std::vector<std::pair<FactorPtr, int>> split_primitive(Poly p) {
  std::vector<std::pair<FactorPtr, int>> out;
  if (p.is_monomial()) return out;
  if (p.size() == 2) {
    const Term& hi = p.terms()[0];
    const Term& lo = p.terms()[1];
    if (hi.coeff == 1 && (lo.coeff == 1 || lo.coeff == -1)) {
      Monomial r0 = hi.mono * lo.mono.inverse();
      int g = 0;
      for (std::size_t i = 0; i < kNumVars; ++i) g = gcd_int(g, r0.doubled(i));
      auto ex = r0.exponents();
      for (auto& e : ex) e /= g;
      const Monomial r(ex);
      for (int d : binomial_orders(g, lo.coeff < 0 ? -1 : 1)) out.emplace_back(atom(d, r), 1);
      return out;
    }
  }
  out.emplace_back(make_factor(std::move(p)), 1);
  return out;
}

// Atoms of Phi_d(r^k).
std::vector<int> adams_orders(int d, int k) {
  std::vector<int> ds{d};
  for (int p = 2; k > 1; ++p) {
    while (k % p == 0) {
      k /= p;
      std::vector<int> next;
      for (int e : ds) {
        next.push_back(e * p);
        if (e % p) next.push_back(e);
      }
      ds = std::move(next);
    }
  }
  return ds;
}

// Deterministic order on factors: by hash, ties broken structurally.
int factor_cmp(const FactorPtr& a, const FactorPtr& b) {
  if (a == b) return 0;
  if (a->hash != b->hash) return a->hash < b->hash ? -1 : 1;
  return a->poly.compare(b->poly);
}

Poly power(const Poly& p, int e) { return e == 1 ? p : p.pow(static_cast<unsigned>(e)); }

bool degrees_allow(const Poly& num, const Poly& den) {
  for (std::size_t i = 0; i < kNumVars; ++i) {
    const Var v = static_cast<Var>(i);
    if (num.max_exponent(v) < den.max_exponent(v)) return false;
  }
  return num.leading().mono.degree2() >= den.leading().mono.degree2();
}

mpq_class rational_pow(const mpq_class& x, int e) {
  if (e < 0 && x == 0) throw ArithmeticError("substitution hits a pole");
  mpq_class r = 1;
  mpq_class b = e < 0 ? mpq_class(1 / x) : x;
  for (int i = 0; i < (e < 0 ? -e : e); ++i) r *= b;
  return r;
}

// value^{doubled/2}; odd powers need the rational square root.
mpq_class half_pow(Var v, const mpq_class& value, const std::optional<mpq_class>& root, std::int32_t doubled) {
  if (doubled % 2 == 0) return rational_pow(value, doubled / 2);
  if (!root) throw ArithmeticError("cannot substitute a half power of " + std::string(var_name(v)));
  return rational_pow(*root, doubled);
}

std::optional<mpq_class> rational_sqrt(const mpq_class& x) {
  if (x < 0 || !mpz_perfect_square_p(x.get_num_mpz_t()) || !mpz_perfect_square_p(x.get_den_mpz_t()))
    return std::nullopt;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), x.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), x.get_den_mpz_t());
  return mpq_class(n, d);
}

// Evaluates v -> value in an integer polynomial.
GroundScalar eval_poly(const Poly& p, Var v, const mpq_class& value, const std::optional<mpq_class>& root) {
  std::map<Monomial, mpq_class> acc;
  for (const auto& t : p.terms()) {
    auto ex = t.mono.exponents();
    ex[static_cast<std::size_t>(v)] = 0;
    acc[Monomial(ex)] += mpq_class(t.coeff) * half_pow(v, value, root, t.mono.doubled(v));
  }
  mpz_class l = 1;
  for (const auto& [m, c] : acc) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Term> ts;
  for (const auto& [m, c] : acc) {
    mpq_class s = c * l;
    if (s != 0) ts.push_back(Term{m, s.get_num()});
  }
  return GroundScalar::from_poly(Poly::from_terms(std::move(ts))) / GroundScalar(mpz_class(l));
}

}  // namespace

GroundScalar GroundScalar::from_mono(const Monomial& m, const mpq_class& c) {
  GroundScalar s;
  s.coeff_ = c;
  s.coeff_.canonicalize();
  if (s.coeff_ != 0) s.mono_ = m;
  return s;
}

GroundScalar GroundScalar::from_poly(const Poly& p) {
  if (p.is_zero()) return GroundScalar{};
  Normalized n = normalize(p);
  GroundScalar s = from_mono(n.unit_mono, mpq_class(n.unit_coeff));
  for (const auto& [f, e] : split_primitive(std::move(n.primitive))) s.mul_factor(f, e);
  return s;
}

GroundScalar GroundScalar::hbar(std::int32_t doubled) {
  return from_mono(Monomial::var(Var::T1, doubled) * Monomial::var(Var::T2, doubled));
}

void GroundScalar::mul_factor(const FactorPtr& f, int e) {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), f,
                             [](const auto& entry, const FactorPtr& x) { return factor_cmp(entry.first, x) < 0; });
  if (it != factors_.end() && factor_cmp(it->first, f) == 0) {
    it->second += e;
    if (it->second == 0) factors_.erase(it);
  } else if (e != 0) {
    factors_.insert(it, {f, e});
  }
}

GroundScalar GroundScalar::operator*(const GroundScalar& o) const {
  if (is_zero() || o.is_zero()) return GroundScalar{};
  GroundScalar r;
  r.coeff_ = coeff_ * o.coeff_;
  r.mono_ = mono_ * o.mono_;
  std::size_t i = 0, j = 0;
  r.factors_.reserve(factors_.size() + o.factors_.size());
  while (i < factors_.size() || j < o.factors_.size()) {
    int c = 0;
    if (i == factors_.size()) c = 1;
    else if (j == o.factors_.size()) c = -1;
    else c = factor_cmp(factors_[i].first, o.factors_[j].first);
    if (c < 0) {
      r.factors_.push_back(factors_[i++]);
    } else if (c > 0) {
      r.factors_.push_back(o.factors_[j++]);
    } else {
      const int e = factors_[i].second + o.factors_[j].second;
      if (e != 0) r.factors_.emplace_back(factors_[i].first, e);
      ++i;
      ++j;
    }
  }
  return r;
}

GroundScalar GroundScalar::inverse() const {
  if (is_zero()) throw ArithmeticError("division by zero");
  GroundScalar r = *this;
  r.coeff_ = 1 / coeff_;
  r.mono_ = mono_.inverse();
  for (auto& f : r.factors_) f.second = -f.second;
  return r;
}

GroundScalar GroundScalar::operator/(const GroundScalar& o) const {
  if (o.is_zero()) throw ArithmeticError("division by zero");
  return *this * o.inverse();
}

GroundScalar GroundScalar::operator-() const {
  GroundScalar r = *this;
  r.coeff_ = -r.coeff_;
  return r;
}

GroundScalar GroundScalar::operator-(const GroundScalar& o) const { return *this + (-o); }

GroundScalar GroundScalar::operator+(const GroundScalar& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;

  GroundScalar r;
  Poly ra(1), rb(1);
  std::size_t i = 0, j = 0;
  while (i < factors_.size() || j < o.factors_.size()) {
    int c = 0;
    if (i == factors_.size()) c = 1;
    else if (j == o.factors_.size()) c = -1;
    else c = factor_cmp(factors_[i].first, o.factors_[j].first);
    FactorPtr f;
    int ea = 0, eb = 0;
    if (c <= 0) {
      f = factors_[i].first;
      ea = factors_[i++].second;
    }
    if (c >= 0) {
      f = o.factors_[j].first;
      eb = o.factors_[j++].second;
    }
    const int g = std::min(ea, eb);
    if (g != 0) r.factors_.emplace_back(f, g);
    if (ea - g > 0) ra *= power(f->poly, ea - g);
    if (eb - g > 0) rb *= power(f->poly, eb - g);
  }
  const Monomial m = Monomial::min(mono_, o.mono_);
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), coeff_.get_den_mpz_t(), o.coeff_.get_den_mpz_t());
  const mpz_class ca = coeff_.get_num() * (l / coeff_.get_den());
  const mpz_class cb = o.coeff_.get_num() * (l / o.coeff_.get_den());
  Poly sum = ra.shifted(mono_ * m.inverse()).scaled(ca) + rb.shifted(o.mono_ * m.inverse()).scaled(cb);
  if (sum.is_zero()) return GroundScalar{};

  Normalized n = normalize(sum);
  r.coeff_ = mpq_class(n.unit_coeff, l);
  r.coeff_.canonicalize();
  r.mono_ = m * n.unit_mono;
  Poly p = std::move(n.primitive);
  for (auto& [f, e] : r.factors_) {
    while (e < 0 && !p.is_monomial() && degrees_allow(p, f->poly)) {
      auto q = p.divide_exact(f->poly);
      if (!q) break;
      p = std::move(*q);
      ++e;
    }
  }
  std::erase_if(r.factors_, [](const auto& fe) { return fe.second == 0; });
  for (const auto& [f, e] : split_primitive(std::move(p))) r.mul_factor(f, e);
  return r;
}

GroundScalar GroundScalar::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  GroundScalar r(1);
  for (int i = 0; i < k; ++i) r *= *this;
  return r;
}

GroundScalar GroundScalar::adams(int k) const {
  if (k < 1) throw std::invalid_argument("adams index must be positive");
  if (k == 1 || is_zero()) return *this;
  GroundScalar r = from_mono(mono_.pow(k), coeff_);
  for (const auto& [f, e] : factors_) {
    if (f->cyclo_d > 0) {
      for (int d : adams_orders(f->cyclo_d, k)) r.mul_factor(atom(d, f->cyclo_r), e);
    } else {
      for (const auto& [g, ge] : split_primitive(f->poly.adams(k))) r.mul_factor(g, ge * e);
    }
  }
  return r;
}

GroundScalar GroundScalar::reduced() const {
  std::vector<std::pair<Poly, int>> num, den;
  for (const auto& [f, e] : factors_) {
    if (e > 0) num.emplace_back(f->poly, e);
    else den.emplace_back(f->poly, -e);
  }
  bool changed = true;
  bool any = false;
  while (changed) {
    changed = false;
    for (auto& [fp, fe] : num) {
      for (auto& [gp, ge] : den) {
        if (fe == 0 || ge == 0 || fp.is_monomial() || !degrees_allow(fp, gp)) continue;
        auto q = fp.divide_exact(gp);
        if (!q) continue;
        // fp^fe / gp^ge with fp = gp*q: peel one power at a time.
        if (fe == 1) {
          fp = std::move(*q);
          --ge;
        } else {
          --fe;
          --ge;
          num.emplace_back(std::move(*q), 1);
        }
        changed = any = true;
        break;
      }
      if (changed) break;
    }
  }
  if (!any) return *this;
  GroundScalar r = from_mono(mono_, coeff_);
  for (const auto& [p, e] : num)
    if (e > 0) r *= from_poly(p).pow(e);
  for (const auto& [p, e] : den)
    if (e > 0) r /= from_poly(p).pow(e);
  return r;
}

std::pair<Poly, Poly> GroundScalar::num_den() const {
  Poly num(mono_, coeff_.get_num());
  Poly den(coeff_.get_den());
  for (const auto& [f, e] : factors_) {
    if (e > 0) num *= power(f->poly, e);
    else den *= power(f->poly, -e);
  }
  return {num, den};
}

std::int32_t GroundScalar::a_valuation2() const {
  if (is_zero()) throw ArithmeticError("valuation of zero");
  return mono_.doubled(Var::A);
}

GroundScalar GroundScalar::a_limit() const {
  if (is_zero()) return GroundScalar{};
  const std::int32_t v = a_valuation2();
  if (v < 0) throw ArithmeticError("limit a->0 does not exist: valuation " + render_half(v));
  if (v > 0) return GroundScalar{};
  GroundScalar r = from_mono(mono_, coeff_);
  for (const auto& [f, e] : factors_) {
    std::vector<Term> ts;
    for (const auto& t : f->poly.terms())
      if (t.mono.doubled(Var::A) == 0) ts.push_back(t);
    r *= from_poly(Poly::from_terms(std::move(ts))).pow(e);
  }
  return r;
}

GroundScalar GroundScalar::substitute(Var v, const mpq_class& value) const {
  if (is_zero()) return *this;
  const auto root = rational_sqrt(value);
  auto ex = mono_.exponents();
  ex[static_cast<std::size_t>(v)] = 0;
  GroundScalar r = from_mono(Monomial(ex), coeff_ * half_pow(v, value, root, mono_.doubled(v)));
  for (const auto& [f, e] : factors_) {
    GroundScalar x = eval_poly(f->poly, v, value, root);
    if (x.is_zero()) throw ArithmeticError("substitution hits a zero factor");
    r *= x.pow(e);
  }
  return r;
}

bool GroundScalar::depends_on(Var v) const {
  if (mono_.doubled(v) != 0) return true;
  for (const auto& [f, e] : factors_)
    if (f->poly.max_exponent(v) != 0) return true;
  return false;
}

std::size_t GroundScalar::weight() const {
  std::size_t w = 1;
  for (const auto& [f, e] : factors_) w += f->poly.size() * static_cast<std::size_t>(e < 0 ? -e : e);
  return w;
}

std::string GroundScalar::to_string() const {
  if (is_zero()) return "0";
  auto [num, den] = reduced().num_den();
  if (den == Poly(1)) return num.to_string();
  return "(" + num.to_string() + ")/(" + den.to_string() + ")";
}

std::optional<GroundScalar> exact_quotient(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw ArithmeticError("division by zero");
  if (num.is_zero()) return GroundScalar{};
  const Normalized a = normalize(num);
  const Normalized b = normalize(den);
  auto q = a.primitive.divide_exact(b.primitive);
  if (!q) return std::nullopt;
  mpq_class c(a.unit_coeff, b.unit_coeff);
  c.canonicalize();
  return GroundScalar::from_poly(*q) * GroundScalar::from_mono(a.unit_mono * b.unit_mono.inverse(), c);
}

GroundScalar scalar_arith(const GroundScalar& x, const GroundScalar& y, char op) {
  switch (op) {
    case '+': return x + y;
    case '-': return x - y;
    case '*': return x * y;
    case '/': return (x / y).reduced();
  }
  throw std::invalid_argument(std::string("unknown operation ") + op);
}

mpq_class parse_rational(const std::string& s) {
  mpq_class r;
  if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0) throw std::invalid_argument("not a rational: " + s);
  r.canonicalize();
  return r;
}

void Ground::specialize(Var v, const mpq_class& value) {
  if (v == Var::A) throw std::invalid_argument("a is never specialized");
  if (value == 0) throw std::invalid_argument("specialization value must be nonzero");
  Value val{value, std::nullopt};
  if (value > 0 && mpz_perfect_square_p(value.get_num_mpz_t()) && mpz_perfect_square_p(value.get_den_mpz_t())) {
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), value.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), value.get_den_mpz_t());
    val.root = mpq_class(n, d);
  }
  values_[static_cast<std::size_t>(v)] = val;
}

bool Ground::symbolic() const {
  for (const auto& v : values_)
    if (v) return false;
  return true;
}

GroundScalar Ground::mono(const Monomial& m) const {
  auto ex = m.exponents();
  mpq_class c = 1;
  for (std::size_t i = 0; i < kNumVars; ++i) {
    if (!values_[i] || ex[i] == 0) continue;
    const auto& val = *values_[i];
    if (ex[i] % 2 == 0) {
      c *= rational_pow(val.value, ex[i] / 2);
    } else {
      if (!val.root)
        throw ArithmeticError("half power of " + std::string(var_name(static_cast<Var>(i))) +
                              " needs a square specialization value");
      c *= rational_pow(*val.root, ex[i]);
    }
    ex[i] = 0;
  }
  return GroundScalar::from_mono(Monomial(ex), c);
}

GroundScalar Ground::hbar(std::int32_t doubled) const {
  return mono(Monomial::var(Var::T1, doubled) * Monomial::var(Var::T2, doubled));
}

GroundScalar Ground::poly(const Poly& p) const {
  if (symbolic()) return GroundScalar::from_poly(p);
  std::map<Monomial, mpq_class> acc;
  for (const auto& t : p.terms()) {
    GroundScalar m = mono(t.mono);
    acc[m.mono()] += m.coeff() * mpq_class(t.coeff);
  }
  mpz_class l = 1;
  for (const auto& [m, c] : acc) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Term> ts;
  for (const auto& [m, c] : acc) {
    mpq_class s = c * l;
    if (s != 0) ts.push_back(Term{m, s.get_num()});
  }
  return GroundScalar::from_poly(Poly::from_terms(std::move(ts))) / GroundScalar(mpz_class(l));
}

GroundScalar Ground::apply(const GroundScalar& x) const {
  if (symbolic() || x.is_zero()) return x;
  GroundScalar r = mono(x.mono()) * GroundScalar(x.coeff());
  for (const auto& [f, e] : x.factors()) {
    GroundScalar v = poly(f->poly);
    if (v.is_zero()) throw ArithmeticError("specialization hits a vanishing factor");
    r *= v.pow(e);
  }
  return r;
}

std::string Ground::describe() const {
  std::string out;
  for (std::size_t i = 0; i < kNumVars; ++i) {
    if (!values_[i]) continue;
    if (!out.empty()) out += ",";
    out += std::string(var_name(static_cast<Var>(i))) + "=" + values_[i]->value.get_str();
  }
  return out.empty() ? "symbolic" : out;
}

}  // namespace capvert
