#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "capvert/partition.hpp"
#include "capvert/scalar.hpp"
#include "capvert/series.hpp"

namespace capvert {

inline GroundScalar adams_of(const GroundScalar& x, int k) { return x.adams(k); }
inline TruncatedSeries adams_of(const TruncatedSeries& x, int k) { return x.adams(k); }

/// Polynomial in power sums p_1, p_2, ... truncated at total degree n.
/// Keys are partitions mu standing for p_mu = prod_i p_{mu_i}.
template <class C>
class FockElement {
 public:
  using Map = std::map<Partition, C>;

  explicit FockElement(int n = 0) : n_(n) {}
  static FockElement constant(int n, const C& c) {
    FockElement f(n);
    f.add_term({}, c);
    return f;
  }

  int truncation() const { return n_; }
  const Map& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  const C* find(const Partition& mu) const {
    auto it = c_.find(mu);
    return it == c_.end() ? nullptr : &it->second;
  }

  void add_term(const Partition& mu, const C& c) {
    if (size(mu) > n_ || c.is_zero()) return;
    auto [it, inserted] = c_.try_emplace(mu, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) c_.erase(it);
    }
  }

  FockElement operator+(const FockElement& o) const {
    FockElement r(std::min(n_, o.n_));
    for (const auto& [mu, c] : c_) r.add_term(mu, c);
    for (const auto& [mu, c] : o.c_) r.add_term(mu, c);
    return r;
  }
  FockElement operator-() const {
    FockElement r(n_);
    for (const auto& [mu, c] : c_) r.c_.emplace(mu, -c);
    return r;
  }
  FockElement operator-(const FockElement& o) const { return *this + (-o); }
  FockElement operator*(const FockElement& o) const {
    FockElement r(std::min(n_, o.n_));
    for (const auto& [ma, ca] : c_) {
      const int da = size(ma);
      for (const auto& [mb, cb] : o.c_) {
        if (da + size(mb) > r.n_) continue;
        r.add_term(join(ma, mb), ca * cb);
      }
    }
    return r;
  }
  template <class S>
  FockElement scaled(const S& s) const {
    FockElement r(n_);
    for (const auto& [mu, c] : c_) r.add_term(mu, c * s);
    return r;
  }
  template <class F>
  auto map(F&& f) const {
    using D = decltype(f(std::declval<const C&>()));
    FockElement<D> r(n_);
    for (const auto& [mu, c] : c_) r.add_term(mu, f(c));
    return r;
  }
  /// Terms of total degree exactly d.
  FockElement slice(int d) const {
    FockElement r(n_);
    for (const auto& [mu, c] : c_)
      if (size(mu) == d) r.c_.emplace(mu, c);
    return r;
  }
  FockElement truncated(int n) const {
    FockElement r(std::min(n, n_));
    for (const auto& [mu, c] : c_) r.add_term(mu, c);
    return r;
  }
  /// First key where the two elements differ.
  std::optional<Partition> first_difference(const FockElement& o) const {
    FockElement d = *this - o;
    if (d.is_zero()) return std::nullopt;
    return d.c_.begin()->first;
  }

 private:
  int n_;
  Map c_;
};

/// d_k = (t1^{k/2} - t1^{-k/2})(t2^{k/2} - t2^{-k/2}).
GroundScalar heis_d(int k, const Ground& g = Ground{});
/// n_k = d_k (hbar^{k/2} - hbar^{-k/2}) / k.
GroundScalar heis_n(int k, const Ground& g = Ground{});

/// Slope-0 Heisenberg generator: -k d/dp_k for k > 0, multiplication by
/// -p_{|k|}/d_{|k|} for k < 0.
template <class C>
FockElement<C> heis(int k, const FockElement<C>& f, const Ground& g = Ground{}) {
  if (k == 0) throw std::invalid_argument("heis index must be nonzero");
  FockElement<C> r(f.truncation());
  if (k > 0) {
    for (const auto& [mu, c] : f.terms()) {
      int mult = 0;
      for (int part : mu) mult += part == k;
      if (mult == 0) continue;
      Partition rest = mu;
      rest.erase(std::find(rest.begin(), rest.end(), k));
      r.add_term(rest, c * GroundScalar(-k * mult));
    }
    return r;
  }
  const GroundScalar s = GroundScalar(-1) / heis_d(-k, g);
  for (const auto& [mu, c] : f.terms()) r.add_term(join(mu, {-k}), c * s);
  return r;
}

/// exp(sum_k c_k p_k) truncated at degree n; `one` fixes the coefficient kind.
template <class C>
FockElement<C> exp_linear(const std::map<int, C>& c, int n, const C& one) {
  FockElement<C> r = FockElement<C>::constant(n, one);
  for (const auto& [k, ck] : c) {
    if (k < 1) throw std::invalid_argument("exp_linear: indices must be positive");
    if (k > n || ck.is_zero()) continue;
    FockElement<C> e = FockElement<C>::constant(n, one);
    C power = one;
    Partition mu;
    mpz_class fact = 1;
    for (int m = 1; m * k <= n; ++m) {
      power = power * ck;
      fact *= m;
      mu.push_back(k);
      e.add_term(mu, power * GroundScalar(mpq_class(1, fact)));
    }
    r = r * e;
  }
  return r;
}

/// exp(f) for f without degree-0 part.
template <class C>
FockElement<C> fock_exp(const FockElement<C>& f, const C& one) {
  if (f.find({})) throw std::domain_error("fock_exp: nonzero constant term");
  FockElement<C> r = FockElement<C>::constant(f.truncation(), one);
  FockElement<C> power = r;
  for (int m = 1; m <= f.truncation(); ++m) {
    power = (power * f).scaled(GroundScalar(mpq_class(1, m)));
    if (power.is_zero()) break;
    r = r + power;
  }
  return r;
}

/// Plethystic exponential S(c1 p_1) = exp(sum_k adams(c1, k) p_k / k).
template <class C>
FockElement<C> pexp(const C& c1, int n, const C& one) {
  std::map<int, C> c;
  for (int k = 1; k <= n; ++k) c.emplace(k, adams_of(c1, k) * GroundScalar(mpq_class(1, k)));
  return exp_linear(c, n, one);
}

/// Element of Fock (x) Fock, truncated at total degree n.
template <class C>
class TensorFockElement {
 public:
  using Key = std::pair<Partition, Partition>;
  using Map = std::map<Key, C>;

  explicit TensorFockElement(int n = 0) : n_(n) {}
  static TensorFockElement constant(int n, const C& c) {
    TensorFockElement t(n);
    t.add_term({}, {}, c);
    return t;
  }

  int truncation() const { return n_; }
  const Map& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  void add_term(const Partition& m1, const Partition& m2, const C& c) {
    if (size(m1) + size(m2) > n_ || c.is_zero()) return;
    auto [it, inserted] = c_.try_emplace(Key{m1, m2}, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) c_.erase(it);
    }
  }

  TensorFockElement operator+(const TensorFockElement& o) const {
    TensorFockElement r(std::min(n_, o.n_));
    for (const auto& [k, c] : c_) r.add_term(k.first, k.second, c);
    for (const auto& [k, c] : o.c_) r.add_term(k.first, k.second, c);
    return r;
  }
  TensorFockElement operator-() const {
    TensorFockElement r(n_);
    for (const auto& [k, c] : c_) r.c_.emplace(k, -c);
    return r;
  }
  TensorFockElement operator-(const TensorFockElement& o) const { return *this + (-o); }
  TensorFockElement operator*(const TensorFockElement& o) const {
    TensorFockElement r(std::min(n_, o.n_));
    for (const auto& [ka, ca] : c_) {
      const int da = size(ka.first) + size(ka.second);
      for (const auto& [kb, cb] : o.c_) {
        if (da + size(kb.first) + size(kb.second) > r.n_) continue;
        r.add_term(join(ka.first, kb.first), join(ka.second, kb.second), ca * cb);
      }
    }
    return r;
  }
  std::optional<Key> first_difference(const TensorFockElement& o) const {
    TensorFockElement d = *this - o;
    if (d.is_zero()) return std::nullopt;
    return d.c_.begin()->first;
  }

 private:
  int n_;
  Map c_;
};

/// exp(sum c_k p^(1)_k + sum d_k p^(2)_k).
template <class C>
TensorFockElement<C> tensor_exp(const std::map<int, C>& c, const std::map<int, C>& d, int n, const C& one) {
  const FockElement<C> e1 = exp_linear(c, n, one);
  const FockElement<C> e2 = exp_linear(d, n, one);
  TensorFockElement<C> r(n);
  for (const auto& [m1, c1] : e1.terms())
    for (const auto& [m2, c2] : e2.terms()) r.add_term(m1, m2, c1 * c2);
  return r;
}

/// Algebra homomorphism p^(1)_k -> p^(1)_k, p^(2)_k -> p^(2)_k + s_k p^(1)_k.
template <class C>
TensorFockElement<C> substitute_second(const TensorFockElement<C>& t, const std::map<int, C>& s) {
  TensorFockElement<C> r(t.truncation());
  for (const auto& [key, coeff] : t.terms()) {
    struct Partial {
      Partition m1, m2;
      C c;
    };
    std::vector<Partial> cur{{key.first, {}, coeff}};
    const Partition& m2 = key.second;
    std::size_t i = 0;
    while (i < m2.size()) {
      const int k = m2[i];
      std::size_t j = i;
      while (j < m2.size() && m2[j] == k) ++j;
      const int mult = static_cast<int>(j - i);
      i = j;
      auto it = s.find(k);
      std::vector<Partial> next;
      for (const auto& p : cur) {
        // (p2_k + s_k p1_k)^mult = sum_j binom(mult, j) s_k^j p1_k^j p2_k^{mult-j}
        mpz_class binom = 1;
        std::optional<C> spow;
        for (int jj = 0; jj <= mult; ++jj) {
          if (jj > 0) {
            if (it == s.end()) break;
            spow = spow ? *spow * it->second : it->second;
            binom = binom * (mult - jj + 1) / jj;
          }
          Partial q = p;
          for (int x = 0; x < jj; ++x) q.m1 = join(q.m1, {k});
          for (int x = 0; x < mult - jj; ++x) q.m2 = join(q.m2, {k});
          q.c = spow ? p.c * *spow * GroundScalar(binom) : p.c;
          if (!q.c.is_zero()) next.push_back(std::move(q));
        }
      }
      cur = std::move(next);
    }
    for (const auto& p : cur) r.add_term(p.m1, p.m2, p.c);
  }
  return r;
}

/// Keeps the terms without p^(2) (setting p^(2)_k = 0).
template <class C>
FockElement<C> project_second(const TensorFockElement<C>& t) {
  FockElement<C> r(t.truncation());
  for (const auto& [key, c] : t.terms())
    if (key.second.empty()) r.add_term(key.first, c);
  return r;
}

enum class JJRule {
  /// p2_k -> p2_k + (-1)^k z^k hbar^k (hbar^k - hbar^{-k}) / (1 - z^k) p1_k
  Printed,
  /// Translation read off the fusion operator with K acting by hbar^{-1/2}:
  /// p2_k -> p2_k - z^k (hbar^{k/2} - hbar^{-k/2}) / (1 - z^k) p1_k
  FusionDerived,
};

/// The coefficients s_k of the J(z)J(0)^{-1} substitution as z-series.
std::map<int, TruncatedSeries> jj0_shifts(int n, int ny, int nz, const Ground& g, JJRule rule = JJRule::Printed);

/// J(z)J(0)^{-1} acting on series-valued tensor elements.
TensorFockElement<TruncatedSeries> jj0_substitute(const TensorFockElement<TruncatedSeries>& t, int ny, int nz,
                                                  const Ground& g = Ground{}, JJRule rule = JJRule::Printed);

}  // namespace capvert
