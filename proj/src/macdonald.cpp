#include "capvert/macdonald.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace capvert {

namespace {

// Ways to distribute the labelled parts of mu into bins of sizes lambda.
long count_fillings(const Partition& mu, std::size_t i, std::vector<int>& room) {
  if (i == mu.size()) {
    for (int r : room)
      if (r != 0) return 0;
    return 1;
  }
  long total = 0;
  for (auto& r : room) {
    if (r < mu[i]) continue;
    r -= mu[i];
    total += count_fillings(mu, i + 1, room);
    r += mu[i];
  }
  return total;
}

long mn_rec(std::vector<int> beta, const Partition& rho, std::size_t idx) {
  if (idx == rho.size()) return 1;
  const int k = rho[idx];
  long total = 0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const int b = beta[i], nb = b - k;
    if (nb < 0 || std::find(beta.begin(), beta.end(), nb) != beta.end()) continue;
    int between = 0;
    for (int x : beta)
      if (x > nb && x < b) ++between;
    std::vector<int> next = beta;
    next[i] = nb;
    const long sub = mn_rec(std::move(next), rho, idx + 1);
    total += (between % 2 ? -sub : sub);
  }
  return total;
}

GroundScalar inner_weight(const Partition& rho, const GroundScalar& q, const GroundScalar& t) {
  GroundScalar w(z_of(rho));
  for (int k : rho) w *= (GroundScalar(1) - q.pow(k)) / (GroundScalar(1) - t.pow(k));
  return w;
}

}  // namespace

const Matrix<mpq_class>& monomial_to_power(int n) {
  static std::mutex mu;
  static std::map<int, Matrix<mpq_class>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  const auto ps = partitions(n);
  Matrix<mpq_class> l(ps.size(), std::vector<mpq_class>(ps.size()));
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = 0; j < ps.size(); ++j) {
      std::vector<int> room(ps[j].begin(), ps[j].end());
      l[i][j] = count_fillings(ps[i], 0, room);
    }
  }
  auto inv = inverse(l);
  if (!inv) throw std::logic_error("power-sum to monomial matrix is singular");
  return cache.emplace(n, std::move(*inv)).first->second;
}

long schur_character(const Partition& lambda, const Partition& rho) {
  if (size(lambda) != size(rho)) throw std::invalid_argument("schur_character: size mismatch");
  std::vector<int> beta;
  const int len = static_cast<int>(lambda.size());
  for (int i = 0; i < len; ++i) beta.push_back(lambda[i] + (len - 1 - i));
  return mn_rec(beta, rho, 0);
}

std::map<Partition, std::vector<mpq_class>> macdonald_p_at(int n, const mpq_class& q, const mpq_class& t) {
  const auto ps = partitions(n);
  const auto& a = monomial_to_power(n);
  std::vector<mpq_class> w;
  for (const auto& rho : ps) {
    mpq_class x(z_of(rho));
    for (int k : rho) {
      mpq_class qk = 1, tk = 1;
      for (int i = 0; i < k; ++i) {
        qk *= q;
        tk *= t;
      }
      if (tk == 1) throw std::domain_error("Macdonald inner product undefined at t^k = 1");
      x *= (1 - qk) / (1 - tk);
    }
    w.push_back(x);
  }
  auto dot = [&](const std::vector<mpq_class>& u, const std::vector<mpq_class>& v) {
    mpq_class acc = 0;
    for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i] * w[i];
    return acc;
  };
  std::map<Partition, std::vector<mpq_class>> out;
  std::vector<std::pair<std::vector<mpq_class>, mpq_class>> done;  // P_mu and <P_mu, P_mu>
  for (std::size_t idx = ps.size(); idx-- > 0;) {
    const std::vector<mpq_class>& m = a[idx];
    std::vector<mpq_class> p = m;
    for (const auto& [pm, norm] : done) {
      const mpq_class c = dot(m, pm) / norm;
      for (std::size_t i = 0; i < p.size(); ++i) p[i] -= c * pm[i];
    }
    const mpq_class norm = dot(p, p);
    if (norm == 0) throw std::domain_error("Macdonald inner product is degenerate at these parameters");
    done.emplace_back(p, norm);
    out.emplace(ps[idx], std::move(p));
  }
  return out;
}

std::map<Partition, std::vector<mpq_class>> modified_macdonald_at(int n, const mpq_class& q, const mpq_class& t) {
  const mpq_class tinv = 1 / t;
  const auto ps = partitions(n);
  auto p_all = macdonald_p_at(n, q, tinv);
  auto power = [](const mpq_class& x, int k) {
    mpq_class r = 1;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
  };
  std::map<Partition, std::vector<mpq_class>> out;
  for (const auto& lambda : ps) {
    const Partition conj = conjugate(lambda);
    mpq_class c = power(t, n_of(lambda));
    for (const auto& b : boxes(lambda))
      c *= 1 - power(q, arm(lambda, b)) * power(tinv, leg(lambda, conj, b) + 1);
    std::vector<mpq_class> h = p_all.at(lambda);
    for (std::size_t i = 0; i < h.size(); ++i) {
      mpq_class f = c;
      for (int k : ps[i]) f /= 1 - power(tinv, k);
      h[i] *= f;
    }
    out.emplace(lambda, std::move(h));
  }
  return out;
}

namespace {

// Coefficients of the polynomial of degree < xs.size() through (xs, ys).
std::vector<mpq_class> interpolate(const std::vector<mpq_class>& xs, std::vector<mpq_class> ys) {
  const std::size_t m = xs.size();
  for (std::size_t j = 1; j < m; ++j)
    for (std::size_t i = m - 1; i >= j; --i) ys[i] = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - j]);
  // Newton form to monomial basis by Horner.
  std::vector<mpq_class> c(m, 0);
  for (std::size_t k = m; k-- > 0;) {
    for (std::size_t i = m - 1; i > 0; --i) c[i] = c[i - 1] - xs[k] * c[i];
    c[0] = ys[k] - xs[k] * c[0];
  }
  return c;
}

mpq_class eval2(const std::vector<std::vector<mpq_class>>& c, const mpq_class& q, const mpq_class& t) {
  mpq_class acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    mpq_class row = 0;
    for (std::size_t j = c[i].size(); j-- > 0;) row = row * t + c[i][j];
    acc = acc * q + row;
  }
  return acc;
}

}  // namespace

std::map<Partition, SymVec> modified_macdonald_gs(int n, const GroundScalar& q, const GroundScalar& t) {
  const auto ps = partitions(n);
  // Coefficients are polynomials of degree <= n(n-1)/2 in each of q and t.
  const int deg = n * (n - 1) / 2;
  std::vector<mpq_class> qs, ts;
  for (int i = 0; i <= deg; ++i) {
    qs.emplace_back(i + 2);
    ts.emplace_back(mpq_class(i + 2, i + 3) + 1);
  }
  std::vector<std::vector<std::map<Partition, std::vector<mpq_class>>>> grid(qs.size());
  for (std::size_t i = 0; i < qs.size(); ++i)
    for (std::size_t j = 0; j < ts.size(); ++j) grid[i].push_back(modified_macdonald_at(n, qs[i], ts[j]));
  const mpq_class qc(-7, 3), tc(5, 11);
  const auto check = modified_macdonald_at(n, qc, tc);

  std::vector<GroundScalar> qpow{GroundScalar(1)}, tpow{GroundScalar(1)};
  for (int i = 0; i < deg; ++i) {
    qpow.push_back(qpow.back() * q);
    tpow.push_back(tpow.back() * t);
  }
  std::map<Partition, SymVec> out;
  for (const auto& lambda : ps) {
    SymVec h(ps.size());
    for (std::size_t r = 0; r < ps.size(); ++r) {
      // Interpolate in t for each q node, then in q for each power of t.
      std::vector<std::vector<mpq_class>> in_t;
      for (std::size_t i = 0; i < qs.size(); ++i) {
        std::vector<mpq_class> ys;
        for (std::size_t j = 0; j < ts.size(); ++j) ys.push_back(grid[i][j].at(lambda)[r]);
        in_t.push_back(interpolate(ts, ys));
      }
      std::vector<std::vector<mpq_class>> c(qs.size(), std::vector<mpq_class>(ts.size()));
      for (std::size_t j = 0; j < ts.size(); ++j) {
        std::vector<mpq_class> ys;
        for (std::size_t i = 0; i < qs.size(); ++i) ys.push_back(in_t[i][j]);
        const auto cq = interpolate(qs, ys);
        for (std::size_t i = 0; i < qs.size(); ++i) c[i][j] = cq[i];
      }
      if (eval2(c, qc, tc) != check.at(lambda)[r])
        throw std::logic_error("modified Macdonald coefficient exceeds its degree bound");
      GroundScalar acc;
      for (std::size_t i = 0; i < qs.size(); ++i)
        for (std::size_t j = 0; j < ts.size(); ++j)
          if (c[i][j] != 0) acc += GroundScalar(c[i][j]) * qpow[i] * tpow[j];
      h[r] = acc;
    }
    out.emplace(lambda, std::move(h));
  }
  return out;
}

std::map<Partition, SymVec> modified_macdonald_axioms(int n, const GroundScalar& q, const GroundScalar& t) {
  const auto ps = partitions(n);
  std::vector<GroundScalar> fq, ft;
  for (const auto& rho : ps) {
    GroundScalar a(1), b(1);
    for (int k : rho) {
      a *= GroundScalar(1) - q.pow(k);
      b *= GroundScalar(1) - t.pow(k);
    }
    fq.push_back(a);
    ft.push_back(b);
  }
  std::map<Partition, SymVec> out;
  for (const auto& mu : ps) {
    const Partition muc = conjugate(mu);
    Matrix<GroundScalar> rows;
    std::vector<GroundScalar> rhs;
    for (const auto& lambda : ps) {
      if (!dominates(lambda, mu)) {
        std::vector<GroundScalar> row;
        for (std::size_t j = 0; j < ps.size(); ++j) row.push_back(fq[j] * GroundScalar(schur_character(lambda, ps[j])));
        rows.push_back(std::move(row));
        rhs.emplace_back(0);
      }
      if (!dominates(lambda, muc)) {
        std::vector<GroundScalar> row;
        for (std::size_t j = 0; j < ps.size(); ++j) row.push_back(ft[j] * GroundScalar(schur_character(lambda, ps[j])));
        rows.push_back(std::move(row));
        rhs.emplace_back(0);
      }
    }
    rows.emplace_back(ps.size(), GroundScalar(1));
    rhs.emplace_back(1);
    auto sol = solve_ff(rows, rhs);
    if (!sol.consistent || sol.rank != ps.size())
      throw std::logic_error("Macdonald axioms do not determine H~ for " + to_string(mu));
    out.emplace(mu, std::move(sol.x));
  }
  return out;
}

MacdonaldBasis::MacdonaldBasis(MacdonaldParams params, Ground ground)
    : params_(params), ground_(std::move(ground)) {}

std::shared_ptr<const MacdonaldBasis::Degree> MacdonaldBasis::degree(int n) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
  }
  const auto ps = partitions(n);
  const GroundScalar q = ground_.mono(Monomial::var(Var::T1, -4));
  const GroundScalar t = ground_.mono(Monomial::var(Var::T2, -4));
  auto d = std::make_shared<Degree>();
  const auto tilde = modified_macdonald_gs(n, q, t);
  // H~ is orthogonal for <p_r, p_s>_* = delta (-1)^{|r|-l(r)} z_r prod (1-q^r_i)(1-t^r_i),
  // with <H~_l, H~_l>_* = prod_boxes (q^a - t^{l+1})(t^l - q^{a+1}).
  std::vector<GroundScalar> star;
  std::vector<int> sign;
  for (const auto& rho : ps) {
    const int e = (n - static_cast<int>(rho.size())) % 2 ? -1 : 1;
    GroundScalar x(z_of(rho));
    for (int k : rho) x *= (GroundScalar(1) - q.pow(k)) * (GroundScalar(1) - t.pow(k));
    star.push_back(e < 0 ? -x : x);
    sign.push_back(params_.twist == MacTwist::Omega ? e : 1);
  }
  d->inverse.assign(ps.size(), std::vector<GroundScalar>(ps.size()));
  for (std::size_t l = 0; l < ps.size(); ++l) {
    const Partition& lambda = ps[l];
    SymVec h = tilde.at(lambda);
    for (std::size_t i = 0; i < ps.size(); ++i)
      if (sign[i] < 0) h[i] = -h[i];
    GroundScalar scale(1);
    if (params_.scale == MacScale::MonicTop) {
      GroundScalar top;
      for (const auto& x : h) top += x;
      scale = GroundScalar(1) / top;
      for (auto& x : h) x = x * scale;
    }
    const Partition conj = conjugate(lambda);
    GroundScalar norm(1);
    for (const auto& b : boxes(lambda)) {
      const int a = arm(lambda, b), lg = leg(lambda, conj, b);
      norm *= (q.pow(a) - t.pow(lg + 1)) * (t.pow(lg) - q.pow(a + 1));
    }
    const GroundScalar k = GroundScalar(1) / (norm * scale);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const GroundScalar& ht = tilde.at(lambda)[i];
      if (!ht.is_zero()) d->inverse[l][i] = ht * star[i] * k * GroundScalar(sign[i]);
    }
    d->h.emplace(lambda, std::move(h));
  }

  std::lock_guard<std::mutex> lock(mu_);
  return cache_.emplace(n, std::move(d)).first->second;
}

void MacdonaldBasis::prepare(int n) const {
  for (int k = 0; k <= n; ++k) degree(k);
}

const SymVec& MacdonaldBasis::vec(const Partition& lambda) const { return degree(size(lambda))->h.at(lambda); }

const Matrix<GroundScalar>& MacdonaldBasis::inverse_matrix(int n) const { return degree(n)->inverse; }

FockElement<GroundScalar> MacdonaldBasis::macd_H(const Partition& lambda) const {
  const int n = size(lambda);
  const auto ps = partitions(n);
  const SymVec& h = vec(lambda);
  FockElement<GroundScalar> f(n);
  for (std::size_t i = 0; i < ps.size(); ++i) f.add_term(ps[i], h[i]);
  return f;
}

FockElement<GroundScalar> MacdonaldBasis::localization_sum(
    const std::function<GroundScalar(const Partition&)>& eig, const std::function<GroundScalar(const Partition&)>& den,
    int n, int truncation) const {
  FockElement<GroundScalar> out(truncation);
  const auto ps = partitions(n);
  for (const auto& lambda : ps) {
    const GroundScalar c = eig(lambda) / den(lambda);
    if (c.is_zero()) continue;
    const SymVec& h = vec(lambda);
    for (std::size_t i = 0; i < ps.size(); ++i)
      if (!h[i].is_zero()) out.add_term(ps[i], h[i] * c);
  }
  return out;
}

}  // namespace capvert
