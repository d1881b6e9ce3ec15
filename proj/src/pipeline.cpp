#include "capvert/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <set>
#include <sstream>

namespace capvert {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string orientation_name(Orientation o) { return o == Orientation::ArmsT1 ? "arms-t1" : "arms-t2"; }
std::string lambda_name(LambdaConvention c) { return c == LambdaConvention::Tangent ? "tangent" : "dual"; }

template <class E>
E parse_enum(const json& j, const char* key, const std::map<std::string, E>& names, E fallback) {
  if (!j.contains(key)) return fallback;
  const std::string s = j.at(key).get<std::string>();
  auto it = names.find(s);
  if (it == names.end()) throw std::invalid_argument(std::string("unknown value for ") + key + ": " + s);
  return it->second;
}

json partition_json(const Partition& p) { return json(std::vector<int>(p.begin(), p.end())); }

json scalar_pair(const GroundScalar& x) {
  auto [num, den] = x.reduced().num_den();
  return {{"num", num.to_string()}, {"den", den.to_string()}};
}

json mismatch_witness(const Partition& mu, const std::string& where, const GroundScalar& lhs,
                      const GroundScalar& rhs) {
  json w = {{"p", partition_json(mu)}, {"lhs", lhs.to_string()}, {"rhs", rhs.to_string()}};
  if (!where.empty()) w["monomial"] = where;
  return w;
}

void compare_fock(VerificationReport& r, const FockElement<GroundScalar>& lhs, const FockElement<GroundScalar>& rhs) {
  auto d = lhs.first_difference(rhs);
  r.pass = !d;
  r.outcome = d ? "mismatch" : "exact-match";
  if (d) {
    const GroundScalar* a = lhs.find(*d);
    const GroundScalar* b = rhs.find(*d);
    r.witness = mismatch_witness(*d, "p" + to_string(*d), a ? *a : GroundScalar{}, b ? *b : GroundScalar{});
  }
}

// First (partition, y, z) where two series-valued elements differ.
std::optional<json> series_difference(const SeriesFock& lhs, const SeriesFock& rhs) {
  const SeriesFock d = lhs - rhs;
  if (d.is_zero()) return std::nullopt;
  const auto& [mu, ts] = *d.terms().begin();
  const auto [i, j] = ts.coefficients().begin()->first;
  const TruncatedSeries* a = lhs.find(mu);
  const TruncatedSeries* b = rhs.find(mu);
  return mismatch_witness(mu, "p" + to_string(mu) + " y^" + std::to_string(i) + " z^" + std::to_string(j),
                          a ? a->coeff(i, j) : GroundScalar{}, b ? b->coeff(i, j) : GroundScalar{});
}

std::vector<std::pair<Partition, Partition>> fixed_points_M2(int n) {
  std::vector<std::pair<Partition, Partition>> out;
  for (int n1 = n; n1 >= 0; --n1)
    for (const auto& a : partitions(n1))
      for (const auto& b : partitions(n - n1)) out.emplace_back(a, b);
  return out;
}

}  // namespace

std::string Shift::to_string() const {
  std::string s = sigma < 0 ? "-z" : "z";
  auto part = [&](const char* v, int e) {
    if (e == 0) return;
    s += e > 0 ? "*" : "/";
    s += v;
  };
  part("hbar", e_hbar);
  part("q", e_q);
  return s;
}

std::vector<Shift> Shift::family() {
  std::vector<Shift> out;
  for (int sigma : {1, -1})
    for (int e1 = -1; e1 <= 1; ++e1)
      for (int e2 = -1; e2 <= 1; ++e2) out.push_back(Shift{sigma, e1, e2});
  return out;
}

json Conventions::to_json() const {
  return {
      {"orientation", orientation_name(orientation)},
      {"macdonald_twist", macdonald.twist == MacTwist::Omega ? "omega" : "none"},
      {"macdonald_scale", macdonald.scale == MacScale::MonicTop ? "monic-top" : "as-is"},
      {"kernel_lambda", lambda_name(kernel_lambda)},
      {"descendent_sign", descendent_sign},
      {"osum_sign", osum_sign},
      {"o_factor", lambda_name(o_factor)},
      {"main_shift", {{"sigma", main_shift.sigma}, {"e_hbar", main_shift.e_hbar}, {"e_q", main_shift.e_q},
                      {"text", main_shift.to_string()}}},
      {"jj_rule", jj_rule == JJRule::Printed ? "printed" : "fusion-derived"},
  };
}

Conventions Conventions::from_json(const json& j) {
  Conventions c;
  c.orientation = parse_enum<Orientation>(j, "orientation",
                                          {{"arms-t1", Orientation::ArmsT1}, {"arms-t2", Orientation::ArmsT2}},
                                          c.orientation);
  c.macdonald.twist =
      parse_enum<MacTwist>(j, "macdonald_twist", {{"omega", MacTwist::Omega}, {"none", MacTwist::None}}, c.macdonald.twist);
  c.macdonald.scale = parse_enum<MacScale>(
      j, "macdonald_scale", {{"monic-top", MacScale::MonicTop}, {"as-is", MacScale::AsIs}}, c.macdonald.scale);
  const std::map<std::string, LambdaConvention> lam{{"tangent", LambdaConvention::Tangent},
                                                    {"dual", LambdaConvention::Dual}};
  c.kernel_lambda = parse_enum(j, "kernel_lambda", lam, c.kernel_lambda);
  c.o_factor = parse_enum(j, "o_factor", lam, c.o_factor);
  c.jj_rule = parse_enum<JJRule>(j, "jj_rule", {{"printed", JJRule::Printed}, {"fusion-derived", JJRule::FusionDerived}},
                                 c.jj_rule);
  auto sign = [&](const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    const int s = j.at(key).get<int>();
    if (s != 1 && s != -1) throw std::invalid_argument(std::string(key) + " must be 1 or -1");
    return s;
  };
  c.descendent_sign = sign("descendent_sign", c.descendent_sign);
  c.osum_sign = sign("osum_sign", c.osum_sign);
  if (j.contains("main_shift")) {
    const json& s = j.at("main_shift");
    c.main_shift.sigma = s.value("sigma", 1);
    c.main_shift.e_hbar = s.value("e_hbar", 0);
    c.main_shift.e_q = s.value("e_q", 0);
    if ((c.main_shift.sigma != 1 && c.main_shift.sigma != -1) || std::abs(c.main_shift.e_hbar) > 1 ||
        std::abs(c.main_shift.e_q) > 1)
      throw std::invalid_argument("main_shift outside the searched family");
  }
  return c;
}

Context::Context(Conventions conv, Ground ground, int jobs)
    : conv_(conv), ground_(std::move(ground)), jobs_(jobs < 1 ? 1 : jobs),
      basis_(std::make_shared<MacdonaldBasis>(conv_.macdonald, ground_)) {}

GroundScalar Context::tangent_lambda(const Partition& lambda, LambdaConvention c) const {
  Character t = tangent_hilb(lambda, conv_.orientation).adams(2);
  if (c == LambdaConvention::Dual) t = t.dual();
  return ground_.apply(lambda_dot(t));
}

GroundScalar Context::kernel_weight(int k) const {
  return GroundScalar(1) /
         ((GroundScalar(1) - ground_.var(Var::T1, 4 * k)) * (GroundScalar(1) - ground_.var(Var::T2, 4 * k)));
}

json VerificationReport::to_json(bool with_time) const {
  json j = {{"check", check},         {"orders", orders},   {"pass", pass},
            {"outcome", outcome},     {"conventions", conventions}, {"details", details}};
  if (!witness.is_null()) j["witness"] = witness;
  if (with_time) j["seconds"] = seconds;
  return j;
}

std::string VerificationReport::summary() const {
  std::ostringstream os;
  os << (pass ? "PASS " : "FAIL ") << check << " " << orders.dump() << " " << outcome;
  if (!witness.is_null()) os << " witness=" << witness.dump();
  return os.str();
}

// ---------------------------------------------------------------------------
// Localization sums

namespace {

FockElement<GroundScalar> localized(const Context& ctx, int n, LambdaConvention lam,
                                    const std::function<GroundScalar(const Partition&)>& eig) {
  ctx.basis().prepare(n);
  FockElement<GroundScalar> out = FockElement<GroundScalar>::constant(n, GroundScalar(1));
  for (int d = 1; d <= n; ++d) {
    const auto ps = partitions(d);
    const auto coeffs = parallel_map<GroundScalar>(ps.size(), ctx.jobs(), [&](std::size_t i) {
      return eig(ps[i]) / ctx.tangent_lambda(ps[i], lam);
    });
    std::map<Partition, GroundScalar> c;
    for (std::size_t i = 0; i < ps.size(); ++i) c.emplace(ps[i], coeffs[i]);
    out = out + ctx.basis().localization_sum([&](const Partition& l) { return c.at(l); },
                                             [](const Partition&) { return GroundScalar(1); }, d, n);
  }
  return out;
}

GroundScalar descendent_eigen(const Context& ctx, const Partition& lambda) {
  Character phi = taut_character({lambda}, {Monomial{}});
  if (ctx.conventions().orientation == Orientation::ArmsT2) phi = phi.swap_t();
  GroundScalar e(1);
  const GroundScalar u = ctx.ground().var(Var::U) * GroundScalar(ctx.conventions().descendent_sign);
  for (const auto& [w, m] : phi.weights())
    for (int i = 0; i < m; ++i) e *= GroundScalar(1) + u * ctx.ground().mono(w.pow(-2));
  return e;
}

FockElement<GroundScalar> exp_with(const Context& ctx, int n, const std::function<GroundScalar(int)>& c) {
  std::map<int, GroundScalar> ck;
  for (int k = 1; k <= n; ++k) ck.emplace(k, c(k) * ctx.kernel_weight(k) / GroundScalar(k));
  return exp_linear(ck, n, GroundScalar(1));
}

VerificationReport fock_check(const Context& ctx, const std::string& name, int n, const FockElement<GroundScalar>& lhs,
                              const FockElement<GroundScalar>& rhs, Clock::time_point t0) {
  VerificationReport r;
  r.check = name;
  r.orders = {{"y", n}};
  r.conventions = ctx.conventions().to_json();
  compare_fock(r, lhs, rhs);
  r.seconds = since(t0);
  return r;
}

}  // namespace

FockElement<GroundScalar> kernel_lhs(const Context& ctx, int n) {
  return localized(ctx, n, ctx.conventions().kernel_lambda, [](const Partition&) { return GroundScalar(1); });
}

FockElement<GroundScalar> kernel_rhs(const Context& ctx, int n) {
  return exp_with(ctx, n, [&](int k) { return ctx.ground().hbar(4 * k); });
}

FockElement<GroundScalar> mellit_lhs(const Context& ctx, int n) {
  return localized(ctx, n, ctx.conventions().kernel_lambda,
                   [&](const Partition& l) { return descendent_eigen(ctx, l); });
}

FockElement<GroundScalar> mellit_rhs(const Context& ctx, int n) {
  return exp_with(ctx, n, [&](int k) {
    return ctx.ground().hbar(4 * k) * (GroundScalar(1) - ctx.ground().var(Var::U, 2 * k));
  });
}

FockElement<GroundScalar> osum_lhs(const Context& ctx, int n) {
  const int s = ctx.conventions().osum_sign;
  return localized(ctx, n, ctx.conventions().kernel_lambda,
                   [s](const Partition& l) { return GroundScalar(s < 0 && size(l) % 2 ? -1 : 1); });
}

FockElement<GroundScalar> osum_rhs(const Context& ctx, int n) {
  return exp_with(ctx, n, [&](int k) {
    const GroundScalar h = ctx.ground().hbar(4 * k);
    return k % 2 ? -h : h;
  });
}

VerificationReport check_kernel_identity(const Context& ctx, int n) {
  const auto t0 = Clock::now();
  return fock_check(ctx, "kernel", n, kernel_lhs(ctx, n), kernel_rhs(ctx, n), t0);
}

VerificationReport check_mellit(const Context& ctx, int n) {
  const auto t0 = Clock::now();
  return fock_check(ctx, "mellit", n, mellit_lhs(ctx, n), mellit_rhs(ctx, n), t0);
}

VerificationReport check_osum(const Context& ctx, int n) {
  const auto t0 = Clock::now();
  VerificationReport r = fock_check(ctx, "osum", n, osum_lhs(ctx, n), osum_rhs(ctx, n), t0);
  r.details["sign_transport"] =
      ctx.conventions().osum_sign < 0
          ? "sum_lambda (-1)^|lambda| H_lambda/Lambda(T_lambda): p_k -> (-1)^k p_k applied to the kernel identity"
          : "sum_lambda H_lambda/Lambda(T_lambda)";
  return r;
}

// ---------------------------------------------------------------------------
// Generating functions

SeriesFock build_F(const Context& ctx, int ny, int nz) { return build_F(ctx, ny, nz, ctx.conventions().o_factor); }

SeriesFock build_F(const Context& ctx, int ny, int nz, LambdaConvention o_factor) {
  const Ground& g = ctx.ground();
  std::map<int, TruncatedSeries> c, d;
  for (int k = 1; k <= ny; ++k) {
    const GroundScalar w = ctx.kernel_weight(k) / GroundScalar(k);
    const GroundScalar hk = g.hbar(4 * k);
    c.emplace(k, TruncatedSeries::term(ny, nz, k, 0, w * hk * (GroundScalar(1) - g.var(Var::U, 2 * k))));
    GroundScalar o = o_factor == LambdaConvention::Tangent ? hk : GroundScalar(1);
    if (k % 2) o = -o;
    d.emplace(k, TruncatedSeries::term(ny, nz, k, 0, w * o));
  }
  const TruncatedSeries one = TruncatedSeries::constant(ny, nz, GroundScalar(1));
  const auto t = tensor_exp(c, d, ny, one);
  return project_second(jj0_substitute(t, ny, nz, g, ctx.conventions().jj_rule));
}

SeriesFock closed_F(const Context& ctx, int ny, int nz) {
  const Ground& g = ctx.ground();
  std::map<int, TruncatedSeries> c;
  for (int k = 1; k <= ny; ++k) {
    const GroundScalar hk = g.hbar(4 * k);
    const TruncatedSeries wk = TruncatedSeries::term(ny, nz, 0, k, g.hbar(2 * k) * g.var(Var::Q, -2 * k));
    const TruncatedSeries zterm = TruncatedSeries::term(
        ny, nz, 0, k, hk * g.var(Var::Q, -2 * k) * (g.hbar(2 * k) - g.hbar(-2 * k)));
    const TruncatedSeries inner =
        TruncatedSeries::constant(ny, nz, (GroundScalar(1) - g.var(Var::U, 2 * k)) * hk) + zterm * geom(wk);
    c.emplace(k, inner * TruncatedSeries::term(ny, nz, k, 0, ctx.kernel_weight(k) / GroundScalar(k)));
  }
  return exp_linear(c, ny, TruncatedSeries::constant(ny, nz, GroundScalar(1)));
}

SeriesFock shifted_F(const Context& ctx, const SeriesFock& f, const Shift& s) {
  const GroundScalar c =
      GroundScalar(s.sigma) * ctx.ground().hbar(2 * s.e_hbar) * ctx.ground().var(Var::Q, 2 * s.e_q);
  return f.map([&](const TruncatedSeries& ts) { return ts.scale_z(c); });
}

VerificationReport check_main(const Context& ctx, int ny, int nz) {
  const auto t0 = Clock::now();
  VerificationReport r;
  r.check = "main";
  r.orders = {{"y", ny}, {"z", nz}};
  const SeriesFock closed = closed_F(ctx, ny, nz);
  const auto family = Shift::family();
  struct Candidate {
    LambdaConvention o;
    Shift s;
  };
  std::vector<Candidate> grid;
  for (auto o : {LambdaConvention::Tangent, LambdaConvention::Dual})
    for (const auto& s : family) grid.push_back({o, s});
  std::map<LambdaConvention, SeriesFock> built;
  for (auto o : {LambdaConvention::Tangent, LambdaConvention::Dual}) built.emplace(o, build_F(ctx, ny, nz, o));
  const auto diffs = parallel_map<std::optional<json>>(grid.size(), ctx.jobs(), [&](std::size_t i) {
    return series_difference(built.at(grid[i].o), shifted_F(ctx, closed, grid[i].s));
  });
  json table = json::array();
  std::vector<Candidate> winners;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    json row = {{"o_factor", lambda_name(grid[i].o)}, {"shift", grid[i].s.to_string()}, {"match", !diffs[i]}};
    if (diffs[i]) row["witness"] = *diffs[i];
    else winners.push_back(grid[i]);
    table.push_back(std::move(row));
  }
  const Shift printed{-1, 1, 1};
  r.details["search"] = table;
  r.details["printed_shift"] = printed.to_string();
  Conventions conv = ctx.conventions();
  if (winners.size() == 1) {
    r.pass = true;
    r.outcome = "exact-match";
    conv.o_factor = winners[0].o;
    conv.main_shift = winners[0].s;
    r.details["winning_shift"] = winners[0].s.to_string();
    r.details["winning_o_factor"] = lambda_name(winners[0].o);
    r.details["matches_printed_shift"] = winners[0].s == printed;
  } else {
    r.pass = false;
    r.outcome = "mismatch";
    r.details["matching_pairs"] = static_cast<int>(winners.size());
    if (winners.empty()) {
      // Witness under the configured convention and shift.
      auto d = series_difference(build_F(ctx, ny, nz), shifted_F(ctx, closed, ctx.conventions().main_shift));
      if (d) r.witness = *d;
    } else {
      r.witness = {{"reason", "more than one shift matches"}};
    }
  }
  r.conventions = conv.to_json();
  r.seconds = since(t0);
  return r;
}

VerificationReport check_ook(const Context& ctx, int ny, int nz) {
  const auto t0 = Clock::now();
  VerificationReport r;
  r.check = "ook";
  r.orders = {{"y", ny}, {"z", nz}};
  r.conventions = ctx.conventions().to_json();
  // The plethystic exponential needs the Adams operation on symbols, so the
  // argument is built symbolically and specialized afterwards.
  const GroundScalar h2 = GroundScalar::hbar(4);
  const GroundScalar w1 = GroundScalar(1) / ((GroundScalar(1) - GroundScalar::var(Var::T1, 4)) *
                                             (GroundScalar(1) - GroundScalar::var(Var::T2, 4)));
  const TruncatedSeries zpart = TruncatedSeries::term(
      ny, nz, 0, 1, GroundScalar::var(Var::Q, -2) * (GroundScalar::hbar(2) - GroundScalar::hbar(-2)));
  const TruncatedSeries ratio = TruncatedSeries::term(ny, nz, 0, 1, GroundScalar::hbar(2) / GroundScalar::var(Var::Q));
  const TruncatedSeries arg =
      TruncatedSeries::term(ny, nz, 1, 0, h2 * w1) *
      (TruncatedSeries::constant(ny, nz, GroundScalar(1) - GroundScalar::var(Var::U)) + zpart * geom(ratio));
  SeriesFock lhs = pexp(arg, ny, TruncatedSeries::constant(ny, nz, GroundScalar(1)));
  lhs = lhs.map([&](const TruncatedSeries& ts) {
    return ts.map([&](const GroundScalar& x) { return ctx.ground().apply(x); });
  });
  const SeriesFock rhs = closed_F(ctx, ny, nz);
  auto d = series_difference(lhs, rhs);
  r.pass = !d;
  r.outcome = d ? "mismatch" : "exact-match";
  if (d) r.witness = *d;
  r.seconds = since(t0);
  return r;
}

VerificationReport check_degenerate(const Context& ctx, int ny) {
  const auto t0 = Clock::now();
  const SeriesFock f = closed_F(ctx, ny, 0);
  FockElement<GroundScalar> slice(ny);
  for (const auto& [mu, ts] : f.terms()) slice.add_term(mu, ts.coeff(size(mu), 0).substitute(Var::U, 0));
  VerificationReport r = fock_check(ctx, "degenerate", ny, slice, kernel_rhs(ctx, ny), t0);
  r.details["slice"] = "u=0, z=0";
  return r;
}

// ---------------------------------------------------------------------------
// Capped vertex table

namespace {

// Long division of prod_{k<=n} (1 - w^k) by den; true when the remainder vanishes.
bool divides_cyclotomic_product(const ZSeries& den, int n) {
  ZSeries p{GroundScalar(1)};
  for (int k = 1; k <= n; ++k) {
    ZSeries next(p.size() + static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < p.size(); ++i) {
      next[i] += p[i];
      next[i + static_cast<std::size_t>(k)] -= p[i];
    }
    p = std::move(next);
  }
  std::size_t dd = den.size();
  while (dd > 0 && den[dd - 1].is_zero()) --dd;
  if (dd == 0) return false;
  const GroundScalar lead = den[dd - 1];
  for (std::size_t top = p.size(); top >= dd; --top) {
    const std::size_t i = top - 1;
    if (p[i].is_zero()) continue;
    const GroundScalar c = p[i] / lead;
    for (std::size_t j = 0; j < dd; ++j) p[i + 1 - dd + j] -= c * den[j];
  }
  for (const auto& x : p)
    if (!x.is_zero()) return false;
  return true;
}

// Smallest dn + dd (dd <= budget) whose reconstruction reproduces all of s,
// keeping at least one coefficient beyond the fit.
std::optional<std::pair<int, int>> minimal_fit(const ZSeries& s, int budget, int nz) {
  for (int total = 0; total + 2 <= nz; ++total) {
    for (int dd = 0; dd <= std::min(total, budget); ++dd) {
      try {
        if (certify(rational_reconstruct(s, total - dd, dd), s) == -1) return std::pair{total - dd, dd};
      } catch (const ReconstructError&) {
      }
    }
  }
  return std::nullopt;
}

bool q_free(const RationalZ& f) {
  auto check = [](const ZSeries& s) {
    for (const auto& x : s)
      if (!(x.substitute(Var::Q, mpq_class(4)) == x.substitute(Var::Q, mpq_class(9)))) return false;
    return true;
  };
  return check(f.num) && check(f.den);
}

}  // namespace

CappedVertexTable capped_vertex_table(const Context& ctx, int n, int nz) {
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  const int budget = n * (n + 1) / 2;
  ctx.basis().prepare(n);
  const SeriesFock f = closed_F(ctx, n, nz).slice(n);
  const auto dec = ctx.basis().fixed_point_decompose(f, n, TruncatedSeries(n, nz));
  const auto ps = partitions(n);
  // Rewrite in w = z hbar / q, i.e. z^j -> w^j (q / hbar)^j.
  const GroundScalar back = ctx.ground().var(Var::Q) / ctx.ground().hbar(2);
  Ground point = ctx.ground();
  const std::pair<Var, mpq_class> probe_values[] = {
      {Var::T1, mpq_class(9, 4)}, {Var::T2, mpq_class(16, 25)}, {Var::Q, mpq_class(121, 4)}, {Var::U, mpq_class(49, 9)}};
  for (const auto& [v, x] : probe_values)
    if (!point.specialized(v)) point.specialize(v, x);
  CappedVertexTable table;
  table.n = n;
  table.z_order = nz;
  table.entries = parallel_map<VertexEntry>(ps.size(), ctx.jobs(), [&](std::size_t idx) {
    const Partition& lambda = ps[idx];
    const TruncatedSeries restricted = dec.at(lambda) * ctx.tangent_lambda(lambda, ctx.conventions().kernel_lambda);
    ZSeries s;
    GroundScalar power(1);
    for (int j = 0; j <= nz; ++j) {
      s.push_back(restricted.coeff(n, j) * power);
      power *= back;
    }
    VertexEntry e;
    e.lambda = lambda;
    // Degrees are found at a rational point, then confirmed symbolically.
    bool found = false;
    std::optional<std::pair<int, int>> degrees;
    try {
      ZSeries probe;
      for (const auto& x : s) probe.push_back(point.apply(x));
      degrees = minimal_fit(probe, budget, nz);
    } catch (const ArithmeticError&) {
    }
    if (degrees) {
      RationalZ cand = rational_reconstruct(s, degrees->first, degrees->second);
      if (certify(cand, s) == -1) {
        e.f = std::move(cand);
        found = true;
      }
    }
    if (!found) {
      if (auto d = minimal_fit(s, budget, nz)) {
        e.f = rational_reconstruct(s, d->first, d->second);
        found = true;
      }
    }
    if (!found) throw ReconstructError("reconstruction failed for lambda = " + to_string(lambda));
    e.certified_through = nz;
    e.denominator_divides = divides_cyclotomic_product(e.f.den, n);
    e.q_free = q_free(e.f);
    return e;
  });
  return table;
}

namespace {

std::string zpoly_text(const ZSeries& p, const char* var) {
  if (std::all_of(p.begin() + std::min<std::size_t>(1, p.size()), p.end(), [](const auto& c) { return c.is_zero(); }))
    return p.empty() ? "0" : p[0].to_string();
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + p[i].to_string() + ")";
    if (i > 0) out += std::string("*") + var + (i > 1 ? "^" + std::to_string(i) : "");
  }
  return out.empty() ? "0" : out;
}

std::string csv_field(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

json CappedVertexTable::to_json() const {
  json rows = json::array();
  for (const auto& e : entries) {
    json num = json::array(), den = json::array();
    for (const auto& x : e.f.num) num.push_back(x.to_string());
    for (const auto& x : e.f.den) den.push_back(x.to_string());
    rows.push_back({{"lambda", partition_json(e.lambda)},
                    {"variable", "w = z*hbar/q"},
                    {"num", num},
                    {"den", den},
                    {"certified_through", e.certified_through},
                    {"denominator_divides", e.denominator_divides},
                    {"q_free", e.q_free}});
  }
  return {{"n", n}, {"z_order", z_order}, {"entries", rows}};
}

std::string CappedVertexTable::to_csv() const {
  std::string out = "lambda,num,den,certified_through,denominator_divides,q_free\n";
  for (const auto& e : entries) {
    out += csv_field(to_string(e.lambda)) + "," + csv_field(zpoly_text(e.f.num, "w")) + "," +
           csv_field(zpoly_text(e.f.den, "w")) + "," + std::to_string(e.certified_through) + "," +
           (e.denominator_divides ? "true" : "false") + "," + (e.q_free ? "true" : "false") + "\n";
  }
  return out;
}

std::string CappedVertexTable::to_text() const {
  std::string out;
  for (const auto& e : entries) {
    const bool one = e.f.den.size() == 1 && e.f.den[0].is_one();
    out += to_string(e.lambda) + " : " + zpoly_text(e.f.num, "w");
    if (!one) out += " / (" + zpoly_text(e.f.den, "w") + ")";
    out += "\n";
  }
  return out;
}

VerificationReport check_vertex(const Context& ctx, int n, int nz) {
  const auto t0 = Clock::now();
  VerificationReport r;
  r.check = "vertex";
  r.orders = {{"n", n}, {"z", nz}};
  r.conventions = ctx.conventions().to_json();
  const CappedVertexTable t = capped_vertex_table(ctx, n, nz);
  r.pass = true;
  for (const auto& e : t.entries) {
    if (!e.denominator_divides || !e.q_free) {
      r.pass = false;
      r.witness = {{"lambda", partition_json(e.lambda)},
                   {"denominator_divides", e.denominator_divides},
                   {"q_free", e.q_free}};
      break;
    }
  }
  r.outcome = r.pass ? "exact-match" : "mismatch";
  r.details["table"] = t.to_json();
  r.seconds = since(t0);
  return r;
}

// ---------------------------------------------------------------------------
// Limit propositions

VerificationReport check_prop1(const Context& ctx, int n) {
  const auto t0 = Clock::now();
  VerificationReport r;
  r.check = "prop1";
  r.orders = {{"n", n}};
  r.conventions = ctx.conventions().to_json();
  const auto fps = fixed_points_M2(n);
  const Monomial a = a_pow(1);
  const std::vector<std::pair<std::string, std::vector<Monomial>>> framings{{"(1,a)", {Monomial{}, a}},
                                                                             {"(a,1)", {a, Monomial{}}}};
  struct Combo {
    DeltaRoute route;
    PolarizationVariant variant;
    std::size_t framing;
    int power;
  };
  std::vector<Combo> combos;
  for (auto route : {DeltaRoute::Normalization, DeltaRoute::ProofDisplay})
    for (auto variant : {PolarizationVariant::Printed, PolarizationVariant::Proof})
      for (std::size_t f = 0; f < framings.size(); ++f)
        for (int p : {n, 2 * n}) combos.push_back({route, variant, f, p});

  struct Outcome {
    bool ok = false;
    json witness;
  };
  const auto results = parallel_map<std::vector<Outcome>>(fps.size(), ctx.jobs(), [&](std::size_t i) {
    const auto& [l1, l2] = fps[i];
    const GroundScalar rhs = ctx.ground().apply(GroundScalar::from_mono(hbar_pow(n + size(l2)))) *
                             ctx.ground().apply(o_line_eigen(l1, l2, LineComponent::First));
    std::vector<Outcome> out;
    for (const auto& c : combos) {
      Outcome o;
      const GroundScalar x = GroundScalar(1) /
                             delta_11(l1, l2, c.variant, c.route, framings[c.framing].second) *
                             o_line_eigen(l1, l2, LineComponent::Full) * GroundScalar::from_mono(a_pow(c.power));
      const json fp = {{"lambda1", partition_json(l1)}, {"lambda2", partition_json(l2)}};
      if (x.a_valuation2() < 0) {
        o.witness = {{"fixed_point", fp}, {"outcome", "limit-nonexistent"},
                     {"a_valuation", render_half(x.a_valuation2())}};
      } else {
        const GroundScalar lim = ctx.ground().apply(x.a_limit());
        o.ok = lim == rhs;
        if (!o.ok)
          o.witness = {{"fixed_point", fp}, {"outcome", "mismatch"}, {"limit", lim.to_string()},
                       {"expected", rhs.to_string()}};
      }
      out.push_back(std::move(o));
    }
    return out;
  });
  json table = json::array();
  json valid = json::array();
  std::set<int> powers;
  bool any = false;
  for (std::size_t ci = 0; ci < combos.size(); ++ci) {
    const auto& c = combos[ci];
    int good = 0;
    json first;
    for (std::size_t i = 0; i < fps.size(); ++i) {
      if (results[i][ci].ok) ++good;
      else if (first.is_null()) first = results[i][ci].witness;
    }
    const bool all = good == static_cast<int>(fps.size());
    json row = {{"route", c.route == DeltaRoute::Normalization ? "normalization" : "proof-display"},
                {"polarization", c.variant == PolarizationVariant::Printed ? "printed" : "proof"},
                {"framing", framings[c.framing].first},
                {"a_power", c.power == n ? "n" : "2n"},
                {"holds_at", good},
                {"fixed_points", static_cast<int>(fps.size())},
                {"holds", all}};
    if (!all) row["first_failure"] = first;
    if (all) {
      any = true;
      valid.push_back(row);
      powers.insert(c.power);
    }
    table.push_back(std::move(row));
  }
  r.pass = any;
  r.outcome = any ? "exact-match" : "mismatch";
  r.details["combinations"] = table;
  r.details["valid"] = valid;
  std::string resolved;
  if (n == 0) resolved = "n = 0: a^n = a^{2n} = 1";
  else if (powers.count(n) && !powers.count(2 * n)) resolved = "a^n (as in the proof)";
  else if (powers.count(2 * n) && !powers.count(n)) resolved = "a^{2n} (as in the statement)";
  else if (powers.empty()) resolved = "neither power";
  else resolved = "both powers";
  r.details["a_power_resolution"] = resolved;
  if (!any && !table.empty()) r.witness = table[0]["first_failure"];
  r.seconds = since(t0);
  return r;
}

VerificationReport check_prop4(const Context& ctx, int n, int k) {
  const auto t0 = Clock::now();
  VerificationReport r;
  r.check = "prop4";
  r.orders = {{"n", n}, {"k", k}};
  r.conventions = ctx.conventions().to_json();
  if (k < 0 || k > n) throw std::invalid_argument("prop4 needs 0 <= k <= n");
  const auto fps = fixed_points_M2(n);
  const std::vector<Monomial> framing{Monomial{}, a_pow(1)};
  const auto results = parallel_map<json>(fps.size(), ctx.jobs(), [&](std::size_t i) -> json {
    const auto& [l1, l2] = fps[i];
    const GroundScalar x = chern_eigen({l1, l2}, framing, k, false);
    const GroundScalar expected = k <= size(l1) ? chern_eigen({l1}, {Monomial{}}, k, false) : GroundScalar{};
    const json fp = {{"lambda1", partition_json(l1)}, {"lambda2", partition_json(l2)}};
    if (x.a_valuation2() < 0)
      return {{"fixed_point", fp}, {"outcome", "limit-nonexistent"}, {"a_valuation", render_half(x.a_valuation2())}};
    const GroundScalar lim = ctx.ground().apply(x.a_limit());
    const GroundScalar want = ctx.ground().apply(expected);
    if (lim == want) return nullptr;
    return {{"fixed_point", fp}, {"outcome", "mismatch"}, {"limit", lim.to_string()}, {"expected", want.to_string()}};
  });
  r.pass = true;
  r.outcome = "exact-match";
  for (const auto& w : results) {
    if (w.is_null()) continue;
    r.pass = false;
    r.outcome = w.at("outcome").get<std::string>();
    r.witness = w;
    break;
  }
  r.details["fixed_points"] = static_cast<int>(fps.size());
  r.seconds = since(t0);
  return r;
}

// ---------------------------------------------------------------------------
// Calibration

Calibration calibrate(const Ground& ground, int jobs, std::optional<Orientation> orientation) {
  Calibration cal;
  Conventions base;
  // Orientation, Macdonald normalization and Lambda convention: the kernel
  // identity through y^2 must hold.
  std::vector<Conventions> winners;
  json kernel = json::array();
  json witness;
  for (auto o : {Orientation::ArmsT1, Orientation::ArmsT2}) {
    if (orientation && o != *orientation) continue;
    for (auto tw : {MacTwist::Omega, MacTwist::None})
      for (auto sc : {MacScale::MonicTop, MacScale::AsIs})
        for (auto lam : {LambdaConvention::Tangent, LambdaConvention::Dual}) {
          Conventions c = base;
          c.orientation = o;
          c.macdonald = {tw, sc};
          c.kernel_lambda = lam;
          const auto rep = check_kernel_identity(Context(c, ground, jobs), 2);
          kernel.push_back({{"conventions", c.to_json()}, {"pass", rep.pass}, {"witness", rep.witness}});
          if (rep.pass) winners.push_back(c);
          else if (witness.is_null()) witness = rep.witness;
        }
  }
  cal.log["kernel_search"] = kernel;
  if (winners.empty())
    throw CalibrationError("kernel identity at y^2 holds for no convention set; first witness " + witness.dump());

  // The kernel identity cannot tell H~ from its omega-twisted inverse; the
  // descendent identity can, so the descendent sign is searched jointly.
  std::vector<Conventions> survivors;
  json mellit = json::array();
  for (const auto& w : winners) {
    for (int s : {1, -1}) {
      Conventions c = w;
      c.descendent_sign = s;
      const auto rep = check_mellit(Context(c, ground, jobs), 2);
      mellit.push_back({{"conventions", c.to_json()}, {"pass", rep.pass}, {"witness", rep.witness}});
      if (rep.pass) survivors.push_back(c);
    }
  }
  cal.log["descendent_search"] = mellit;
  if (survivors.empty()) throw CalibrationError("descendent identity at y^2 holds for no surviving convention set");
  // Distinct flags may still describe the same basis; only genuinely
  // different survivors are ambiguous.
  for (std::size_t i = 1; i < survivors.size(); ++i) {
    const Conventions& x = survivors[0];
    const Conventions& y = survivors[i];
    if (x.orientation != y.orientation || x.kernel_lambda != y.kernel_lambda || x.descendent_sign != y.descendent_sign)
      throw CalibrationError("kernel and descendent identities at y^2 leave " + std::to_string(survivors.size()) +
                             " inequivalent convention sets");
    const MacdonaldBasis bx(x.macdonald, ground), by(y.macdonald, ground);
    for (int n = 1; n <= 2; ++n)
      for (const auto& l : partitions(n))
        if (bx.vec(l) != by.vec(l)) throw CalibrationError("kernel and descendent identities leave H_lambda ambiguous");
  }
  cal.log["equivalent_flag_sets"] = static_cast<int>(survivors.size());
  base = survivors[0];

  auto pick_sign = [&](const char* name, int Conventions::*field, auto check) {
    std::vector<int> ok;
    json log = json::array();
    for (int s : {1, -1}) {
      Conventions c = base;
      c.*field = s;
      const auto rep = check(Context(c, ground, jobs));
      log.push_back({{"sign", s}, {"pass", rep.pass}, {"witness", rep.witness}});
      if (rep.pass) ok.push_back(s);
    }
    cal.log[name] = log;
    if (ok.size() != 1) throw CalibrationError(std::string(name) + ": " + std::to_string(ok.size()) + " signs pass");
    base.*field = ok[0];
  };
  pick_sign("osum_sign", &Conventions::osum_sign, [](const Context& c) { return check_osum(c, 2); });

  const auto main = check_main(Context(base, ground, jobs), 2, 3);
  cal.log["main_search"] = main.details;
  if (!main.pass) throw CalibrationError("shift search at (y^2, z^3): no unique match");
  base.o_factor = LambdaConvention::Tangent;
  if (main.details.at("winning_o_factor") == "dual") base.o_factor = LambdaConvention::Dual;
  for (const auto& s : Shift::family())
    if (s.to_string() == main.details.at("winning_shift").get<std::string>()) base.main_shift = s;

  for (int n = 1; n <= 2; ++n) {
    const auto p1 = check_prop1(Context(base, ground, jobs), n);
    cal.log["prop1_n" + std::to_string(n)] = {{"valid", p1.details["valid"]},
                                              {"a_power_resolution", p1.details["a_power_resolution"]}};
  }
  cal.conventions = base;
  return cal;
}

// ---------------------------------------------------------------------------
// Serialization

json series_to_json(const SeriesFock& f) {
  json terms = json::array();
  for (const auto& [mu, ts] : f.terms()) {
    for (const auto& [key, v] : ts.coefficients()) {
      json t = scalar_pair(v);
      terms.push_back({{"y", key.first}, {"z", key.second}, {"p", partition_json(mu)}, {"num", t["num"]},
                       {"den", t["den"]}});
    }
  }
  return terms;
}

json fock_to_json(const FockElement<GroundScalar>& f) {
  json terms = json::array();
  for (const auto& [mu, v] : f.terms()) {
    json t = scalar_pair(v);
    terms.push_back({{"y", size(mu)}, {"z", 0}, {"p", partition_json(mu)}, {"num", t["num"]}, {"den", t["den"]}});
  }
  return terms;
}

std::string series_to_text(const SeriesFock& f) {
  std::string out;
  for (const auto& [mu, ts] : f.terms()) {
    for (const auto& [key, v] : ts.coefficients()) {
      std::string mono = mu.empty() ? "1" : "p[" + to_string(mu) + "]";
      out += mono + " y^" + std::to_string(key.first) + " z^" + std::to_string(key.second) + " : " + v.to_string() +
             "\n";
    }
  }
  return out.empty() ? "0\n" : out;
}

}  // namespace capvert
