#include "capvert/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace capvert {

TruncatedSeries TruncatedSeries::term(int ny, int nz, int i, int j, const GroundScalar& c) {
  TruncatedSeries s(ny, nz);
  s.add_term(i, j, c);
  return s;
}

GroundScalar TruncatedSeries::coeff(int i, int j) const {
  auto it = c_.find({i, j});
  return it == c_.end() ? GroundScalar{} : it->second;
}

void TruncatedSeries::add_term(int i, int j, const GroundScalar& c) {
  if (i > ny_ || j > nz_ || c.is_zero()) return;
  auto [it, inserted] = c_.try_emplace({i, j}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) c_.erase(it);
  }
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  TruncatedSeries r(std::min(ny_, o.ny_), std::min(nz_, o.nz_));
  for (const auto& [k, v] : c_) r.add_term(k.first, k.second, v);
  for (const auto& [k, v] : o.c_) r.add_term(k.first, k.second, v);
  return r;
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries r = *this;
  for (auto& [k, v] : r.c_) v = -v;
  return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const { return *this + (-o); }

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  TruncatedSeries r(std::min(ny_, o.ny_), std::min(nz_, o.nz_));
  std::map<Key, std::vector<GroundScalar>> parts;
  for (const auto& [ka, va] : c_) {
    for (const auto& [kb, vb] : o.c_) {
      const int i = ka.first + kb.first, j = ka.second + kb.second;
      if (i > r.ny_ || j > r.nz_) continue;
      parts[{i, j}].push_back(va * vb);
    }
  }
  for (auto& [k, vs] : parts) {
    GroundScalar acc;
    for (const auto& v : vs) acc += v;
    r.add_term(k.first, k.second, acc);
  }
  return r;
}

TruncatedSeries TruncatedSeries::operator*(const GroundScalar& s) const {
  TruncatedSeries r(ny_, nz_);
  if (s.is_zero()) return r;
  for (const auto& [k, v] : c_) r.c_.emplace(k, v * s);
  return r;
}

TruncatedSeries TruncatedSeries::adams(int k) const {
  if (k < 1) throw std::invalid_argument("adams index must be positive");
  TruncatedSeries r(ny_, nz_);
  for (const auto& [key, v] : c_) r.add_term(key.first * k, key.second * k, v.adams(k));
  return r;
}

TruncatedSeries TruncatedSeries::scale_z(const GroundScalar& c) const {
  TruncatedSeries r(ny_, nz_);
  std::vector<GroundScalar> powers{GroundScalar(1)};
  for (const auto& [k, v] : c_) {
    while (static_cast<int>(powers.size()) <= k.second) powers.push_back(powers.back() * c);
    r.add_term(k.first, k.second, v * powers[k.second]);
  }
  return r;
}

TruncatedSeries TruncatedSeries::truncated(int ny, int nz) const {
  TruncatedSeries r(std::min(ny, ny_), std::min(nz, nz_));
  for (const auto& [k, v] : c_) r.add_term(k.first, k.second, v);
  return r;
}

std::optional<TruncatedSeries::Key> TruncatedSeries::first_difference(const TruncatedSeries& o) const {
  const TruncatedSeries d = *this - o;
  if (d.c_.empty()) return std::nullopt;
  return d.c_.begin()->first;
}

std::string TruncatedSeries::to_string() const {
  if (c_.empty()) return "0";
  std::string out;
  for (const auto& [k, v] : c_) {
    if (!out.empty()) out += " + ";
    out += "(" + v.to_string() + ")";
    if (k.first) out += "*y^" + std::to_string(k.first);
    if (k.second) out += "*z^" + std::to_string(k.second);
  }
  return out;
}

namespace {

// Coefficients in order of increasing total degree i + j.
std::vector<TruncatedSeries::Key> graded_keys(int ny, int nz) {
  std::vector<TruncatedSeries::Key> keys;
  for (int d = 0; d <= ny + nz; ++d)
    for (int i = std::max(0, d - nz); i <= std::min(d, ny); ++i) keys.emplace_back(i, d - i);
  return keys;
}

}  // namespace

// With D the total-degree derivation, D exp(f) = D(f) exp(f).
TruncatedSeries series_exp(const TruncatedSeries& f) {
  if (!f.constant_term().is_zero()) throw std::domain_error("series_exp: nonzero constant term");
  const int ny = f.ny(), nz = f.nz();
  std::map<TruncatedSeries::Key, GroundScalar> e;
  e[{0, 0}] = GroundScalar(1);
  for (const auto& key : graded_keys(ny, nz)) {
    const auto [i, j] = key;
    if (i + j == 0) continue;
    GroundScalar acc;
    for (const auto& [fk, fv] : f.coefficients()) {
      const int a = fk.first, b = fk.second;
      if (a > i || b > j) continue;
      auto it = e.find({i - a, j - b});
      if (it == e.end()) continue;
      acc += GroundScalar(a + b) * fv * it->second;
    }
    if (!acc.is_zero()) e[key] = acc / GroundScalar(i + j);
  }
  TruncatedSeries r(ny, nz);
  for (const auto& [k, v] : e) r.add_term(k.first, k.second, v);
  return r;
}

TruncatedSeries series_log(const TruncatedSeries& f) {
  if (!(f.constant_term() == GroundScalar(1))) throw std::domain_error("series_log: constant term must be 1");
  const int ny = f.ny(), nz = f.nz();
  std::map<TruncatedSeries::Key, GroundScalar> l;
  for (const auto& key : graded_keys(ny, nz)) {
    const auto [i, j] = key;
    if (i + j == 0) continue;
    GroundScalar acc = GroundScalar(i + j) * f.coeff(i, j);
    for (const auto& [lk, lv] : l) {
      const int a = lk.first, b = lk.second;
      if (a > i || b > j || (a == i && b == j)) continue;
      const GroundScalar g = f.coeff(i - a, j - b);
      if (!g.is_zero()) acc -= GroundScalar(a + b) * lv * g;
    }
    if (!acc.is_zero()) l[key] = acc / GroundScalar(i + j);
  }
  TruncatedSeries r(ny, nz);
  for (const auto& [k, v] : l) r.add_term(k.first, k.second, v);
  return r;
}

TruncatedSeries geom(const TruncatedSeries& g) {
  if (!g.constant_term().is_zero()) throw std::domain_error("geom: nonzero constant term");
  const int ny = g.ny(), nz = g.nz();
  std::map<TruncatedSeries::Key, GroundScalar> s;
  s[{0, 0}] = GroundScalar(1);
  for (const auto& key : graded_keys(ny, nz)) {
    const auto [i, j] = key;
    if (i + j == 0) continue;
    GroundScalar acc;
    for (const auto& [gk, gv] : g.coefficients()) {
      if (gk.first > i || gk.second > j) continue;
      auto it = s.find({i - gk.first, j - gk.second});
      if (it != s.end()) acc += gv * it->second;
    }
    if (!acc.is_zero()) s[key] = acc;
  }
  TruncatedSeries r(ny, nz);
  for (const auto& [k, v] : s) r.add_term(k.first, k.second, v);
  return r;
}

}  // namespace capvert
