#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "capvert/scalar.hpp"

namespace capvert {

/// Power series in y and z truncated at y^ny, z^nz (both inclusive), with
/// GroundScalar coefficients.
class TruncatedSeries {
 public:
  using Key = std::pair<int, int>;

  TruncatedSeries() = default;
  TruncatedSeries(int ny, int nz) : ny_(ny), nz_(nz) {}
  /// c * y^i z^j (dropped when outside the bounds).
  static TruncatedSeries term(int ny, int nz, int i, int j, const GroundScalar& c);
  static TruncatedSeries constant(int ny, int nz, const GroundScalar& c) { return term(ny, nz, 0, 0, c); }

  int ny() const { return ny_; }
  int nz() const { return nz_; }
  bool is_zero() const { return c_.empty(); }
  const std::map<Key, GroundScalar>& coefficients() const { return c_; }
  GroundScalar coeff(int i, int j) const;
  GroundScalar constant_term() const { return coeff(0, 0); }

  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator-() const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const GroundScalar& s) const;
  TruncatedSeries& operator+=(const TruncatedSeries& o) { return *this = *this + o; }
  TruncatedSeries& operator-=(const TruncatedSeries& o) { return *this = *this - o; }
  TruncatedSeries& operator*=(const TruncatedSeries& o) { return *this = *this * o; }

  bool operator==(const TruncatedSeries& o) const { return (*this - o).is_zero(); }

  /// y -> y^k, z -> z^k and adams on every coefficient.
  TruncatedSeries adams(int k) const;
  /// z -> c z.
  TruncatedSeries scale_z(const GroundScalar& c) const;
  /// Coefficientwise map.
  template <class F>
  TruncatedSeries map(F&& f) const {
    TruncatedSeries r(ny_, nz_);
    for (const auto& [k, v] : c_) r.add_term(k.first, k.second, f(v));
    return r;
  }
  /// Restricts the truncation bounds.
  TruncatedSeries truncated(int ny, int nz) const;

  void add_term(int i, int j, const GroundScalar& c);

  /// First key (in (i, j) order) where the two series differ.
  std::optional<Key> first_difference(const TruncatedSeries& o) const;

  std::string to_string() const;

 private:
  int ny_ = 0;
  int nz_ = 0;
  std::map<Key, GroundScalar> c_;
};

inline TruncatedSeries operator*(const GroundScalar& s, const TruncatedSeries& f) { return f * s; }

/// exp(f); f must have zero constant term.
TruncatedSeries series_exp(const TruncatedSeries& f);
/// log(f); f must have constant term 1.
TruncatedSeries series_log(const TruncatedSeries& f);
/// sum_{m>=0} g^m; g must have zero constant term.
TruncatedSeries geom(const TruncatedSeries& g);

/// Univariate z-series: coefficient list s[0..N].
using ZSeries = std::vector<GroundScalar>;

}  // namespace capvert
