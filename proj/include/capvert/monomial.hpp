#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace capvert {

/// Ground variables. Every exponent is stored doubled so that half-integer
/// powers (t1^{1/2}, hbar^{1/2}, a^{1/2}) live on the same lattice.
enum class Var : std::uint8_t { T1 = 0, T2 = 1, Q = 2, U = 3, A = 4 };

inline constexpr std::size_t kNumVars = 5;

std::string_view var_name(Var v);
bool parse_var(std::string_view name, Var& out);

/// Laurent monomial with doubled exponents.
class Monomial {
 public:
  using Exponents = std::array<std::int32_t, kNumVars>;

  constexpr Monomial() = default;
  constexpr explicit Monomial(const Exponents& e) : e_(e) {}

  /// v^{doubled/2}
  static Monomial var(Var v, std::int32_t doubled = 2) {
    Exponents e{};
    e[static_cast<std::size_t>(v)] = doubled;
    return Monomial(e);
  }

  std::int32_t doubled(Var v) const { return e_[static_cast<std::size_t>(v)]; }
  std::int32_t doubled(std::size_t i) const { return e_[i]; }
  const Exponents& exponents() const { return e_; }

  /// Sum of doubled exponents.
  std::int64_t degree2() const {
    std::int64_t d = 0;
    for (auto x : e_) d += x;
    return d;
  }
  bool is_one() const {
    for (auto x : e_)
      if (x != 0) return false;
    return true;
  }

  Monomial operator*(const Monomial& o) const {
    Exponents e;
    for (std::size_t i = 0; i < kNumVars; ++i) e[i] = e_[i] + o.e_[i];
    return Monomial(e);
  }
  Monomial inverse() const {
    Exponents e;
    for (std::size_t i = 0; i < kNumVars; ++i) e[i] = -e_[i];
    return Monomial(e);
  }
  Monomial pow(std::int32_t k) const {
    Exponents e;
    for (std::size_t i = 0; i < kNumVars; ++i) e[i] = e_[i] * k;
    return Monomial(e);
  }
  /// Componentwise minimum (gcd in the Laurent sense).
  static Monomial min(const Monomial& x, const Monomial& y) {
    Exponents e;
    for (std::size_t i = 0; i < kNumVars; ++i) e[i] = x.e_[i] < y.e_[i] ? x.e_[i] : y.e_[i];
    return Monomial(e);
  }
  /// True iff every exponent of *this is >= the one in o.
  bool divisible_by(const Monomial& o) const {
    for (std::size_t i = 0; i < kNumVars; ++i)
      if (e_[i] < o.e_[i]) return false;
    return true;
  }

  bool operator==(const Monomial&) const = default;

  /// Graded lexicographic order on (t1, t2, q, u, a) doubled exponents.
  std::strong_ordering operator<=>(const Monomial& o) const {
    if (auto c = degree2() <=> o.degree2(); c != 0) return c;
    for (std::size_t i = 0; i < kNumVars; ++i)
      if (auto c = e_[i] <=> o.e_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : e_) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }

  /// "t1^(3/2)*q^-1"; "1" for the unit monomial.
  std::string to_string() const;

 private:
  Exponents e_{};
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Renders a doubled exponent: 4 -> "2", 3 -> "(3/2)", -1 -> "(-1/2)".
std::string render_half(std::int64_t doubled);

}  // namespace capvert
