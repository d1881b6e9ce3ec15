#pragma once

#include <gmpxx.h>

#include <array>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "capvert/monomial.hpp"
#include "capvert/poly.hpp"

namespace capvert {

struct ArithmeticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Building block of a scalar: a primitive polynomial with positive leading
/// coefficient and no monomial content. Binomials are always split into
/// cyclotomic atoms Phi_d(r) for a primitive monomial r; those carry (d, r).
struct Factor {
  Poly poly;
  std::size_t hash;
  int cyclo_d = 0;
  Monomial cyclo_r;
};
using FactorPtr = std::shared_ptr<const Factor>;

/// Exact element of Q(t1^{1/2}, t2^{1/2}, q^{1/2}, u^{1/2}, a^{1/2}).
///
/// Stored as coeff * mono * prod_i f_i^{e_i} with nonzero integer exponents.
/// Products only merge exponent maps; sums pull out the common part, expand
/// the two residuals and trial-divide the result by the shared denominator
/// factors. No multivariate gcd is ever computed.
class GroundScalar {
 public:
  GroundScalar() = default;
  GroundScalar(long c) : coeff_(c) {}  // NOLINT(runtime/explicit)
  GroundScalar(const mpz_class& c) : coeff_(c) {}  // NOLINT
  GroundScalar(const mpq_class& c) : coeff_(c) { coeff_.canonicalize(); }  // NOLINT
  static GroundScalar from_mono(const Monomial& m, const mpq_class& c = 1);
  static GroundScalar from_poly(const Poly& p);
  /// v^{doubled/2}
  static GroundScalar var(Var v, std::int32_t doubled = 2) { return from_mono(Monomial::var(v, doubled)); }
  /// hbar^{doubled/2} with hbar = t1 t2.
  static GroundScalar hbar(std::int32_t doubled = 2);

  bool is_zero() const { return coeff_ == 0; }
  bool is_one() const { return coeff_ == 1 && mono_.is_one() && factors_.empty(); }
  /// True when the value is a rational number times a monomial.
  bool is_monomial() const { return factors_.empty(); }
  const mpq_class& coeff() const { return coeff_; }
  const Monomial& mono() const { return mono_; }
  const std::vector<std::pair<FactorPtr, int>>& factors() const { return factors_; }

  GroundScalar operator+(const GroundScalar& o) const;
  GroundScalar operator-(const GroundScalar& o) const;
  GroundScalar operator-() const;
  GroundScalar operator*(const GroundScalar& o) const;
  GroundScalar operator/(const GroundScalar& o) const;
  GroundScalar& operator+=(const GroundScalar& o) { return *this = *this + o; }
  GroundScalar& operator-=(const GroundScalar& o) { return *this = *this - o; }
  GroundScalar& operator*=(const GroundScalar& o) { return *this = *this * o; }
  GroundScalar& operator/=(const GroundScalar& o) { return *this = *this / o; }

  GroundScalar inverse() const;
  GroundScalar pow(int k) const;

  bool operator==(const GroundScalar& o) const { return (*this - o).is_zero(); }

  /// Every variable v replaced by v^k.
  GroundScalar adams(int k) const;

  /// Cancels numerator factors against denominator factors where one
  /// divides the other. Value is unchanged.
  GroundScalar reduced() const;

  /// Expanded numerator and denominator; the denominator carries a positive
  /// leading coefficient and no monomial part.
  std::pair<Poly, Poly> num_den() const;

  /// Order of vanishing at a = 0, doubled.
  std::int32_t a_valuation2() const;
  /// Value at a = 0 (0 if the valuation is positive).
  GroundScalar a_limit() const;

  /// Substitutes v -> value; half powers of v need value to be a rational square.
  GroundScalar substitute(Var v, const mpq_class& value) const;
  /// True iff the variable occurs.
  bool depends_on(Var v) const;

  /// Rough size measure used for pivot selection.
  std::size_t weight() const;

  /// Canonical text "num" or "(num)/(den)".
  std::string to_string() const;

 private:
  mpq_class coeff_{0};
  Monomial mono_;
  std::vector<std::pair<FactorPtr, int>> factors_;

  void mul_factor(const FactorPtr& f, int e);
};

/// Exact quotient num/den as a scalar, or nullopt if den does not divide num
/// over Q[x^{+-1/2}].
std::optional<GroundScalar> exact_quotient(const Poly& num, const Poly& den);

GroundScalar scalar_arith(const GroundScalar& x, const GroundScalar& y, char op);

/// Parses "p" or "p/q".
mpq_class parse_rational(const std::string& s);

/// Values substituted for ground variables in specialized mode. Symbolic
/// variables map to themselves. Half powers of a specialized variable need
/// the value to be a rational square.
class Ground {
 public:
  Ground() = default;

  void specialize(Var v, const mpq_class& value);
  bool specialized(Var v) const { return values_[static_cast<std::size_t>(v)].has_value(); }
  bool symbolic() const;

  GroundScalar mono(const Monomial& m) const;
  GroundScalar var(Var v, std::int32_t doubled = 2) const { return mono(Monomial::var(v, doubled)); }
  GroundScalar hbar(std::int32_t doubled = 2) const;
  GroundScalar poly(const Poly& p) const;
  /// Pushes a symbolic scalar through the specialization.
  GroundScalar apply(const GroundScalar& x) const;

  /// "t1=4,q=9" or "symbolic".
  std::string describe() const;

 private:
  struct Value {
    mpq_class value;
    std::optional<mpq_class> root;
  };
  std::array<std::optional<Value>, kNumVars> values_{};
};

}  // namespace capvert
