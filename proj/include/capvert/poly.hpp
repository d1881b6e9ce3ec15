#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "capvert/monomial.hpp"

namespace capvert {

struct Term {
  Monomial mono;
  mpz_class coeff;
};

/// Sparse Laurent polynomial over Z in the ground variables.
///
/// Terms are kept sorted by descending graded-lex order with no zero
/// coefficients, so structural equality is polynomial equality.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const mpz_class& c);
  explicit Poly(long c) : Poly(mpz_class(c)) {}
  Poly(const Monomial& m, const mpz_class& c);

  /// Builds from unsorted terms; merges duplicates and drops zeros.
  static Poly from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }
  bool is_monomial() const { return terms_.size() == 1; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(const mpz_class& c) const;
  Poly shifted(const Monomial& m) const;
  Poly pow(unsigned k) const;

  /// gcd of the integer coefficients (positive), 0 for the zero polynomial.
  mpz_class content() const;
  /// Componentwise minimum exponent over all terms.
  Monomial monomial_content() const;

  /// Every doubled exponent multiplied by k (the Adams operation on monomials).
  Poly adams(int k) const;

  /// Exact quotient in the Laurent ring Z[x^{±1/2}], or nullopt when the
  /// divisor does not divide.
  std::optional<Poly> divide_exact(const Poly& d) const;

  /// Lowest / highest doubled exponent of a variable over all terms.
  std::int32_t min_exponent(Var v) const;
  std::int32_t max_exponent(Var v) const;

  bool operator==(const Poly& o) const;
  /// Deterministic total order (used for factor ordering).
  int compare(const Poly& o) const;
  std::size_t hash() const;

  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

/// A polynomial with integer and monomial content removed and a positive
/// leading coefficient. `unit_coeff * unit_mono * primitive` equals the input.
struct Normalized {
  mpz_class unit_coeff;
  Monomial unit_mono;
  Poly primitive;
};
Normalized normalize(const Poly& p);

}  // namespace capvert
