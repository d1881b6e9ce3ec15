#pragma once

#include <map>
#include <string>
#include <vector>

#include "capvert/monomial.hpp"
#include "capvert/partition.hpp"
#include "capvert/scalar.hpp"

namespace capvert {

/// Formal sum of torus weights with integer multiplicities.
class Character {
 public:
  Character() = default;
  explicit Character(const Monomial& w, int mult = 1) { add(w, mult); }

  void add(const Monomial& w, int mult = 1);
  const std::map<Monomial, int>& weights() const { return w_; }
  bool empty() const { return w_.empty(); }
  int rank() const;
  int multiplicity(const Monomial& w) const;

  Character operator+(const Character& o) const;
  Character operator-(const Character& o) const;
  Character operator-() const;
  /// Tensor product.
  Character operator*(const Character& o) const;
  Character operator*(const Monomial& m) const;
  bool operator==(const Character& o) const { return w_ == o.w_; }

  Character dual() const;
  Character adams(int k) const;
  /// Monomial prod_w w^{mult}.
  Monomial det() const;
  /// Part with a-exponent of the given sign (-1, 0, +1).
  Character a_part(int sign) const;
  /// Exchanges t1 and t2 in every weight.
  Character swap_t() const;

  std::string to_string() const;

 private:
  std::map<Monomial, int> w_;
};

Monomial t1_pow(int e);
Monomial t2_pow(int e);
Monomial hbar_pow(int e);
inline Monomial a_pow(int e) { return Monomial::var(Var::A, 2 * e); }

/// Which of t1, t2 accompanies the arm length in the Hilbert-scheme tangent.
enum class Orientation { ArmsT1, ArmsT2 };

/// sum over boxes of framing[i] t1^c t2^r.
Character taut_character(const std::vector<Partition>& parts, const std::vector<Monomial>& framing);

/// sum_box t1^{a+1} t2^{-l} + t1^{-a} t2^{l+1} (roles exchanged for ArmsT2).
Character tangent_hilb(const Partition& p, Orientation o = Orientation::ArmsT1);

/// Full tangent character of M(n,2) at (p1, p2):
/// W V* + hbar W* V + (t1 + t2 - 1 - hbar) V V*.
Character tangent_M2(const Partition& p1, const Partition& p2, const std::vector<Monomial>& framing);

enum class PolarizationVariant { Printed, Proof };

/// Printed: W* V + t2^{-1} V* V - hbar^{-1} V* V - V* V. Proof: hbar W* V.
Character polarization_M2(const Partition& p1, const Partition& p2, PolarizationVariant v,
                          const std::vector<Monomial>& framing);

struct TrivialWeightError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// prod_w (1 - w^{-1})^{mult}.
GroundScalar lambda_dot(const Character& c);

enum class DeltaRoute { Normalization, ProofDisplay };

/// Diagonal of the stable envelope for the 1+1 splitting.
/// Normalization: hbar^{-n} (det N^- / det T^{1/2}_{!=0})^{1/2} Lambda(N^-).
/// ProofDisplay: hbar^{-n} Lambda(N^-) / det T^{1/2}_{<0}.
GroundScalar delta_11(const Partition& p1, const Partition& p2, PolarizationVariant v, DeltaRoute route,
                      const std::vector<Monomial>& framing);

enum class LineComponent { Full, First, Second };

/// O(-1) eigenvalue a^{-|p1|} prod t1^{-c} t2^{-r} (or one factor of it).
GroundScalar o_line_eigen(const Partition& p1, const Partition& p2, LineComponent which);

/// k-th elementary symmetric function of the box weights (inverted if dual).
GroundScalar chern_eigen(const std::vector<Partition>& parts, const std::vector<Monomial>& framing, int k,
                         bool dual);

}  // namespace capvert
