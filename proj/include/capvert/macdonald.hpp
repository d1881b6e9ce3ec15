#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "capvert/character.hpp"
#include "capvert/fock.hpp"
#include "capvert/linalg.hpp"
#include "capvert/partition.hpp"
#include "capvert/scalar.hpp"

namespace capvert {

/// Symmetric function of degree n as coefficients on p_mu, mu in partitions(n).
using SymVec = std::vector<GroundScalar>;

/// m_lambda = sum_mu A[lambda][mu] p_mu (rows and columns in partitions(n) order).
const Matrix<mpq_class>& monomial_to_power(int n);
/// Irreducible character chi^lambda at cycle type rho (Murnaghan-Nakayama).
long schur_character(const Partition& lambda, const Partition& rho);

/// Classical Macdonald P_lambda(q, t) at rational q, t for all lambda of size n,
/// built by Gram-Schmidt on the monomial basis in increasing lex order against
/// <p_l, p_m> = z_l prod (1-q^l_i)/(1-t^l_i).
std::map<Partition, std::vector<mpq_class>> macdonald_p_at(int n, const mpq_class& q, const mpq_class& t);
/// H~_lambda[X; q, t] = t^{n(lambda)} J_lambda(q, 1/t)[X/(1 - 1/t)] at rational q, t.
std::map<Partition, std::vector<mpq_class>> modified_macdonald_at(int n, const mpq_class& q, const mpq_class& t);
/// H~_lambda with q, t arbitrary scalars: the polynomial coefficients are
/// interpolated from modified_macdonald_at on a grid (and checked at one
/// further point), then evaluated at q, t.
std::map<Partition, SymVec> modified_macdonald_gs(int n, const GroundScalar& q, const GroundScalar& t);
/// H~_lambda from the two triangularity conditions and <H~, s_(n)> = 1,
/// solved as a linear system. Used as an independent check.
std::map<Partition, SymVec> modified_macdonald_axioms(int n, const GroundScalar& q, const GroundScalar& t);

/// How the Fock-space class of a fixed point is read off H~.
enum class MacTwist { None, Omega };
enum class MacScale { AsIs, MonicTop };

struct MacdonaldParams {
  MacTwist twist = MacTwist::Omega;
  MacScale scale = MacScale::MonicTop;
};

/// Fixed-point basis {H_lambda} of Fock space with cached change of basis.
/// The Macdonald parameters are q_M = t1^{-2}, t_M = t2^{-2}.
class MacdonaldBasis {
 public:
  explicit MacdonaldBasis(MacdonaldParams params = {}, Ground ground = Ground{});

  const MacdonaldParams& params() const { return params_; }
  const Ground& ground() const { return ground_; }

  /// H_lambda in the p basis.
  FockElement<GroundScalar> macd_H(const Partition& lambda) const;
  const SymVec& vec(const Partition& lambda) const;
  /// Inverse change of basis: row lambda gives c_lambda from p coefficients.
  const Matrix<GroundScalar>& inverse_matrix(int n) const;
  /// Fills the caches through degree n.
  void prepare(int n) const;

  /// f_n = sum_lambda c_lambda H_lambda for the degree-n slice of f.
  template <class C>
  std::map<Partition, C> fixed_point_decompose(const FockElement<C>& f, int n, const C& zero) const {
    const auto& inv = inverse_matrix(n);
    const auto ps = partitions(n);
    std::map<Partition, C> out;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      C acc = zero;
      for (std::size_t j = 0; j < ps.size(); ++j) {
        const C* fj = f.find(ps[j]);
        if (fj && !inv[i][j].is_zero()) acc = acc + *fj * inv[i][j];
      }
      out.emplace(ps[i], acc);
    }
    return out;
  }

  /// sum_{|lambda| = n} eig(lambda) H_lambda / den(lambda).
  FockElement<GroundScalar> localization_sum(const std::function<GroundScalar(const Partition&)>& eig,
                                             const std::function<GroundScalar(const Partition&)>& den, int n,
                                             int truncation) const;

 private:
  struct Degree {
    std::map<Partition, SymVec> h;
    Matrix<GroundScalar> inverse;
  };
  MacdonaldParams params_;
  Ground ground_;
  mutable std::mutex mu_;
  mutable std::map<int, std::shared_ptr<const Degree>> cache_;

  std::shared_ptr<const Degree> degree(int n) const;
};

}  // namespace capvert
