#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "capvert/character.hpp"
#include "capvert/fock.hpp"
#include "capvert/macdonald.hpp"
#include "capvert/reconstruct.hpp"
#include "capvert/series.hpp"

namespace capvert {

using nlohmann::json;

/// z -> sigma * z * hbar^e_hbar * q^e_q
struct Shift {
  int sigma = 1;
  int e_hbar = 0;
  int e_q = 0;

  bool operator==(const Shift&) const = default;
  std::string to_string() const;
  static std::vector<Shift> family();
};

/// Which of Lambda(T) and Lambda(T^dual) normalizes a fixed-point class.
enum class LambdaConvention { Tangent, Dual };

/// Every sign and normalization choice the checks depend on.
struct Conventions {
  Orientation orientation = Orientation::ArmsT1;
  MacdonaldParams macdonald;
  LambdaConvention kernel_lambda = LambdaConvention::Tangent;
  /// Descendent eigenvalue prod_boxes (1 + sign * u * phi^{-2}).
  int descendent_sign = -1;
  /// The structure-sheaf series is sum_lambda sign^{|lambda|} H_lambda / Lambda.
  int osum_sign = -1;
  /// Normalization of the O factor entering build_F.
  LambdaConvention o_factor = LambdaConvention::Dual;
  Shift main_shift{1, -1, 1};
  JJRule jj_rule = JJRule::Printed;

  json to_json() const;
  static Conventions from_json(const json& j);
};

/// Shared state of a run: conventions, specialization and the Macdonald cache.
class Context {
 public:
  explicit Context(Conventions conv = {}, Ground ground = {}, int jobs = 1);

  const Conventions& conventions() const { return conv_; }
  const Ground& ground() const { return ground_; }
  int jobs() const { return jobs_; }
  const MacdonaldBasis& basis() const { return *basis_; }

  /// Lambda(psi^2 T_lambda) (or its dual) in the calibrated orientation.
  GroundScalar tangent_lambda(const Partition& lambda, LambdaConvention c) const;
  /// 1 / ((1 - t1^{2k})(1 - t2^{2k}))
  GroundScalar kernel_weight(int k) const;

 private:
  Conventions conv_;
  Ground ground_;
  int jobs_;
  std::shared_ptr<MacdonaldBasis> basis_;
};

/// Runs fn(0..n-1) on up to `jobs` threads; results come back in index order.
template <class R>
std::vector<R> parallel_map(std::size_t n, int jobs, const std::function<R(std::size_t)>& fn);

struct VerificationReport {
  std::string check;
  json orders = json::object();
  bool pass = false;
  /// "exact-match", "mismatch" or "limit-nonexistent"
  std::string outcome;
  json witness;
  json conventions = json::object();
  json details = json::object();
  double seconds = 0;

  json to_json(bool with_time) const;
  std::string summary() const;
};

using SeriesFock = FockElement<TruncatedSeries>;

// Fixed-point localization checks.
VerificationReport check_kernel_identity(const Context& ctx, int n);
VerificationReport check_mellit(const Context& ctx, int n);
VerificationReport check_osum(const Context& ctx, int n);

/// Left-hand sides as Fock elements: sum_{|lambda| <= n} eig(lambda) H_lambda / Lambda(T_lambda).
FockElement<GroundScalar> kernel_lhs(const Context& ctx, int n);
FockElement<GroundScalar> mellit_lhs(const Context& ctx, int n);
FockElement<GroundScalar> osum_lhs(const Context& ctx, int n);
/// Right-hand sides exp(sum_k c_k p_k) as printed.
FockElement<GroundScalar> kernel_rhs(const Context& ctx, int n);
FockElement<GroundScalar> mellit_rhs(const Context& ctx, int n);
FockElement<GroundScalar> osum_rhs(const Context& ctx, int n);

/// tau-bar (x) O product, J(z)J(0)^{-1}, then p^(2) = 0.
SeriesFock build_F(const Context& ctx, int ny, int nz);
SeriesFock build_F(const Context& ctx, int ny, int nz, LambdaConvention o_factor);
/// Direct expansion of the closed formula.
SeriesFock closed_F(const Context& ctx, int ny, int nz);
/// closed_F with z replaced by the shifted argument.
SeriesFock shifted_F(const Context& ctx, const SeriesFock& f, const Shift& s);

VerificationReport check_main(const Context& ctx, int ny, int nz);
VerificationReport check_ook(const Context& ctx, int ny, int nz);
/// u = 0, z = 0 slice of closed_F against the kernel exponential.
VerificationReport check_degenerate(const Context& ctx, int ny);

struct VertexEntry {
  Partition lambda;
  RationalZ f;  // in w = z hbar / q
  int certified_through = 0;
  bool denominator_divides = false;
  bool q_free = false;
};

struct CappedVertexTable {
  int n = 0;
  int z_order = 0;
  std::vector<VertexEntry> entries;

  json to_json() const;
  std::string to_csv() const;
  std::string to_text() const;
};

/// Per-fixed-point rational functions of the y^n slice of closed_F.
CappedVertexTable capped_vertex_table(const Context& ctx, int n, int nz);
VerificationReport check_vertex(const Context& ctx, int n, int nz);

VerificationReport check_prop1(const Context& ctx, int n);
VerificationReport check_prop4(const Context& ctx, int n, int k);

/// Small-order searches that fix every convention; throws CalibrationError
/// when no choice (or more than one) survives. `orientation` restricts the
/// search to one orientation.
struct CalibrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Calibration {
  Conventions conventions;
  json log;
};
Calibration calibrate(const Ground& ground = {}, int jobs = 1, std::optional<Orientation> orientation = std::nullopt);

/// Fock element with series coefficients as {"y","z","p","num","den"} records.
json series_to_json(const SeriesFock& f);
json fock_to_json(const FockElement<GroundScalar>& f);
std::string series_to_text(const SeriesFock& f);

}  // namespace capvert

#include "capvert/parallel.ipp"
