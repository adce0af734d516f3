#pragma once

// The Strominger system on invariant data:
//
//   F_A^{0,2} = 0,  Lambda F_A = 0,
//   R^{0,2} = 0,    Lambda R = 0,
//   d(|Omega| omega^{n-1}) = 0,
//   dd^c omega - alpha (tr R ^ R - tr F_A ^ F_A) = 0.
//
// For tangent connections (the real 2n x 2n representation) tr is the
// trace over (TM, J) as a complex bundle, i.e. half the real trace; this
// applies to A as well when A is built from a tangent constructor. With pairing
// weights (w_T, w_A) the Pontryagin-difference form is
// P = w_T tr R ^ R + w_A tr F_A ^ F_A, and the default (1, -1) gives the
// bracket above.

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "stromcheck/gauge.hpp"
#include "stromcheck/hermitian.hpp"

namespace stromcheck {

class StromingerModel {
 public:
  // nabla must be a tangent connection of rank 2n; alpha == nullopt asks
  // check_system to solve for alpha. The fibre metric defaults to Id.
  StromingerModel(HermitianData h, Connection nabla, Connection a, std::optional<double> alpha,
                  std::array<double, 2> weights = {1.0, -1.0},
                  std::optional<Eigen::MatrixXcd> fiber_metric = std::nullopt);

  const HermitianData& h() const { return h_; }
  const Connection& nabla() const { return nabla_; }
  const Connection& a() const { return a_; }
  const std::optional<double>& alpha() const { return alpha_; }
  const std::array<double, 2>& weights() const { return weights_; }
  const Eigen::MatrixXcd& fiber_metric() const { return fiber_metric_; }

  StromingerModel with_alpha(std::optional<double> alpha) const;
  StromingerModel with_fiber_metric(Eigen::MatrixXcd h) const;

 private:
  HermitianData h_;
  Connection nabla_;
  Connection a_;
  std::optional<double> alpha_;
  std::array<double, 2> weights_;
  Eigen::MatrixXcd fiber_metric_;
};

// dd^c omega.
Form ddc_omega(const StromingerModel& m);
// P = w_T tr R ^ R + w_A tr F_A ^ F_A.
Form pontryagin_difference(const StromingerModel& m);
// dd^c omega - alpha P.
Form bianchi_residual(const StromingerModel& m, double alpha);

// The pairing alpha (w_T tr_T (+) w_A tr) on nabla (+) A, so that
// c(F_theta ^ F_theta) = alpha P for theta = nabla (+) A.
Pairing combined_pairing(const StromingerModel& m, double alpha);
// dd^c omega - c(F_theta ^ F_theta) computed on the direct sum.
Form bianchi_residual_combined(const StromingerModel& m, double alpha);

struct AlphaSolution {
  enum class Outcome { kExact, kLeastSquares, kNone, kDegenerate };
  Outcome outcome = Outcome::kNone;
  double alpha = 0.0;     // meaningful for kExact and kLeastSquares; 0 for kDegenerate
  double residual = 0.0;  // sup-norm of bianchi_residual at alpha (|dd^c omega| for kNone)
};
AlphaSolution solve_alpha(const StromingerModel& m, double tol = kResidualTolerance);
std::string to_string(AlphaSolution::Outcome outcome);

struct CheckOptions {
  double tol = kResidualTolerance;
  // When false the nabla-HYM flag is informational and does not gate `solves`.
  bool strict_hym_nabla = true;
};

struct SystemReport {
  HymResidual hym_a;
  HymResidual hym_nabla;
  double conformally_balanced = 0.0;
  double dilatino = 0.0;
  double bianchi = 0.0;
  double d_big_omega = 0.0;
  double omega_norm = 0.0;

  // Informational only.
  double nabla_metric = 0.0;   // |nabla g|
  double nabla_complex = 0.0;  // |nabla J|
  double a_unitarity = 0.0;    // |A^* h + h A|

  double alpha_used = 0.0;
  std::optional<AlphaSolution> alpha_solution;  // set when alpha was solved for

  struct Flags {
    bool hym_a = false;
    bool hym_nabla = false;
    bool conformally_balanced = false;
    bool bianchi = false;
  } flags;
  bool hym_nabla_enforced = true;
  bool solves = false;

  Classification classification;
  Form lee_form{0};
  double tol = kResidualTolerance;
};

SystemReport check_system(const StromingerModel& m, const CheckOptions& options = {});

// 2 pi / (n-1)! * deg / (r vol). Throws InvariantViolation unless r, vol, n > 0.
double lambda_value(double deg, int r, double vol, int n);

}  // namespace stromcheck
