#include "stromcheck/strominger.hpp"

#include <cmath>
#include <numbers>

#include "stromcheck/errors.hpp"

namespace stromcheck {

namespace {

// Half the real trace: tr over (TM, J) for J-linear connections.
constexpr double kTangentTrace = 0.5;

double trace_factor(const Connection& c) { return c.tangent() ? kTangentTrace : 1.0; }

double max_abs(const Form& f) { return f.sup_norm(); }

}  // namespace

StromingerModel::StromingerModel(HermitianData h, Connection nabla, Connection a, std::optional<double> alpha,
                                 std::array<double, 2> weights, std::optional<Eigen::MatrixXcd> fiber_metric)
    : h_(std::move(h)),
      nabla_(std::move(nabla)),
      a_(std::move(a)),
      alpha_(alpha),
      weights_(weights),
      fiber_metric_(fiber_metric ? std::move(*fiber_metric) : Eigen::MatrixXcd::Identity(a_.rank(), a_.rank())) {
  const int dim = h_.dim();
  if (nabla_.base_dim() != dim || a_.base_dim() != dim)
    throw DimensionMismatch("strominger model: connections live over a different algebra");
  if (nabla_.rank() != dim) throw DimensionMismatch("strominger model: nabla must have rank " + std::to_string(dim));
  if (!h_.holomorphic_volume()) throw InvariantViolation("Omega present", "the Strominger system needs Omega");
  if (fiber_metric_.rows() != a_.rank() || fiber_metric_.cols() != a_.rank())
    throw DimensionMismatch("strominger model: fibre metric rank");
  const double herm = (fiber_metric_ - fiber_metric_.adjoint()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(fiber_metric_);
  if (herm > kExactnessTolerance || eig.eigenvalues().minCoeff() <= 0.0)
    throw InvariantViolation("fibre metric positive hermitian", "fibre metric must be hermitian positive definite");
  if (weights_[0] == 0.0 || weights_[1] == 0.0) throw InvariantViolation("pairing nondegeneracy", "zero pairing weight");
  if (alpha_ && !std::isfinite(*alpha_)) throw InvariantViolation("alpha finite", "alpha must be a finite number");
}

StromingerModel StromingerModel::with_alpha(std::optional<double> alpha) const {
  StromingerModel m = *this;
  m.alpha_ = alpha;
  return m;
}

StromingerModel StromingerModel::with_fiber_metric(Eigen::MatrixXcd h) const {
  return StromingerModel(h_, nabla_, a_, alpha_, weights_, std::move(h));
}

Form ddc_omega(const StromingerModel& m) {
  const auto& h = m.h();
  return ce_differential(h.alg(), dc(h.alg(), h.j(), kahler_form(h)));
}

Form pontryagin_difference(const StromingerModel& m) {
  const auto& alg = m.h().alg();
  const Form rr = c_square(Pairing::trace(m.nabla().rank(), trace_factor(m.nabla())), curvature(alg, m.nabla()));
  const Form ff = c_square(Pairing::trace(m.a().rank(), trace_factor(m.a())), curvature(alg, m.a()));
  return m.weights()[0] * rr + m.weights()[1] * ff;
}

Form bianchi_residual(const StromingerModel& m, double alpha) {
  return ddc_omega(m) - alpha * pontryagin_difference(m);
}

Pairing combined_pairing(const StromingerModel& m, double alpha) {
  if (alpha == 0.0) throw InvariantViolation("pairing nondegeneracy", "combined pairing needs alpha != 0");
  const int n = m.nabla().rank();
  return Pairing(n + m.a().rank(), {{0, n, alpha * m.weights()[0] * trace_factor(m.nabla())},
                                    {n, m.a().rank(), alpha * m.weights()[1] * trace_factor(m.a())}});
}

Form bianchi_residual_combined(const StromingerModel& m, double alpha) {
  const Connection theta = direct_sum(m.nabla(), m.a());
  return ddc_omega(m) - c_square(combined_pairing(m, alpha), curvature(m.h().alg(), theta));
}

AlphaSolution solve_alpha(const StromingerModel& m, double tol) {
  const Form d = ddc_omega(m);
  const Form p = pontryagin_difference(m);
  AlphaSolution out;
  if (max_abs(p) < tol) {
    out.outcome = max_abs(d) < tol ? AlphaSolution::Outcome::kDegenerate : AlphaSolution::Outcome::kNone;
    out.alpha = 0.0;
    out.residual = max_abs(d);
    return out;
  }
  // Real least squares over real and imaginary parts of every coefficient.
  double pd = 0.0;
  double pp = 0.0;
  for (const auto& [b, c] : p.terms()) {
    const Complex dv = d.coefficient(b);
    pd += c.real() * dv.real() + c.imag() * dv.imag();
    pp += std::norm(c);
  }
  out.alpha = pd / pp;
  out.residual = max_abs(bianchi_residual(m, out.alpha));
  out.outcome = out.residual < tol ? AlphaSolution::Outcome::kExact : AlphaSolution::Outcome::kLeastSquares;
  return out;
}

std::string to_string(AlphaSolution::Outcome outcome) {
  switch (outcome) {
    case AlphaSolution::Outcome::kExact:
      return "exact";
    case AlphaSolution::Outcome::kLeastSquares:
      return "least_squares";
    case AlphaSolution::Outcome::kNone:
      return "none";
    case AlphaSolution::Outcome::kDegenerate:
      return "degenerate";
  }
  return "unknown";
}

SystemReport check_system(const StromingerModel& m, const CheckOptions& options) {
  const auto& h = m.h();
  const auto& alg = h.alg();
  SystemReport r;
  r.tol = options.tol;

  if (m.alpha()) {
    r.alpha_used = *m.alpha();
  } else {
    r.alpha_solution = solve_alpha(m, options.tol);
    r.alpha_used = r.alpha_solution->alpha;
  }

  r.hym_a = hym_residual(h, curvature(alg, m.a()), 0.0);
  r.hym_nabla = hym_residual(h, curvature(alg, m.nabla()), 0.0);
  const DilatinoResidual dil = dilatino_residual(h);
  r.conformally_balanced = dil.conformally_balanced;
  r.dilatino = dil.dilatino;
  r.bianchi = max_abs(bianchi_residual(m, r.alpha_used));
  r.d_big_omega = holomorphic_volume_closedness(h);
  r.omega_norm = omega_norm(h);

  r.nabla_metric = metric_residual(m.nabla(), h.g());
  r.nabla_complex = complex_residual(m.nabla(), h.j());
  r.a_unitarity = unitarity_residual(m.a(), m.fiber_metric());

  const double tol = options.tol;
  r.flags.hym_a = r.hym_a.einstein < tol && r.hym_a.f02 < tol;
  r.flags.hym_nabla = r.hym_nabla.einstein < tol && r.hym_nabla.f02 < tol;
  r.flags.conformally_balanced = r.conformally_balanced < tol;
  r.flags.bianchi = r.bianchi < tol;
  r.hym_nabla_enforced = options.strict_hym_nabla;
  r.solves = r.flags.hym_a && (r.flags.hym_nabla || !options.strict_hym_nabla) && r.flags.conformally_balanced &&
             r.flags.bianchi;

  r.classification = classify(h, tol);
  r.lee_form = lee_form(h);
  return r;
}

double lambda_value(double deg, int r, double vol, int n) {
  if (r <= 0) throw InvariantViolation("rank positive", "r must be positive");
  if (!(vol > 0.0)) throw InvariantViolation("volume positive", "vol must be positive");
  if (n <= 0) throw InvariantViolation("dimension positive", "n must be positive");
  double fact = 1.0;
  for (int i = 2; i <= n - 1; ++i) fact *= i;
  return 2.0 * std::numbers::pi / fact * deg / (r * vol);
}

}  // namespace stromcheck
