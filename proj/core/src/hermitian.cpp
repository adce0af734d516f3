#include "stromcheck/hermitian.hpp"

#include <cmath>
#include <string>

#include "stromcheck/errors.hpp"

namespace stromcheck {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::uint32_t top_mask(int dim) { return (1U << dim) - 1U; }

}  // namespace

HermitianData::HermitianData(LieAlgebraModel alg, AlmostComplexStructure j, MetricTensor g, std::optional<Form> omega_n)
    : alg_(std::move(alg)), j_(std::move(j)), g_(std::move(g)), omega_n_(std::move(omega_n)) {
  const int dim = alg_.dim();
  if (j_.dim() != dim || g_.dim() != dim) throw DimensionMismatch("hermitian data: algebra, J and g dimensions differ");
  const Eigen::MatrixXd& jm = j_.matrix();
  const Eigen::MatrixXd& gm = g_.matrix();
  const double compat = (jm.transpose() * gm * jm - gm).cwiseAbs().maxCoeff();
  if (compat > kExactnessTolerance * std::max(1.0, gm.cwiseAbs().maxCoeff()))
    throw InvariantViolation("g(J., J.) = g", "compatibility residual " + std::to_string(compat));
  if (omega_n_) {
    const int n = dim / 2;
    if (omega_n_->dim() != dim) throw DimensionMismatch("holomorphic volume form dimension");
    if (omega_n_->is_zero()) throw InvariantViolation("Omega nonvanishing", "holomorphic volume form is zero");
    if (omega_n_->degree() != n)
      throw InvariantViolation("Omega type (n,0)", "holomorphic volume form must have degree " + std::to_string(n));
    const double off_type = (*omega_n_ - pq_project(j_, *omega_n_, n, 0)).sup_norm();
    if (off_type > kStructureTolerance)
      throw InvariantViolation("Omega type (n,0)", "component outside (n,0) of size " + std::to_string(off_type));
  }
}

HermitianData HermitianData::with_metric(MetricTensor g) const { return HermitianData(alg_, j_, std::move(g), omega_n_); }

Form kahler_form(const HermitianData& h) {
  const Eigen::MatrixXd w = h.j().matrix().transpose() * h.g().matrix();
  return two_form_from_matrix(w.cast<Complex>());
}

Form codifferential(const HermitianData& h, const Form& a) {
  return -hodge_star(h.g(), ce_differential(h.alg(), hodge_star(h.g(), a)));
}

Form lee_form_codifferential(const HermitianData& h) {
  return j_action(h.j(), codifferential(h, kahler_form(h)));
}

Form lee_form(const HermitianData& h) {
  const Form omega = kahler_form(h);
  Form theta = lambda_contract(omega, ce_differential(h.alg(), omega));
  const Form other = lee_form_codifferential(h);
  const double gap = (theta - other).sup_norm();
  if (gap > kStructureTolerance * std::max(1.0, theta.sup_norm()))
    throw ConventionFault("Lee form: Lambda d omega and J d* omega differ by " + std::to_string(gap));
  return theta;
}

Classification classify(const HermitianData& h, double tol) {
  const int n = h.complex_dim();
  const Form omega = kahler_form(h);
  const Form omega_n1 = wedge_power(omega, n - 1);
  Classification c;
  c.d_omega = ce_differential(h.alg(), omega).sup_norm();
  c.d_omega_n1 = ce_differential(h.alg(), omega_n1).sup_norm();
  c.ddc_omega_n1 = ce_differential(h.alg(), dc(h.alg(), h.j(), omega_n1)).sup_norm();
  const Form theta = lee_form(h);
  c.lee_norm = theta.sup_norm();
  c.codiff_lee_norm = codifferential(h, theta).sup_norm();
  c.kahler = c.d_omega < tol;
  c.balanced = c.kahler || c.d_omega_n1 < tol;
  c.gauduchon = c.balanced || c.ddc_omega_n1 < tol;
  return c;
}

double omega_norm(const HermitianData& h) {
  if (!h.holomorphic_volume()) throw InvariantViolation("Omega present", "no holomorphic volume form supplied");
  const int n = h.complex_dim();
  const Form& big_omega = *h.holomorphic_volume();
  const Form volume = (1.0 / factorial(n)) * wedge_power(kahler_form(h), n);
  const Complex i{0.0, 1.0};
  const double sign = ((n * (n - 1) / 2) % 2) ? -1.0 : 1.0;
  const Form rhs = sign * std::pow(i, n) * wedge(big_omega, big_omega.conjugate());
  const Complex vol_coeff = volume.coefficient(Blade(top_mask(h.dim())));
  const Complex ratio = rhs.coefficient(Blade(top_mask(h.dim()))) / vol_coeff;
  if (std::abs(ratio.imag()) > kStructureTolerance * std::max(1.0, std::abs(ratio)) || !(ratio.real() > 0.0))
    throw InvariantViolation("Omega ^ conj(Omega) positive",
                             "not a positive multiple of the volume form (orientation mismatch?)");
  return std::sqrt(ratio.real());
}

DilatinoResidual dilatino_residual(const HermitianData& h) {
  const int n = h.complex_dim();
  const double norm = omega_norm(h);
  const Form omega = kahler_form(h);
  DilatinoResidual r;
  // |Omega| is constant on invariant data, so d^c log|Omega| is d^c of a constant.
  const Form log_norm = Form::scalar(h.dim(), std::log(norm));
  r.dilatino = (codifferential(h, omega) - dc(h.alg(), h.j(), log_norm)).sup_norm();
  r.conformally_balanced = ce_differential(h.alg(), norm * wedge_power(omega, n - 1)).sup_norm();
  return r;
}

double holomorphic_volume_closedness(const HermitianData& h) {
  if (!h.holomorphic_volume()) throw InvariantViolation("Omega present", "no holomorphic volume form supplied");
  return ce_differential(h.alg(), *h.holomorphic_volume()).sup_norm();
}

}  // namespace stromcheck
