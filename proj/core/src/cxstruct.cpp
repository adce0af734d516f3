#include "stromcheck/cxstruct.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "stromcheck/errors.hpp"

namespace stromcheck {

namespace {

// All (p, k-p) components of the degree-k part of a, indexed by p.
// Uses the pullback by z P10 + (1 - P10), which scales type (p,q) by z^p,
// sampled at the (k+1)-th roots of unity.
std::vector<Form> bidegree_components(const AlmostComplexStructure& j, const Form& a, int k) {
  const int dim = a.dim();
  const Form part = a.homogeneous(k);
  std::vector<Form> out(static_cast<std::size_t>(k + 1), Form(dim));
  if (part.is_zero()) return out;
  const Eigen::MatrixXcd& p10 = j.holomorphic_projector();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
  const int samples = k + 1;
  for (int m = 0; m < samples; ++m) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * m / samples);
    const Form image = pullback(z * p10 + (id - p10), part);
    for (int p = 0; p <= k; ++p) {
      const Complex weight = std::pow(std::conj(z), p) / static_cast<double>(samples);
      for (const auto& [b, c] : image.terms()) out[static_cast<std::size_t>(p)].accumulate(b, weight * c);
    }
  }
  for (auto& f : out) f.prune();
  return out;
}

void require_integrable(const LieAlgebraModel& alg, const AlmostComplexStructure& j, const char* op) {
  const double n = nijenhuis(alg, j);
  if (n >= kStructureTolerance)
    throw NonIntegrable(std::string(op) + ": Nijenhuis residual " + std::to_string(n) +
                        " exceeds tolerance; d does not split as del + delbar");
}

// Shared body of del / delbar: shift = (1,0) for del, (0,1) for delbar.
Form shifted_differential(const LieAlgebraModel& alg, const AlmostComplexStructure& j, const Form& a, bool holomorphic) {
  const int dim = a.dim();
  Form out(dim);
  for (int k = 0; k < dim; ++k) {
    const auto components = bidegree_components(j, a, k);
    for (int p = 0; p <= k; ++p) {
      const Form& comp = components[static_cast<std::size_t>(p)];
      if (comp.is_zero()) continue;
      const Form d = ce_differential(alg, comp);
      const int target_p = holomorphic ? p + 1 : p;
      const Form projected = pq_project(j, d, target_p, k + 1 - target_p);
      for (const auto& [b, c] : projected.terms()) out.accumulate(b, c);
    }
  }
  out.prune();
  return out;
}

}  // namespace

AlmostComplexStructure::AlmostComplexStructure(Eigen::MatrixXd j) : j_(std::move(j)) {
  const auto n = j_.rows();
  const Complex i{0.0, 1.0};
  p10_ = 0.5 * (Eigen::MatrixXcd::Identity(n, n) - i * j_.cast<Complex>());
}

AlmostComplexStructure AlmostComplexStructure::from_matrix(const Eigen::MatrixXd& j) {
  if (j.rows() != j.cols() || j.rows() % 2 != 0 || j.rows() == 0 || j.rows() > kMaxDimension)
    throw DimensionMismatch("complex structure must be an even square matrix");
  const auto n = j.rows();
  const double err = (j * j + Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (err > kExactnessTolerance) throw InvariantViolation("J^2 = -Id", "residual " + std::to_string(err));
  return AlmostComplexStructure(j);
}

AlmostComplexStructure AlmostComplexStructure::standard(int dim) {
  if (dim <= 0 || dim % 2 != 0) throw DimensionMismatch("standard complex structure needs even dimension");
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(dim, dim);
  for (int a = 0; a < dim; a += 2) {
    j(a + 1, a) = 1.0;   // J e_{2j-1} = e_{2j}
    j(a, a + 1) = -1.0;  // J e_{2j} = -e_{2j-1}
  }
  return AlmostComplexStructure(j);
}

Form j_pullback(const AlmostComplexStructure& j, const Form& a) {
  if (j.dim() != a.dim()) throw DimensionMismatch("j_pullback: dimension");
  return pullback(j.matrix().cast<Complex>(), a);
}

Form j_action(const AlmostComplexStructure& j, const Form& a) {
  Form out = j_pullback(j, a);
  Form signed_out(a.dim());
  for (const auto& [b, c] : out.terms()) signed_out.accumulate(b, (b.degree() % 2 ? -1.0 : 1.0) * c);
  signed_out.prune();
  return signed_out;
}

Form j_action_inverse(const AlmostComplexStructure& j, const Form& a) {
  // The action squares to (-1)^k on degree k.
  Form out = j_action(j, a);
  Form signed_out(a.dim());
  for (const auto& [b, c] : out.terms()) signed_out.accumulate(b, (b.degree() % 2 ? -1.0 : 1.0) * c);
  signed_out.prune();
  return signed_out;
}

Form pq_project(const AlmostComplexStructure& j, const Form& a, int p, int q) {
  if (j.dim() != a.dim()) throw DimensionMismatch("pq_project: dimension");
  if (p < 0 || q < 0) throw DimensionMismatch("pq_project: negative bidegree");
  const int k = p + q;
  for (const auto& [b, c] : a.terms())
    if (b.degree() != k)
      throw DimensionMismatch("pq_project: form has a degree-" + std::to_string(b.degree()) +
                              " component but p + q = " + std::to_string(k));
  if (k > a.dim()) return Form(a.dim());
  return bidegree_components(j, a, k)[static_cast<std::size_t>(p)];
}

double nijenhuis(const LieAlgebraModel& alg, const AlmostComplexStructure& j) {
  if (alg.dim() != j.dim()) throw DimensionMismatch("nijenhuis: dimension");
  const int n = alg.dim();
  const Eigen::MatrixXd& jm = j.matrix();
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const Eigen::VectorXd x = Eigen::VectorXd::Unit(n, a);
      const Eigen::VectorXd y = Eigen::VectorXd::Unit(n, b);
      const Eigen::VectorXd jx = jm * x;
      const Eigen::VectorXd jy = jm * y;
      const Eigen::VectorXd nxy =
          alg.bracket(jx, jy) - alg.bracket(x, y) - jm * alg.bracket(jx, y) - jm * alg.bracket(x, jy);
      worst = std::max(worst, nxy.cwiseAbs().maxCoeff());
    }
  return worst;
}

double bidegree_leakage(const LieAlgebraModel& alg, const AlmostComplexStructure& j) {
  const int n = alg.dim();
  double worst = 0.0;
  const Eigen::MatrixXcd& p10 = j.holomorphic_projector();
  for (int a = 0; a < n; ++a) {
    std::vector<Complex> row(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) row[static_cast<std::size_t>(i)] = p10(a, i);
    const Form alpha = Form::one_form(n, row);
    if (alpha.is_zero()) continue;
    const Form d = ce_differential(alg, alpha);
    worst = std::max(worst, pq_project(j, d, 0, 2).sup_norm());
  }
  return worst;
}

bool is_integrable(const LieAlgebraModel& alg, const AlmostComplexStructure& j, double tol) {
  return nijenhuis(alg, j) < tol;
}

Form del(const LieAlgebraModel& alg, const AlmostComplexStructure& j, const Form& a) {
  require_integrable(alg, j, "del");
  return shifted_differential(alg, j, a, true);
}

Form delbar(const LieAlgebraModel& alg, const AlmostComplexStructure& j, const Form& a) {
  require_integrable(alg, j, "delbar");
  return shifted_differential(alg, j, a, false);
}

Form dc(const LieAlgebraModel& alg, const AlmostComplexStructure& j, const Form& a) {
  require_integrable(alg, j, "dc");
  const Complex i{0.0, 1.0};
  return i * (shifted_differential(alg, j, a, false) - shifted_differential(alg, j, a, true));
}

Form j_conjugated_d(const LieAlgebraModel& alg, const AlmostComplexStructure& j, const Form& a) {
  return j_action(j, ce_differential(alg, j_action_inverse(j, a)));
}

}  // namespace stromcheck
