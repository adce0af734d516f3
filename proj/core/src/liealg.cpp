#include "stromcheck/liealg.hpp"

#include <cmath>
#include <string>

#include "stromcheck/errors.hpp"

namespace stromcheck {

LieAlgebraModel::LieAlgebraModel(int dim, std::span<const StructureConstant> constants)
    : dim_(dim), c_(static_cast<std::size_t>(dim) * dim * dim, 0.0) {
  if (dim <= 0 || dim > kMaxDimension) throw DimensionMismatch("unsupported algebra dimension " + std::to_string(dim));
  std::vector<bool> set(c_.size(), false);
  for (const auto& [i, j, k, v] : constants) {
    if (i < 0 || j < 0 || k < 0 || i >= dim || j >= dim || k >= dim)
      throw InvariantViolation("antisymmetry", "structure constant index out of range");
    if (i == j) {
      if (v != 0.0) throw InvariantViolation("antisymmetry", "[e_i, e_i] must vanish");
      continue;
    }
    const auto fwd = index(i, j, k);
    const auto bwd = index(j, i, k);
    if (set[fwd] && c_[fwd] != v)
      throw InvariantViolation("antisymmetry", "conflicting constants for [e_" + std::to_string(i + 1) + ", e_" +
                                                   std::to_string(j + 1) + "]");
    c_[fwd] = v;
    c_[bwd] = -v;
    set[fwd] = set[bwd] = true;
  }
  build_differential_table();
}

LieAlgebraModel LieAlgebraModel::abelian(int dim) { return LieAlgebraModel(dim, {}); }

LieAlgebraModel LieAlgebraModel::from_differentials(std::span<const Form> d_basis) {
  const int dim = static_cast<int>(d_basis.size());
  std::vector<StructureConstant> constants;
  for (int k = 0; k < dim; ++k) {
    const Form& dk = d_basis[static_cast<std::size_t>(k)];
    if (dk.dim() != dim) throw DimensionMismatch("coframe differential dimension");
    for (const auto& [b, c] : dk.terms()) {
      if (b.degree() != 2) throw InvariantViolation("coframe differential", "d of a 1-form must be a 2-form");
      if (std::abs(c.imag()) > kPruneThreshold)
        throw InvariantViolation("coframe differential", "real basis differentials must be real");
      const auto idx = b.indices();
      // d e^k(e_i, e_j) = -c^k_ij.
      constants.push_back({idx[0], idx[1], k, -c.real()});
    }
  }
  return LieAlgebraModel(dim, constants);
}

LieAlgebraModel LieAlgebraModel::from_complex_coframe(std::span<const Form> d_theta) {
  std::vector<Form> d_basis;
  for (const Form& d : d_theta) {
    if (d.dim() != 2 * static_cast<int>(d_theta.size())) throw DimensionMismatch("coframe differential dimension");
    const Complex minus_i{0.0, -1.0};
    d_basis.push_back(d.real_part());
    d_basis.push_back((minus_i * d).real_part());
  }
  return from_differentials(d_basis);
}

Eigen::VectorXd LieAlgebraModel::bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < dim_; ++j) {
      if (y[j] == 0.0) continue;
      for (int k = 0; k < dim_; ++k) out[k] += x[i] * y[j] * constant(i, j, k);
    }
  }
  return out;
}

Eigen::VectorXcd LieAlgebraModel::bracket(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x[i] == Complex{}) continue;
    for (int j = 0; j < dim_; ++j) {
      if (y[j] == Complex{}) continue;
      for (int k = 0; k < dim_; ++k) out[k] += x[i] * y[j] * constant(i, j, k);
    }
  }
  return out;
}

Eigen::MatrixXd LieAlgebraModel::ad(int i) const {
  Eigen::MatrixXd m(dim_, dim_);
  for (int j = 0; j < dim_; ++j)
    for (int k = 0; k < dim_; ++k) m(k, j) = constant(i, j, k);
  return m;
}

std::vector<StructureConstant> LieAlgebraModel::nonzero_constants() const {
  std::vector<StructureConstant> out;
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        if (constant(i, j, k) != 0.0) out.push_back({i, j, k, constant(i, j, k)});
  return out;
}

void LieAlgebraModel::build_differential_table() {
  const std::uint32_t count = 1U << dim_;
  d_blades_.assign(count, Form(dim_));
  // Degree-1 blades from the constants.
  for (int k = 0; k < dim_; ++k) {
    Form dk(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j) {
        const double c = constant(i, j, k);
        if (c != 0.0) dk.accumulate(Blade((1U << i) | (1U << j)), -c);
      }
    dk.prune(0.0);
    d_blades_[1U << k] = std::move(dk);
  }
  // Higher blades by the Leibniz rule, peeling off the lowest index:
  // d(e^i ^ rest) = de^i ^ rest - e^i ^ d(rest). Masks increase, so rest is ready.
  for (std::uint32_t mask = 1; mask < count; ++mask) {
    if ((mask & (mask - 1)) == 0) continue;
    const std::uint32_t low = mask & (~mask + 1);
    const std::uint32_t rest = mask & ~low;
    Form first(dim_);
    first.accumulate(Blade(low), 1.0);
    Form rest_form(dim_);
    rest_form.accumulate(Blade(rest), 1.0);
    Form d = wedge(d_blades_[low], rest_form) - wedge(first, d_blades_[rest]);
    d_blades_[mask] = std::move(d);
  }
}

Form ce_differential(const LieAlgebraModel& alg, const Form& a) {
  if (alg.dim() != a.dim()) throw DimensionMismatch("ce_differential: algebra and form dimensions differ");
  Form out(a.dim());
  for (const auto& [b, c] : a.terms())
    for (const auto& [db, dc] : alg.d_blade(b).terms()) out.accumulate(db, c * dc);
  out.prune();
  return out;
}

double check_jacobi(const LieAlgebraModel& alg) {
  const int n = alg.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int m = 0; m < n; ++m) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) {
            s += alg.constant(i, j, l) * alg.constant(l, k, m);
            s += alg.constant(j, k, l) * alg.constant(l, i, m);
            s += alg.constant(k, i, l) * alg.constant(l, j, m);
          }
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

double d_squared_residual(const LieAlgebraModel& alg) {
  double worst = 0.0;
  for (int k = 0; k < alg.dim(); ++k)
    worst = std::max(worst, ce_differential(alg, alg.d_blade(Blade(1U << k))).sup_norm());
  return worst;
}

UnimodularityReport is_unimodular(const LieAlgebraModel& alg, double tol) {
  UnimodularityReport report{true, {}};
  for (int i = 0; i < alg.dim(); ++i) {
    const double tr = alg.ad(i).trace();
    report.traces.push_back(tr);
    if (std::abs(tr) > tol) report.unimodular = false;
  }
  return report;
}

}  // namespace stromcheck
