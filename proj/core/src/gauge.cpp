#include "stromcheck/gauge.hpp"

#include <cmath>
#include <string>

#include "stromcheck/errors.hpp"

namespace stromcheck {

namespace {

// Lowered Christoffel symbols L(i, j, k) = g(nabla_{e_i} e_j, e_k) -> connection.
Connection from_lowered(const MetricTensor& g, const std::vector<double>& lowered, int dim) {
  std::vector<Eigen::MatrixXcd> coeffs;
  coeffs.reserve(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    Eigen::MatrixXd a(dim, dim);
    for (int j = 0; j < dim; ++j) {
      Eigen::VectorXd low(dim);
      for (int k = 0; k < dim; ++k) low[k] = lowered[static_cast<std::size_t>((i * dim + j) * dim + k)];
      a.col(j) = g.inverse() * low;
    }
    coeffs.push_back(a.cast<Complex>());
  }
  return Connection(dim, dim, std::move(coeffs), true);
}

std::vector<double> koszul(const LieAlgebraModel& alg, const MetricTensor& g) {
  const int n = alg.dim();
  const Eigen::MatrixXd& gm = g.matrix();
  // gb(i, j, k) = g([e_i, e_j], e_k)
  std::vector<double> gb(static_cast<std::size_t>(n * n * n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int m = 0; m < n; ++m) s += alg.constant(i, j, m) * gm(m, k);
        gb[static_cast<std::size_t>((i * n + j) * n + k)] = s;
      }
  auto at = [&](int i, int j, int k) { return gb[static_cast<std::size_t>((i * n + j) * n + k)]; };
  std::vector<double> low(gb.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        low[static_cast<std::size_t>((i * n + j) * n + k)] = 0.5 * (at(i, j, k) - at(j, k, i) + at(k, i, j));
  return low;
}

void require_tangent(const Connection& c, int dim, const char* op) {
  if (c.base_dim() != dim || c.rank() != dim)
    throw DimensionMismatch(std::string(op) + ": needs a tangent connection of rank " + std::to_string(dim));
}

}  // namespace

Connection::Connection(int base_dim, int rank, std::vector<Eigen::MatrixXcd> coefficients, bool tangent)
    : base_dim_(base_dim), rank_(rank), coefficients_(std::move(coefficients)), tangent_(tangent) {
  if (rank <= 0) throw DimensionMismatch("connection rank must be positive");
  if (static_cast<int>(coefficients_.size()) != base_dim)
    throw DimensionMismatch("connection needs one matrix per basis direction");
  for (const auto& m : coefficients_)
    if (m.rows() != rank || m.cols() != rank) throw DimensionMismatch("connection matrix shape differs from rank");
  if (tangent_ && rank != base_dim) throw DimensionMismatch("tangent connection rank must equal the algebra dimension");
}

Connection Connection::flat(int base_dim, int rank, bool tangent) {
  return Connection(base_dim, rank,
                    std::vector<Eigen::MatrixXcd>(static_cast<std::size_t>(base_dim), Eigen::MatrixXcd::Zero(rank, rank)),
                    tangent);
}

Eigen::MatrixXcd Connection::along(const Eigen::VectorXcd& x) const {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rank_, rank_);
  for (int i = 0; i < base_dim_; ++i)
    if (x[i] != Complex{}) out += x[i] * coefficients_[static_cast<std::size_t>(i)];
  return out;
}

Connection direct_sum(const Connection& a, const Connection& b) {
  if (a.base_dim() != b.base_dim()) throw DimensionMismatch("direct_sum: base dimensions differ");
  const int r = a.rank() + b.rank();
  std::vector<Eigen::MatrixXcd> coeffs;
  for (int i = 0; i < a.base_dim(); ++i) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(r, r);
    m.topLeftCorner(a.rank(), a.rank()) = a.along(i);
    m.bottomRightCorner(b.rank(), b.rank()) = b.along(i);
    coeffs.push_back(std::move(m));
  }
  return Connection(a.base_dim(), r, std::move(coeffs));
}

MatrixForm::MatrixForm(int base_dim, int rank)
    : base_dim_(base_dim), rank_(rank), entries_(static_cast<std::size_t>(rank * rank), Form(base_dim)) {}

MatrixForm MatrixForm::from_connection(const Connection& c) {
  MatrixForm out(c.base_dim(), c.rank());
  for (int i = 0; i < c.base_dim(); ++i) {
    const auto& m = c.along(i);
    for (int a = 0; a < c.rank(); ++a)
      for (int b = 0; b < c.rank(); ++b)
        if (m(a, b) != Complex{}) out.at(a, b).accumulate(Blade(1U << i), m(a, b));
  }
  for (int a = 0; a < c.rank(); ++a)
    for (int b = 0; b < c.rank(); ++b) out.at(a, b).prune();
  return out;
}

Eigen::MatrixXcd MatrixForm::evaluate(int i, int j) const {
  Eigen::MatrixXcd m(rank_, rank_);
  const int vectors[2] = {i, j};
  for (int a = 0; a < rank_; ++a)
    for (int b = 0; b < rank_; ++b) m(a, b) = at(a, b).evaluate(vectors);
  return m;
}

double MatrixForm::sup_norm() const {
  double m = 0.0;
  for (const auto& f : entries_) m = std::max(m, f.sup_norm());
  return m;
}

MatrixForm wedge(const MatrixForm& a, const MatrixForm& b) {
  if (a.rank() != b.rank() || a.base_dim() != b.base_dim()) throw DimensionMismatch("matrix wedge: shapes differ");
  MatrixForm out(a.base_dim(), a.rank());
  for (int i = 0; i < a.rank(); ++i)
    for (int j = 0; j < a.rank(); ++j) {
      Form& target = out.at(i, j);
      for (int k = 0; k < a.rank(); ++k) {
        if (a.at(i, k).is_zero() || b.at(k, j).is_zero()) continue;
        const Form product = wedge(a.at(i, k), b.at(k, j));
        for (const auto& [bl, c] : product.terms()) target.accumulate(bl, c);
      }
      target.prune();
    }
  return out;
}

Pairing::Pairing(int rank, std::vector<Block> blocks) : rank_(rank), blocks_(std::move(blocks)) {
  std::vector<bool> used(static_cast<std::size_t>(rank), false);
  if (blocks_.empty()) throw InvariantViolation("pairing nondegeneracy", "no blocks declared");
  for (const auto& [offset, size, weight] : blocks_) {
    if (offset < 0 || size <= 0 || offset + size > rank) throw InvariantViolation("pairing blocks", "block outside rank");
    if (weight == 0.0 || !std::isfinite(weight)) throw InvariantViolation("pairing nondegeneracy", "zero block weight");
    for (int i = offset; i < offset + size; ++i) {
      if (used[static_cast<std::size_t>(i)]) throw InvariantViolation("pairing blocks", "overlapping blocks");
      used[static_cast<std::size_t>(i)] = true;
    }
  }
}

Pairing Pairing::trace(int rank, double weight) { return Pairing(rank, {{0, rank, weight}}); }

Pairing Pairing::scaled(double s) const {
  auto blocks = blocks_;
  for (auto& b : blocks) b.weight *= s;
  return Pairing(rank_, std::move(blocks));
}

Complex Pairing::operator()(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) const {
  if (a.rows() != rank_ || b.rows() != rank_) throw DimensionMismatch("pairing: matrix rank");
  Complex total{};
  for (const auto& [offset, size, weight] : blocks_)
    total += weight * (a.block(offset, offset, size, size) * b.block(offset, offset, size, size)).trace();
  return total;
}

Form Pairing::operator()(const MatrixForm& a, const MatrixForm& b) const {
  if (a.rank() != rank_ || b.rank() != rank_) throw DimensionMismatch("pairing: matrix form rank");
  Form out(a.base_dim());
  for (const auto& [offset, size, weight] : blocks_)
    for (int i = offset; i < offset + size; ++i)
      for (int k = offset; k < offset + size; ++k) {
        if (a.at(i, k).is_zero() || b.at(k, i).is_zero()) continue;
        const Form product = wedge(a.at(i, k), b.at(k, i));
        for (const auto& [bl, c] : product.terms()) out.accumulate(bl, weight * c);
      }
  out.prune();
  return out;
}

double Pairing::off_block(const Eigen::MatrixXcd& m) const {
  Eigen::MatrixXd mask = Eigen::MatrixXd::Ones(rank_, rank_);
  for (const auto& [offset, size, weight] : blocks_) mask.block(offset, offset, size, size).setZero();
  return (m.cwiseAbs().array() * mask.array()).maxCoeff();
}

Connection levi_civita(const LieAlgebraModel& alg, const MetricTensor& g) {
  if (alg.dim() != g.dim()) throw DimensionMismatch("levi_civita: dimensions");
  return from_lowered(g, koszul(alg, g), alg.dim());
}

Connection levi_civita(const HermitianData& h) { return levi_civita(h.alg(), h.g()); }

Connection bismut(const HermitianData& h) {
  const int n = h.dim();
  const Form torsion = dc(h.alg(), h.j(), kahler_form(h));
  auto low = koszul(h.alg(), h.g());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const int v[3] = {i, j, k};
        low[static_cast<std::size_t>((i * n + j) * n + k)] -= 0.5 * torsion.evaluate(v).real();
      }
  return from_lowered(h.g(), low, n);
}

Connection chern(const HermitianData& h) {
  if (!is_integrable(h.alg(), h.j()))
    throw NonIntegrable("chern: Nijenhuis residual exceeds tolerance; no holomorphic structure on the tangent bundle");
  const int n = h.dim();
  const Form d_omega = ce_differential(h.alg(), kahler_form(h));
  const Eigen::MatrixXd& jm = h.j().matrix();
  auto low = koszul(h.alg(), h.g());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int m = 0; m < n; ++m) {
          if (jm(m, i) == 0.0) continue;
          const int v[3] = {m, j, k};
          s += jm(m, i) * d_omega.evaluate(v).real();
        }
        // g(nabla^C_X Y, Z) = g(nabla^g_X Y, Z) - (1/2) d omega(JX, Y, Z)
        low[static_cast<std::size_t>((i * n + j) * n + k)] -= 0.5 * s;
      }
  return from_lowered(h.g(), low, n);
}

CurvatureForm curvature(const LieAlgebraModel& alg, const Connection& c) {
  if (alg.dim() != c.base_dim()) throw DimensionMismatch("curvature: algebra dimension");
  const int n = alg.dim();
  const int r = c.rank();
  CurvatureForm f(n, r);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Eigen::MatrixXcd rij = c.along(i) * c.along(j) - c.along(j) * c.along(i);
      for (int k = 0; k < n; ++k) {
        const double ck = alg.constant(i, j, k);
        if (ck != 0.0) rij -= ck * c.along(k);
      }
      const Blade b((1U << i) | (1U << j));
      for (int a = 0; a < r; ++a)
        for (int bb = 0; bb < r; ++bb)
          if (rij(a, bb) != Complex{}) f.at(a, bb).accumulate(b, rij(a, bb));
    }
  for (int a = 0; a < r; ++a)
    for (int bb = 0; bb < r; ++bb) f.at(a, bb).prune();
  return f;
}

double curvature_bianchi_residual(const LieAlgebraModel& alg, const Connection& c) {
  const CurvatureForm f = curvature(alg, c);
  const MatrixForm a = MatrixForm::from_connection(c);
  const MatrixForm af = wedge(a, f);
  const MatrixForm fa = wedge(f, a);
  double worst = 0.0;
  for (int i = 0; i < c.rank(); ++i)
    for (int j = 0; j < c.rank(); ++j)
      worst = std::max(worst, (ce_differential(alg, f.at(i, j)) + af.at(i, j) - fa.at(i, j)).sup_norm());
  return worst;
}

double torsion_residual(const LieAlgebraModel& alg, const Connection& c) {
  require_tangent(c, alg.dim(), "torsion_residual");
  const int n = alg.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Eigen::VectorXcd t = c.along(i).col(j) - c.along(j).col(i);
      for (int k = 0; k < n; ++k) t[k] -= alg.constant(i, j, k);
      worst = std::max(worst, t.cwiseAbs().maxCoeff());
    }
  return worst;
}

Form torsion_form(const LieAlgebraModel& alg, const MetricTensor& g, const Connection& c) {
  require_tangent(c, alg.dim(), "torsion_form");
  const int n = alg.dim();
  Form out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Eigen::VectorXcd t = c.along(i).col(j) - c.along(j).col(i);
      for (int k = 0; k < n; ++k) t[k] -= alg.constant(i, j, k);
      const Eigen::VectorXcd lowered = g.matrix().cast<Complex>() * t;
      for (int k = j + 1; k < n; ++k) out.accumulate(Blade((1U << i) | (1U << j) | (1U << k)), lowered[k]);
    }
  out.prune();
  return out;
}

double torsion_skew_residual(const LieAlgebraModel& alg, const MetricTensor& g, const Connection& c) {
  require_tangent(c, alg.dim(), "torsion_skew_residual");
  const int n = alg.dim();
  const Form skew = torsion_form(alg, g, c);
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Eigen::VectorXcd t = c.along(i).col(j) - c.along(j).col(i);
      for (int k = 0; k < n; ++k) t[k] -= alg.constant(i, j, k);
      const Eigen::VectorXcd lowered = g.matrix().cast<Complex>() * t;
      for (int k = 0; k < n; ++k) {
        const int v[3] = {i, j, k};
        worst = std::max(worst, std::abs(lowered[k] - skew.evaluate(v)));
      }
    }
  return worst;
}

double metric_residual(const Connection& c, const MetricTensor& g) {
  if (c.rank() != g.dim()) throw DimensionMismatch("metric_residual: rank");
  const Eigen::MatrixXcd gm = g.matrix().cast<Complex>();
  double worst = 0.0;
  for (const auto& a : c.coefficients()) worst = std::max(worst, (a.transpose() * gm + gm * a).cwiseAbs().maxCoeff());
  return worst;
}

double complex_residual(const Connection& c, const AlmostComplexStructure& j) {
  if (c.rank() != j.dim()) throw DimensionMismatch("complex_residual: rank");
  const Eigen::MatrixXcd jm = j.matrix().cast<Complex>();
  double worst = 0.0;
  for (const auto& a : c.coefficients()) worst = std::max(worst, (a * jm - jm * a).cwiseAbs().maxCoeff());
  return worst;
}

double unitarity_residual(const Connection& c, const Eigen::MatrixXcd& fiber_metric) {
  if (fiber_metric.rows() != c.rank()) throw DimensionMismatch("unitarity_residual: fibre metric rank");
  double worst = 0.0;
  for (const auto& a : c.coefficients())
    worst = std::max(worst, (a.adjoint() * fiber_metric + fiber_metric * a).cwiseAbs().maxCoeff());
  return worst;
}

Eigen::MatrixXcd contracted_curvature(const HermitianData& h, const CurvatureForm& f) {
  const Form omega = kahler_form(h);
  Eigen::MatrixXcd m(f.rank(), f.rank());
  for (int a = 0; a < f.rank(); ++a)
    for (int b = 0; b < f.rank(); ++b) m(a, b) = lambda_contract(omega, f.at(a, b)).coefficient(Blade(0));
  return m;
}

HymResidual hym_residual(const HermitianData& h, const CurvatureForm& f, double lambda) {
  if (f.base_dim() != h.dim()) throw DimensionMismatch("hym_residual: curvature over a different algebra");
  const Complex i{0.0, 1.0};
  HymResidual r;
  const Eigen::MatrixXcd einstein =
      i * contracted_curvature(h, f) - lambda * Eigen::MatrixXcd::Identity(f.rank(), f.rank());
  r.einstein = einstein.cwiseAbs().maxCoeff();
  for (int a = 0; a < f.rank(); ++a)
    for (int b = 0; b < f.rank(); ++b) r.f02 = std::max(r.f02, pq_project(h.j(), f.at(a, b), 0, 2).sup_norm());
  return r;
}

Form c_square(const Pairing& c, const CurvatureForm& f) {
  if (c.rank() != f.rank()) throw DimensionMismatch("c_square: pairing rank differs from curvature rank");
  return c(f, f);
}

Form chern_simons(const LieAlgebraModel& alg, const Pairing& c, const Connection& theta) {
  if (c.rank() != theta.rank()) throw DimensionMismatch("chern_simons: pairing rank differs from connection rank");
  for (const auto& m : theta.coefficients())
    if (c.off_block(m) > kPruneThreshold)
      throw DimensionMismatch("chern_simons: connection not valued in the pairing's block subalgebra");
  const MatrixForm a = MatrixForm::from_connection(theta);
  const CurvatureForm f = curvature(alg, theta);
  // [theta, theta] = 2 theta ^ theta for matrix-valued 1-forms.
  const MatrixForm aa = wedge(a, a);
  Form cs = c(f, a);
  cs -= (1.0 / 3.0) * c(a, aa);
  return cs;
}

double moment_pairing(const HermitianData& h, const CurvatureForm& f, const Eigen::MatrixXcd& zeta, double lambda) {
  if (zeta.rows() != f.rank() || zeta.cols() != f.rank()) throw DimensionMismatch("moment_pairing: zeta shape");
  const double skew = (zeta.adjoint() + zeta).cwiseAbs().maxCoeff();
  if (skew > kStructureTolerance) throw InvariantViolation("zeta skew-hermitian", "|zeta^* + zeta| = " + std::to_string(skew));
  const Complex i{0.0, 1.0};
  const Eigen::MatrixXcd m = contracted_curvature(h, f) + i * lambda * Eigen::MatrixXcd::Identity(f.rank(), f.rank());
  return -(zeta * m).trace().real();
}

}  // namespace stromcheck
