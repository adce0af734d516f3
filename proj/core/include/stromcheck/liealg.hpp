#pragma once

// Real Lie algebras given by structure constants, and their
// Chevalley-Eilenberg differential on invariant forms.
//
// Convention: [e_i, e_j] = sum_k c^k_ij e_k and, on 1-forms,
// d alpha(X, Y) = -alpha([X, Y]). Coframe relations are therefore stated as
// written for invariant forms, e.g. d theta_2 = theta_1 ^ theta_3. The frame
// is whichever invariant frame the structure equations describe; left and
// right invariant frames of the same group differ only by the sign of the
// constants and never by the algebra of d.

#include <Eigen/Dense>

#include <array>
#include <vector>

#include "stromcheck/exterior.hpp"

namespace stromcheck {

// A single declared constant [e_i, e_j] = value * e_k (0-based).
struct StructureConstant {
  int i;
  int j;
  int k;
  double value;
};

class LieAlgebraModel {
 public:
  // Entries for (i, j) also define (j, i) with opposite sign. Entries with
  // i == j or conflicting duplicates throw InvariantViolation("antisymmetry").
  LieAlgebraModel(int dim, std::span<const StructureConstant> constants);
  static LieAlgebraModel abelian(int dim);
  // Reconstruct constants from the differentials of the basis 1-forms.
  static LieAlgebraModel from_differentials(std::span<const Form> d_basis);
  // d theta_j for the complex coframe theta_j = e^{2j-1} + i e^{2j}; the real
  // and imaginary parts give d e^{2j-1} and d e^{2j}.
  static LieAlgebraModel from_complex_coframe(std::span<const Form> d_theta);

  int dim() const { return dim_; }
  double constant(int i, int j, int k) const { return c_[index(i, j, k)]; }
  // [x, y] for coefficient vectors.
  Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  Eigen::VectorXcd bracket(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const;
  // ad_{e_i} as a matrix: column j holds [e_i, e_j].
  Eigen::MatrixXd ad(int i) const;
  std::vector<StructureConstant> nonzero_constants() const;

  // d of a basis blade, precomputed.
  const Form& d_blade(Blade b) const { return d_blades_[b.mask()]; }

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * dim_ + i) * dim_ + j;
  }
  void build_differential_table();

  int dim_;
  std::vector<double> c_;
  std::vector<Form> d_blades_;
};

Form ce_differential(const LieAlgebraModel& alg, const Form& a);

// Max-norm of the cyclic sums [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j].
double check_jacobi(const LieAlgebraModel& alg);
// Max-norm of d(d e^k) over basis 1-forms.
double d_squared_residual(const LieAlgebraModel& alg);

struct UnimodularityReport {
  bool unimodular;
  std::vector<double> traces;  // tr(ad_{e_i})
};
UnimodularityReport is_unimodular(const LieAlgebraModel& alg, double tol = kStructureTolerance);

}  // namespace stromcheck
