#pragma once

// Almost complex structures on the algebra, bidegree projections, and the
// operators del, delbar and d^c = i(delbar - del).
//
// J acts on basis vectors by J e_i = sum_k J(k, i) e_k. The standard
// structure has J e_{2j-1} = e_{2j}, so that theta_j = e^{2j-1} + i e^{2j}
// is of type (1,0). A k-form of type (p,q) is an eigenvector of
// alpha -> (-1)^k alpha(J., ..., J.) with eigenvalue i^(q-p).

#include <Eigen/Dense>

#include "stromcheck/exterior.hpp"
#include "stromcheck/liealg.hpp"

namespace stromcheck {

class AlmostComplexStructure {
 public:
  // Throws InvariantViolation("J^2 = -Id") unless exact to kExactnessTolerance.
  static AlmostComplexStructure from_matrix(const Eigen::MatrixXd& j);
  static AlmostComplexStructure standard(int dim);

  int dim() const { return static_cast<int>(j_.rows()); }
  const Eigen::MatrixXd& matrix() const { return j_; }
  // Projector onto (1,0)-forms acting on coefficient rows (alpha -> alpha * P).
  const Eigen::MatrixXcd& holomorphic_projector() const { return p10_; }

 private:
  explicit AlmostComplexStructure(Eigen::MatrixXd j);
  Eigen::MatrixXd j_;
  Eigen::MatrixXcd p10_;
};

// alpha -> alpha(J., ..., J.).
Form j_pullback(const AlmostComplexStructure& j, const Form& a);
// The eigen-endomorphism alpha -> (-1)^k alpha(J., ..., J.), degree by degree.
Form j_action(const AlmostComplexStructure& j, const Form& a);
Form j_action_inverse(const AlmostComplexStructure& j, const Form& a);

// (p,q)-component of a homogeneous form of degree p + q; throws DimensionMismatch otherwise.
Form pq_project(const AlmostComplexStructure& j, const Form& a, int p, int q);

// Max-norm over basis pairs of N(X,Y) = [JX,JY] - [X,Y] - J[JX,Y] - J[X,JY].
double nijenhuis(const LieAlgebraModel& alg, const AlmostComplexStructure& j);
// Max-norm of (d alpha)^{0,2} over a basis of (1,0)-forms; zero iff integrable.
double bidegree_leakage(const LieAlgebraModel& alg, const AlmostComplexStructure& j);
bool is_integrable(const LieAlgebraModel& alg, const AlmostComplexStructure& j, double tol = kStructureTolerance);

// The following require an integrable J and throw NonIntegrable otherwise.
Form del(const LieAlgebraModel& alg, const AlmostComplexStructure& j, const Form& a);
Form delbar(const LieAlgebraModel& alg, const AlmostComplexStructure& j, const Form& a);
Form dc(const LieAlgebraModel& alg, const AlmostComplexStructure& j, const Form& a);
// J d J^{-1} built from the eigen-endomorphism; agrees with dc on every degree.
Form j_conjugated_d(const LieAlgebraModel& alg, const AlmostComplexStructure& j, const Form& a);

}  // namespace stromcheck
