#pragma once

// Invariant connections, their curvature, and the gauge-theoretic quantities
// built from them: Hermite-Yang-Mills residuals, the Pontryagin-type 4-form
// c(F ^ F), Chern-Simons forms and the moment-map pairing.
//
// A connection of rank r is given by matrices A_i = A(e_i), acting on the
// fibre by nabla_{e_i} s = A_i s. For tangent connections the fibre is the
// algebra itself: nabla_{e_i} e_j = sum_k A_i(k, j) e_k.
//
// Curvature is R(X,Y) = [nabla_X, nabla_Y] - nabla_{[X,Y]}, i.e.
// F = dA + A ^ A, stored as the matrix of 2-forms with F(e_i, e_j) = R_ij.
//
// Sign note: the Chern-Simons transgression here satisfies d CS = +c(F ^ F)
// for the pairing c supplied. Texts that write d CS(A) = -tr F ^ F use the
// pairing -tr; that sign lives entirely in the Pairing weights.

#include <Eigen/Dense>

#include <vector>

#include "stromcheck/exterior.hpp"
#include "stromcheck/hermitian.hpp"
#include "stromcheck/liealg.hpp"

namespace stromcheck {

class Connection {
 public:
  Connection(int base_dim, int rank, std::vector<Eigen::MatrixXcd> coefficients, bool tangent = false);
  static Connection flat(int base_dim, int rank, bool tangent = false);

  int base_dim() const { return base_dim_; }
  int rank() const { return rank_; }
  bool tangent() const { return tangent_; }
  const Eigen::MatrixXcd& along(int i) const { return coefficients_[static_cast<std::size_t>(i)]; }
  Eigen::MatrixXcd along(const Eigen::VectorXcd& x) const;
  const std::vector<Eigen::MatrixXcd>& coefficients() const { return coefficients_; }

 private:
  int base_dim_;
  int rank_;
  std::vector<Eigen::MatrixXcd> coefficients_;
  bool tangent_;
};

// Block-diagonal sum, e.g. theta = nabla x A on the fibred product.
Connection direct_sum(const Connection& a, const Connection& b);

// r x r matrix whose entries are forms on the algebra.
class MatrixForm {
 public:
  MatrixForm(int base_dim, int rank);
  static MatrixForm from_connection(const Connection& c);

  int base_dim() const { return base_dim_; }
  int rank() const { return rank_; }
  Form& at(int a, int b) { return entries_[static_cast<std::size_t>(a * rank_ + b)]; }
  const Form& at(int a, int b) const { return entries_[static_cast<std::size_t>(a * rank_ + b)]; }
  // Value F(e_i, e_j) of a matrix of 2-forms.
  Eigen::MatrixXcd evaluate(int i, int j) const;
  double sup_norm() const;

 private:
  int base_dim_;
  int rank_;
  std::vector<Form> entries_;
};

using CurvatureForm = MatrixForm;

// Matrix product with wedge on entries.
MatrixForm wedge(const MatrixForm& a, const MatrixForm& b);

// Symmetric bilinear form on block-diagonal r x r matrices:
// c(a, b) = sum over blocks of weight * tr(a_block b_block).
class Pairing {
 public:
  struct Block {
    int offset;
    int size;
    double weight;
  };

  // Blocks must be disjoint, inside [0, rank), with nonzero weights
  // (nondegeneracy); throws InvariantViolation otherwise.
  Pairing(int rank, std::vector<Block> blocks);
  static Pairing trace(int rank, double weight = 1.0);

  int rank() const { return rank_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  Pairing scaled(double s) const;

  Complex operator()(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) const;
  // c(a ^ b) for matrices of forms.
  Form operator()(const MatrixForm& a, const MatrixForm& b) const;
  // Largest entry of m outside the declared blocks.
  double off_block(const Eigen::MatrixXcd& m) const;

 private:
  int rank_;
  std::vector<Block> blocks_;
};

// Koszul formula on invariant fields.
Connection levi_civita(const LieAlgebraModel& alg, const MetricTensor& g);
Connection levi_civita(const HermitianData& h);
// nabla^g - (1/2) g^{-1} d^c omega; requires integrable J.
Connection bismut(const HermitianData& h);
// Hermitian connection whose (0,1)-part is delbar; requires integrable J.
Connection chern(const HermitianData& h);

CurvatureForm curvature(const LieAlgebraModel& alg, const Connection& c);

// Matrix of 3-forms d_nabla F = dF + A ^ F - F ^ A.
double curvature_bianchi_residual(const LieAlgebraModel& alg, const Connection& c);
// Max |nabla_X Y - nabla_Y X - [X, Y]| over basis pairs (tangent connections).
double torsion_residual(const LieAlgebraModel& alg, const Connection& c);
// The 3-form g(T(X, Y), Z) and its deviation from total skew-symmetry.
Form torsion_form(const LieAlgebraModel& alg, const MetricTensor& g, const Connection& c);
double torsion_skew_residual(const LieAlgebraModel& alg, const MetricTensor& g, const Connection& c);
// Max |A_i^T g + g A_i|: zero iff nabla g = 0.
double metric_residual(const Connection& c, const MetricTensor& g);
// Max |A_i J - J A_i|: zero iff nabla J = 0.
double complex_residual(const Connection& c, const AlmostComplexStructure& j);
// Max |A_i^* h + h A_i| for a hermitian fibre metric h.
double unitarity_residual(const Connection& c, const Eigen::MatrixXcd& fiber_metric);

struct HymResidual {
  double einstein = 0.0;  // |i Lambda F - lambda Id|
  double f02 = 0.0;       // |F^{0,2}|
};
HymResidual hym_residual(const HermitianData& h, const CurvatureForm& f, double lambda);

// Matrix of 0-forms Lambda_omega F, as a plain matrix.
Eigen::MatrixXcd contracted_curvature(const HermitianData& h, const CurvatureForm& f);

Form c_square(const Pairing& c, const CurvatureForm& f);

// -(1/6) c(theta ^ [theta, theta]) + c(F ^ theta).
Form chern_simons(const LieAlgebraModel& alg, const Pairing& c, const Connection& theta);

// -tr(zeta (Lambda F + i lambda Id)) per unit volume; zeta must be skew-hermitian.
double moment_pairing(const HermitianData& h, const CurvatureForm& f, const Eigen::MatrixXcd& zeta, double lambda);

}  // namespace stromcheck
