#pragma once

// Complexified exterior algebra over a fixed real basis e^1..e^m (m = 2n).
//
// Indices are 0-based in code and 1-based in model files and reports.
// A k-form is stored as coefficients on the basis blades e^{i1..ik} with
// i1 < ... < ik; its value on basis vectors is the determinant convention
// (e^1 ^ e^2)(e_1, e_2) = 1.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "stromcheck/tolerances.hpp"

namespace stromcheck {

using Complex = std::complex<double>;

inline constexpr int kMaxDimension = 16;

// A strictly increasing set of basis indices, packed as a bit mask.
class Blade {
 public:
  constexpr Blade() = default;
  constexpr explicit Blade(std::uint32_t mask) : mask_(mask) {}

  // Indices must be distinct; order is irrelevant (the set is stored).
  static Blade from_indices(std::span<const int> indices);

  constexpr std::uint32_t mask() const { return mask_; }
  int degree() const;
  bool contains(int i) const { return (mask_ >> i) & 1U; }
  std::vector<int> indices() const;

  // Lexicographic order on the increasing index tuples.
  friend bool operator<(Blade a, Blade b);
  friend constexpr bool operator==(Blade a, Blade b) { return a.mask_ == b.mask_; }

 private:
  std::uint32_t mask_ = 0;
};

// Sign of e^A ^ e^B relative to e^{A u B}; 0 when A and B intersect.
// Every reordering sign in the library goes through this routine.
int merge_sign(std::uint32_t a, std::uint32_t b);

// Sign of the permutation sorting `sequence`; 0 on a repeated index.
int permutation_sign(std::span<const int> sequence);

class Form {
 public:
  using Terms = std::map<Blade, Complex>;

  explicit Form(int dim);

  static Form scalar(int dim, Complex value);
  // e^{i1} ^ ... ^ e^{ik} for 1-based indices in any order (sign applied).
  static Form basis(int dim, std::initializer_list<int> one_based);
  static Form one_form(int dim, std::span<const Complex> coefficients);
  static Form from_terms(int dim, std::span<const std::pair<Blade, Complex>> terms,
                         double threshold = kPruneThreshold);

  int dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  Complex coefficient(Blade b) const;
  // alpha(e_{i1}, ..., e_{ik}) for arbitrary 0-based indices.
  Complex evaluate(std::span<const int> vectors) const;

  // Degree-k component.
  Form homogeneous(int k) const;
  // The unique degree of a nonzero homogeneous form.
  std::optional<int> degree() const;
  bool is_zero() const { return terms_.empty(); }
  double sup_norm() const;
  bool is_real(double tol = kPruneThreshold) const;

  Form conjugate() const;
  Form real_part() const;
  Form pruned(double threshold) const;

  Form& operator+=(const Form& other);
  Form& operator-=(const Form& other);
  Form& operator*=(Complex s);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Complex s, Form a) { return a *= s; }
  friend Form operator*(Form a, Complex s) { return a *= s; }
  friend Form operator-(Form a) { return a *= -1.0; }

  // Accumulates without pruning; call prune() once the form is complete.
  void accumulate(Blade b, Complex value);
  void prune(double threshold = kPruneThreshold);

 private:
  int dim_;
  Terms terms_;
};

// theta_j = e^{2j+1} + i e^{2j+2} (0-based j), optionally conjugated.
Form complex_coframe(int dim, int j, bool conjugate = false);

Form wedge(const Form& a, const Form& b);
Form wedge_power(const Form& a, int k);

// Contraction with the vector sum_i v[i] e_i in the first slot.
Form interior(std::span<const Complex> v, const Form& a);
Form interior_basis(int i, const Form& a);

// Pullback by the linear map with e^a -> sum_i m(a, i) e^i on 1-forms.
Form pullback(const Eigen::MatrixXcd& m, const Form& a);

// Antisymmetric component matrix w_ij = omega(e_i, e_j) of the degree-2 part.
Eigen::MatrixXcd two_form_matrix(const Form& omega);
Form two_form_from_matrix(const Eigen::MatrixXcd& w);

class MetricTensor {
 public:
  // Symmetric positive definite; throws InvariantViolation otherwise.
  static MetricTensor from_matrix(const Eigen::MatrixXd& g);
  static MetricTensor identity(int dim);

  int dim() const { return static_cast<int>(g_.rows()); }
  const Eigen::MatrixXd& matrix() const { return g_; }
  const Eigen::MatrixXd& inverse() const { return inverse_; }
  double sqrt_det() const { return sqrt_det_; }
  MetricTensor scaled(double c) const;

 private:
  MetricTensor(Eigen::MatrixXd g, Eigen::MatrixXd inverse, double sqrt_det)
      : g_(std::move(g)), inverse_(std::move(inverse)), sqrt_det_(sqrt_det) {}
  Eigen::MatrixXd g_;
  Eigen::MatrixXd inverse_;
  double sqrt_det_;
};

// Complex-bilinear pointwise pairing induced by g on forms of equal degree.
Complex metric_pairing(const MetricTensor& g, const Form& a, const Form& b);
// Hermitian version <a, conj(b)>.
Complex hermitian_product(const MetricTensor& g, const Form& a, const Form& b);

// sqrt(det g) e^1 ^ ... ^ e^m with the orientation e^1 ^ ... ^ e^m.
Form volume_form(const MetricTensor& g);
// Riemannian Hodge star, characterized by a ^ *b = <a, b>_g vol_g.
Form hodge_star(const MetricTensor& g, const Form& a);

// Contraction with the bivector dual to omega, normalized so that
// lambda_contract(omega, omega) equals half the rank of omega.
// On 4-forms this gives, e.g., e^{1234} -> e^{12} + e^{34} for the standard
// omega = e^{12} + e^{34} + e^{56} (unit constant).
Form lambda_contract(const Form& omega, const Form& a);

}  // namespace stromcheck
