#pragma once

// Shared fixtures for the test suites: the named example models built
// directly from the core API, seeded random generators, and small
// brute-force oracles that avoid the library code paths under test.

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

#include "stromcheck/courant.hpp"
#include "stromcheck/strominger.hpp"

namespace stromcheck::testing {

using Rng = std::mt19937_64;

inline Form theta(int dim, int j) { return complex_coframe(dim, j); }
inline Form theta_bar(int dim, int j) { return complex_coframe(dim, j, true); }

// (1,0)-frame theta_j = t sigma_j with d sigma_1 = sigma_2 ^ sigma_3 and cyclic.
inline LieAlgebraModel sl2c_algebra(double t) {
  const std::vector<Form> d = {(1.0 / t) * wedge(theta(6, 1), theta(6, 2)),
                               (-1.0 / t) * wedge(theta(6, 0), theta(6, 2)),
                               (1.0 / t) * wedge(theta(6, 0), theta(6, 1))};
  return LieAlgebraModel::from_complex_coframe(d);
}

inline Form standard_volume(int dim) {
  Form omega = theta(dim, 0);
  for (int j = 1; j < dim / 2; ++j) omega = wedge(omega, theta(dim, j));
  return omega;
}

inline HermitianData sl2c_hermitian(double t) {
  return HermitianData(sl2c_algebra(t), AlmostComplexStructure::standard(6), MetricTensor::identity(6),
                       standard_volume(6));
}

inline StromingerModel sl2c_model(double t, std::optional<double> alpha) {
  const HermitianData h = sl2c_hermitian(t);
  return StromingerModel(h, bismut(h), Connection::flat(6, 1), alpha);
}

// d theta_2 = theta_1 ^ theta_3.
inline LieAlgebraModel iwasawa_algebra() {
  const std::vector<Form> d = {Form(6), wedge(theta(6, 0), theta(6, 2)), Form(6)};
  return LieAlgebraModel::from_complex_coframe(d);
}

// Metric 2 Id, so omega = i sum theta_j ^ conj(theta_j).
inline HermitianData iwasawa_hermitian(double scale = 2.0) {
  return HermitianData(iwasawa_algebra(), AlmostComplexStructure::standard(6), MetricTensor::identity(6).scaled(scale),
                       standard_volume(6));
}

// su(2) + R with e^1 along R: d e^2 = e^34, d e^3 = e^42, d e^4 = e^23.
inline LieAlgebraModel hopf_algebra() {
  const std::vector<Form> d = {Form(4), Form::basis(4, {3, 4}), Form::basis(4, {4, 2}), Form::basis(4, {2, 3})};
  return LieAlgebraModel::from_differentials(d);
}

inline HermitianData hopf_hermitian() {
  return HermitianData(hopf_algebra(), AlmostComplexStructure::standard(4), MetricTensor::identity(4),
                       standard_volume(4));
}

inline HermitianData abelian_hermitian(int dim = 6) {
  return HermitianData(LieAlgebraModel::abelian(dim), AlmostComplexStructure::standard(dim),
                       MetricTensor::identity(dim), standard_volume(dim));
}

inline double normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }
inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
inline Complex complex_normal(Rng& rng) { return {normal(rng), normal(rng)}; }

inline Eigen::MatrixXd random_real(Rng& rng, int rows, int cols) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = normal(rng);
  return m;
}

inline Eigen::MatrixXcd random_complex(Rng& rng, int rows, int cols) {
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = complex_normal(rng);
  return m;
}

inline Eigen::MatrixXcd random_skew_hermitian(Rng& rng, int r) {
  const Eigen::MatrixXcd m = random_complex(rng, r, r);
  return 0.5 * (m - m.adjoint());
}

inline Form random_form(Rng& rng, int dim, int degree, bool real = false) {
  Form out(dim);
  for (std::uint32_t mask = 0; mask < (1U << dim); ++mask) {
    const Blade b(mask);
    if (b.degree() != degree) continue;
    out.accumulate(b, real ? Complex(normal(rng), 0.0) : complex_normal(rng));
  }
  out.prune();
  return out;
}

inline Eigen::VectorXcd random_vector(Rng& rng, int dim, bool real = false) {
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = real ? Complex(normal(rng), 0.0) : complex_normal(rng);
  return v;
}

// Real J-compatible metric Re(P^* H P) for a random hermitian positive H,
// where P maps real coordinates to the complex ones z_j = x_{2j-1} + i x_{2j}.
inline MetricTensor random_hermitian_metric(Rng& rng, int dim) {
  const int n = dim / 2;
  const Eigen::MatrixXcd m = random_complex(rng, n, n);
  const Eigen::MatrixXcd hmat = m * m.adjoint() + 0.5 * Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, dim);
  for (int j = 0; j < n; ++j) {
    p(j, 2 * j) = 1.0;
    p(j, 2 * j + 1) = Complex(0.0, 1.0);
  }
  const Eigen::MatrixXd g = (p.adjoint() * hmat * p).real();
  return MetricTensor::from_matrix(0.5 * (g + g.transpose()));
}

// Integrable structures on six-dimensional algebras, drawn from families
// chosen so that the sample contains Kahler-type, balanced, Gauduchon-only
// and non-Gauduchon metrics. `family` cycles through them.
inline LieAlgebraModel random_integrable_algebra(Rng& rng, int family) {
  const int dim = 6;
  const Complex lambda = complex_normal(rng);
  const Complex nu = complex_normal(rng);
  switch (family % 5) {
    case 0: {  // aff(C) + C, complex and not unimodular
      const std::vector<Form> d = {Form(dim), lambda * wedge(theta(dim, 0), theta(dim, 1)), Form(dim)};
      return LieAlgebraModel::from_complex_coframe(d);
    }
    case 1: {  // d theta_2 = beta ^ lambda theta_2, d theta_3 = beta ^ lambda theta_3 + nu theta_1 ^ theta_2
      const std::vector<Complex> b = {normal(rng), normal(rng), 0.0, 0.0, 0.0, 0.0};
      const Form beta = Form::one_form(dim, b);
      const std::vector<Form> d = {Form(dim), lambda * wedge(beta, theta(dim, 1)),
                                   lambda * wedge(beta, theta(dim, 2)) + nu * wedge(theta(dim, 0), theta(dim, 1))};
      return LieAlgebraModel::from_complex_coframe(d);
    }
    case 2:
      return iwasawa_algebra();
    case 3:
      return sl2c_algebra(uniform(rng, 0.5, 2.0));
    default: {  // su(2) + R + R^2 with the Hopf complex structure on the first four
      const std::vector<Form> d = {Form(dim),       Form::basis(dim, {3, 4}), Form::basis(dim, {4, 2}),
                                   Form::basis(dim, {2, 3}), Form(dim),         Form(dim)};
      return LieAlgebraModel::from_differentials(d);
    }
  }
}

inline HermitianData random_integrable_model(Rng& rng, int family) {
  const LieAlgebraModel alg = random_integrable_algebra(rng, family);
  return HermitianData(alg, AlmostComplexStructure::standard(6), random_hermitian_metric(rng, 6),
                       standard_volume(6));
}

// Block-diagonal connection matrices, one block per entry of `sizes`.
inline std::vector<Eigen::MatrixXcd> random_block_coefficients(Rng& rng, int base_dim, const std::vector<int>& sizes,
                                                              bool real) {
  int rank = 0;
  for (int s : sizes) rank += s;
  std::vector<Eigen::MatrixXcd> coeffs;
  for (int i = 0; i < base_dim; ++i) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rank, rank);
    int offset = 0;
    for (int s : sizes) {
      m.block(offset, offset, s, s) = real ? Eigen::MatrixXcd(random_real(rng, s, s).cast<Complex>())
                                           : random_complex(rng, s, s);
      offset += s;
    }
    coeffs.push_back(m);
  }
  return coeffs;
}

inline Pairing random_pairing(Rng& rng, const std::vector<int>& sizes) {
  std::vector<Pairing::Block> blocks;
  int offset = 0;
  for (int s : sizes) {
    const double w = uniform(rng, 0.5, 2.0) * (normal(rng) < 0 ? -1.0 : 1.0);
    blocks.push_back({offset, s, w});
    offset += s;
  }
  return Pairing(offset, blocks);
}

// Random invariant Courant data over a six-dimensional algebra. With
// `solution` the 3-form is CS(A) + d beta, so dH = c(F ^ F) holds; otherwise a
// random non-closed 3-form is added on top.
inline CourantData random_courant(Rng& rng, int trial, bool solution) {
  const LieAlgebraModel alg = random_integrable_algebra(rng, trial);
  const std::vector<int> sizes = trial % 2 ? std::vector<int>{2, 1} : std::vector<int>{2};
  int rank = 0;
  for (int s : sizes) rank += s;
  const Pairing c = random_pairing(rng, sizes);
  const Connection a(alg.dim(), rank, random_block_coefficients(rng, alg.dim(), sizes, true));
  Form h = chern_simons(alg, c, a) + ce_differential(alg, random_form(rng, alg.dim(), 2, true));
  if (!solution) {
    Form gamma = random_form(rng, alg.dim(), 3, true);
    while (ce_differential(alg, gamma).sup_norm() < 1e-3) gamma = random_form(rng, alg.dim(), 3, true);
    h += gamma;
  }
  return CourantData(alg, h.real_part(), a, c);
}

inline CourantSection random_section(Rng& rng, const CourantData& d) {
  CourantSection e = d.zero_section();
  const int m = d.alg().dim();
  e.x = random_vector(rng, m, true);
  for (const auto& b : d.c().blocks())
    e.s.block(b.offset, b.offset, b.size, b.size) = random_real(rng, b.size, b.size).cast<Complex>();
  const Eigen::VectorXcd xi = random_vector(rng, m, true);
  e.xi = Form::one_form(m, std::span<const Complex>(xi.data(), static_cast<std::size_t>(m)));
  return e;
}

// Cyclic Jacobi sums straight from the constants.
inline double jacobi_oracle(const LieAlgebraModel& alg) {
  const int m = alg.dim();
  double worst = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int out = 0; out < m; ++out) {
          double s = 0.0;
          for (int l = 0; l < m; ++l)
            s += alg.constant(i, j, l) * alg.constant(l, k, out) + alg.constant(j, k, l) * alg.constant(l, i, out) +
                 alg.constant(k, i, l) * alg.constant(l, j, out);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

// del built only from d and bidegree projections: sum_{p,q} ((d a_{p,q}))^{p+1,q}.
inline Form del_oracle(const LieAlgebraModel& alg, const AlmostComplexStructure& j, const Form& a, int degree) {
  Form out(alg.dim());
  for (int p = 0; p <= degree; ++p) {
    const Form part = pq_project(j, a, p, degree - p);
    out += pq_project(j, ce_differential(alg, part), p + 1, degree - p);
  }
  return out;
}

inline Form delbar_oracle(const LieAlgebraModel& alg, const AlmostComplexStructure& j, const Form& a, int degree) {
  Form out(alg.dim());
  for (int p = 0; p <= degree; ++p) {
    const Form part = pq_project(j, a, p, degree - p);
    out += pq_project(j, ce_differential(alg, part), p, degree - p + 1);
  }
  return out;
}

// e^{1234} + e^{1256} + e^{3456}.
inline Form sl2c_four_form() {
  return Form::basis(6, {1, 2, 3, 4}) + Form::basis(6, {1, 2, 5, 6}) + Form::basis(6, {3, 4, 5, 6});
}

}  // namespace stromcheck::testing
