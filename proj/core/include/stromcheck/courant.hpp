#pragma once

// Reduced transitive Courant algebroid on invariant sections g + k + g*.
//
// A section is (X, s, xi) with X in the algebra, s a block-diagonal matrix
// in the Lie algebra k of the structure group, and xi an invariant 1-form.
//
//   <e1, e2> = (1/2)(xi2(X1) + xi1(X2)) + c(s1, s2)
//
//   [e1, e2] = ( [X1, X2],
//                -[s1, s2] + [A(X1), s2] - [A(X2), s1] - F(X1, X2),
//                i_{X1} d xi2 - i_{X2} d xi1 + i_{X2} i_{X1} H
//                + 2c(d_A s1, s2) + 2c(i_{X1} F, s2) - 2c(i_{X2} F, s1) )
//
// with d_A s = [A(.), s]. The sign of the F(X1, X2) term is the one for
// which the pairing is invariant; the bracket then satisfies the Leibniz
// identity exactly when dH = c(F ^ F).

#include <Eigen/Dense>

#include <vector>

#include "stromcheck/exterior.hpp"
#include "stromcheck/gauge.hpp"
#include "stromcheck/liealg.hpp"

namespace stromcheck {

struct CourantSection {
  Eigen::VectorXcd x;
  Eigen::MatrixXcd s;
  Form xi;
};

class CourantData {
 public:
  // H must be a real 3-form; A must be valued in the pairing's blocks.
  CourantData(LieAlgebraModel alg, Form h, Connection a, Pairing c);

  const LieAlgebraModel& alg() const { return alg_; }
  const Form& h() const { return h_; }
  const Connection& a() const { return a_; }
  const Pairing& c() const { return c_; }
  const CurvatureForm& curvature() const { return f_; }
  // F(e_i, e_j) as a matrix.
  const Eigen::MatrixXcd& f(int i, int j) const { return f_values_[static_cast<std::size_t>(i * alg_.dim() + j)]; }
  // |dH - c(F ^ F)|, recorded at construction.
  double bianchi() const { return bianchi_; }

  CourantSection zero_section() const;

 private:
  LieAlgebraModel alg_;
  Form h_;
  Connection a_;
  Pairing c_;
  CurvatureForm f_;
  std::vector<Eigen::MatrixXcd> f_values_;
  double bianchi_;
};

Complex pairing(const CourantData& d, const CourantSection& e1, const CourantSection& e2);
CourantSection dorfman(const CourantData& d, const CourantSection& e1, const CourantSection& e2);

double section_norm(const CourantSection& e);
CourantSection operator+(const CourantSection& a, const CourantSection& b);
CourantSection operator-(const CourantSection& a, const CourantSection& b);
CourantSection operator*(Complex k, const CourantSection& a);

// |[e1, [e2, e3]] - [[e1, e2], e3] - [e2, [e1, e3]]|.
double leibniz_residual(const CourantData& d, const CourantSection& e1, const CourantSection& e2,
                        const CourantSection& e3);
// |<[e1, e2], e3> + <e2, [e1, e3]>|; the anchor kills constants, so this vanishes.
double pairing_invariance_residual(const CourantData& d, const CourantSection& e1, const CourantSection& e2,
                                   const CourantSection& e3);

// Basis e_i, E_ab (inside each block), e^i.
std::vector<CourantSection> section_basis(const CourantData& d);
// Max of leibniz_residual over all basis triples, via the bracket structure tensor.
double leibniz_scan(const CourantData& d);

}  // namespace stromcheck
