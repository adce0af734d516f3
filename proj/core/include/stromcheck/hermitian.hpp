#pragma once

// Hermitian data on a Lie algebra: metric, Kahler form, Lee form,
// Kahler / balanced / Gauduchon classification, and the dilatino residuals.

#include <optional>
#include <utility>

#include "stromcheck/cxstruct.hpp"
#include "stromcheck/exterior.hpp"
#include "stromcheck/liealg.hpp"

namespace stromcheck {

class HermitianData {
 public:
  // Checks g(J., J.) = g to kExactnessTolerance (InvariantViolation otherwise)
  // and, when present, that Omega is a nonvanishing (n,0)-form.
  HermitianData(LieAlgebraModel alg, AlmostComplexStructure j, MetricTensor g,
                std::optional<Form> omega_n = std::nullopt);

  const LieAlgebraModel& alg() const { return alg_; }
  const AlmostComplexStructure& j() const { return j_; }
  const MetricTensor& g() const { return g_; }
  const std::optional<Form>& holomorphic_volume() const { return omega_n_; }
  int dim() const { return alg_.dim(); }
  int complex_dim() const { return alg_.dim() / 2; }

  HermitianData with_metric(MetricTensor g) const;

 private:
  LieAlgebraModel alg_;
  AlmostComplexStructure j_;
  MetricTensor g_;
  std::optional<Form> omega_n_;
};

// omega(V, W) = g(JV, W).
Form kahler_form(const HermitianData& h);

// d* = -*d* on invariant forms.
Form codifferential(const HermitianData& h, const Form& a);

// theta = Lambda_omega d omega, cross-checked against J d* omega.
// Throws ConventionFault if the two disagree beyond tolerance.
Form lee_form(const HermitianData& h);
// The J d* omega route alone.
Form lee_form_codifferential(const HermitianData& h);

struct Classification {
  double d_omega = 0.0;          // |d omega|
  double d_omega_n1 = 0.0;       // |d omega^{n-1}|
  double ddc_omega_n1 = 0.0;     // |dd^c omega^{n-1}|
  double lee_norm = 0.0;         // |theta|
  double codiff_lee_norm = 0.0;  // |d* theta|
  bool kahler = false;
  bool balanced = false;
  bool gauduchon = false;
};
Classification classify(const HermitianData& h, double tol = kResidualTolerance);

// The positive constant with |Omega|^2 omega^n/n! = (-1)^{n(n-1)/2} i^n Omega ^ conj(Omega).
double omega_norm(const HermitianData& h);

struct DilatinoResidual {
  double dilatino = 0.0;             // |d* omega - d^c log |Omega||
  double conformally_balanced = 0.0; // |d(|Omega| omega^{n-1})|
};
DilatinoResidual dilatino_residual(const HermitianData& h);

// |d Omega|.
double holomorphic_volume_closedness(const HermitianData& h);

}  // namespace stromcheck
