#include <gtest/gtest.h>

#include "stromcheck/errors.hpp"
#include "support.hpp"

namespace stromcheck {
namespace {

using testing::Rng;
using testing::theta;
using testing::theta_bar;

double distance(const Form& a, const Form& b) { return (a - b).sup_norm(); }

const Complex kI{0.0, 1.0};

Complex i_power(int k) {
  Complex r = 1.0;
  for (int m = 0; m < ((k % 4) + 4) % 4; ++m) r *= kI;
  return r;
}

TEST(AlmostComplex, RejectsMatricesThatDoNotSquareToMinusOne) {
  EXPECT_THROW(AlmostComplexStructure::from_matrix(Eigen::MatrixXd::Identity(4, 4)), InvariantViolation);
}

TEST(AlmostComplex, StandardCoframeIsTypeOneZero) {
  const AlmostComplexStructure j = AlmostComplexStructure::standard(6);
  for (int k = 0; k < 3; ++k) {
    EXPECT_LT(distance(pq_project(j, theta(6, k), 1, 0), theta(6, k)), 1e-12);
    EXPECT_TRUE(pq_project(j, theta_bar(6, k), 1, 0).is_zero());
  }
}

TEST(Bidegree, MixedTwoForm) {
  const AlmostComplexStructure j = AlmostComplexStructure::standard(6);
  const Form a = wedge(theta(6, 0), theta_bar(6, 0));
  EXPECT_LT(distance(pq_project(j, a, 1, 1), a), 1e-12);
  EXPECT_TRUE(pq_project(j, a, 2, 0).is_zero());
  const Form b = wedge(theta(6, 0), theta(6, 1));
  EXPECT_LT(distance(pq_project(j, b, 2, 0), b), 1e-12);
}

TEST(Bidegree, RandomFormsDecomposeIntoEigenspaces) {
  Rng rng(31);
  const Eigen::MatrixXd r = testing::random_real(rng, 6, 6) + 3.0 * Eigen::MatrixXd::Identity(6, 6);
  const Eigen::MatrixXd jm = r * AlmostComplexStructure::standard(6).matrix() * r.inverse();
  const AlmostComplexStructure j = AlmostComplexStructure::from_matrix(jm);
  for (int k = 1; k <= 3; ++k) {
    const Form a = testing::random_form(rng, 6, k);
    Form sum(6);
    for (int p = 0; p <= k; ++p) {
      const Form part = pq_project(j, a, p, k - p);
      EXPECT_LT(distance(j_action(j, part), i_power(k - 2 * p) * part), 1e-9) << "(" << p << "," << k - p << ")";
      sum += part;
    }
    EXPECT_LT(distance(sum, a), 1e-9);
  }
}

TEST(Bidegree, InhomogeneousInputIsRejected) {
  const AlmostComplexStructure j = AlmostComplexStructure::standard(6);
  EXPECT_THROW(pq_project(j, Form::basis(6, {1}), 1, 1), DimensionMismatch);
}

TEST(Nijenhuis, AbelianIsIntegrableForAnyConstantJ) {
  Rng rng(32);
  const Eigen::MatrixXd r = testing::random_real(rng, 6, 6) + 3.0 * Eigen::MatrixXd::Identity(6, 6);
  const AlmostComplexStructure j =
      AlmostComplexStructure::from_matrix(r * AlmostComplexStructure::standard(6).matrix() * r.inverse());
  EXPECT_LT(nijenhuis(LieAlgebraModel::abelian(6), j), 1e-12);
}

TEST(Nijenhuis, IwasawaParallelizableStructureIsIntegrable) {
  const LieAlgebraModel alg = testing::iwasawa_algebra();
  EXPECT_LT(nijenhuis(alg, AlmostComplexStructure::standard(6)), 1e-12);
  EXPECT_TRUE(is_integrable(alg, AlmostComplexStructure::standard(6)));
}

TEST(Nijenhuis, GenericRotationOfIwasawaStructureIsNotIntegrable) {
  Rng rng(33);
  const LieAlgebraModel alg = testing::iwasawa_algebra();
  const Eigen::MatrixXd r = testing::random_real(rng, 6, 6) + 3.0 * Eigen::MatrixXd::Identity(6, 6);
  const AlmostComplexStructure j =
      AlmostComplexStructure::from_matrix(r * AlmostComplexStructure::standard(6).matrix() * r.inverse());
  EXPECT_GT(nijenhuis(alg, j), 1e-3);
  EXPECT_GT(bidegree_leakage(alg, j), 1e-3);
  EXPECT_FALSE(is_integrable(alg, j));
  EXPECT_THROW(dc(alg, j, Form::basis(6, {1})), NonIntegrable);
}

TEST(Dc, ScalarsAreClosed) {
  const LieAlgebraModel alg = testing::sl2c_algebra(1.0);
  EXPECT_TRUE(dc(alg, AlmostComplexStructure::standard(6), Form::scalar(6, 2.5)).is_zero());
}

TEST(Dc, DelAndDelbarMatchProjectionOracle) {
  Rng rng(34);
  const AlmostComplexStructure j = AlmostComplexStructure::standard(6);
  for (int family = 0; family < 5; ++family) {
    const LieAlgebraModel alg = testing::random_integrable_algebra(rng, family);
    for (int k = 1; k <= 3; ++k) {
      const Form a = testing::random_form(rng, 6, k);
      EXPECT_LT(distance(del(alg, j, a), testing::del_oracle(alg, j, a, k)), 1e-9);
      EXPECT_LT(distance(delbar(alg, j, a), testing::delbar_oracle(alg, j, a, k)), 1e-9);
      EXPECT_LT(distance(dc(alg, j, a), j_conjugated_d(alg, j, a)), 1e-9);
    }
  }
}

// dd^c = 2i del delbar on (1,1)-forms, with del and delbar from the oracle.
TEST(Dc, DdcIsTwiceIDelDelbarOnRandomOneOneForms) {
  Rng rng(35);
  const AlmostComplexStructure j = AlmostComplexStructure::standard(6);
  for (int family = 0; family < 5; ++family) {
    const LieAlgebraModel alg = testing::random_integrable_algebra(rng, family);
    const Form a = pq_project(j, testing::random_form(rng, 6, 2), 1, 1);
    const Form lhs = ce_differential(alg, dc(alg, j, a));
    const Form rhs = (2.0 * kI) * testing::del_oracle(alg, j, testing::delbar_oracle(alg, j, a, 2), 3);
    EXPECT_LT(distance(lhs, rhs), 1e-9);
  }
}

// Hand computation: with omega = (i/2) sum theta ^ conj(theta) and
// d theta_1 = (1/t) theta_2 ^ theta_3 (cyclic), 2i del delbar omega has
// coefficient +4/t^2 on each of e^{1234}, e^{1256}, e^{3456}.
TEST(Dc, Sl2cDdcOmegaMatchesHandComputation) {
  for (double t : {1.0, 2.0, 3.0}) {
    const LieAlgebraModel alg = testing::sl2c_algebra(t);
    const AlmostComplexStructure j = AlmostComplexStructure::standard(6);
    const Form omega = Form::basis(6, {1, 2}) + Form::basis(6, {3, 4}) + Form::basis(6, {5, 6});
    const Form ddc = ce_differential(alg, dc(alg, j, omega));
    EXPECT_LT(distance(ddc, (4.0 / (t * t)) * testing::sl2c_four_form()), 1e-9) << "t = " << t;
  }
}

}  // namespace
}  // namespace stromcheck
