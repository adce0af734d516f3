#include <gtest/gtest.h>

#include <cmath>
#include <future>
#include <numbers>

#include "stromcheck/errors.hpp"
#include "stromcheck/hesolver.hpp"
#include "support.hpp"

namespace stromcheck {
namespace {

using testing::Rng;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<FourierMode> random_modes(Rng& rng, int count, int kmax) {
  std::uniform_int_distribution<int> k(-kmax, kmax);
  std::vector<FourierMode> modes;
  while (static_cast<int>(modes.size()) < count) {
    FourierMode m{k(rng), k(rng), testing::normal(rng), testing::normal(rng)};
    if (m.kx == 0 && m.ky == 0) continue;
    modes.push_back(m);
  }
  return modes;
}

TEST(SolveHe, ZeroSourceGivesZero) {
  const HeSolution s = solve_he(GridField::zeros(16));
  EXPECT_EQ(s.f.sup_norm(), 0.0);
  EXPECT_EQ(s.residual, 0.0);
}

// Delta cos(2 pi x) = 4 pi^2 cos(2 pi x), so f = 2 cos(2 pi x) / (4 pi^2).
TEST(SolveHe, SingleCosineMode) {
  const int n = 64;
  const HeSolution s = solve_he(band_limited(n, {{1, 0, 1.0, 0.0}}));
  const GridField exact = GridField::sample(n, [](double x, double) { return 2.0 * std::cos(kTwoPi * x) / (kTwoPi * kTwoPi); });
  EXPECT_LT((s.f - exact).sup_norm(), 1e-8);
  EXPECT_LT(s.residual, 1e-10);
}

TEST(SolveHe, ObliqueModeAgainstAnalyticSolution) {
  const int n = 32;
  const GridField source = GridField::sample(n, [](double x, double y) { return std::sin(kTwoPi * (2 * x - 3 * y)); });
  const HeSolution s = solve_he(source);
  const double eig = kTwoPi * kTwoPi * 13.0;
  const GridField exact = GridField::sample(n, [&](double x, double y) { return 2.0 * std::sin(kTwoPi * (2 * x - 3 * y)) / eig; });
  EXPECT_LT((s.f - exact).sup_norm(), 1e-12);
}

TEST(SolveHe, ConstantSourceIsObstructed) {
  try {
    solve_he(band_limited(64, {}, 0.3));
    FAIL() << "expected an obstruction";
  } catch (const Obstruction& e) {
    EXPECT_NE(std::string(e.what()).find("integral obstruction"), std::string::npos);
  }
}

TEST(SolveHe, SolutionHasZeroMeanAndSolvesEquation) {
  Rng rng(81);
  const GridField source = band_limited(32, random_modes(rng, 6, 5));
  const HeSolution s = solve_he(source);
  EXPECT_LT(std::abs(degree_check(s.f)), 1e-13);
  EXPECT_LT((laplacian(s.f) - source * 2.0).sup_norm(), 1e-9);
  EXPECT_NEAR(s.residual, (laplacian(s.f) - source * 2.0).sup_norm(), 1e-12);
}

TEST(SolveHe, Linearity) {
  Rng rng(82);
  const GridField s1 = band_limited(32, random_modes(rng, 5, 6));
  const GridField s2 = band_limited(32, random_modes(rng, 5, 6));
  const double a = 1.7;
  const double b = -0.4;
  const GridField lhs = solve_he(s1 * a + s2 * b).f;
  const GridField rhs = solve_he(s1).f * a + solve_he(s2).f * b;
  EXPECT_LT((lhs - rhs).sup_norm(), 1e-9);
}

// Any two solutions differ by a constant: adding a constant to the returned f
// leaves the residual unchanged, and repeated solves agree.
TEST(SolveHe, UniqueUpToConstant) {
  Rng rng(83);
  const GridField source = band_limited(32, random_modes(rng, 4, 4));
  const HeSolution s = solve_he(source);
  const GridField shifted = s.f + GridField::sample(32, [](double, double) { return 0.75; });
  EXPECT_LT((laplacian(shifted) - source * 2.0).sup_norm(), 1e-9);
  const GridField diff = shifted - s.f;
  const double mean = degree_check(diff);
  EXPECT_LT((diff - GridField::sample(32, [&](double, double) { return mean; })).sup_norm(), 1e-10);
  EXPECT_LT((solve_he(source).f - s.f).sup_norm(), 1e-10);
}

TEST(SolveHe, SolvableExactlyWhenMeanVanishes) {
  Rng rng(84);
  for (int trial = 0; trial < 20; ++trial) {
    const double constant = trial % 2 ? testing::uniform(rng, 0.05, 1.0) : 0.0;
    const GridField source = band_limited(32, random_modes(rng, 3, 5), constant);
    bool solved = true;
    try {
      solve_he(source);
    } catch (const Obstruction&) {
      solved = false;
    }
    EXPECT_EQ(solved, std::abs(degree_check(source)) < 1e-10) << "trial " << trial;
  }
}

TEST(SolveHe, ConcurrentSolvesMatchSequential) {
  Rng rng(85);
  std::vector<GridField> sources;
  for (int i = 0; i < 6; ++i) sources.push_back(band_limited(32, random_modes(rng, 3, 4)));
  std::vector<std::future<HeSolution>> jobs;
  for (const auto& s : sources) jobs.push_back(std::async(std::launch::async, [&s] { return solve_he(s); }));
  for (std::size_t i = 0; i < sources.size(); ++i)
    EXPECT_EQ(jobs[i].get().f.values(), solve_he(sources[i]).f.values());
}

TEST(DegreeCheck, MeansOfSimpleFields) {
  EXPECT_EQ(degree_check(GridField::zeros(8)), 0.0);
  EXPECT_LT(std::abs(degree_check(band_limited(64, {{1, 0, 1.0, 0.0}}))), 1e-15);
  EXPECT_NEAR(degree_check(band_limited(64, {}, 0.3)), 0.3, 1e-15);
}

TEST(GridField, Validation) {
  EXPECT_THROW(GridField(4, std::vector<double>(15, 0.0)), DimensionMismatch);
  std::vector<double> bad(16, 0.0);
  bad[3] = std::nan("");
  EXPECT_THROW(GridField(4, bad), InvariantViolation);
  EXPECT_THROW(band_limited(8, {{5, 0, 1.0, 0.0}}), DimensionMismatch);
}

}  // namespace
}  // namespace stromcheck
