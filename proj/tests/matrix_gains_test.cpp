#include <random>

#include <gtest/gtest.h>

#include "srg/matrix_gains.hpp"

namespace srg {
namespace {

Eigen::MatrixXcd diag12() {
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(2, 2);
  M(0, 0) = 1.0;
  M(1, 1) = 2.0;
  return M;
}

Eigen::MatrixXcd random_matrix(std::mt19937& rng, int m) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd M(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) M(i, j) = Complex(g(rng), g(rng));
  return M;
}

TEST(MatrixGains, Examples) {
  const GainPair a = matrix_gains(diag12(), 1.5);
  EXPECT_NEAR(a.min_gain, 0.5, 1e-15);
  EXPECT_NEAR(a.max_gain, 0.5, 1e-15);
  const GainPair b = matrix_gains(Eigen::MatrixXcd::Identity(3, 3), 0.0);
  EXPECT_NEAR(b.min_gain, 1.0, 1e-15);
  EXPECT_NEAR(b.max_gain, 1.0, 1e-15);
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(2, 2);
  J(0, 1) = 1.0;
  const GainPair c = matrix_gains(J, 0.0);
  EXPECT_NEAR(c.min_gain, 0.0, 1e-15);
  EXPECT_NEAR(c.max_gain, 1.0, 1e-15);
}

TEST(MatrixGains, LipschitzInAlpha) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::MatrixXcd M = random_matrix(rng, 1 + trial % 4);
    const double a = u(rng), b = u(rng);
    const GainPair ga = matrix_gains(M, a), gb = matrix_gains(M, b);
    EXPECT_LE(std::abs(ga.min_gain - gb.min_gain), std::abs(a - b) + 1e-12);
    EXPECT_LE(std::abs(ga.max_gain - gb.max_gain), std::abs(a - b) + 1e-12);
    EXPECT_LE(ga.min_gain, ga.max_gain);
  }
}

TEST(MatrixSample, ScalarMultiplesOfIdentity) {
  for (const ExtComplex& e : srg_sample_matrix(Eigen::MatrixXcd::Identity(3, 3), 50, 1)) {
    EXPECT_NEAR(std::abs(e.value() - 1.0), 0.0, 1e-15);
  }
  for (const ExtComplex& e : srg_sample_matrix(3.0 * Eigen::MatrixXcd::Identity(2, 2), 50, 2)) {
    EXPECT_NEAR(std::abs(e.value() - 3.0), 0.0, 1e-14);
  }
}

TEST(MatrixSample, Diag12SamplesLieOnCircle) {
  double worst = 0.0;
  const auto pts = srg_sample_matrix(diag12(), 10000, 42);
  ASSERT_EQ(pts.size(), 20000u);
  for (const ExtComplex& e : pts) worst = std::max(worst, std::abs(std::abs(e.value() - 1.5) - 0.5));
  EXPECT_LT(worst, 1e-9);
}

TEST(MatrixSample, DeterministicPerSeed) {
  std::mt19937 rng(9);
  const Eigen::MatrixXcd M = random_matrix(rng, 3);
  const auto a = srg_sample_matrix(M, 20, 77);
  const auto b = srg_sample_matrix(M, 20, 77);
  const auto c = srg_sample_matrix(M, 20, 78);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  // Prefix stability: input k does not depend on count.
  const auto d = srg_sample_matrix(M, 5, 77);
  EXPECT_TRUE(std::equal(d.begin(), d.end(), a.begin()));
}

TEST(MatrixSample, SamplesLieInEveryAnnulus) {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXcd M = random_matrix(rng, 2 + trial % 3);
    const auto pts = srg_sample_matrix(M, 500, static_cast<std::uint64_t>(trial));
    for (int k = 0; k < 33; ++k) {
      const double alpha = std::tan(-1.5 + 3.0 * k / 32.0);
      const GainPair g = matrix_gains(M, alpha);
      const Annulus ann(alpha, g.min_gain, g.max_gain);
      for (const ExtComplex& z : pts) ASSERT_TRUE(ann.contains(z, 1e-8));
    }
  }
}

TEST(MatrixProvider, GridCenterAndScale) {
  const MatrixGainProvider p(diag12());
  EXPECT_DOUBLE_EQ(p.info().center, 1.5);
  EXPECT_DOUBLE_EQ(p.info().scale, 0.5);
  const MatrixGainProvider q(3.0 * Eigen::MatrixXcd::Identity(2, 2));
  EXPECT_DOUBLE_EQ(q.info().center, 3.0);
  EXPECT_DOUBLE_EQ(q.info().scale, 1.0);
}

}  // namespace
}  // namespace srg
