#include <cmath>
#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "srg/engine.hpp"
#include "srg/errors.hpp"
#include "srg/frequency_gains.hpp"
#include "srg/matrix_gains.hpp"

namespace srg {
namespace {

Eigen::MatrixXcd diag12() {
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(2, 2);
  M(0, 0) = 1.0;
  M(1, 1) = 2.0;
  return M;
}

LtiModel t3() { return TransferMatrix::scalar({{1.0}, {0.0, 1.0}}); }

// Gains that fail at one alpha.
class FlakyProvider : public GainProvider {
 public:
  GainPair gains(double alpha) const override {
    if (alpha == 0.0) throw NumericError("boom");
    return inner_.gains(alpha);
  }
  ProviderInfo info() const override { return inner_.info(); }

 private:
  MatrixGainProvider inner_{diag12()};
};

TEST(AlphaGrid, Examples) {
  const auto g = make_alpha_grid(3, 1.0);
  ASSERT_EQ(g.size(), 3u);
  EXPECT_NEAR(g[0], -std::tan(5.0 * M_PI / 12.0), 1e-12);
  EXPECT_EQ(g[1], 0.0);
  EXPECT_NEAR(g[2], std::tan(5.0 * M_PI / 12.0), 1e-12);
  EXPECT_NEAR(g[2], 3.732, 1e-3);
  EXPECT_THROW(make_alpha_grid(2, 1.0), DomainError);
}

TEST(AlphaGrid, SymmetricFiniteAndInterleaved) {
  for (int n : {3, 4, 9, 33, 65, 200}) {
    const auto g = make_alpha_grid(n, 2.5, 0.75);
    for (std::size_t k = 0; k < g.size(); ++k) {
      ASSERT_TRUE(std::isfinite(g[k]));
      EXPECT_NEAR(g[k] - 0.75, -(g[g.size() - 1 - k] - 0.75), 1e-12 * (1.0 + std::abs(g[k])));
      if (k > 0) EXPECT_LT(g[k - 1], g[k]);
    }
    const auto f = make_alpha_grid(2 * n + 1, 2.5, 0.75);
    EXPECT_LE(f.front(), g.front());
    EXPECT_GE(f.back(), g.back());
    for (std::size_t k = 0; k + 1 < g.size(); ++k) {
      EXPECT_TRUE(std::any_of(f.begin(), f.end(), [&](double a) { return a > g[k] && a < g[k + 1]; }));
    }
  }
}

TEST(Region, Diag12IsCircle) {
  const MatrixGainProvider p(diag12());
  const SrgRegion r = compute_region(p, 65);
  EXPECT_FALSE(r.includes_infinity);
  const BoundaryPath b = region_boundary(r, 1024);
  EXPECT_FALSE(b.contains_infinity());
  EXPECT_LT(oracle::hausdorff_to_circle(b.points, 1.5, 0.5), 1e-4);
  EXPECT_TRUE(region_contains(r, Complex(1.5, 0.5)));
  EXPECT_FALSE(region_contains(r, Complex(1.5, 0.0)));
  EXPECT_FALSE(region_contains(r, ExtComplex::infinity()));
  const SrgRegion r33 = compute_region(p, 33);
  EXPECT_LT(oracle::hausdorff_to_circle(region_boundary(r33, 1024).points, 1.5, 0.5), 1e-6);
}

TEST(Region, SoftIntegratorIsImaginaryAxis) {
  const FrequencyGainProvider p(t3(), GainMode::soft);
  const SrgRegion r = compute_region(p, 65);
  EXPECT_TRUE(r.includes_infinity);
  EXPECT_TRUE(region_contains(r, ExtComplex::infinity()));
  EXPECT_TRUE(region_contains(r, Complex(0.0, 2.0)));
  EXPECT_FALSE(region_contains(r, Complex(1.0, 1.0)));
  for (const Complex& z : oracle::lattice(-3.0, 3.0, 101)) {
    if (std::abs(std::abs(z.real()) - 1e-3) < 1e-3) continue;
    ASSERT_EQ(region_contains(r, z), std::abs(z.real()) <= 1e-3) << z;
  }
}

TEST(Region, HardIntegratorIsClosedRightHalfPlane) {
  const FrequencyGainProvider p(t3(), GainMode::hard);
  const SrgRegion r = compute_region(p, 65);
  EXPECT_TRUE(r.includes_infinity);
  for (const Complex& z : oracle::lattice(-3.0, 3.0, 101)) {
    if (std::abs(z.real() + 1e-3) < 1e-3) continue;
    ASSERT_EQ(region_contains(r, z), z.real() >= -1e-3) << z;
  }
  const BoundaryPath b = region_boundary(r, 64);
  EXPECT_TRUE(b.contains_infinity());
  // Chord images lie on the imaginary axis; arcs fold onto the real axis.
  for (const ExtComplex& z : b.points) {
    if (z.is_infinite()) continue;
    const Complex v = z.value();
    const bool on_axis = std::abs(v.real()) < 1e-2 * (1.0 + std::norm(v));
    const bool on_real = std::abs(v.imag()) < 1e-12 && v.real() >= 0.0;
    EXPECT_TRUE(on_axis || on_real) << v;
  }
}

TEST(Region, ScaledIdentityIsPoint) {
  const MatrixGainProvider p(3.0 * Eigen::MatrixXcd::Identity(2, 2));
  const SrgRegion r = compute_region(p, 9);
  EXPECT_EQ(r.klein.shape(), KleinChordRegion::Shape::point);
  const BoundaryPath b = region_boundary(r);
  ASSERT_EQ(b.points.size(), 1u);
  EXPECT_NEAR(std::abs(b.points[0].value() - 3.0), 0.0, 1e-7);
  EXPECT_TRUE(region_contains(r, Complex(3.0)));
  EXPECT_FALSE(region_contains(r, Complex(3.0, 0.01)));
}

TEST(Region, ProviderErrorsDropAnnuli) {
  const FlakyProvider p;
  const auto alphas = make_alpha_grid(9, 1.0);
  const SrgRegion r = compute_region_at(p, alphas);
  ASSERT_EQ(r.dropped.size(), 1u);
  EXPECT_EQ(r.dropped[0].alpha, 0.0);
  EXPECT_EQ(r.alpha.size(), 8u);
  EXPECT_FALSE(r.diagnostics.empty());
  EXPECT_FALSE(r.empty());
}

TEST(Region, ThreadCountDoesNotChangeResult) {
  const FrequencyGainProvider p(t3(), GainMode::hard);
  const SrgRegion a = compute_region(p, 17, 1);
  const SrgRegion b = compute_region(p, 17, 4);
  ASSERT_EQ(a.alpha, b.alpha);
  for (std::size_t k = 0; k < a.alpha.size(); ++k) {
    EXPECT_EQ(a.gains[k].min_gain, b.gains[k].min_gain);
    EXPECT_EQ(a.gains[k].max_gain, b.gains[k].max_gain);
  }
}

TEST(RegionProperties, OverApproximatesMatrixSamples) {
  std::mt19937 rng(8);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::MatrixXcd M(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) M(i, j) = Complex(g(rng), g(rng));
    const MatrixGainProvider p(M);
    const SrgRegion r = compute_region(p, 33);
    for (const ExtComplex& z : srg_sample_matrix(M, 500, static_cast<std::uint64_t>(trial))) {
      ASSERT_TRUE(region_contains(r, z, 1e-6));
    }
  }
}

TEST(RegionProperties, SymmetryMonotonicityConvexity) {
  std::mt19937 rng(12);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd M(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) M(i, j) = Complex(g(rng), g(rng));
  const MatrixGainProvider p(M);
  const auto fine = make_alpha_grid(33, p.info().scale, p.info().center);
  std::vector<double> coarse;
  for (std::size_t k = 0; k < fine.size(); k += 4) coarse.push_back(fine[k]);
  const SrgRegion rf = compute_region_at(p, fine);
  const SrgRegion rc = compute_region_at(p, coarse);
  const double c = p.info().center;
  std::vector<Complex> inside;
  for (const Complex& z0 : oracle::lattice(-4.0, 4.0, 61)) {
    const Complex z = z0 + c;
    EXPECT_EQ(region_contains(rf, z), region_contains(rf, std::conj(z)));
    if (region_contains(rf, z)) {
      EXPECT_TRUE(region_contains(rc, z));
      inside.push_back(z);
    }
  }
  ASSERT_GT(inside.size(), 10u);
  std::uniform_int_distribution<std::size_t> pick(0, inside.size() - 1);
  for (int k = 0; k < 2000; ++k) {
    const Complex a = fbk(inside[pick(rng)]);
    const Complex b = fbk(inside[pick(rng)]);
    const ExtComplex mid = gbk_upper(0.5 * (a + b));
    EXPECT_TRUE(region_contains(rf, mid, 1e-7));
  }
}

TEST(Refine, ShrinksAndKeepsFixedPoints) {
  const FrequencyGainProvider p(TransferMatrix(2, {{{1.0}, {-1.0, 1.0}},
                                                   {{0.0, 1.0}, {-1.0, 1.0}},
                                                   {{1.0, 1.0}, {3.0, 1.0}},
                                                   {{1.0}, {2.0, 1.0}}}),
                                GainMode::soft);
  const SrgRegion r9 = compute_region(p, 9);
  const SrgRegion rr = region_refine(r9, p);
  EXPECT_GT(rr.alpha.size(), r9.alpha.size());
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 1000; ++k) {
    const Complex z(u(rng), u(rng));
    if (region_contains(rr, z)) EXPECT_TRUE(region_contains(r9, z));
  }

  const MatrixGainProvider a(2.0 * Eigen::MatrixXcd::Identity(2, 2));
  SrgRegion ra = compute_region(a, 9);
  for (int k = 0; k < 2; ++k) {
    ra = region_refine(ra, a);
    EXPECT_EQ(ra.klein.shape(), KleinChordRegion::Shape::point);
    EXPECT_TRUE(region_contains(ra, Complex(2.0)));
    EXPECT_FALSE(region_contains(ra, Complex(2.0, 1e-3)));
  }
}

TEST(Refine, Diag12HausdorffDecreases) {
  const MatrixGainProvider p(diag12());
  SrgRegion r = compute_region(p, 8);
  double prev = oracle::hausdorff_to_circle(region_boundary(r, 512).points, 1.5, 0.5);
  const double first = prev;
  for (int k = 0; k < 3; ++k) {
    r = region_refine(r, p);
    const double h = oracle::hausdorff_to_circle(region_boundary(r, 512).points, 1.5, 0.5);
    EXPECT_LE(h, prev + 1e-9);
    prev = h;
  }
  EXPECT_LT(prev, first);
}

TEST(Distance, ToRegion) {
  const MatrixGainProvider p(diag12());
  const SrgRegion r = compute_region(p, 33);
  EXPECT_EQ(chordal_distance_to_region(r, Complex(1.5, 0.5)), 0.0);
  EXPECT_NEAR(chordal_distance_to_region(r, Complex(3.0), 2048), chordal_distance(Complex(3.0), Complex(2.0)),
              1e-6);
}

}  // namespace
}  // namespace srg
