#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "srg/frequency_gains.hpp"

namespace srg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LtiModel t1() { return TransferMatrix::scalar({{1.0}, {1.0, 1.0}, 1.0}); }
LtiModel t3() { return TransferMatrix::scalar({{1.0}, {0.0, 1.0}}); }
LtiModel first_order() { return TransferMatrix::scalar({{1.0}, {1.0, 1.0}}); }
LtiModel t2() {
  return TransferMatrix(2, {{{1.0}, {-1.0, 1.0}},
                            {{0.0, 1.0}, {-1.0, 1.0}},
                            {{1.0, 1.0}, {3.0, 1.0}},
                            {{1.0}, {2.0, 1.0}}});
}

double sigma_max(const LtiModel& t, Complex s) {
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(eval(t, s)).singularValues()(0);
}

// Product of (s - p) over the given roots, conjugates included.
poly::Coeffs from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> c{1.0};
  for (const Complex& r : roots) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = next;
  }
  poly::Coeffs out;
  for (const Complex& z : c) out.push_back(z.real());
  return out;
}

RationalDelayEntry random_entry(std::mt19937& rng, bool stable) {
  std::uniform_real_distribution<double> u(0.1, 3.0), im(0.2, 4.0), coin(0.0, 1.0);
  std::normal_distribution<double> g;
  std::vector<Complex> roots;
  const int n = 1 + static_cast<int>(coin(rng) * 3);
  while (static_cast<int>(roots.size()) < n) {
    const double re = (stable || coin(rng) < 0.6) ? -u(rng) : u(rng);
    if (n - static_cast<int>(roots.size()) >= 2 && coin(rng) < 0.4) {
      const double b = im(rng);
      roots.push_back({re, b});
      roots.push_back({re, -b});
    } else {
      roots.push_back(re);
    }
  }
  poly::Coeffs num(roots.size() + (coin(rng) < 0.5 ? 1 : 0));
  for (double& c : num) c = g(rng);
  return {num, from_roots(roots)};
}

LtiModel random_model(std::mt19937& rng, bool stable) {
  std::uniform_int_distribution<int> msize(1, 2);
  const int m = msize(rng);
  std::vector<RationalDelayEntry> e;
  for (int k = 0; k < m * m; ++k) e.push_back(random_entry(rng, stable));
  return TransferMatrix(m, e);
}

TEST(RefinePeak, Examples) {
  const Extremum a =
      refine_peak([](double w) { return 1.0 / std::abs(Complex(1.0, w)); }, 0.0, 2.0, true);
  EXPECT_NEAR(a.location, 0.0, 1e-7);
  EXPECT_NEAR(a.value, 1.0, 1e-14);

  const Extremum c = refine_peak([](double) { return 3.0; }, 1.0, 5.0, true);
  EXPECT_NEAR(c.location, 3.0, 1e-8);
  EXPECT_EQ(c.value, 3.0);

  const Extremum q = refine_peak([](double w) { return (w - 1.3) * (w - 1.3); }, 0.0, 4.0, false);
  EXPECT_NEAR(q.location, 1.3, 1e-7);
}

TEST(RefinePeak, T2SigmaMaxMatchesDenseGrid) {
  const LtiModel m = t2();
  auto f = [&](double w) { return sigma_max(m, {0.0, w}); };
  double dense = 0.0;
  for (int k = 0; k <= 1000000; ++k) dense = std::max(dense, f(10.0 * k / 1e6));
  const Extremum e = refine_peak(f, 0.0, 10.0, true);
  EXPECT_NEAR(e.value, dense, 1e-6);
}

TEST(FrequencyGrid, Structure) {
  const FrequencyGrid g = make_frequency_grid(t2());
  EXPECT_GE(g.omega.size(), 64u);
  EXPECT_EQ(g.omega.front(), 0.0);
  for (std::size_t k = 1; k < g.omega.size(); ++k) ASSERT_LT(g.omega[k - 1], g.omega[k]);
  const FrequencyGrid d = make_frequency_grid(t1());
  EXPECT_GE(d.omega_max, 64.0 * M_PI);
  EXPECT_NEAR(d.omega_linear, 64.0 * M_PI, 1e-12);
}

TEST(SoftGains, Examples) {
  const LtiModel a = t3();
  const GainPair g3 = soft_gains(a, 2.0, make_frequency_grid(a));
  EXPECT_NEAR(g3.min_gain, 2.0, 1e-12);
  EXPECT_EQ(g3.max_gain, kInf);
  EXPECT_EQ(g3.max_witness.kind, Witness::Kind::pole);

  const LtiModel b = first_order();
  const GainPair gb = soft_gains(b, 0.0, make_frequency_grid(b));
  EXPECT_NEAR(gb.min_gain, 0.0, 1e-12);
  EXPECT_NEAR(gb.max_gain, 1.0, 1e-12);

  const LtiModel c = t1();
  const GainPair gc = soft_gains(c, 0.0, make_frequency_grid(c));
  EXPECT_NEAR(gc.min_gain, 0.0, 1e-12);
  EXPECT_NEAR(gc.max_gain, 1.0, 1e-12);
}

TEST(SoftGains, T3DenseGridOracleDecreasesToTwo) {
  // |1/(i w) - 2| = sqrt(4 + 1/w^2): strictly decreasing in w.
  const LtiModel m = t3();
  double prev = kInf;
  for (int k = 1; k <= 10000; ++k) {
    const double w = 0.01 * k;
    const double v = std::abs(eval(m, {0.0, w})(0, 0) - 2.0);
    ASSERT_LT(v, prev);
    ASSERT_NEAR(v, std::sqrt(4.0 + 1.0 / (w * w)), 1e-12);
    prev = v;
  }
}

TEST(SoftGains, T1DenseGridOracle) {
  const LtiModel m = t1();
  for (double alpha : {-0.7, 0.0, 0.3, 1.5}) {
    double lo = kInf, hi = 0.0;
    for (int k = 0; k <= 1000000; ++k) {
      const double w = 1e-3 * k;
      const double v = std::abs(eval(m, {0.0, w})(0, 0) - alpha);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const GainPair g = soft_gains(m, alpha, make_frequency_grid(m));
    EXPECT_NEAR(g.max_gain, hi, 1e-6) << alpha;
    EXPECT_LE(g.min_gain, lo + 1e-9) << alpha;
    EXPECT_GE(g.min_gain, lo - 1e-3) << alpha;
  }
}

TEST(SoftGains, T2RegressionValue) {
  const LtiModel m = t2();
  const GainPair g = soft_gains(m, 0.0, make_frequency_grid(m));
  EXPECT_NEAR(g.max_gain, 1.06875797772974, 1e-10);
  EXPECT_NEAR(g.min_gain, 0.4678327651524081, 1e-10);
  EXPECT_EQ(g.max_witness.kind, Witness::Kind::frequency);
  EXPECT_NEAR(g.max_witness.location.imag(), 0.0, 1e-7);
}

TEST(HardGains, Examples) {
  const LtiModel m2 = t2();
  const FrequencyGrid g2 = make_frequency_grid(m2);
  for (double alpha : {-2.0, 0.0, 0.5, 3.0}) {
    const GainPair g = hard_gains(m2, alpha, g2);
    EXPECT_EQ(g.max_gain, kInf);
    EXPECT_EQ(g.max_witness.kind, Witness::Kind::pole);
    EXPECT_NEAR(std::abs(g.max_witness.location - 1.0), 0.0, 1e-9);
  }
  // det T2 has a zero near 0.769 in the right half-plane.
  EXPECT_EQ(hard_gains(m2, 0.0, g2).min_gain, 0.0);
  EXPECT_EQ(hard_gains(m2, 0.0, g2).min_witness.kind, Witness::Kind::zero);

  const LtiModel m3 = t3();
  const FrequencyGrid g3 = make_frequency_grid(m3);
  EXPECT_NEAR(hard_gains(m3, -1.0, g3).min_gain, 1.0, 1e-9);
  EXPECT_EQ(hard_gains(m3, 1.0, g3).min_gain, 0.0);
  EXPECT_EQ(hard_gains(m3, 0.0, g3).min_gain, 0.0);
}

TEST(HardGains, T3MinMatchesRightHalfPlaneSampling) {
  const LtiModel m = t3();
  const double alpha = -1.0;
  double oracle = kInf;
  for (int i = 0; i <= 400; ++i) {
    const double s = 1e-4 * std::pow(1e6, i / 400.0);
    for (int k = 0; k <= 400; ++k) {
      const double w = (k == 0) ? 0.0 : 1e-4 * std::pow(1e6, k / 400.0);
      oracle = std::min(oracle, std::abs(1.0 / Complex(s, w) - alpha));
    }
  }
  const GainPair g = hard_gains(m, alpha, make_frequency_grid(m));
  EXPECT_NEAR(g.min_gain, oracle, 1e-4);
}

TEST(HardGains, DelayUsesSampledLowerBound) {
  const LtiModel m = t1();
  const FrequencyGrid grid = make_frequency_grid(m);
  const GainPair h = hard_gains(m, 0.0, grid);
  EXPECT_TRUE(h.sampled);
  EXPECT_NEAR(h.max_gain, 1.0, 1e-9);
  for (double alpha : {-2.0, -0.5, 0.25, 0.5, 0.9, 2.0}) {
    const GainPair s = soft_gains(m, alpha, grid);
    const GainPair hh = hard_gains(m, alpha, grid);
    EXPECT_LE(hh.min_gain, s.min_gain) << alpha;
    EXPECT_EQ(hh.max_gain, s.max_gain) << alpha;
  }
  // T1(s) = 0.5 has a root in the right half-plane: e^{-s} = 0.5 (s + 1).
  EXPECT_LT(hard_gains(m, 0.5, grid).min_gain, 1e-6);
}

TEST(GainInvariants, SoftHardConsistencyOnRandomModels) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const bool stable = trial % 2 == 0;
    const LtiModel m = random_model(rng, stable);
    const FrequencyGrid grid = make_frequency_grid(m);
    for (double alpha : {-1.5, 0.0, 0.7}) {
      const GainPair s = soft_gains(m, alpha, grid);
      const GainPair h = hard_gains(m, alpha, grid);
      ASSERT_LE(s.min_gain, s.max_gain);
      ASSERT_LE(h.min_gain, h.max_gain);
      EXPECT_GE(h.max_gain, s.max_gain);
      EXPECT_LE(h.min_gain, s.min_gain);
      if (stable) EXPECT_NEAR(h.max_gain, s.max_gain, 1e-6 * s.max_gain);
    }
  }
}

TEST(GainInvariants, ScalarShiftIdentity) {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const TransferMatrix t = TransferMatrix::scalar(random_entry(rng, trial % 2 == 0));
    const LtiModel m = t;
    const FrequencyGrid grid = make_frequency_grid(m);
    for (double alpha : {-2.0, 0.4, 1.1}) {
      const GainPair a = soft_gains(m, alpha, grid);
      const GainPair b = soft_gains(LtiModel(t.minus_identity(alpha)), 0.0, grid);
      EXPECT_NEAR(a.min_gain, b.min_gain, 1e-10 * (1.0 + a.min_gain));
      if (std::isinf(a.max_gain)) {
        EXPECT_TRUE(std::isinf(b.max_gain));
      } else {
        EXPECT_NEAR(a.max_gain, b.max_gain, 1e-10 * (1.0 + a.max_gain));
      }
    }
  }
}

TEST(GainInvariants, DelayInvarianceOfScalarMagnitudes) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const RationalDelayEntry r = random_entry(rng, true);
    const LtiModel plain = TransferMatrix::scalar(r);
    const LtiModel delayed = TransferMatrix::scalar({r.num(), r.den(), 0.3 + 0.1 * trial});
    const GainPair a = soft_gains(plain, 0.0, make_frequency_grid(plain));
    const GainPair b = soft_gains(delayed, 0.0, make_frequency_grid(delayed));
    EXPECT_NEAR(a.max_gain, b.max_gain, 1e-9 * (1.0 + a.max_gain));
    EXPECT_NEAR(a.min_gain, b.min_gain, 1e-9 * (1.0 + a.min_gain));
  }
}

TEST(FrequencyProvider, StateSpaceAndInfo) {
  const StateSpace ss(Eigen::MatrixXd::Constant(1, 1, 1.0), Eigen::MatrixXd::Constant(1, 1, 1.0),
                      Eigen::MatrixXd::Constant(1, 1, 1.0), Eigen::MatrixXd::Zero(1, 1));
  const FrequencyGainProvider soft(ss, GainMode::soft);
  const FrequencyGainProvider hard(ss, GainMode::hard);
  EXPECT_NEAR(soft.gains(0.0).max_gain, 1.0, 1e-12);
  EXPECT_EQ(hard.gains(0.0).max_gain, kInf);
  EXPECT_EQ(hard.info().kind, "ss");
  EXPECT_EQ(hard.info().mode, GainMode::hard);
  EXPECT_EQ(FrequencyGainProvider(t3(), GainMode::soft).info().scale, 1.0);
}

}  // namespace
}  // namespace srg
