#include "srg/sampling_oracle.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "srg/errors.hpp"
#include "srg/format.hpp"
#include "srg/matrix_gains.hpp"

namespace srg {

namespace {

constexpr double kPi = std::numbers::pi;
// Exponential inputs keep e^{Re(s) tau} below this.
constexpr double kGrowthCap = 1e12;

std::mt19937_64 make_rng(std::uint64_t seed, int k) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(k)};
  return std::mt19937_64(seq);
}

Eigen::VectorXcd random_direction(std::mt19937_64& rng, int m) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(m);
  for (int i = 0; i < m; ++i) v(i) = Complex(g(rng), g(rng));
  return v / v.norm();
}

double growth_rate(const Eigen::MatrixXd& A) {
  double top = -std::numeric_limits<double>::infinity();
  const Eigen::EigenSolver<Eigen::MatrixXd> es(A, false);
  for (const Complex& l : es.eigenvalues()) {
    top = std::max(top, l.real());
  }
  return top;
}

}  // namespace

const char* to_string(InputFamily f) {
  switch (f) {
    case InputFamily::band_limited: return "band-limited";
    case InputFamily::exponential: return "exponential";
    case InputFamily::sinusoid: return "sinusoid";
    case InputFamily::mixed: return "mixed";
  }
  return "?";
}

void SimConfig::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("simulation step must be positive");
  if (!(horizon >= 100.0 * step) || !std::isfinite(horizon)) {
    throw DomainError("simulation horizon must be at least 100 steps");
  }
  if (count < 0) throw DomainError("sample count must be non-negative");
}

int SimConfig::samples() const { return static_cast<int>(std::llround(horizon / step)) + 1; }

Eigen::MatrixXcd simulate_response(const StateSpace& s, const Eigen::MatrixXcd& u, double h) {
  if (!(h > 0.0)) throw DomainError("simulate_response: step must be positive");
  const int n = s.states();
  const int m = s.size();
  if (u.rows() != m) throw DomainError("simulate_response: input has the wrong channel count");
  const Eigen::Index len = u.cols();
  Eigen::MatrixXcd y = s.D().cast<Complex>() * u;
  if (n == 0) return y;
  // exp([A B; 0 0] h) = [Ad Bd; 0 I].
  Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(n + m, n + m);
  aug.topLeftCorner(n, n) = s.A() * h;
  aug.topRightCorner(n, m) = s.B() * h;
  const Eigen::MatrixXd e = aug.exp();
  const Eigen::MatrixXcd Ad = e.topLeftCorner(n, n).cast<Complex>();
  const Eigen::MatrixXcd Bd = e.topRightCorner(n, m).cast<Complex>();
  const Eigen::MatrixXcd C = s.C().cast<Complex>();
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(n);
  for (Eigen::Index k = 0; k < len; ++k) {
    y.col(k) += C * x;
    x = Ad * x + Bd * u.col(k);
    if (!(x.norm() < 1e150)) {
      throw NumericError("simulation overflow at t = " + format_double(static_cast<double>(k + 1) * h) +
                         ": state grows like exp(" + format_double(growth_rate(s.A())) + " t)");
    }
  }
  return y;
}

Eigen::VectorXd quadrature_weights(int n, double h) {
  if (n < 2) return Eigen::VectorXd::Constant(std::max(n, 0), h);
  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, h);
  if (n < 6) {
    w(0) = w(n - 1) = 0.5 * h;
    return w;
  }
  const double ends[3] = {3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0};
  for (int i = 0; i < 3; ++i) {
    w(i) = ends[i] * h;
    w(n - 1 - i) = ends[i] * h;
  }
  return w;
}

Complex sampled_inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, const Eigen::VectorXd& w) {
  Complex acc = 0.0;
  for (Eigen::Index k = 0; k < a.cols(); ++k) acc += w(k) * a.col(k).dot(b.col(k));
  return acc;
}

std::vector<ExtComplex> srg_points_of_pair(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& y, double h) {
  const Eigen::VectorXd w = quadrature_weights(static_cast<int>(u.cols()), h);
  // Scaling by sqrt(w) turns the weighted inner product into the plain one.
  const Eigen::Index len = u.size();
  Eigen::VectorXcd us(len), ys(len);
  for (Eigen::Index k = 0; k < u.cols(); ++k) {
    const double r = std::sqrt(w(k));
    us.segment(k * u.rows(), u.rows()) = r * u.col(k);
    ys.segment(k * u.rows(), u.rows()) = r * y.col(k);
  }
  if (us.norm() < 1e-12) return {};
  const auto [up, lo] = srg_point(us, ys);
  return {ExtComplex(up), ExtComplex(lo)};
}

Eigen::MatrixXcd make_input(const SimConfig& cfg, int channels, double scale, int k) {
  cfg.validate();
  const int len = cfg.samples();
  const double h = cfg.step;
  const double wmax = std::min(cfg.omega_max > 0.0 ? cfg.omega_max : 4.0 * scale, kPi / (10.0 * h));
  InputFamily fam = cfg.family;
  if (fam == InputFamily::mixed) {
    static constexpr InputFamily cycle[3] = {InputFamily::band_limited, InputFamily::exponential,
                                             InputFamily::sinusoid};
    fam = cycle[k % 3];
  }
  std::mt19937_64 rng = make_rng(cfg.seed, k);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(channels, len);
  switch (fam) {
    case InputFamily::band_limited: {
      for (int term = 0; term < 8; ++term) {
        const Eigen::VectorXcd v = random_direction(rng, channels);
        const double w = wmax * unit(rng);
        const double phase = 2.0 * kPi * unit(rng);
        for (int j = 0; j < len; ++j) u.col(j) += std::polar(1.0, w * j * h + phase) * v;
      }
      break;
    }
    case InputFamily::exponential: {
      const Eigen::VectorXcd v = random_direction(rng, channels);
      const double cap = std::log(kGrowthCap) / cfg.horizon;
      const double sigma = std::min(cap, scale * std::pow(10.0, -2.0 + 3.0 * unit(rng)));
      const double w = wmax * (2.0 * unit(rng) - 1.0);
      for (int j = 0; j < len; ++j) u.col(j) = std::exp(Complex(sigma, w) * (j * h)) * v;
      break;
    }
    case InputFamily::sinusoid:
    case InputFamily::mixed: {
      const Eigen::VectorXcd v = random_direction(rng, channels);
      const double w = wmax * unit(rng);
      const double phase = 2.0 * kPi * unit(rng);
      for (int j = 0; j < len; ++j) u.col(j) = std::sin(w * j * h + phase) * v;
      break;
    }
  }
  return u;
}

std::vector<ExtComplex> srg_points_from_sim(const StateSpace& s, const SimConfig& cfg) {
  cfg.validate();
  const double scale = spectral_scale(LtiModel(s));
  std::vector<ExtComplex> out;
  out.reserve(2 * static_cast<std::size_t>(cfg.count));
  for (int k = 0; k < cfg.count; ++k) {
    const Eigen::MatrixXcd u = make_input(cfg, s.size(), scale, k);
    const Eigen::MatrixXcd y = simulate_response(s, u, cfg.step);
    for (const ExtComplex& z : srg_points_of_pair(u, y, cfg.step)) out.push_back(z);
  }
  return out;
}

FrequencySamples srg_points_from_frequency(const LtiModel& t, const std::vector<double>& omega,
                                           const std::vector<Eigen::VectorXcd>& directions) {
  FrequencySamples out;
  for (double w : omega) {
    Eigen::MatrixXcd v;
    try {
      v = eval(t, Complex(0.0, w));
    } catch (const PoleError&) {
      out.notes.push_back("omega " + format_double(w) + " skipped: pole on the axis");
      continue;
    }
    for (const Eigen::VectorXcd& d : directions) {
      if (d.size() != v.cols()) throw DomainError("direction has the wrong dimension");
      if (d.norm() == 0.0) continue;
      const auto [up, lo] = srg_point(d, v * d);
      out.points.emplace_back(up);
      out.points.emplace_back(lo);
    }
  }
  return out;
}

}  // namespace srg
