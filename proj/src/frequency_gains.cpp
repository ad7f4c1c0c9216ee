#include "srg/frequency_gains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "srg/errors.hpp"

namespace srg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kRefinePeaks = 8;
constexpr int kSigmaSamples = 25;
constexpr int kLocalStarts = 6;

struct Sv {
  double min;
  double max;
};

Sv singular_extremes(const Eigen::MatrixXcd& M) {
  if (M.size() == 1) {
    const double a = std::abs(M(0, 0));
    return {a, a};
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  const auto& sv = svd.singularValues();
  return {sv(sv.size() - 1), sv(0)};
}

// Singular value extremes of T(s) - alpha I.
class Evaluator {
 public:
  Evaluator(const LtiModel& t, double alpha, const FrequencyGrid& grid)
      : t_(t), alpha_(alpha), omega_linear_(grid.omega_linear) {
    if (const auto* tf = std::get_if<TransferMatrix>(&t); tf && tf->size() == 1) {
      if (tf->entry(0, 0).delay() > 0.0) scalar_delay_ = &tf->entry(0, 0);
    }
  }

  Sv at(Complex s) const {
    Eigen::MatrixXcd v = eval(t_, s);
    v.diagonal().array() -= alpha_;
    return singular_extremes(v);
  }

  // Beyond the uniform band the phase of a scalar delay is unresolved, so
  // the extremes over one period are used: | |R| -+ |alpha| |.
  Sv axis(double omega) const {
    if (scalar_delay_ != nullptr && omega > omega_linear_) {
      const double r = std::abs(scalar_delay_->eval_rational({0.0, omega}));
      const double a = std::abs(alpha_);
      return {std::abs(r - a), r + a};
    }
    return at({0.0, omega});
  }

 private:
  const LtiModel& t_;
  double alpha_;
  double omega_linear_;
  const RationalDelayEntry* scalar_delay_ = nullptr;
};

std::optional<Sv> infinity_values(const LtiModel& t, double alpha, bool& unresolved) {
  if (const auto* ss = std::get_if<StateSpace>(&t)) {
    Eigen::MatrixXcd D = ss->D().cast<Complex>();
    D.diagonal().array() -= alpha;
    return singular_extremes(D);
  }
  const auto& tf = std::get<TransferMatrix>(t);
  const InfinityLimit lim = tf.at_infinity();
  if (lim.unbounded) return std::nullopt;
  if (!lim.oscillatory) {
    Eigen::MatrixXcd v = lim.value;
    v.diagonal().array() -= alpha;
    return singular_extremes(v);
  }
  if (tf.size() == 1) {
    const double r = std::abs(lim.value(0, 0));
    const double a = std::abs(alpha);
    return Sv{std::abs(r - a), r + a};
  }
  unresolved = true;
  return std::nullopt;
}

// Best grid value, then golden-section refinement of the strongest local
// extrema between their grid neighbours.
Extremum extremum_on_grid(const std::vector<double>& w, const std::vector<double>& f,
                          const std::function<double(double)>& fn, bool maximize,
                          int& budget, bool& limited) {
  const double sign = maximize ? 1.0 : -1.0;
  const std::size_t n = w.size();
  auto better = [&](double a, double b) { return sign * a > sign * b; };
  Extremum best{kNaN, kNaN};
  std::vector<std::size_t> peaks;
  for (std::size_t k = 0; k < n; ++k) {
    if (std::isnan(f[k])) continue;
    if (std::isnan(best.value) || better(f[k], best.value)) best = {w[k], f[k]};
    const bool left = k == 0 || std::isnan(f[k - 1]) || !better(f[k - 1], f[k]);
    const bool right = k + 1 == n || std::isnan(f[k + 1]) || !better(f[k + 1], f[k]);
    if (left && right) peaks.push_back(k);
  }
  if (std::isnan(best.value)) return best;
  std::stable_sort(peaks.begin(), peaks.end(),
                   [&](std::size_t a, std::size_t b) { return better(f[a], f[b]); });
  if (peaks.size() > static_cast<std::size_t>(kRefinePeaks)) peaks.resize(kRefinePeaks);
  auto guarded = [&](double x) {
    try {
      return fn(x);
    } catch (const PoleError&) {
      return -sign * kInf;
    }
  };
  for (std::size_t k : peaks) {
    if (budget <= 0) {
      limited = true;
      break;
    }
    const double lo = w[k == 0 ? 0 : k - 1];
    const double hi = w[std::min(k + 1, n - 1)];
    int evals = 0;
    const Extremum e = refine_peak(guarded, lo, hi, maximize, &evals);
    budget -= evals;
    if (better(e.value, best.value)) best = e;
  }
  return best;
}

Witness make_witness(Witness::Kind kind, Complex at, std::string note = {}) {
  Witness w;
  w.kind = kind;
  w.location = at;
  w.note = std::move(note);
  return w;
}

struct MinResult {
  double value;
  Witness witness;
};

// Minimum gain over the closed right half-plane through the inverse
// realization of T - alpha I.
MinResult inverse_route_min(const StateSpace& r, double alpha) {
  const StateSpace sh = r.shifted(alpha);
  const auto inv = invert(sh);
  if (!inv) return {0.0, make_witness(Witness::Kind::singular_feedthrough, {}, "D - alpha I singular")};
  const double tol = inv->axis_tolerance();
  const Complex* worst = nullptr;
  for (const Complex& z : inv->poles()) {
    if (worst == nullptr || z.real() > worst->real()) worst = &z;
  }
  if (worst != nullptr && worst->real() >= -tol) {
    return {0.0, make_witness(Witness::Kind::zero, *worst, "zero of T - alpha I in the closed right half-plane")};
  }
  const LtiModel inverse = *inv;
  const GainPair g = soft_gains(inverse, 0.0, make_frequency_grid(inverse));
  if (!std::isfinite(g.max_gain)) return {0.0, g.max_witness};
  return {1.0 / g.max_gain, g.max_witness};
}

// Smallest sampled sigma_min over s = sigma + i omega, sigma >= 0.
MinResult sampled_min(const LtiModel& t, double alpha, const FrequencyGrid& grid) {
  const Evaluator ev(t, alpha, grid);
  const double rho = grid.scale;
  struct Sample {
    double value, sigma, omega;
  };
  std::vector<Sample> samples;
  std::vector<double> sigmas;
  for (int i = 0; i < kSigmaSamples; ++i) {
    sigmas.push_back(rho * std::pow(10.0, -3.0 + 6.0 * i / (kSigmaSamples - 1)));
  }
  for (double s : sigmas) {
    for (double w : grid.omega) {
      try {
        samples.push_back({ev.at({s, w}).min, s, w});
      } catch (const PoleError&) {
      }
    }
  }
  auto value_at = [&](double s, double w) {
    try {
      return ev.at({s, w}).min;
    } catch (const PoleError&) {
      return kInf;
    }
  };
  MinResult best{kInf, {}};
  const std::size_t starts = std::min<std::size_t>(kLocalStarts, samples.size());
  std::partial_sort(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(starts),
                    samples.end(), [](const Sample& a, const Sample& b) { return a.value < b.value; });
  const double ratio = std::pow(10.0, 6.0 / (kSigmaSamples - 1));
  for (std::size_t k = 0; k < starts; ++k) {
    double s = samples[k].sigma, w = samples[k].omega, f = samples[k].value;
    auto it = std::upper_bound(grid.omega.begin(), grid.omega.end(), w);
    double dw = it == grid.omega.end() ? w * 0.1 : *it - w;
    double ds = s * (ratio - 1.0);
    // Compass search, shrinking the steps when no neighbour improves.
    for (int iter = 0; iter < 400; ++iter) {
      if (ds < 1e-10 * (1.0 + s) && dw < 1e-10 * (1.0 + w)) break;
      const double cand[4][2] = {{s + ds, w}, {std::max(0.0, s - ds), w},
                                 {s, w + dw}, {s, std::max(0.0, w - dw)}};
      int pick = -1;
      for (int c = 0; c < 4; ++c) {
        const double v = value_at(cand[c][0], cand[c][1]);
        if (v < f) {
          f = v;
          pick = c;
        }
      }
      if (pick < 0) {
        ds *= 0.5;
        dw *= 0.5;
      } else {
        s = cand[pick][0];
        w = cand[pick][1];
      }
    }
    if (f < best.value) best = {f, make_witness(Witness::Kind::rhp_point, {s, w}, "sampled")};
  }
  // sigma -> infinity: delayed entries vanish, the rest tend to their limits.
  if (const auto* tf = std::get_if<TransferMatrix>(&t)) {
    Eigen::MatrixXcd lim = Eigen::MatrixXcd::Zero(tf->size(), tf->size());
    bool bounded = true;
    for (int i = 0; i < tf->size(); ++i) {
      for (int j = 0; j < tf->size(); ++j) {
        const RationalDelayEntry& e = tf->entry(i, j);
        if (e.delay() > 0.0 || e.is_zero()) continue;
        if (!e.proper()) {
          bounded = false;
          continue;
        }
        lim(i, j) = e.rational_limit();
      }
    }
    if (bounded) {
      lim.diagonal().array() -= alpha;
      const double v = singular_extremes(lim).min;
      if (v < best.value) {
        best = {v, make_witness(Witness::Kind::infinity_limit, {}, "sigma -> infinity")};
      }
    }
  }
  return best;
}

}  // namespace

FrequencyGrid make_frequency_grid(const LtiModel& t, double omega_max, int per_decade) {
  FrequencyGrid g;
  g.scale = spectral_scale(t);
  double wmin = 1e-4 * g.scale;
  double wmax = omega_max > 0.0 ? omega_max : 1e4 * g.scale;
  if (wmax <= wmin) wmin = wmax * 1e-8;
  const int n = std::max(64, static_cast<int>(std::ceil(std::log10(wmax / wmin) * per_decade)) + 1);
  g.omega.push_back(0.0);
  for (int k = 0; k < n; ++k) {
    g.omega.push_back(wmin * std::pow(wmax / wmin, static_cast<double>(k) / (n - 1)));
  }
  if (const auto* tf = std::get_if<TransferMatrix>(&t)) {
    const double tau = tf->min_positive_delay();
    if (tau > 0.0) {
      const double step = std::numbers::pi / (16.0 * tau);
      g.omega_linear = 64.0 * std::numbers::pi / tau;
      for (int k = 1; k <= 1024; ++k) g.omega.push_back(k * step);
      wmax = std::max(wmax, g.omega_linear);
    }
  }
  std::sort(g.omega.begin(), g.omega.end());
  std::vector<double> uniq;
  for (double w : g.omega) {
    if (uniq.empty() || w - uniq.back() > 1e-12 * std::max(1.0, w)) uniq.push_back(w);
  }
  g.omega = std::move(uniq);
  g.omega_max = wmax;
  return g;
}

Extremum refine_peak(const std::function<double(double)>& f, double lo, double hi,
                     bool maximize, int* evaluations) {
  const double sign = maximize ? 1.0 : -1.0;
  int count = 0;
  auto g = [&](double x) {
    ++count;
    return sign * f(x);
  };
  if (hi < lo) std::swap(lo, hi);
  if (hi == lo) {
    const double v = g(lo);
    if (evaluations != nullptr) *evaluations = count;
    return {lo, sign * v};
  }
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = g(c), fd = g(d);
  while (b - a > 1e-8 * (1.0 + std::abs(0.5 * (a + b)))) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = g(c);
    } else if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = g(d);
    } else {
      // Tie: the extremum of a unimodal function lies between c and d.
      a = c;
      b = d;
      c = b - r * (b - a);
      d = a + r * (b - a);
      fc = g(c);
      fd = g(d);
    }
  }
  Extremum best{0.5 * (a + b), 0.0};
  double fbest = g(best.location);
  for (double x : {lo, hi}) {
    const double v = g(x);
    if (v > fbest) {
      fbest = v;
      best.location = x;
    }
  }
  best.value = sign * fbest;
  if (evaluations != nullptr) *evaluations = count;
  return best;
}

GainPair soft_gains(const LtiModel& t, double alpha, const FrequencyGrid& grid) {
  GainPair g;
  const double tol = axis_tolerance(t);
  bool max_infinite = false;
  for (const Complex& p : poles(t)) {
    if (classify_pole(p, tol) == PoleClass::imaginary_axis) {
      g.max_gain = kInf;
      g.max_witness = make_witness(Witness::Kind::pole, p, "imaginary-axis pole");
      max_infinite = true;
      break;
    }
  }
  const auto* tf = std::get_if<TransferMatrix>(&t);
  if (!max_infinite && tf != nullptr && !tf->proper()) {
    g.max_gain = kInf;
    g.max_witness = make_witness(Witness::Kind::infinity_limit, {}, "improper entry");
    max_infinite = true;
  }

  const Evaluator ev(t, alpha, grid);
  const std::size_t n = grid.omega.size();
  std::vector<double> fmin(n, kNaN), fmax(n, kNaN);
  for (std::size_t k = 0; k < n; ++k) {
    try {
      const Sv v = ev.axis(grid.omega[k]);
      fmin[k] = v.min;
      fmax[k] = v.max;
    } catch (const PoleError&) {
    }
  }
  bool unresolved = false;
  const std::optional<Sv> at_inf =
      grid.include_infinity ? infinity_values(t, alpha, unresolved) : std::nullopt;
  if (unresolved) {
    g.grid_limited = true;
    g.warnings.push_back("oscillatory limit at infinity sampled on the grid only");
  }

  int budget = grid.refine_budget;
  if (!max_infinite) {
    const Extremum e = extremum_on_grid(grid.omega, fmax, [&](double w) { return ev.axis(w).max; },
                                        true, budget, g.grid_limited);
    g.max_gain = e.value;
    g.max_witness = make_witness(Witness::Kind::frequency, {0.0, e.location});
    if (at_inf && (std::isnan(e.value) || at_inf->max > e.value)) {
      g.max_gain = at_inf->max;
      g.max_witness = make_witness(Witness::Kind::infinity_limit, {});
    }
  }
  const Extremum e = extremum_on_grid(grid.omega, fmin, [&](double w) { return ev.axis(w).min; },
                                      false, budget, g.grid_limited);
  g.min_gain = e.value;
  g.min_witness = make_witness(Witness::Kind::frequency, {0.0, e.location});
  if (at_inf && (std::isnan(e.value) || at_inf->min < e.value)) {
    g.min_gain = at_inf->min;
    g.min_witness = make_witness(Witness::Kind::infinity_limit, {});
  }
  if (std::isnan(g.min_gain) || std::isnan(g.max_gain)) {
    throw NumericError("soft gains: no evaluable frequency");
  }
  if (tf != nullptr && tf->size() > 1 && tf->has_delay()) {
    g.grid_limited = true;
    g.warnings.push_back("delayed matrix entries beyond the uniform band are sampled on the log grid");
  }
  if (budget <= 0) g.grid_limited = true;
  return g;
}

GainPair hard_gains(const LtiModel& t, double alpha, const FrequencyGrid& grid,
                    const StateSpace* realization) {
  GainPair g = soft_gains(t, alpha, grid);
  const double soft_min = g.min_gain;
  const auto* tf = std::get_if<TransferMatrix>(&t);

  if (tf != nullptr && !tf->proper()) {
    g.max_gain = kInf;
    g.max_witness = make_witness(Witness::Kind::infinity_limit, {}, "improper entry");
  } else {
    const double tol = axis_tolerance(t);
    const auto ps = poles(t);
    const Complex* worst = nullptr;
    for (const Complex& p : ps) {
      if (worst == nullptr || p.real() > worst->real()) worst = &p;
    }
    if (worst != nullptr && worst->real() >= -tol) {
      g.max_gain = kInf;
      g.max_witness = make_witness(Witness::Kind::pole, *worst, "pole in the closed right half-plane");
    }
  }

  MinResult m;
  if (tf != nullptr && (tf->has_delay() || !tf->proper())) {
    m = sampled_min(t, alpha, grid);
    g.sampled = true;
  } else if (realization != nullptr) {
    m = inverse_route_min(*realization, alpha);
  } else if (tf != nullptr) {
    m = inverse_route_min(realize(*tf), alpha);
  } else {
    m = inverse_route_min(minimal_realization(std::get<StateSpace>(t)), alpha);
  }
  if (m.value < soft_min) {
    g.min_gain = m.value;
    g.min_witness = m.witness;
  }
  return g;
}

FrequencyGainProvider::FrequencyGainProvider(LtiModel model, GainMode mode, double omega_max)
    : model_(std::move(model)), mode_(mode), grid_(make_frequency_grid(model_, omega_max)) {
  if (mode_ != GainMode::hard) return;
  if (const auto* tf = std::get_if<TransferMatrix>(&model_)) {
    if (!tf->has_delay() && tf->proper()) realization_ = realize(*tf);
  } else {
    const auto& ss = std::get<StateSpace>(model_);
    realization_ = minimal_realization(ss);
    if (realization_->states() != ss.states()) {
      warnings_.push_back("realization is not minimal; " + std::to_string(ss.states() - realization_->states()) +
                          " state(s) removed for the inverse route");
    }
  }
}

GainPair FrequencyGainProvider::gains(double alpha) const {
  GainPair g = mode_ == GainMode::soft
                   ? soft_gains(model_, alpha, grid_)
                   : hard_gains(model_, alpha, grid_, realization_ ? &*realization_ : nullptr);
  g.warnings.insert(g.warnings.end(), warnings_.begin(), warnings_.end());
  return g;
}

ProviderInfo FrequencyGainProvider::info() const {
  ProviderInfo i;
  i.kind = std::holds_alternative<TransferMatrix>(model_) ? "tf" : "ss";
  i.mode = mode_;
  i.method = "frequency";
  i.scale = grid_.scale;
  i.center = 0.0;
  return i;
}

}  // namespace srg
