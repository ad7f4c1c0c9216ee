#include "srg/bounded_real.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "srg/errors.hpp"

namespace srg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxSteps = 200;

double sigma_max(const Eigen::MatrixXd& M) {
  if (M.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Eigen::MatrixXd>(M).singularValues()(0);
}

double sigma_max_at(const StateSpace& s, double omega) {
  const Eigen::MatrixXcd v = s.eval({0.0, omega});
  if (v.size() == 1) return std::abs(v(0, 0));
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(v).singularValues()(0);
}

Witness witness(Witness::Kind kind, Complex at, std::string note = {}) {
  Witness w;
  w.kind = kind;
  w.location = at;
  w.note = std::move(note);
  return w;
}

void minimality_warning(const StateSpace& s, std::vector<std::string>& out) {
  const MinimalityReport r = s.minimality();
  if (r.minimal()) return;
  out.push_back("realization not minimal (controllable rank " + std::to_string(r.controllable_rank) +
                ", observable rank " + std::to_string(r.observable_rank) + " of " +
                std::to_string(r.states) + ")");
}

}  // namespace

bool hamiltonian_has_imaginary_eigenvalue(const StateSpace& s, double gamma,
                                          std::vector<double>* omegas) {
  const int n = s.states();
  if (n == 0) return false;
  const int m = s.size();
  const Eigen::MatrixXd& A = s.A();
  const Eigen::MatrixXd& B = s.B();
  const Eigen::MatrixXd& C = s.C();
  const Eigen::MatrixXd& D = s.D();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(m, m);
  const Eigen::MatrixXd R = D.transpose() * D - gamma * gamma * I;
  const Eigen::MatrixXd S = D * D.transpose() - gamma * gamma * I;
  // Both are negative definite for gamma > sigma_max(D).
  const Eigen::MatrixXd Rinv = R.ldlt().solve(I);
  const Eigen::MatrixXd Sinv = S.ldlt().solve(I);
  Eigen::MatrixXd H(2 * n, 2 * n);
  H.topLeftCorner(n, n) = A - B * Rinv * D.transpose() * C;
  H.topRightCorner(n, n) = -gamma * B * Rinv * B.transpose();
  H.bottomLeftCorner(n, n) = gamma * C.transpose() * Sinv * C;
  H.bottomRightCorner(n, n) = -A.transpose() + C.transpose() * D * Rinv * B.transpose();
  if (!H.allFinite()) throw NumericError("Hamiltonian is not finite at gamma = " + std::to_string(gamma));
  Eigen::EigenSolver<Eigen::MatrixXd> es(H, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw NumericError("Hamiltonian eigenvalues did not converge");
  const double threshold = 1e-8 * std::max(1.0, H.norm());
  bool found = false;
  for (const Complex& l : es.eigenvalues()) {
    if (std::abs(l.real()) <= threshold) {
      found = true;
      if (omegas != nullptr) omegas->push_back(std::abs(l.imag()));
    }
  }
  return found;
}

BrlResult brl_max_gain(const BrlQuery& q) {
  if (q.model == nullptr) throw DomainError("brl_max_gain: no model");
  BrlResult res;
  minimality_warning(*q.model, res.warnings);
  const StateSpace s = q.model->shifted(q.alpha);
  const double tol = s.axis_tolerance();
  const Complex* worst = nullptr;
  for (const Complex& p : s.poles()) {
    if (std::abs(p.real()) <= tol) {
      res.value = kInf;
      res.witness = witness(Witness::Kind::pole, p, "imaginary-axis eigenvalue of A");
      return res;
    }
    if (worst == nullptr || p.real() > worst->real()) worst = &p;
  }
  if (q.mode == GainMode::hard && worst != nullptr && worst->real() > tol) {
    res.value = kInf;
    res.witness = witness(Witness::Kind::pole, *worst, "eigenvalue of A in the right half-plane");
    return res;
  }

  const double d_norm = sigma_max(s.D());
  double lo = d_norm;
  res.witness = witness(Witness::Kind::infinity_limit, {});
  if (s.states() == 0) {
    res.value = lo;
    return res;
  }
  // Coarse lower bound from the imaginary axis, including the resonances.
  double rho = 1.0, dist = kInf;
  std::vector<double> probe{0.0};
  for (const Complex& p : s.poles()) {
    rho = std::max(rho, std::abs(p));
    dist = std::min(dist, std::abs(p.real()));
    probe.push_back(std::abs(p.imag()));
  }
  for (int k = 0; k <= 60; ++k) probe.push_back(rho * std::pow(10.0, -3.0 + 6.0 * k / 60.0));
  for (double w : probe) {
    const double v = sigma_max_at(s, w);
    if (v > lo) {
      lo = v;
      res.witness = witness(Witness::Kind::frequency, {0.0, w});
    }
  }
  if (lo == 0.0) {
    res.value = 0.0;
    return res;
  }

  double hi = std::max(d_norm + sigma_max(s.C()) * sigma_max(s.B()) / dist, lo * (1.0 + 1e-3));
  int steps = 0;
  while (hamiltonian_has_imaginary_eigenvalue(s, hi)) {
    lo = std::max(lo, hi);
    hi *= 2.0;
    if (++steps > kMaxSteps) throw NumericError("bounded-real bracket did not close");
  }
  while (hi - lo > 2.0 * q.tolerance * lo) {
    if (++steps > kMaxSteps) {
      throw NumericError("bounded-real bisection did not converge in 200 steps");
    }
    const double gamma = 0.5 * (lo + hi);
    std::vector<double> omegas;
    if (!hamiltonian_has_imaginary_eigenvalue(s, gamma, &omegas)) {
      hi = gamma;
      continue;
    }
    lo = std::max(lo, gamma);
    for (double w : omegas) {
      const double v = sigma_max_at(s, w);
      if (v > hi * (1.0 + 1e-9)) {
        throw NumericError("Hamiltonian test not monotone in gamma: gain " + std::to_string(v) +
                           " above certified bound " + std::to_string(hi));
      }
      if (v > lo) {
        lo = v;
        res.witness = witness(Witness::Kind::frequency, {0.0, w});
      }
    }
  }
  res.value = lo;
  res.iterations = steps;
  return res;
}

BrlResult brl_min_gain(const BrlQuery& q) {
  if (q.model == nullptr) throw DomainError("brl_min_gain: no model");
  BrlResult res;
  const StateSpace s = q.model->shifted(q.alpha);
  const auto inv = invert(s);
  if (!inv) {
    minimality_warning(*q.model, res.warnings);
    res.value = 0.0;
    res.witness = witness(Witness::Kind::singular_feedthrough, {}, "D - alpha I singular");
    return res;
  }
  if (q.mode == GainMode::hard) {
    const double tol = inv->axis_tolerance();
    for (const Complex& z : inv->poles()) {
      if (z.real() >= -tol) {
        minimality_warning(*q.model, res.warnings);
        res.value = 0.0;
        res.witness = witness(Witness::Kind::zero, z, "zero of T - alpha I in the closed right half-plane");
        return res;
      }
    }
  }
  const BrlResult r = brl_max_gain({&*inv, 0.0, q.mode, q.tolerance});
  res.iterations = r.iterations;
  res.warnings = r.warnings;
  if (std::isinf(r.value)) {
    res.value = 0.0;
    res.witness = witness(Witness::Kind::zero, r.witness.location, "zero of T - alpha I on the imaginary axis");
    return res;
  }
  res.value = 1.0 / r.value;
  res.witness = r.witness;
  return res;
}

BrlGainProvider::BrlGainProvider(StateSpace model, GainMode mode, double tolerance)
    : model_(std::move(model)), mode_(mode), tolerance_(tolerance),
      scale_(spectral_scale(LtiModel(model_))) {
  minimality_warning(model_, warnings_);
}

GainPair BrlGainProvider::gains(double alpha) const {
  const BrlQuery q{&model_, alpha, mode_, tolerance_};
  const BrlResult hi = brl_max_gain(q);
  const BrlResult lo = brl_min_gain(q);
  GainPair g;
  g.max_gain = hi.value;
  g.max_witness = hi.witness;
  g.min_gain = std::min(lo.value, hi.value);
  g.min_witness = lo.witness;
  g.warnings = warnings_;
  return g;
}

ProviderInfo BrlGainProvider::info() const {
  ProviderInfo i;
  i.kind = "ss";
  i.mode = mode_;
  i.method = "bounded-real";
  i.scale = scale_;
  i.center = 0.0;
  return i;
}

}  // namespace srg
