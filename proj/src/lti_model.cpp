#include "srg/lti_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "srg/errors.hpp"

namespace srg {

namespace {

constexpr double kPoleRel = 1e-10;

void check_pole_distance(Complex s, const std::vector<Complex>& poles) {
  for (const Complex& p : poles) {
    if (std::abs(s - p) <= kPoleRel * std::max(1.0, std::abs(p))) {
      throw PoleError("evaluation at a pole (" + std::to_string(p.real()) + ", " +
                          std::to_string(p.imag()) + ")",
                      p);
    }
  }
}

std::vector<Complex> eigenvalues(const Eigen::MatrixXd& A) {
  if (A.rows() == 0) return {};
  Eigen::EigenSolver<Eigen::MatrixXd> es(A, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw NumericError("eigenvalue iteration did not converge");
  return {es.eigenvalues().begin(), es.eigenvalues().end()};
}

bool all_finite(const Eigen::MatrixXd& M) { return M.allFinite(); }

}  // namespace

PoleClass classify_pole(Complex p, double tol) {
  if (std::abs(p.real()) <= tol) return PoleClass::imaginary_axis;
  return p.real() < 0.0 ? PoleClass::stable : PoleClass::unstable;
}

RationalDelayEntry::RationalDelayEntry(poly::Coeffs num, poly::Coeffs den, double delay)
    : delay_(delay) {
  const int dd = poly::degree(den);
  if (dd < 0) throw ModelError("denominator is identically zero");
  if (!std::isfinite(delay) || delay < 0.0) throw ModelError("delay must be finite and >= 0");
  for (double c : num) {
    if (!std::isfinite(c)) throw ModelError("non-finite numerator coefficient");
  }
  for (double c : den) {
    if (!std::isfinite(c)) throw ModelError("non-finite denominator coefficient");
  }
  const double lead = den[static_cast<std::size_t>(dd)];
  den_ = poly::scale(poly::trimmed(den), 1.0 / lead);
  den_.back() = 1.0;
  num_ = poly::scale(poly::trimmed(num), 1.0 / lead);
  if (num_.empty()) num_ = {0.0};
  poles_ = poly::roots(den_);
}

bool RationalDelayEntry::proper() const {
  return poly::degree(num_) <= poly::degree(den_);
}

bool RationalDelayEntry::strictly_proper() const {
  return poly::degree(num_) < poly::degree(den_);
}

Complex RationalDelayEntry::eval_rational(Complex s) const {
  check_pole_distance(s, poles_);
  const Complex d = poly::eval(den_, s);
  if (d == 0.0) throw PoleError("evaluation at a pole", s);
  return poly::eval(num_, s) / d;
}

Complex RationalDelayEntry::eval(Complex s) const {
  Complex v = eval_rational(s);
  if (delay_ > 0.0 && v != 0.0) v *= std::exp(-delay_ * s);
  return v;
}

double RationalDelayEntry::rational_limit() const {
  if (!proper()) throw DomainError("rational_limit of an improper entry");
  if (poly::degree(num_) < poly::degree(den_)) return 0.0;
  return num_[den_.size() - 1];
}

std::vector<Complex> RationalDelayEntry::zeros() const {
  if (poly::degree(num_) < 1) return {};
  return poly::roots(num_);
}

TransferMatrix::TransferMatrix(int m, std::vector<RationalDelayEntry> entries)
    : m_(m), entries_(std::move(entries)) {
  if (m < 1) throw ModelError("transfer matrix size must be >= 1");
  if (entries_.size() != static_cast<std::size_t>(m) * static_cast<std::size_t>(m)) {
    throw ModelError("transfer matrix must be square with m*m entries");
  }
}

TransferMatrix TransferMatrix::scalar(RationalDelayEntry e) {
  return TransferMatrix(1, {std::move(e)});
}

Eigen::MatrixXcd TransferMatrix::eval(Complex s) const {
  Eigen::MatrixXcd out(m_, m_);
  for (int i = 0; i < m_; ++i) {
    for (int j = 0; j < m_; ++j) out(i, j) = entry(i, j).eval(s);
  }
  return out;
}

InfinityLimit TransferMatrix::at_infinity() const {
  InfinityLimit lim;
  lim.value = Eigen::MatrixXcd::Zero(m_, m_);
  for (int i = 0; i < m_; ++i) {
    for (int j = 0; j < m_; ++j) {
      const RationalDelayEntry& e = entry(i, j);
      if (!e.proper()) {
        lim.unbounded = true;
        continue;
      }
      const double v = e.rational_limit();
      lim.value(i, j) = v;
      if (v != 0.0 && e.delay() > 0.0) lim.oscillatory = true;
    }
  }
  return lim;
}

bool TransferMatrix::proper() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const RationalDelayEntry& e) { return e.proper(); });
}

bool TransferMatrix::has_delay() const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [](const RationalDelayEntry& e) { return e.delay() > 0.0 && !e.is_zero(); });
}

double TransferMatrix::min_positive_delay() const {
  double best = 0.0;
  for (const auto& e : entries_) {
    if (e.delay() > 0.0 && !e.is_zero() && (best == 0.0 || e.delay() < best)) best = e.delay();
  }
  return best;
}

std::vector<Complex> TransferMatrix::poles() const {
  std::vector<Complex> out;
  for (const auto& e : entries_) {
    if (e.is_zero()) continue;
    out.insert(out.end(), e.poles().begin(), e.poles().end());
  }
  return out;
}

double TransferMatrix::spectral_scale() const {
  double rho = 1.0;
  for (const auto& e : entries_) {
    if (e.is_zero()) continue;
    for (const Complex& p : e.poles()) rho = std::max(rho, std::abs(p));
    for (const Complex& z : e.zeros()) rho = std::max(rho, std::abs(z));
  }
  return rho;
}

TransferMatrix TransferMatrix::minus_identity(double alpha) const {
  std::vector<RationalDelayEntry> out = entries_;
  if (alpha == 0.0) return TransferMatrix(m_, out);
  for (int i = 0; i < m_; ++i) {
    const RationalDelayEntry& e = entry(i, i);
    if (e.delay() > 0.0 && !e.is_zero()) {
      throw ModelError("minus_identity: delayed diagonal entry has no rational form");
    }
    poly::Coeffs num = poly::add(e.num(), poly::scale(e.den(), -alpha));
    out[static_cast<std::size_t>(i * m_ + i)] = RationalDelayEntry(num, e.den(), 0.0);
  }
  return TransferMatrix(m_, std::move(out));
}

StateSpace::StateSpace(Eigen::MatrixXd A, Eigen::MatrixXd B, Eigen::MatrixXd C,
                       Eigen::MatrixXd D)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), D_(std::move(D)) {
  const auto n = A_.rows();
  const auto m = D_.rows();
  if (A_.cols() != n) throw ModelError("A must be square");
  if (m < 1 || D_.cols() != m) throw ModelError("D must be square and nonempty");
  if (B_.rows() != n || B_.cols() != m) throw ModelError("B must be n x m");
  if (C_.rows() != m || C_.cols() != n) throw ModelError("C must be m x n");
  if (!all_finite(A_) || !all_finite(B_) || !all_finite(C_) || !all_finite(D_)) {
    throw ModelError("state-space matrices must be finite");
  }
  poles_ = eigenvalues(A_);
}

Eigen::MatrixXcd StateSpace::eval(Complex s) const {
  const auto n = A_.rows();
  if (n == 0) return D_.cast<Complex>();
  check_pole_distance(s, poles_);
  Eigen::MatrixXcd M = -A_.cast<Complex>();
  M.diagonal().array() += s;
  const Eigen::MatrixXcd X = M.partialPivLu().solve(B_.cast<Complex>());
  return C_.cast<Complex>() * X + D_.cast<Complex>();
}

double StateSpace::axis_tolerance() const {
  const double a =
      A_.rows() == 0 ? 0.0 : Eigen::JacobiSVD<Eigen::MatrixXd>(A_).singularValues()(0);
  return 1e-8 * std::max(1.0, a);
}

namespace {

// Orthonormal basis of the Krylov space span{B, AB, A^2 B, ...}.
Eigen::MatrixXd krylov_basis(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                             double rel_tol) {
  const auto n = A.rows();
  Eigen::MatrixXd V(n, 0);
  const double a_scale = std::max(A.norm(), std::numeric_limits<double>::min());
  const double b_scale = std::max(B.norm(), std::numeric_limits<double>::min());
  std::vector<Eigen::VectorXd> frontier;
  for (Eigen::Index j = 0; j < B.cols(); ++j) frontier.push_back(B.col(j));
  double threshold = rel_tol * b_scale;
  while (!frontier.empty() && V.cols() < n) {
    std::vector<Eigen::VectorXd> added;
    for (Eigen::VectorXd v : frontier) {
      for (int pass = 0; pass < 2; ++pass) {
        if (V.cols() > 0) v -= V * (V.transpose() * v);
      }
      const double r = v.norm();
      if (r <= threshold) continue;
      v /= r;
      V.conservativeResize(n, V.cols() + 1);
      V.col(V.cols() - 1) = v;
      added.push_back(v);
      if (V.cols() == n) break;
    }
    frontier.clear();
    for (const auto& v : added) frontier.push_back(A * v);
    threshold = rel_tol * a_scale;
  }
  return V;
}

}  // namespace

MinimalityReport StateSpace::minimality(double rel_tol) const {
  MinimalityReport r;
  r.states = states();
  if (r.states == 0) return r;
  r.controllable_rank = static_cast<int>(krylov_basis(A_, B_, rel_tol).cols());
  r.observable_rank =
      static_cast<int>(krylov_basis(A_.transpose(), C_.transpose(), rel_tol).cols());
  return r;
}

StateSpace StateSpace::shifted(double alpha) const {
  Eigen::MatrixXd D = D_;
  D.diagonal().array() -= alpha;
  return StateSpace(A_, B_, C_, D);
}

std::optional<StateSpace> invert(const StateSpace& s) {
  const Eigen::MatrixXd& D = s.D();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(D);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (smin <= 1e-10 * (1.0 + smax)) return std::nullopt;
  const Eigen::MatrixXd Dinv = D.fullPivLu().inverse();
  return StateSpace(s.A() - s.B() * Dinv * s.C(), s.B() * Dinv, -Dinv * s.C(), Dinv);
}

StateSpace companion_realization(const RationalDelayEntry& e) {
  if (e.delay() > 0.0 && !e.is_zero()) {
    throw ModelError("delayed entries have no finite-dimensional realization");
  }
  if (!e.proper()) throw ModelError("improper entry has no state-space realization");
  const poly::Coeffs& den = e.den();
  const int n = static_cast<int>(den.size()) - 1;
  poly::Coeffs num = e.num();
  num.resize(static_cast<std::size_t>(n + 1), 0.0);
  const double d = num[static_cast<std::size_t>(n)];
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, 1);
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(1, n);
  for (int i = 0; i + 1 < n; ++i) A(i, i + 1) = 1.0;
  for (int j = 0; j < n; ++j) {
    A(n - 1, j) = -den[static_cast<std::size_t>(j)];
    C(0, j) = num[static_cast<std::size_t>(j)] - d * den[static_cast<std::size_t>(j)];
  }
  if (n > 0) B(n - 1, 0) = 1.0;
  return StateSpace(A, B, C, Eigen::MatrixXd::Constant(1, 1, d));
}

StateSpace realize(const TransferMatrix& t) {
  const int m = t.size();
  std::vector<StateSpace> parts;
  int n = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      parts.push_back(companion_realization(t.entry(i, j)));
      n += parts.back().states();
    }
  }
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, m);
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(m, n);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(m, m);
  int off = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const StateSpace& p = parts[static_cast<std::size_t>(i * m + j)];
      const int k = p.states();
      A.block(off, off, k, k) = p.A();
      B.block(off, j, k, 1) = p.B();
      C.block(i, off, 1, k) = p.C();
      D(i, j) = p.D()(0, 0);
      off += k;
    }
  }
  return minimal_realization(StateSpace(A, B, C, D));
}

StateSpace minimal_realization(const StateSpace& s, double rel_tol) {
  if (s.states() == 0) return s;
  const Eigen::MatrixXd Vc = krylov_basis(s.A(), s.B(), rel_tol);
  const Eigen::MatrixXd Ac = Vc.transpose() * s.A() * Vc;
  const Eigen::MatrixXd Bc = Vc.transpose() * s.B();
  const Eigen::MatrixXd Cc = s.C() * Vc;
  const Eigen::MatrixXd Vo = krylov_basis(Ac.transpose(), Cc.transpose(), rel_tol);
  return StateSpace(Vo.transpose() * Ac * Vo, Vo.transpose() * Bc, Cc * Vo, s.D());
}

Eigen::MatrixXcd AlphaShift::eval(Complex s) const {
  Eigen::MatrixXcd v = srg::eval(*base_, s);
  v.diagonal().array() -= alpha_;
  return v;
}

std::vector<Complex> AlphaShift::poles() const { return srg::poles(*base_); }

std::optional<StateSpace> AlphaShift::state_space() const {
  if (const auto* ss = std::get_if<StateSpace>(base_)) return ss->shifted(alpha_);
  return std::nullopt;
}

AlphaShift shift(const LtiModel& t, double alpha) { return AlphaShift(t, alpha); }

int model_size(const LtiModel& t) {
  return std::visit([](const auto& m) { return m.size(); }, t);
}

Eigen::MatrixXcd eval(const LtiModel& t, Complex s) {
  return std::visit([&](const auto& m) { return m.eval(s); }, t);
}

std::vector<Complex> poles(const LtiModel& t) {
  return std::visit([](const auto& m) { return std::vector<Complex>(m.poles()); }, t);
}

double axis_tolerance(const LtiModel& t) {
  if (const auto* ss = std::get_if<StateSpace>(&t)) return ss->axis_tolerance();
  double scale = 1.0;
  for (const Complex& p : poles(t)) scale = std::max(scale, std::abs(p));
  return 1e-8 * scale;
}

std::vector<ClassifiedPole> classified_poles(const LtiModel& t) {
  const double tol = axis_tolerance(t);
  std::vector<ClassifiedPole> out;
  for (const Complex& p : poles(t)) out.push_back({p, classify_pole(p, tol)});
  return out;
}

double spectral_scale(const LtiModel& t) {
  if (const auto* tf = std::get_if<TransferMatrix>(&t)) return tf->spectral_scale();
  const auto& ss = std::get<StateSpace>(t);
  double rho = 1.0;
  for (const Complex& p : ss.poles()) rho = std::max(rho, std::abs(p));
  if (auto inv = invert(ss)) {
    for (const Complex& z : inv->poles()) rho = std::max(rho, std::abs(z));
  }
  return rho;
}

}  // namespace srg
