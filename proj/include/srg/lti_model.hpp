#pragma once

// Continuous-time LTI operators: transfer matrices whose entries are
// rational functions times a pure delay, and state-space quadruples.

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "srg/polynomial.hpp"

namespace srg {

using Complex = std::complex<double>;

enum class PoleClass { stable, imaginary_axis, unstable };

struct ClassifiedPole {
  Complex location;
  PoleClass kind;
};

/// Classify by real part: |Re p| <= tol is imaginary_axis.
PoleClass classify_pole(Complex p, double tol);

/// num(s)/den(s) * exp(-delay*s). The denominator is stored monic.
class RationalDelayEntry {
 public:
  RationalDelayEntry(poly::Coeffs num, poly::Coeffs den, double delay = 0.0);

  const poly::Coeffs& num() const { return num_; }
  const poly::Coeffs& den() const { return den_; }
  double delay() const { return delay_; }

  bool is_zero() const { return poly::is_zero(num_); }
  bool proper() const;
  bool strictly_proper() const;

  /// Throws PoleError when s is within a relative 1e-10 of a pole.
  Complex eval(Complex s) const;
  /// num(s)/den(s) without the delay factor.
  Complex eval_rational(Complex s) const;
  /// Limit of the rational part as |s| grows; requires proper().
  double rational_limit() const;

  const std::vector<Complex>& poles() const { return poles_; }
  std::vector<Complex> zeros() const;

 private:
  poly::Coeffs num_;
  poly::Coeffs den_;
  double delay_;
  std::vector<Complex> poles_;
};

/// Value of a model at s = infinity.
struct InfinityLimit {
  Eigen::MatrixXcd value;
  /// Some entry is improper: the limit is unbounded.
  bool unbounded = false;
  /// A delayed entry has a nonzero rational limit: value holds the
  /// rational limits, the true limit does not exist.
  bool oscillatory = false;
};

class TransferMatrix {
 public:
  /// Row-major m x m entries.
  TransferMatrix(int m, std::vector<RationalDelayEntry> entries);
  static TransferMatrix scalar(RationalDelayEntry e);

  int size() const { return m_; }
  const RationalDelayEntry& entry(int i, int j) const {
    return entries_[static_cast<std::size_t>(i * m_ + j)];
  }
  const std::vector<RationalDelayEntry>& entries() const { return entries_; }

  Eigen::MatrixXcd eval(Complex s) const;
  InfinityLimit at_infinity() const;

  bool proper() const;
  bool has_delay() const;
  /// Smallest positive delay, or 0 when delay-free.
  double min_positive_delay() const;
  std::vector<Complex> poles() const;
  /// max(1, |poles|, |zeros|) over all entries.
  double spectral_scale() const;
  /// T - alpha I as a literal transfer matrix (the diagonal numerators are
  /// combined; delayed diagonal entries are rejected).
  TransferMatrix minus_identity(double alpha) const;

 private:
  int m_;
  std::vector<RationalDelayEntry> entries_;
};

struct MinimalityReport {
  int states = 0;
  int controllable_rank = 0;
  int observable_rank = 0;
  bool minimal() const { return controllable_rank == states && observable_rank == states; }
};

class StateSpace {
 public:
  StateSpace(Eigen::MatrixXd A, Eigen::MatrixXd B, Eigen::MatrixXd C, Eigen::MatrixXd D);

  const Eigen::MatrixXd& A() const { return A_; }
  const Eigen::MatrixXd& B() const { return B_; }
  const Eigen::MatrixXd& C() const { return C_; }
  const Eigen::MatrixXd& D() const { return D_; }
  int states() const { return static_cast<int>(A_.rows()); }
  int size() const { return static_cast<int>(D_.rows()); }

  /// C (sI - A)^{-1} B + D. Throws PoleError near an eigenvalue of A.
  Eigen::MatrixXcd eval(Complex s) const;
  const std::vector<Complex>& poles() const { return poles_; }
  /// 1e-8 max(1, ||A||).
  double axis_tolerance() const;
  MinimalityReport minimality(double rel_tol = 1e-10) const;
  /// D replaced by D - alpha I.
  StateSpace shifted(double alpha) const;

 private:
  Eigen::MatrixXd A_, B_, C_, D_;
  std::vector<Complex> poles_;
};

/// Realization of T(s)^{-1}; empty when D is singular within
/// 1e-10 (1 + sigma_max(D)).
std::optional<StateSpace> invert(const StateSpace& s);

/// Controllable canonical form of a proper delay-free entry.
StateSpace companion_realization(const RationalDelayEntry& e);
/// Block realization of a proper delay-free transfer matrix, then reduced.
StateSpace realize(const TransferMatrix& t);
/// Remove uncontrollable and unobservable states (orthogonal Krylov bases).
StateSpace minimal_realization(const StateSpace& s, double rel_tol = 1e-10);

using LtiModel = std::variant<TransferMatrix, StateSpace>;

/// A model viewed as T - alpha I.
class AlphaShift {
 public:
  AlphaShift(const LtiModel& base, double alpha) : base_(&base), alpha_(alpha) {}
  const LtiModel& base() const { return *base_; }
  double alpha() const { return alpha_; }
  Eigen::MatrixXcd eval(Complex s) const;
  std::vector<Complex> poles() const;
  /// State-space models only: the quadruple with D - alpha I.
  std::optional<StateSpace> state_space() const;

 private:
  const LtiModel* base_;
  double alpha_;
};

AlphaShift shift(const LtiModel& t, double alpha);

int model_size(const LtiModel& t);
Eigen::MatrixXcd eval(const LtiModel& t, Complex s);
std::vector<Complex> poles(const LtiModel& t);
std::vector<ClassifiedPole> classified_poles(const LtiModel& t);
/// 1e-8 max(1, ||A||) for state space; 1e-8 max(1, max |pole|) otherwise.
double axis_tolerance(const LtiModel& t);
double spectral_scale(const LtiModel& t);

}  // namespace srg
