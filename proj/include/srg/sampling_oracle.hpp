#pragma once

// Brute-force SRG points from simulated input/output pairs and from the
// frequency response. Used to check regions from below.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "srg/geometry.hpp"
#include "srg/lti_model.hpp"

namespace srg {

enum class InputFamily { band_limited, exponential, sinusoid, mixed };

const char* to_string(InputFamily f);

struct SimConfig {
  double horizon = 20.0;
  double step = 1e-2;
  InputFamily family = InputFamily::mixed;
  int count = 100;
  std::uint64_t seed = 0;
  /// Largest input frequency; 0 picks 4 times the spectral scale.
  double omega_max = 0.0;

  /// Throws DomainError unless step > 0 and horizon >= 100 step.
  void validate() const;
  int samples() const;
};

/// Zero-order-hold simulation from rest. Column k of u is the input on
/// [k h, (k+1) h); column k of the result is the output at t = k h.
/// Throws NumericError when the state overflows.
Eigen::MatrixXcd simulate_response(const StateSpace& s, const Eigen::MatrixXcd& u, double h);

/// Quadrature weights on the sample grid t_k = k h, k = 0..n-1.
/// Trapezoid with Gregory end corrections (all weights positive).
Eigen::VectorXd quadrature_weights(int n, double h);

/// Weighted inner product sum_k w_k <a_k, b_k> of sampled signals.
Complex sampled_inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, const Eigen::VectorXd& w);

/// Conjugate SRG points of one truncated pair, upper first. Empty when
/// the input norm is below 1e-12.
std::vector<ExtComplex> srg_points_of_pair(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& y, double h);

/// The k-th input of cfg (channels x samples).
Eigen::MatrixXcd make_input(const SimConfig& cfg, int channels, double scale, int k);

std::vector<ExtComplex> srg_points_from_sim(const StateSpace& s, const SimConfig& cfg);

struct FrequencySamples {
  std::vector<ExtComplex> points;
  std::vector<std::string> notes;
};

/// For each omega and direction v: the SRG point of (v, T(i omega) v) and
/// its conjugate. Frequencies at a pole are skipped with a note.
FrequencySamples srg_points_from_frequency(const LtiModel& t, const std::vector<double>& omega,
                                           const std::vector<Eigen::VectorXcd>& directions);

}  // namespace srg
