#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "srg/gains.hpp"
#include "srg/geometry.hpp"

namespace srg {

/// (sigma_min, sigma_max) of M - alpha I.
GainPair matrix_gains(const Eigen::MatrixXcd& M, double alpha);

/// SRG points of M from random complex unit inputs; both conjugates per
/// input, so 2 * count points. Input k uses a generator seeded by (seed, k).
std::vector<ExtComplex> srg_sample_matrix(const Eigen::MatrixXcd& M, int count,
                                          std::uint64_t seed);

/// SRG point of the pair (u, y): (|y|/|u|) exp(+-i angle(u, y)), upper first.
std::pair<Complex, Complex> srg_point(const Eigen::VectorXcd& u, const Eigen::VectorXcd& y);

class MatrixGainProvider : public GainProvider {
 public:
  explicit MatrixGainProvider(Eigen::MatrixXcd M);
  GainPair gains(double alpha) const override;
  ProviderInfo info() const override;
  const Eigen::MatrixXcd& matrix() const { return M_; }

 private:
  Eigen::MatrixXcd M_;
  double center_;
  double scale_;
};

}  // namespace srg
