#include "srg/matrix_gains.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "srg/errors.hpp"

namespace srg {

GainPair matrix_gains(const Eigen::MatrixXcd& M, double alpha) {
  if (M.rows() != M.cols() || M.rows() == 0) throw DomainError("matrix_gains: square matrix required");
  Eigen::MatrixXcd S = M;
  S.diagonal().array() -= alpha;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(S);
  const auto& sv = svd.singularValues();
  if (!sv.allFinite()) throw NumericError("matrix_gains: SVD produced non-finite values");
  GainPair g;
  g.max_gain = sv(0);
  g.min_gain = sv(sv.size() - 1);
  g.min_witness.kind = Witness::Kind::singular_vector;
  g.max_witness.kind = Witness::Kind::singular_vector;
  return g;
}

std::pair<Complex, Complex> srg_point(const Eigen::VectorXcd& u, const Eigen::VectorXcd& y) {
  const double nu = u.norm();
  const double ny = y.norm();
  if (ny == 0.0) return {0.0, 0.0};
  // Half-angle form of acos(Re<y,u> / (|y||u|)); acos loses digits near 0.
  const Eigen::VectorXcd uh = u / nu;
  const Eigen::VectorXcd yh = y / ny;
  const double angle = 2.0 * std::atan2((yh - uh).norm(), (yh + uh).norm());
  const Complex z = std::polar(ny / nu, angle);
  return {z, std::conj(z)};
}

std::vector<ExtComplex> srg_sample_matrix(const Eigen::MatrixXcd& M, int count,
                                          std::uint64_t seed) {
  if (count <= 0) throw DomainError("srg_sample_matrix: count must be positive");
  std::vector<ExtComplex> out;
  out.reserve(2 * static_cast<std::size_t>(count));
  const auto m = M.rows();
  for (int k = 0; k < count; ++k) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(k)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> g;
    Eigen::VectorXcd u(m);
    for (Eigen::Index i = 0; i < m; ++i) u(i) = Complex(g(rng), g(rng));
    u /= u.norm();
    const auto [hi, lo] = srg_point(u, M * u);
    out.emplace_back(hi);
    out.emplace_back(lo);
  }
  return out;
}

MatrixGainProvider::MatrixGainProvider(Eigen::MatrixXcd M) : M_(std::move(M)) {
  if (M_.rows() != M_.cols() || M_.rows() == 0) throw DomainError("matrix provider: square matrix required");
  if (!M_.allFinite()) throw DomainError("matrix provider: non-finite entries");
  // Center the alpha grid on the real range of the numerical range.
  const Eigen::MatrixXcd H = 0.5 * (M_ + M_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  center_ = 0.5 * (ev.minCoeff() + ev.maxCoeff());
  Eigen::MatrixXcd shifted = M_;
  shifted.diagonal().array() -= center_;
  const double spread = Eigen::JacobiSVD<Eigen::MatrixXcd>(shifted).singularValues()(0);
  scale_ = spread > 0.0 ? spread : 1.0;
}

GainPair MatrixGainProvider::gains(double alpha) const { return matrix_gains(M_, alpha); }

ProviderInfo MatrixGainProvider::info() const {
  ProviderInfo i;
  i.kind = "matrix";
  i.mode = GainMode::soft;
  i.method = "svd";
  i.scale = scale_;
  i.center = center_;
  return i;
}

}  // namespace srg
