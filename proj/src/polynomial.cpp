#include "srg/polynomial.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

#include "srg/errors.hpp"

namespace srg::poly {

int degree(const Coeffs& p) {
  for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k) {
    if (p[static_cast<std::size_t>(k)] != 0.0) return k;
  }
  return -1;
}

bool is_zero(const Coeffs& p) { return degree(p) < 0; }

std::complex<double> eval(const Coeffs& p, std::complex<double> s) {
  std::complex<double> acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * s + *it;
  return acc;
}

std::vector<std::complex<double>> roots(const Coeffs& p) {
  const int n = degree(p);
  if (n < 0) throw DomainError("roots: zero polynomial");
  if (n == 0) return {};
  const double lead = p[static_cast<std::size_t>(n)];
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p[static_cast<std::size_t>(i)] / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericError("roots: companion eigenvalue iteration did not converge");
  }
  std::vector<std::complex<double>> out(solver.eigenvalues().begin(),
                                        solver.eigenvalues().end());
  std::sort(out.begin(), out.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

Coeffs add(const Coeffs& a, const Coeffs& b) {
  Coeffs out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Coeffs scale(const Coeffs& a, double k) {
  Coeffs out = a;
  for (double& c : out) c *= k;
  return out;
}

Coeffs trimmed(const Coeffs& p) {
  return Coeffs(p.begin(), p.begin() + (degree(p) + 1));
}

}  // namespace srg::poly
