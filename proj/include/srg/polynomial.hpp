#pragma once

// Real polynomials stored as ascending coefficient vectors.

#include <complex>
#include <vector>

namespace srg::poly {

using Coeffs = std::vector<double>;

/// Degree ignoring exact-zero leading coefficients; -1 for the zero polynomial.
int degree(const Coeffs& p);
bool is_zero(const Coeffs& p);

std::complex<double> eval(const Coeffs& p, std::complex<double> s);

/// Roots with multiplicity, from the eigenvalues of the companion matrix.
std::vector<std::complex<double>> roots(const Coeffs& p);

Coeffs add(const Coeffs& a, const Coeffs& b);
Coeffs scale(const Coeffs& a, double k);
/// Drop exact-zero leading coefficients.
Coeffs trimmed(const Coeffs& p);

}  // namespace srg::poly
