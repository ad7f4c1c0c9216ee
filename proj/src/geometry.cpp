#include "srg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "srg/errors.hpp"

namespace srg {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

ExtComplex::ExtComplex(Complex z) : value_(z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("ExtComplex: non-finite component; use infinity()");
  }
}

Complex ExtComplex::value() const {
  if (!value_) throw DomainError("ExtComplex: value() of the point at infinity");
  return *value_;
}

ExtComplex ExtComplex::conj() const {
  if (!value_) return infinity();
  return ExtComplex(std::conj(*value_));
}

Complex fbk(const ExtComplex& z) {
  if (z.is_infinite()) return {1.0, 0.0};
  const Complex v = z.value();
  const double n2 = std::norm(v);
  // (conj(z) - i)(z - i) = |z|^2 - 1 - 2i Re z
  if (n2 > 1e200) {
    // Avoid overflow: divide through by |z|^2.
    const double inv = 1.0 / n2;
    return {(1.0 - inv) / (1.0 + inv), -2.0 * v.real() * inv / (1.0 + inv)};
  }
  return {(n2 - 1.0) / (1.0 + n2), -2.0 * v.real() / (1.0 + n2)};
}

std::vector<ExtComplex> gbk(Complex w, double tol) {
  double r = std::abs(w);
  if (r > 1.0 + tol) {
    throw DomainError("gbk: point outside the closed unit disk");
  }
  if (r > 1.0) {
    w /= r;
    r = 1.0;
  }
  const double denom = w.real() - 1.0;
  if (std::abs(w - Complex(1.0, 0.0)) <= 1e-15) {
    return {ExtComplex::infinity()};
  }
  // 1 - |w|^2 below the rounding floor of |w|^2 is treated as on the circle.
  double slack = (1.0 - r) * (1.0 + r);
  if (slack < 4.0 * std::numeric_limits<double>::epsilon()) slack = 0.0;
  const double root = std::sqrt(slack);
  // denom < 0, so the minus branch has positive imaginary part.
  const Complex upper(w.imag() / denom, -root / denom);
  if (root == 0.0) return {ExtComplex(upper.real(), 0.0)};
  return {ExtComplex(upper), ExtComplex(std::conj(upper))};
}

ExtComplex gbk_upper(Complex w, double tol) { return gbk(w, tol).front(); }

double chordal_distance(const ExtComplex& a, const ExtComplex& b) {
  if (a.is_infinite() && b.is_infinite()) return 0.0;
  if (a.is_infinite() || b.is_infinite()) {
    const Complex z = a.is_infinite() ? b.value() : a.value();
    return 2.0 / std::sqrt(1.0 + std::norm(z));
  }
  const Complex za = a.value();
  const Complex zb = b.value();
  const double d = 2.0 * std::abs(za - zb) /
                   std::sqrt((1.0 + std::norm(za)) * (1.0 + std::norm(zb)));
  return std::min(d, 2.0);
}

Annulus::Annulus(double center, double r_min, double r_max)
    : center_(center), r_min_(r_min), r_max_(r_max) {
  if (!std::isfinite(center)) throw DomainError("Annulus: non-finite center");
  if (std::isnan(r_min) || std::isnan(r_max) || r_min < 0.0 || r_min > r_max) {
    throw DomainError("Annulus: require 0 <= r_min <= r_max");
  }
}

bool Annulus::unbounded() const { return r_max_ == kInf; }

bool Annulus::contains(const ExtComplex& z, double tol) const {
  if (z.is_infinite()) return r_max_ == kInf;
  if (r_min_ == kInf) return false;
  double scale = std::max({1.0, std::abs(center_), r_min_});
  if (r_max_ != kInf) scale = std::max(scale, r_max_);
  const double d = std::abs(z.value() - center_);
  const double slack = tol * scale;
  return d >= r_min_ - slack && d <= r_max_ + slack;
}

bool annulus_contains(const Annulus& a, const ExtComplex& z, double tol) {
  return a.contains(z, tol);
}

namespace {

// The closed disk |z - alpha| <= r maps to
//   (1 - c) u + 2 alpha v + (1 + c) <= 0,   c = alpha^2 - r^2,
// in Klein coordinates w = u + iv.
HalfPlane disk_half_plane(double alpha, double r, bool inside) {
  const double c = (alpha - r) * (alpha + r);
  Eigen::Vector2d n(1.0 - c, 2.0 * alpha);
  double b = -(1.0 + c);
  const double norm = n.norm();
  n /= norm;
  b /= norm;
  HalfPlane h;
  if (inside) {
    h.normal = n;
    h.offset = b;
  } else {
    h.normal = -n;
    h.offset = -b;
  }
  return h;
}

}  // namespace

std::vector<HalfPlane> annulus_to_chords(const Annulus& a) {
  std::vector<HalfPlane> out;
  const double alpha = a.center();
  if (a.r_max() != kInf) {
    HalfPlane h = disk_half_plane(alpha, a.r_max(), /*inside=*/true);
    h.source = {alpha, ChordSource::Boundary::outer};
    out.push_back(h);
  }
  if (a.r_min() == kInf) {
    // |z - alpha| >= inf leaves only infinity: the tangent u >= 1.
    HalfPlane h;
    h.normal = {-1.0, 0.0};
    h.offset = -1.0;
    h.source = {alpha, ChordSource::Boundary::inner};
    out.push_back(h);
  } else if (a.r_min() > 0.0) {
    HalfPlane h = disk_half_plane(alpha, a.r_min(), /*inside=*/false);
    h.source = {alpha, ChordSource::Boundary::inner};
    out.push_back(h);
  }
  return out;
}

}  // namespace srg
