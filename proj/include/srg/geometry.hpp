#pragma once

// Extended complex plane, the Beltrami-Klein map and annuli centred on the
// real axis.

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Core>

namespace srg {

using Complex = std::complex<double>;

/// A point of the extended complex plane C u {inf}.
class ExtComplex {
 public:
  /// Finite point. Throws DomainError on non-finite components.
  ExtComplex(Complex z);  // NOLINT(runtime/explicit)
  ExtComplex(double re, double im = 0.0) : ExtComplex(Complex(re, im)) {}

  static ExtComplex infinity() { return ExtComplex(); }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  /// Finite value; throws DomainError for the point at infinity.
  Complex value() const;
  ExtComplex conj() const;

  friend bool operator==(const ExtComplex& a, const ExtComplex& b) {
    return a.value_ == b.value_;
  }

 private:
  ExtComplex() = default;
  std::optional<Complex> value_;
};

/// Beltrami-Klein map onto the closed unit disk. Infinity maps to 1.
Complex fbk(const ExtComplex& z);

/// Preimages of w under fbk, upper half-plane point first. One point when
/// the preimage is real or infinite. Points with |w| in (1, 1 + tol] are
/// projected onto the circle; beyond that a DomainError is thrown.
std::vector<ExtComplex> gbk(Complex w, double tol = 1e-9);

/// The preimage of w in the closed upper half-plane (or infinity).
ExtComplex gbk_upper(Complex w, double tol = 1e-9);

/// Chordal metric on the Riemann sphere of diameter 2.
double chordal_distance(const ExtComplex& a, const ExtComplex& b);

/// Ring {alpha + z : r_min <= |z| <= r_max}; r_max may be +inf, in which case
/// the point at infinity is included. r_min = r_max = +inf denotes {inf}.
class Annulus {
 public:
  Annulus(double center, double r_min, double r_max);

  double center() const { return center_; }
  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  bool unbounded() const;

  /// Membership with absolute tolerance tol * max(1, |alpha|, radii).
  bool contains(const ExtComplex& z, double tol = 1e-9) const;

 private:
  double center_;
  double r_min_;
  double r_max_;
};

bool annulus_contains(const Annulus& a, const ExtComplex& z, double tol = 1e-9);

/// Which annulus boundary a Klein chord came from.
struct ChordSource {
  enum class Boundary { inner, outer };
  double alpha = 0.0;
  Boundary boundary = Boundary::outer;
};

/// Closed half-plane {w : normal . w <= offset} of the Klein disk, normal of
/// unit length.
struct HalfPlane {
  Eigen::Vector2d normal{1.0, 0.0};
  double offset = 1.0;
  ChordSource source;

  double signed_distance(const Eigen::Vector2d& w) const {
    return normal.dot(w) - offset;
  }
};

/// Klein image of an annulus as at most two half-planes. Degenerate bounds
/// (r_min = 0, r_max = inf) give no constraint.
std::vector<HalfPlane> annulus_to_chords(const Annulus& a);

inline Eigen::Vector2d to_vec(Complex w) { return {w.real(), w.imag()}; }
inline Complex to_complex(const Eigen::Vector2d& w) { return {w.x(), w.y()}; }

}  // namespace srg
