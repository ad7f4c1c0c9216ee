#pragma once

// Sweep an alpha grid over a gain provider and intersect the annuli.

#include <string>
#include <vector>

#include "srg/gains.hpp"
#include "srg/geometry.hpp"
#include "srg/klein_region.hpp"

namespace srg {

/// alpha_k = center + scale tan(theta_k), theta_k uniform on
/// (-pi/2 + delta, pi/2 - delta), delta = pi / (4n). Symmetric about center.
std::vector<double> make_alpha_grid(int n, double scale = 1.0, double center = 0.0);

/// Worker count from SRG_THREADS, else the hardware concurrency.
int worker_count();

struct DroppedAlpha {
  double alpha;
  std::string stage;
  std::string message;
};

struct SrgRegion {
  /// Sorted ascending; only annuli whose gains were obtained.
  std::vector<double> alpha;
  std::vector<GainPair> gains;
  bool includes_infinity = false;
  /// Intersection of the annuli in Klein coordinates.
  KleinChordRegion klein;
  BoundaryPath boundary;
  ProviderInfo provider;
  int requested_n = 0;
  std::vector<DroppedAlpha> dropped;
  std::vector<std::string> diagnostics;

  bool empty() const { return klein.shape() == KleinChordRegion::Shape::empty; }
  Annulus annulus(std::size_t k) const {
    return Annulus(alpha[k], gains[k].min_gain, gains[k].max_gain);
  }
};

/// Threads <= 0 uses worker_count().
SrgRegion compute_region(const GainProvider& p, int n, int threads = 0);
/// Same assembly for an explicit list of alpha values.
SrgRegion compute_region_at(const GainProvider& p, std::vector<double> alphas, int threads = 0);

/// Membership in every stored annulus.
bool region_contains(const SrgRegion& r, const ExtComplex& z, double tol = 1e-9);

/// Closed boundary path in the extended plane (upper loop, then its mirror).
BoundaryPath region_boundary(const SrgRegion& r, int samples_per_edge = 64);

/// Insert theta-midpoints in the half of the grid intervals whose adjacent
/// annuli differ most (area of the symmetric difference in the Klein disk).
SrgRegion region_refine(const SrgRegion& r, const GainProvider& p, int threads = 0);

/// 0 inside the region, else the smallest chordal distance to a densely
/// sampled boundary. Infinite (> 2) for an empty region.
double chordal_distance_to_region(const SrgRegion& r, const ExtComplex& z,
                                  int samples_per_edge = 256);

}  // namespace srg
