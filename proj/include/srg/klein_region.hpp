#pragma once

// Convex subsets of the closed unit disk cut out by half-planes, with the
// unit-circle parts of the boundary kept as exact arcs.

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "srg/geometry.hpp"

namespace srg {

/// One piece of a region boundary, traversed counter-clockwise.
struct KleinEdge {
  enum class Kind { chord, arc };
  Kind kind = Kind::chord;
  Eigen::Vector2d from = Eigen::Vector2d::Zero();
  Eigen::Vector2d to = Eigen::Vector2d::Zero();
  /// Constraint that produced a chord; empty for arcs.
  std::optional<ChordSource> source;

  /// Counter-clockwise angular extent of an arc in (0, 2 pi].
  double arc_span() const;
};

class KleinChordRegion {
 public:
  enum class Shape { disk, empty, point, cycle };

  /// The closed unit disk.
  KleinChordRegion() = default;

  /// Intersect with a half-plane. Points within eps of the line count as
  /// inside, so coincident opposite chords leave a segment.
  void clip(const HalfPlane& h, double eps = 1e-12);

  Shape shape() const { return shape_; }
  bool empty() const { return shape_ == Shape::empty; }
  const std::vector<HalfPlane>& constraints() const { return constraints_; }
  /// Boundary cycle; only meaningful for Shape::cycle.
  const std::vector<KleinEdge>& edges() const { return edges_; }
  /// Location of a Shape::point region.
  const Eigen::Vector2d& point() const { return point_; }

  bool contains(const Eigen::Vector2d& w, double tol = 1e-9) const;

 private:
  void clip_disk(const HalfPlane& h, double eps);
  void clip_cycle(const HalfPlane& h, double eps);

  Shape shape_ = Shape::disk;
  std::vector<HalfPlane> constraints_;
  std::vector<KleinEdge> edges_;
  Eigen::Vector2d point_ = Eigen::Vector2d::Zero();
};

KleinChordRegion intersect_region(std::span<const HalfPlane> chords);

/// Boundary of a Klein region mapped back to the extended plane.
///
/// The upper-branch image of the boundary cycle is stored first
/// (upper_count points), followed by its mirror image in reverse order, so
/// the whole sequence is a closed path symmetric about the real axis.
struct BoundaryPath {
  std::vector<ExtComplex> points;
  std::size_t upper_count = 0;
  bool whole_plane = false;
  bool empty = false;

  bool contains_infinity() const;
  /// The closed loop in the upper half-plane.
  std::vector<ExtComplex> upper_loop() const;
  /// Mirror of upper_loop().
  std::vector<ExtComplex> lower_loop() const;
};

BoundaryPath region_boundary_to_plane(const KleinChordRegion& r,
                                      int samples_per_edge);

}  // namespace srg
