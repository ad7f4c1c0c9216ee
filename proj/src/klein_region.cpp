#include "srg/klein_region.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace srg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kDegenerate = 1e-14;
constexpr double kGap = 1e-11;

double angle_of(const Eigen::Vector2d& p) { return std::atan2(p.y(), p.x()); }

// Counter-clockwise angle from a to b in [0, 2 pi).
double ccw_delta(double a, double b) {
  double d = std::fmod(b - a, kTwoPi);
  if (d < 0.0) d += kTwoPi;
  return d;
}

Eigen::Vector2d on_circle(double theta) {
  return {std::cos(theta), std::sin(theta)};
}

KleinEdge make_chord(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                     const ChordSource& src) {
  KleinEdge e;
  e.kind = KleinEdge::Kind::chord;
  e.from = a;
  e.to = b;
  e.source = src;
  return e;
}

// Arc of the unit circle from a counter-clockwise to b.
KleinEdge make_arc(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  KleinEdge e;
  e.kind = KleinEdge::Kind::arc;
  e.from = a;
  e.to = b;
  return e;
}

// Intersections of the line normal . w = offset with the unit circle.
std::vector<Eigen::Vector2d> line_circle(const HalfPlane& h) {
  const double b = h.offset;
  if (std::abs(b) >= 1.0) return {};
  const Eigen::Vector2d foot = b * h.normal;
  const Eigen::Vector2d t(-h.normal.y(), h.normal.x());
  const double half = std::sqrt(1.0 - b * b);
  return {foot + half * t, foot - half * t};
}

bool degenerate(const KleinEdge& e) {
  if (e.kind == KleinEdge::Kind::chord) return (e.to - e.from).norm() < kDegenerate;
  return e.arc_span() < kDegenerate;
}

}  // namespace

double KleinEdge::arc_span() const {
  if (kind != Kind::arc) return 0.0;
  if ((to - from).norm() < kDegenerate) {
    // Arcs are never full circles inside a cycle; a closed arc is only
    // produced by the disk shape, which has no edges.
    return 0.0;
  }
  return ccw_delta(angle_of(from), angle_of(to));
}

void KleinChordRegion::clip(const HalfPlane& h, double eps) {
  constraints_.push_back(h);
  switch (shape_) {
    case Shape::empty:
      return;
    case Shape::point:
      if (h.signed_distance(point_) > eps) shape_ = Shape::empty;
      return;
    case Shape::disk:
      clip_disk(h, eps);
      return;
    case Shape::cycle:
      clip_cycle(h, eps);
      return;
  }
}

void KleinChordRegion::clip_disk(const HalfPlane& h, double eps) {
  const double b = h.offset;
  if (b >= 1.0 - eps) return;  // line misses the disk (or grazes it)
  if (b < -1.0 - eps) {
    shape_ = Shape::empty;
    return;
  }
  if (b <= -1.0 + eps) {
    shape_ = Shape::point;
    point_ = -h.normal;
    return;
  }
  const auto q = line_circle(h);
  // Keep the arc through -normal, which lies strictly inside.
  const double inner = angle_of(-h.normal);
  const double a0 = angle_of(q[0]);
  const double a1 = angle_of(q[1]);
  Eigen::Vector2d start = q[0];
  Eigen::Vector2d end = q[1];
  if (ccw_delta(a0, inner) > ccw_delta(a0, a1)) std::swap(start, end);
  edges_.clear();
  edges_.push_back(make_arc(start, end));
  edges_.push_back(make_chord(end, start, h.source));
  shape_ = Shape::cycle;
}

void KleinChordRegion::clip_cycle(const HalfPlane& h, double eps) {
  std::vector<KleinEdge> pieces;
  const auto crossings = line_circle(h);
  Eigen::Vector2d last_seen = edges_.front().from;
  bool any_inside = false;

  for (const KleinEdge& e : edges_) {
    if (e.kind == KleinEdge::Kind::chord) {
      const double fa = h.signed_distance(e.from);
      const double fb = h.signed_distance(e.to);
      const bool ina = fa <= eps;
      const bool inb = fb <= eps;
      if (ina && inb) {
        pieces.push_back(e);
      } else if (ina) {
        const double t = fa > 0.0 ? 0.0 : fa / (fa - fb);
        KleinEdge piece = e;
        piece.to = e.from + t * (e.to - e.from);
        pieces.push_back(piece);
      } else if (inb) {
        const double t = fb > 0.0 ? 1.0 : fa / (fa - fb);
        KleinEdge piece = e;
        piece.from = e.from + t * (e.to - e.from);
        pieces.push_back(piece);
      }
      if (ina || inb) {
        any_inside = true;
        last_seen = ina ? e.from : e.to;
      }
      continue;
    }

    // Arc: split at line crossings strictly inside the arc, classify each
    // sub-arc by its midpoint.
    const double start = angle_of(e.from);
    const double span = e.arc_span();
    struct Cut {
      double t;
      Eigen::Vector2d p;
    };
    std::vector<Cut> cuts{{0.0, e.from}};
    for (const auto& q : crossings) {
      const double t = ccw_delta(start, angle_of(q));
      if (t > 1e-13 && t < span - 1e-13) cuts.push_back({t, q});
    }
    std::sort(cuts.begin(), cuts.end(),
              [](const Cut& a, const Cut& b) { return a.t < b.t; });
    cuts.push_back({span, e.to});
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double mid = start + 0.5 * (cuts[k].t + cuts[k + 1].t);
      if (h.signed_distance(on_circle(mid)) > eps) continue;
      any_inside = true;
      last_seen = cuts[k].p;
      if (!pieces.empty() && pieces.back().kind == KleinEdge::Kind::arc &&
          (pieces.back().to - cuts[k].p).norm() < kDegenerate) {
        pieces.back().to = cuts[k + 1].p;
      } else {
        pieces.push_back(make_arc(cuts[k].p, cuts[k + 1].p));
      }
    }
  }

  if (!any_inside) {
    shape_ = Shape::empty;
    edges_.clear();
    return;
  }

  std::vector<KleinEdge> kept;
  for (const KleinEdge& p : pieces) {
    if (!degenerate(p)) kept.push_back(p);
  }
  if (kept.empty()) {
    shape_ = Shape::point;
    point_ = last_seen;
    edges_.clear();
    return;
  }

  std::vector<KleinEdge> closed;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    KleinEdge cur = kept[i];
    if (!closed.empty()) cur.from = closed.back().to;
    closed.push_back(cur);
    const KleinEdge& next = kept[(i + 1) % kept.size()];
    if ((cur.to - next.from).norm() > kGap) {
      closed.push_back(make_chord(cur.to, next.from, h.source));
    }
  }
  // Close the loop exactly on the first vertex.
  if ((closed.back().to - closed.front().from).norm() <= kGap) {
    closed.back().to = closed.front().from;
  }
  std::erase_if(closed, degenerate);

  bool single_point = true;
  for (const KleinEdge& e : closed) {
    if ((e.from - closed.front().from).norm() > kGap ||
        (e.to - closed.front().from).norm() > kGap) {
      single_point = false;
      break;
    }
  }
  if (closed.empty() || single_point) {
    shape_ = Shape::point;
    point_ = closed.empty() ? last_seen : closed.front().from;
    edges_.clear();
    return;
  }
  edges_ = std::move(closed);
}

bool KleinChordRegion::contains(const Eigen::Vector2d& w, double tol) const {
  if (shape_ == Shape::empty) return false;
  if (w.norm() > 1.0 + tol) return false;
  return std::all_of(constraints_.begin(), constraints_.end(),
                     [&](const HalfPlane& h) { return h.signed_distance(w) <= tol; });
}

KleinChordRegion intersect_region(std::span<const HalfPlane> chords) {
  KleinChordRegion r;
  for (const HalfPlane& h : chords) r.clip(h);
  return r;
}

bool BoundaryPath::contains_infinity() const {
  return std::any_of(points.begin(), points.end(),
                     [](const ExtComplex& z) { return z.is_infinite(); });
}

std::vector<ExtComplex> BoundaryPath::upper_loop() const {
  return {points.begin(), points.begin() + static_cast<std::ptrdiff_t>(upper_count)};
}

std::vector<ExtComplex> BoundaryPath::lower_loop() const {
  std::vector<ExtComplex> out;
  out.reserve(upper_count);
  for (std::size_t i = 0; i < upper_count; ++i) out.push_back(points[i].conj());
  return out;
}

namespace {

void sample_edge(const KleinEdge& e, int samples, std::vector<ExtComplex>& out) {
  if (e.kind == KleinEdge::Kind::chord) {
    // Cosine spacing: gbk has a square-root profile where a chord meets the
    // unit circle, so uniform Klein steps leave coarse plane gaps there.
    for (int j = 0; j < samples; ++j) {
      const double t = 0.5 * (1.0 - std::cos(kPi * j / samples));
      out.push_back(gbk_upper(to_complex(e.from + t * (e.to - e.from))));
    }
    return;
  }
  const double start = angle_of(e.from);
  const double span = e.arc_span();
  // Parameter at which the arc passes w = 1 (the point at infinity).
  const double t_inf = ccw_delta(start, 0.0);
  bool inf_done = false;
  for (int j = 0; j < samples; ++j) {
    const double t = span * j / samples;
    const double t_next = span * (j + 1) / samples;
    if (j == 0) {
      out.push_back(gbk_upper(to_complex(e.from)));
      inf_done = out.back().is_infinite();
    } else {
      out.push_back(gbk_upper(to_complex(on_circle(start + t))));
    }
    if (!inf_done && t_inf > t && t_inf < t_next && t_inf < span) {
      out.push_back(ExtComplex::infinity());
      inf_done = true;
    }
  }
}

}  // namespace

BoundaryPath region_boundary_to_plane(const KleinChordRegion& r,
                                      int samples_per_edge) {
  BoundaryPath path;
  const int samples = std::max(1, samples_per_edge);
  switch (r.shape()) {
    case KleinChordRegion::Shape::empty:
      path.empty = true;
      return path;
    case KleinChordRegion::Shape::disk: {
      // Boundary marker: the unit circle maps onto the extended real axis.
      path.whole_plane = true;
      path.points.push_back(ExtComplex::infinity());
      for (int j = 1; j < 4 * samples; ++j) {
        path.points.push_back(gbk_upper(to_complex(on_circle(kTwoPi * j / (4 * samples)))));
      }
      path.upper_count = path.points.size();
      return path;
    }
    case KleinChordRegion::Shape::point: {
      const ExtComplex z = gbk_upper(to_complex(r.point()));
      path.points.push_back(z);
      path.upper_count = 1;
      if (z.is_finite() && z.value().imag() != 0.0) path.points.push_back(z.conj());
      return path;
    }
    case KleinChordRegion::Shape::cycle:
      break;
  }

  // Start the loop at a vertex on the unit circle when there is one.
  const auto& edges = r.edges();
  std::size_t first = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (std::abs(edges[i].from.norm() - 1.0) < 1e-12) {
      first = i;
      break;
    }
  }
  std::vector<ExtComplex> upper;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    sample_edge(edges[(first + k) % edges.size()], samples, upper);
  }
  path.points = upper;
  path.upper_count = upper.size();
  for (auto it = upper.rbegin(); it != upper.rend(); ++it) {
    path.points.push_back(it->conj());
  }
  return path;
}

}  // namespace srg
