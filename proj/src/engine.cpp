#include "srg/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <optional>
#include <thread>
#include <utility>

#include "srg/errors.hpp"

namespace srg {

namespace {

constexpr double kPi = std::numbers::pi;

struct Evaluated {
  std::optional<GainPair> gains;
  std::string error;
};

std::vector<Evaluated> evaluate_all(const GainProvider& p, const std::vector<double>& alphas,
                                    int threads) {
  std::vector<Evaluated> out(alphas.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < alphas.size(); k = next++) {
      try {
        out[k].gains = p.gains(alphas[k]);
      } catch (const std::exception& e) {
        out[k].error = e.what();
      }
    }
  };
  const int nt = std::max(1, std::min<int>(threads > 0 ? threads : worker_count(),
                                           static_cast<int>(alphas.size())));
  if (nt == 1) {
    work();
    return out;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < nt; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  return out;
}

void add_unique(std::vector<std::string>& v, const std::string& s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

// Assemble the Klein intersection and the plane boundary from the stored
// annuli.
void assemble(SrgRegion& r) {
  r.klein = KleinChordRegion();
  r.includes_infinity = !r.alpha.empty();
  for (const GainPair& g : r.gains) {
    if (!std::isinf(g.max_gain)) r.includes_infinity = false;
  }
  // A point annulus {alpha} collapses the region before any chord mapping.
  for (std::size_t k = 0; k < r.alpha.size(); ++k) {
    if (r.gains[k].max_gain != 0.0) continue;
    const ExtComplex a(r.alpha[k]);
    if (region_contains(r, a)) {
      HalfPlane h;
      const Eigen::Vector2d w = to_vec(fbk(a));
      h.normal = -w;
      h.offset = -1.0;
      h.source = {r.alpha[k], ChordSource::Boundary::outer};
      r.klein.clip(h);
    } else {
      r.klein.clip({Eigen::Vector2d(1.0, 0.0), -2.0, {r.alpha[k], ChordSource::Boundary::outer}});
      r.diagnostics.push_back("empty intersection: point annulus at alpha " +
                              std::to_string(r.alpha[k]) + " is excluded by another annulus");
    }
    r.boundary = region_boundary(r);
    return;
  }
  // Outer (bounded) constraints first: they shrink the disk fastest.
  std::vector<HalfPlane> outer, inner;
  for (std::size_t k = 0; k < r.alpha.size(); ++k) {
    for (const HalfPlane& h : annulus_to_chords(r.annulus(k))) {
      (h.source.boundary == ChordSource::Boundary::outer ? outer : inner).push_back(h);
    }
  }
  for (const HalfPlane& h : outer) r.klein.clip(h);
  for (const HalfPlane& h : inner) r.klein.clip(h);
  if (r.empty()) {
    r.diagnostics.push_back("empty intersection: annuli are inconsistent (provider error?)");
  }
  r.boundary = region_boundary(r);
}

SrgRegion build(const GainProvider& p, std::vector<double> alphas, int threads,
                const std::vector<std::pair<double, GainPair>>& known) {
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
  std::vector<double> todo;
  for (double a : alphas) {
    const bool have = std::any_of(known.begin(), known.end(),
                                  [&](const auto& kg) { return kg.first == a; });
    if (!have) todo.push_back(a);
  }
  const std::vector<Evaluated> fresh = evaluate_all(p, todo, threads);

  SrgRegion r;
  r.provider = p.info();
  r.requested_n = static_cast<int>(alphas.size());
  std::size_t t = 0;
  for (double a : alphas) {
    std::optional<GainPair> g;
    if (t < todo.size() && todo[t] == a) {
      const Evaluated& e = fresh[t++];
      if (!e.gains) {
        r.dropped.push_back({a, "gains", e.error});
        r.diagnostics.push_back("alpha " + std::to_string(a) + " dropped at " + r.provider.method +
                                " gains: " + e.error);
        continue;
      }
      g = *e.gains;
    } else {
      for (const auto& kg : known) {
        if (kg.first == a) g = kg.second;
      }
    }
    if (std::isnan(g->min_gain) || std::isnan(g->max_gain) || g->min_gain < 0.0 ||
        g->min_gain > g->max_gain) {
      r.dropped.push_back({a, "validate", "inconsistent gain pair"});
      continue;
    }
    for (const std::string& w : g->warnings) add_unique(r.diagnostics, w);
    if (g->grid_limited) add_unique(r.diagnostics, "some gains are grid-limited");
    if (g->sampled) add_unique(r.diagnostics, "some minimum gains are sampled lower bounds");
    r.alpha.push_back(a);
    r.gains.push_back(std::move(*g));
  }
  assemble(r);
  return r;
}

// Sunflower sample of the unit disk, optionally squeezed into a box.
std::vector<Eigen::Vector2d> disk_samples(const Eigen::Vector2d& lo, const Eigen::Vector2d& hi) {
  constexpr int n = 4096;
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  const Eigen::Vector2d mid = 0.5 * (lo + hi);
  const Eigen::Vector2d half = 0.5 * (hi - lo);
  std::vector<Eigen::Vector2d> v;
  v.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double rad = std::sqrt((k + 0.5) / n);
    const Eigen::Vector2d w(mid.x() + half.x() * rad * std::cos(k * golden),
                            mid.y() + half.y() * rad * std::sin(k * golden));
    if (w.squaredNorm() <= 1.0) v.push_back(w);
  }
  return v;
}

// Box around the current region, doubled so that the neighbouring annuli
// are seen where they still bind.
std::pair<Eigen::Vector2d, Eigen::Vector2d> focus_box(const KleinChordRegion& k) {
  Eigen::Vector2d lo(-1.0, -1.0), hi(1.0, 1.0);
  if (k.shape() != KleinChordRegion::Shape::cycle) return {lo, hi};
  lo = Eigen::Vector2d::Constant(1.0);
  hi = Eigen::Vector2d::Constant(-1.0);
  for (const KleinEdge& e : k.edges()) {
    lo = lo.cwiseMin(e.from);
    hi = hi.cwiseMax(e.from);
    if (e.kind == KleinEdge::Kind::arc) return {Eigen::Vector2d(-1.0, -1.0), Eigen::Vector2d(1.0, 1.0)};
  }
  const Eigen::Vector2d mid = 0.5 * (lo + hi);
  const Eigen::Vector2d half = (hi - lo).cwiseMax(1e-6);
  return {(mid - half).cwiseMax(-1.0), (mid + half).cwiseMin(1.0)};
}

bool in_chords(const std::vector<HalfPlane>& hs, const Eigen::Vector2d& w) {
  return std::all_of(hs.begin(), hs.end(), [&](const HalfPlane& h) { return h.signed_distance(w) <= 0.0; });
}

}  // namespace

std::vector<double> make_alpha_grid(int n, double scale, double center) {
  if (n < 3) throw DomainError("make_alpha_grid: n must be >= 3");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("make_alpha_grid: scale must be positive");
  const double delta = kPi / (4.0 * n);
  const double lo = -kPi / 2.0 + delta;
  const double step = (kPi - 2.0 * delta) / (n - 1);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n / 2; ++k) {
    const double t = scale * std::tan(lo + k * step);
    out[static_cast<std::size_t>(k)] = center + t;
    out[static_cast<std::size_t>(n - 1 - k)] = center - t;
  }
  if (n % 2 == 1) out[static_cast<std::size_t>(n / 2)] = center;
  return out;
}

int worker_count() {
  if (const char* env = std::getenv("SRG_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SrgRegion compute_region(const GainProvider& p, int n, int threads) {
  const ProviderInfo info = p.info();
  SrgRegion r = compute_region_at(p, make_alpha_grid(n, info.scale, info.center), threads);
  r.requested_n = n;
  return r;
}

SrgRegion compute_region_at(const GainProvider& p, std::vector<double> alphas, int threads) {
  return build(p, std::move(alphas), threads, {});
}

bool region_contains(const SrgRegion& r, const ExtComplex& z, double tol) {
  if (z.is_infinite()) return r.includes_infinity;
  for (std::size_t k = 0; k < r.alpha.size(); ++k) {
    if (!r.annulus(k).contains(z, tol)) return false;
  }
  return true;
}

BoundaryPath region_boundary(const SrgRegion& r, int samples_per_edge) {
  return region_boundary_to_plane(r.klein, samples_per_edge);
}

SrgRegion region_refine(const SrgRegion& r, const GainProvider& p, int threads) {
  const ProviderInfo info = p.info();
  std::vector<double> theta;
  for (double a : r.alpha) theta.push_back(std::atan((a - info.center) / info.scale));
  // A sample point counts against an interval when exactly one annulus
  // excludes it and that annulus is an endpoint of the interval: the area
  // the pair would disagree on, restricted to where nothing else cuts.
  std::vector<std::vector<HalfPlane>> chords;
  for (std::size_t k = 0; k < r.alpha.size(); ++k) chords.push_back(annulus_to_chords(r.annulus(k)));
  const auto [lo, hi] = focus_box(r.klein);
  std::vector<double> score(r.alpha.size() > 0 ? r.alpha.size() - 1 : 0, 0.0);
  for (const Eigen::Vector2d& w : disk_samples(lo, hi)) {
    std::size_t failing = 0, which = 0;
    for (std::size_t k = 0; k < chords.size() && failing < 2; ++k) {
      if (!in_chords(chords[k], w)) {
        ++failing;
        which = k;
      }
    }
    if (failing != 1) continue;
    if (which > 0) score[which - 1] += 1.0;
    if (which < score.size()) score[which] += 1.0;
  }
  struct Gap {
    double score;
    double width;
    std::size_t k;
  };
  std::vector<Gap> gaps;
  for (std::size_t k = 0; k < score.size(); ++k) gaps.push_back({score[k], theta[k + 1] - theta[k], k});
  std::stable_sort(gaps.begin(), gaps.end(), [](const Gap& x, const Gap& y) {
    return x.score != y.score ? x.score > y.score : x.width > y.width;
  });
  gaps.resize((gaps.size() + 1) / 2);
  std::vector<double> alphas = r.alpha;
  for (const Gap& g : gaps) {
    const double mid = 0.5 * (theta[g.k] + theta[g.k + 1]);
    alphas.push_back(info.center + info.scale * std::tan(mid));
  }
  std::vector<std::pair<double, GainPair>> known;
  for (std::size_t k = 0; k < r.alpha.size(); ++k) known.emplace_back(r.alpha[k], r.gains[k]);
  SrgRegion out = build(p, std::move(alphas), threads, known);
  out.dropped.insert(out.dropped.begin(), r.dropped.begin(), r.dropped.end());
  return out;
}

double chordal_distance_to_region(const SrgRegion& r, const ExtComplex& z, int samples_per_edge) {
  if (r.empty()) return std::numeric_limits<double>::infinity();
  if (region_contains(r, z)) return 0.0;
  const BoundaryPath path = region_boundary(r, samples_per_edge);
  double best = std::numeric_limits<double>::infinity();
  for (const ExtComplex& b : path.points) best = std::min(best, chordal_distance(z, b));
  return best;
}

}  // namespace srg
