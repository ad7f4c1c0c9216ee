#include "srg/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace srg {

namespace {

// Fixed-precision numbers keep the output byte-stable.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Canvas {
  Viewport v;
  int width, height;
  double px(double x) const { return (x - v.x0) / (v.x1 - v.x0) * width; }
  double py(double y) const { return (v.y1 - y) / (v.y1 - v.y0) * height; }
  // Far points are pulled onto a box three viewports wide; the clip path
  // hides the difference.
  std::pair<double, double> map(const Complex& z) const {
    const double w = v.x1 - v.x0, h = v.y1 - v.y0;
    const double x = std::clamp(z.real(), v.x0 - w, v.x1 + w);
    const double y = std::clamp(z.imag(), v.y0 - h, v.y1 + h);
    return {px(x), py(y)};
  }
  std::string point(const Complex& z) const {
    const auto [x, y] = map(z);
    return num(x) + "," + num(y);
  }
};

// Position along the far box perimeter (counter-clockwise from the
// bottom-left corner), used to route fills through infinity.
double perimeter_pos(const Canvas& c, double x, double y) {
  const double w = 3.0 * c.width, h = 3.0 * c.height;
  const double x0 = -double(c.width), y1 = 2.0 * c.height;
  const double dx = x - x0, dy = y1 - y;
  const double dl = std::abs(dx), dr = std::abs(dx - w), db = std::abs(dy), dt = std::abs(dy - h);
  const double m = std::min({dl, dr, db, dt});
  if (m == db) return std::clamp(dx, 0.0, w);
  if (m == dr) return w + std::clamp(dy, 0.0, h);
  if (m == dt) return w + h + std::clamp(w - dx, 0.0, w);
  return 2.0 * w + h + std::clamp(h - dy, 0.0, h);
}

std::array<std::pair<double, double>, 4> far_corners(const Canvas& c) {
  const double x0 = -double(c.width), x1 = 2.0 * c.width;
  const double y0 = 2.0 * c.height, y1 = -double(c.height);
  return {{{x1, y0}, {x1, y1}, {x0, y1}, {x0, y0}}};
}

// Route from a to b along the far box through the corners the region
// contains.
std::vector<std::pair<double, double>> route_through_infinity(const Canvas& c, const SrgRegion& r,
                                                              std::pair<double, double> a,
                                                              std::pair<double, double> b) {
  const double w = 3.0 * c.width, h = 3.0 * c.height;
  const double per = 2.0 * (w + h);
  const double corner_pos[4] = {w, w + h, 2.0 * w + h, 0.0};
  const auto corners = far_corners(c);
  auto inside = [&](int k) {
    const double x = corners[k].first / c.width * (c.v.x1 - c.v.x0) + c.v.x0;
    const double y = c.v.y1 - corners[k].second / c.height * (c.v.y1 - c.v.y0);
    return region_contains(r, Complex(x, y), 1e-6);
  };
  const double pa = perimeter_pos(c, a.first, a.second);
  const double pb = perimeter_pos(c, b.first, b.second);
  std::vector<std::pair<double, double>> best;
  int best_bad = 5;
  for (int dir : {1, -1}) {
    std::vector<std::pair<double, int>> hits;
    for (int k = 0; k < 4; ++k) {
      double d = dir > 0 ? corner_pos[k] - pa : pa - corner_pos[k];
      double span = dir > 0 ? pb - pa : pa - pb;
      d = std::fmod(d + per, per);
      span = std::fmod(span + per, per);
      if (d > 0.0 && d < span) hits.emplace_back(d, k);
    }
    std::sort(hits.begin(), hits.end());
    int bad = 0;
    std::vector<std::pair<double, double>> route;
    for (const auto& [d, k] : hits) {
      bad += inside(k) ? 0 : 1;
      route.push_back(corners[k]);
    }
    if (bad < best_bad) {
      best_bad = bad;
      best = route;
    }
  }
  return best;
}

}  // namespace

Viewport fit_viewport(const SrgRegion& r, const BoundaryPath& path, const SvgOptions& opt) {
  double x0 = 1.0, x1 = -1.0, y0 = 1.0, y1 = -1.0;
  const double reach = 20.0 * std::max({1.0, r.provider.scale, std::abs(r.provider.center)});
  bool any = false;
  for (const ExtComplex& z : path.points) {
    if (z.is_infinite() || std::abs(z.value()) > reach) continue;
    const Complex v = z.value();
    if (!any) {
      x0 = x1 = v.real();
      y0 = y1 = v.imag();
      any = true;
    }
    x0 = std::min(x0, v.real());
    x1 = std::max(x1, v.real());
    y0 = std::min(y0, v.imag());
    y1 = std::max(y1, v.imag());
  }
  if (!any) {
    x0 = y0 = -1.0;
    x1 = y1 = 1.0;
  }
  // Equal scales on both axes, never degenerate.
  const double half = 0.5 * std::max({x1 - x0, y1 - y0, 0.1 * std::max(1.0, std::abs(x0) + std::abs(x1))});
  const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
  Viewport v{cx - 1.1 * half, cx + 1.1 * half, cy - 1.1 * half, cy + 1.1 * half};
  if (opt.xlim) {
    v.x0 = opt.xlim->first;
    v.x1 = opt.xlim->second;
  }
  if (opt.ylim) {
    v.y0 = opt.ylim->first;
    v.y1 = opt.ylim->second;
  }
  return v;
}

std::string render_svg(const SrgRegion& r, const SvgOptions& opt) {
  const BoundaryPath path = r.empty() ? BoundaryPath{} : region_boundary(r, opt.samples_per_edge);
  const Canvas c{fit_viewport(r, path, opt), opt.width, opt.height};
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << opt.height
    << "\" viewBox=\"0 0 " << opt.width << ' ' << opt.height << "\">\n";
  s << "<defs><clipPath id=\"view\"><rect x=\"0\" y=\"0\" width=\"" << opt.width << "\" height=\""
    << opt.height << "\"/></clipPath></defs>\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opt.title.empty()) s << "<title>" << escape(opt.title) << "</title>\n";
  s << "<g clip-path=\"url(#view)\">\n";

  // Axes.
  s << "<g id=\"axes\" stroke=\"#888\" stroke-width=\"1\">\n";
  if (c.v.y0 <= 0.0 && c.v.y1 >= 0.0) {
    s << "<line x1=\"0\" y1=\"" << num(c.py(0.0)) << "\" x2=\"" << opt.width << "\" y2=\"" << num(c.py(0.0))
      << "\"/>\n";
  }
  if (c.v.x0 <= 0.0 && c.v.x1 >= 0.0) {
    s << "<line x1=\"" << num(c.px(0.0)) << "\" y1=\"0\" x2=\"" << num(c.px(0.0)) << "\" y2=\"" << opt.height
      << "\"/>\n";
  }
  s << "</g>\n";

  if (opt.annuli) {
    s << "<g id=\"annuli\" fill=\"none\" stroke=\"#9ab\" stroke-width=\"0.5\">\n";
    const double unit = opt.width / (c.v.x1 - c.v.x0);
    for (std::size_t k = 0; k < r.alpha.size(); ++k) {
      for (double rad : {r.gains[k].min_gain, r.gains[k].max_gain}) {
        if (!std::isfinite(rad) || rad * unit > 1e6) continue;
        s << "<circle cx=\"" << num(c.px(r.alpha[k])) << "\" cy=\"" << num(c.py(0.0)) << "\" r=\""
          << num(rad * unit) << "\"/>\n";
      }
    }
    s << "</g>\n";
  }

  if (path.whole_plane) {
    s << "<rect id=\"region\" width=\"100%\" height=\"100%\" fill=\"#4a7fc1\" fill-opacity=\"0.35\"/>\n";
  } else if (!path.points.empty()) {
    // Fill: far points pulled in, passes through infinity routed around
    // the contained corners.
    std::vector<std::pair<double, double>> poly;
    const auto& pts = path.points;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (pts[k].is_finite()) {
        poly.push_back(c.map(pts[k].value()));
        continue;
      }
      const ExtComplex& prev = pts[(k + pts.size() - 1) % pts.size()];
      const ExtComplex& next = pts[(k + 1) % pts.size()];
      if (prev.is_infinite() || next.is_infinite()) continue;
      for (const auto& p : route_through_infinity(c, r, c.map(prev.value()), c.map(next.value()))) {
        poly.push_back(p);
      }
    }
    s << "<path id=\"region\" fill=\"#4a7fc1\" fill-opacity=\"0.35\" stroke=\"none\" d=\"";
    for (std::size_t k = 0; k < poly.size(); ++k) {
      s << (k == 0 ? "M" : " L") << num(poly[k].first) << ',' << num(poly[k].second);
    }
    s << " Z\"/>\n";
    // Outline, broken at infinity.
    s << "<path id=\"boundary\" fill=\"none\" stroke=\"#1d3f73\" stroke-width=\"1.5\" d=\"";
    bool pen = false;
    for (std::size_t k = 0; k <= pts.size(); ++k) {
      const ExtComplex& z = pts[k % pts.size()];
      if (z.is_infinite()) {
        pen = false;
        continue;
      }
      s << (pen ? " L" : (k == 0 ? "M" : " M")) << c.point(z.value());
      pen = true;
    }
    s << "\"/>\n";
    if (pts.size() <= 2) {
      for (const ExtComplex& z : pts) {
        if (z.is_finite()) {
          const auto [x, y] = c.map(z.value());
          s << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"3\" fill=\"#1d3f73\"/>\n";
        }
      }
    }
  }

  if (!opt.overlay.empty()) {
    s << "<g id=\"oracle\" fill=\"#c23\">\n";
    for (const ExtComplex& z : opt.overlay) {
      if (z.is_infinite()) continue;
      const Complex v = z.value();
      if (v.real() < c.v.x0 || v.real() > c.v.x1 || v.imag() < c.v.y0 || v.imag() > c.v.y1) continue;
      s << "<circle cx=\"" << num(c.px(v.real())) << "\" cy=\"" << num(c.py(v.imag())) << "\" r=\"1.2\"/>\n";
    }
    s << "</g>\n";
  }
  s << "</g>\n";

  // Tick labels at the viewport edges.
  s << "<g id=\"labels\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  s << "<text x=\"4\" y=\"" << opt.height - 4 << "\">" << num(c.v.x0) << "</text>\n";
  s << "<text x=\"" << opt.width - 4 << "\" y=\"" << opt.height - 4 << "\" text-anchor=\"end\">" << num(c.v.x1)
    << "</text>\n";
  s << "<text x=\"4\" y=\"14\">" << num(c.v.y1) << "i</text>\n";
  s << "</g>\n";
  if (r.includes_infinity) {
    s << "<g id=\"infinity\" font-family=\"sans-serif\" font-size=\"13\">\n"
      << "<circle cx=\"" << opt.width - 16 << "\" cy=\"16\" r=\"10\" fill=\"#1d3f73\"/>\n"
      << "<text x=\"" << opt.width - 16 << "\" y=\"21\" text-anchor=\"middle\" fill=\"white\">&#8734;</text>\n"
      << "<text x=\"" << opt.width - 32 << "\" y=\"21\" text-anchor=\"end\" fill=\"#1d3f73\">contains infinity</text>\n"
      << "</g>\n";
  }
  if (r.empty()) {
    s << "<text x=\"" << opt.width / 2 << "\" y=\"" << opt.height / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" fill=\"#c23\">empty intersection</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace srg
