#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "srg/engine.hpp"

namespace srg {

struct SvgOptions {
  /// Viewport; auto-fit to the finite boundary plus 10% when unset.
  std::optional<std::pair<double, double>> xlim, ylim;
  bool annuli = false;
  /// Oracle samples drawn as dots.
  std::vector<ExtComplex> overlay;
  int width = 640;
  int height = 640;
  int samples_per_edge = 128;
  std::string title;
};

struct Viewport {
  double x0, x1, y0, y1;
};

/// The region of the plane the plot shows.
Viewport fit_viewport(const SrgRegion& r, const BoundaryPath& path, const SvgOptions& opt);

std::string render_svg(const SrgRegion& r, const SvgOptions& opt = {});

}  // namespace srg
