#pragma once

// Region JSON:
//   {"alpha":[..],"rmin":[..],"rmax":[.. or "inf"],"includes_infinity":b,
//    "boundary":[[re,im],..],"provenance":{..}}
// The point at infinity appears in the boundary as ["inf","inf"].

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "srg/engine.hpp"

namespace srg {

struct RegionWriteOptions {
  int samples_per_edge = 64;
  /// Free-form run settings copied into provenance.settings, in order.
  std::vector<std::pair<std::string, std::string>> settings;
};

std::string region_to_json(const SrgRegion& r, const RegionWriteOptions& opt = {});
void write_text(const std::filesystem::path& path, const std::string& text);

/// The "boundary" array of a region file (also accepts a bare array).
std::vector<ExtComplex> parse_boundary(const std::string& json_text);

}  // namespace srg
