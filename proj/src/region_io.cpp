#include "srg/region_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "srg/errors.hpp"

namespace srg {

namespace {

using ojson = nlohmann::ordered_json;

ojson number(double v) {
  if (std::isinf(v) && v > 0.0) return "inf";
  return v;
}

ojson point(const ExtComplex& z) {
  if (z.is_infinite()) return ojson::array({"inf", "inf"});
  return ojson::array({z.value().real(), z.value().imag()});
}

double read_number(const ojson& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
  if (!j.is_number()) throw ModelError("boundary entry is not a number");
  return j.get<double>();
}

}  // namespace

std::string region_to_json(const SrgRegion& r, const RegionWriteOptions& opt) {
  ojson j;
  j["alpha"] = r.alpha;
  ojson rmin = ojson::array(), rmax = ojson::array();
  ojson wmin = ojson::array(), wmax = ojson::array();
  bool grid_limited = false, sampled = false;
  for (const GainPair& g : r.gains) {
    rmin.push_back(number(g.min_gain));
    rmax.push_back(number(g.max_gain));
    wmin.push_back(describe(g.min_witness));
    wmax.push_back(describe(g.max_witness));
    grid_limited = grid_limited || g.grid_limited;
    sampled = sampled || g.sampled;
  }
  j["rmin"] = rmin;
  j["rmax"] = rmax;
  j["includes_infinity"] = r.includes_infinity;
  j["empty"] = r.empty();
  ojson boundary = ojson::array();
  if (!r.empty()) {
    for (const ExtComplex& z : region_boundary(r, opt.samples_per_edge).points) boundary.push_back(point(z));
  }
  j["boundary"] = boundary;

  ojson prov;
  prov["kind"] = r.provider.kind;
  prov["mode"] = to_string(r.provider.mode);
  prov["method"] = r.provider.method;
  prov["requested_n"] = r.requested_n;
  prov["grid"] = {{"law", "alpha = center + scale*tan(theta), theta uniform on (-pi/2+delta, pi/2-delta)"},
                  {"center", r.provider.center},
                  {"scale", r.provider.scale},
                  {"delta", r.requested_n > 0 ? std::numbers::pi / (4.0 * r.requested_n) : 0.0}};
  prov["boundary_samples_per_edge"] = opt.samples_per_edge;
  ojson settings = ojson::object();
  for (const auto& [k, v] : opt.settings) settings[k] = v;
  prov["settings"] = settings;
  prov["min_witness"] = wmin;
  prov["max_witness"] = wmax;
  prov["flags"] = {{"grid_limited", grid_limited}, {"sampled_min", sampled}};
  ojson dropped = ojson::array();
  for (const DroppedAlpha& d : r.dropped) {
    dropped.push_back({{"alpha", d.alpha}, {"stage", d.stage}, {"message", d.message}});
  }
  prov["dropped"] = dropped;
  prov["diagnostics"] = r.diagnostics;
  j["provenance"] = prov;
  return j.dump(2) + "\n";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<ExtComplex> parse_boundary(const std::string& json_text) {
  ojson j;
  try {
    j = ojson::parse(json_text);
  } catch (const ojson::parse_error& e) {
    throw ModelError(std::string("region JSON: ") + e.what());
  }
  const ojson& arr = j.is_object() ? j.at("boundary") : j;
  if (!arr.is_array()) throw ModelError("region JSON: boundary must be an array");
  std::vector<ExtComplex> out;
  for (const ojson& p : arr) {
    if (!p.is_array() || p.size() != 2) throw ModelError("region JSON: boundary point must be [re, im]");
    const double re = read_number(p[0]);
    const double im = read_number(p[1]);
    if (std::isinf(re) || std::isinf(im)) {
      out.push_back(ExtComplex::infinity());
    } else {
      out.emplace_back(Complex(re, im));
    }
  }
  return out;
}

}  // namespace srg
