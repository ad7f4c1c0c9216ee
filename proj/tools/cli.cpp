#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "srg/bounded_real.hpp"
#include "srg/engine.hpp"
#include "srg/errors.hpp"
#include "srg/format.hpp"
#include "srg/frequency_gains.hpp"
#include "srg/matrix_gains.hpp"
#include "srg/model_io.hpp"
#include "srg/region_io.hpp"
#include "srg/sampling_oracle.hpp"
#include "srg/svg.hpp"

namespace srg::cli {

namespace {

struct Common {
  std::string model;
  std::string kind;
  std::string mode = "soft";
  std::string method = "auto";
  double omega_max = 0.0;
  double tol = 1e-6;
  std::uint64_t seed = 0;
  std::string out;
};

struct RegionArgs {
  int alphas = 65;
  int refine = 0;
  int validate = 0;
  int samples = 64;
  std::string svg;
  std::string xlim, ylim;
  bool annuli = false;
};

struct GainsArgs {
  std::vector<double> alpha;
};

// Usage problems; reported with the parse-error exit code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App& app, Common& c) {
  app.add_option("--model", c.model, "model file (JSON)")->required();
  app.add_option("--kind", c.kind, "matrix | tf | ss (checked against the file)");
  app.add_option("--mode", c.mode, "soft | hard");
  app.add_option("--method", c.method, "auto | frequency | bounded-real");
  app.add_option("--omega-max", c.omega_max, "upper end of the frequency grid (0 = automatic)");
  app.add_option("--tol", c.tol, "bounded-real bisection tolerance (relative)");
  app.add_option("--seed", c.seed, "seed for validation samples");
  app.add_option("--out", c.out, "output file (default: stdout)");
}

ModelFile read_model(const Common& c) {
  std::ifstream in(c.model, std::ios::binary);
  if (!in) throw ModelError("cannot read model file " + c.model);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  if (!c.kind.empty()) {
    const ModelKind want = parse_model_kind(c.kind);
    nlohmann::ordered_json j;
    try {
      j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ModelError(std::string("malformed JSON: ") + e.what());
    }
    // A file without a type tag takes the one given on the command line.
    if (j.is_object() && !j.contains("type")) {
      j["type"] = to_string(want);
      text = j.dump();
    }
    const ModelFile f = parse_model(text);
    if (f.kind() != want) {
      throw ModelError("model file holds a " + std::string(to_string(f.kind())) + " model, not " + c.kind);
    }
    return f;
  }
  return parse_model(text);
}

GainMode read_mode(const Common& c) {
  try {
    return parse_gain_mode(c.mode);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

std::unique_ptr<GainProvider> make_provider(const ModelFile& f, const Common& c, GainMode mode) {
  if (c.method != "auto" && c.method != "frequency" && c.method != "bounded-real") {
    throw UsageError("unknown method '" + c.method + "'");
  }
  switch (f.kind()) {
    case ModelKind::matrix:
      return std::make_unique<MatrixGainProvider>(std::get<Eigen::MatrixXcd>(f.model));
    case ModelKind::tf: {
      const auto& t = std::get<TransferMatrix>(f.model);
      if (c.method == "bounded-real") {
        if (t.has_delay() || !t.proper()) {
          throw UsageError("bounded-real method needs a proper delay-free model");
        }
        return std::make_unique<BrlGainProvider>(realize(t), mode, c.tol);
      }
      return std::make_unique<FrequencyGainProvider>(t, mode, c.omega_max);
    }
    case ModelKind::ss: {
      const auto& s = std::get<StateSpace>(f.model);
      if (c.method == "frequency") return std::make_unique<FrequencyGainProvider>(s, mode, c.omega_max);
      return std::make_unique<BrlGainProvider>(s, mode, c.tol);
    }
  }
  throw UsageError("unsupported model kind");
}

std::pair<double, double> parse_limits(const std::string& s, const char* flag) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(s);
    std::size_t used = 0;
    const double a = std::stod(s.substr(0, comma), &used);
    const double b = std::stod(s.substr(comma + 1));
    if (!(a < b)) throw std::invalid_argument(s);
    return {a, b};
  } catch (const std::exception&) {
    throw UsageError(std::string(flag) + " expects 'lo,hi' with lo < hi, got '" + s + "'");
  }
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text(path, text);
  }
}

struct Validation {
  int inputs = 0;
  std::vector<ExtComplex> points;
  int violations = 0;
  double tolerance = 0.0;
  std::string source;
  std::vector<std::string> notes;

  std::string report() const {
    return "validation: " + std::to_string(inputs) + " inputs, " + std::to_string(points.size()) +
           " points, " + std::to_string(violations) + " violations (" + source + ", chordal tol " +
           format_double(tolerance) + ")";
  }
};

std::optional<StateSpace> time_domain_model(const ModelFile& f) {
  if (f.kind() == ModelKind::ss) return std::get<StateSpace>(f.model);
  const auto& t = std::get<TransferMatrix>(f.model);
  if (t.has_delay() || !t.proper()) return std::nullopt;
  return realize(t);
}

FrequencySamples random_frequency_points(const LtiModel& m, int count, std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x5eedu};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> decade(-3.0, 3.0);
  std::normal_distribution<double> g;
  const double rho = spectral_scale(m);
  const int size = model_size(m);
  FrequencySamples all;
  for (int k = 0; k < count; ++k) {
    const double w = rho * std::pow(10.0, decade(rng));
    Eigen::VectorXcd v(size);
    for (int i = 0; i < size; ++i) v(i) = Complex(g(rng), g(rng));
    FrequencySamples one = srg_points_from_frequency(m, {w}, {v / v.norm()});
    all.points.insert(all.points.end(), one.points.begin(), one.points.end());
    all.notes.insert(all.notes.end(), one.notes.begin(), one.notes.end());
  }
  return all;
}

Validation validate(const SrgRegion& r, const ModelFile& f, GainMode mode, int count, std::uint64_t seed) {
  Validation v;
  v.inputs = count;
  if (f.kind() == ModelKind::matrix) {
    v.source = "random unit vectors";
    v.tolerance = 1e-6;
    v.points = srg_sample_matrix(std::get<Eigen::MatrixXcd>(f.model), count, seed);
  } else if (mode == GainMode::hard && time_domain_model(f)) {
    v.source = "simulated truncated pairs";
    v.tolerance = 2e-2;
    SimConfig cfg;
    cfg.count = count;
    cfg.seed = seed;
    v.points = srg_points_from_sim(*time_domain_model(f), cfg);
  } else {
    v.source = "frequency response";
    v.tolerance = 1e-6;
    FrequencySamples s = random_frequency_points(as_lti(f), count, seed);
    v.points = std::move(s.points);
    v.notes = std::move(s.notes);
  }
  for (const ExtComplex& z : v.points) {
    if (region_contains(r, z, 1e-9)) continue;
    if (chordal_distance_to_region(r, z) > v.tolerance) ++v.violations;
  }
  return v;
}

int cmd_region(const Common& c, const RegionArgs& a, std::ostream& out, std::ostream& err) {
  const ModelFile f = read_model(c);
  const GainMode mode = read_mode(c);
  const auto p = make_provider(f, c, mode);
  SvgOptions svg;
  if (!a.xlim.empty()) svg.xlim = parse_limits(a.xlim, "--xlim");
  if (!a.ylim.empty()) svg.ylim = parse_limits(a.ylim, "--ylim");

  SrgRegion r = compute_region(*p, a.alphas);
  for (int k = 0; k < a.refine; ++k) r = region_refine(r, *p);
  for (const DroppedAlpha& d : r.dropped) {
    err << "warning: alpha " << format_double(d.alpha) << " dropped (" << p->info().method << ' ' << d.stage
        << "): " << d.message << '\n';
  }

  RegionWriteOptions w;
  w.samples_per_edge = a.samples;
  w.settings = {{"model", c.model},         {"alphas", std::to_string(a.alphas)},
                {"refine", std::to_string(a.refine)}, {"omega_max", format_double(c.omega_max)},
                {"tol", format_double(c.tol)}, {"seed", std::to_string(c.seed)}};
  int code = kOk;
  if (a.validate > 0) {
    const Validation v = validate(r, f, mode, a.validate, c.seed);
    err << v.report() << '\n';
    for (const std::string& n : v.notes) err << "note: " << n << '\n';
    w.settings.emplace_back("validation", v.report());
    svg.overlay = v.points;
    if (v.violations > 0) code = kViolations;
  }
  emit(c.out, region_to_json(r, w), out);
  if (!a.svg.empty()) {
    svg.annuli = a.annuli;
    svg.title = c.model + " (" + c.mode + ")";
    write_text(a.svg, render_svg(r, svg));
  }
  if (r.empty()) {
    err << "error: empty intersection";
    for (const std::string& d : r.diagnostics) err << "; " << d;
    err << '\n';
    return kNumericError;
  }
  return code;
}

int cmd_gains(const Common& c, const GainsArgs& a, std::ostream& out, std::ostream&) {
  const ModelFile f = read_model(c);
  const GainMode mode = read_mode(c);
  const auto p = make_provider(f, c, mode);
  std::string csv = "alpha,min_gain,max_gain,witness\n";
  for (double alpha : a.alpha) {
    GainPair g;
    try {
      g = p->gains(alpha);
    } catch (const NumericError& e) {
      throw NumericError("alpha " + format_double(alpha) + " (" + p->info().method + " gains): " + e.what());
    }
    std::string witness = "min:" + describe(g.min_witness) + ";max:" + describe(g.max_witness);
    if (g.sampled) witness += ";sampled";
    if (g.grid_limited) witness += ";grid-limited";
    csv += format_double(alpha) + "," + format_double(g.min_gain) + "," + format_double(g.max_gain) + "," +
           witness + "\n";
  }
  emit(c.out, csv, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args = args_in;
  // `srg --model ...` means `srg region --model ...`.
  if (args.empty() || (args[0].rfind("--", 0) == 0 && args[0] != "--help" && args[0] != "-h")) {
    args.insert(args.begin(), "region");
  }

  CLI::App app{"Scaled relative graphs of matrices and LTI systems"};
  app.require_subcommand(1);
  Common common;
  RegionArgs ra;
  GainsArgs ga;

  CLI::App* region = app.add_subcommand("region", "compute a region (JSON, optional SVG)");
  add_common(*region, common);
  region->add_option("--alphas", ra.alphas, "number of alpha grid points")->check(CLI::Range(3, 100000));
  region->add_option("--refine", ra.refine, "refinement passes")->check(CLI::Range(0, 10));
  region->add_option("--validate", ra.validate, "number of oracle inputs to check")->check(CLI::NonNegativeNumber);
  region->add_option("--samples", ra.samples, "boundary samples per edge")->check(CLI::Range(1, 100000));
  region->add_option("--svg", ra.svg, "write an SVG plot");
  region->add_option("--xlim", ra.xlim, "plot range lo,hi");
  region->add_option("--ylim", ra.ylim, "plot range lo,hi");
  region->add_flag("--annuli", ra.annuli, "draw the annuli layer");

  CLI::App* gains = app.add_subcommand("gains", "tabulate gains of T - alpha I (CSV)");
  add_common(*gains, common);
  gains->add_option("--alpha", ga.alpha, "alpha values (repeat or comma-separate)")
      ->required()
      ->delimiter(',');

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }

  try {
    if (region->parsed()) return cmd_region(common, ra, out, err);
    return cmd_gains(common, ga, out, err);
  } catch (const ModelError& e) {
    err << "model error: " << e.what() << '\n';
    return kParseError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumericError;
  } catch (const DomainError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumericError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericError;
  }
}

}  // namespace srg::cli
