#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "srg/engine.hpp"
#include "srg/frequency_gains.hpp"
#include "srg/model_io.hpp"
#include "srg/region_io.hpp"
#include "srg/svg.hpp"

namespace srg {
namespace {

const std::string kData = SRG_TEST_DATA;
const std::string kGolden = SRG_TEST_GOLDEN;

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(CliGains, Examples) {
  Outcome r = run({"gains", "--model", kData + "/first_order.json", "--alpha", "0", "--mode", "soft"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "alpha,min_gain,max_gain,witness\n0,0,1,min:inf-limit;max:freq@0\n");

  r = run({"gains", "--model", kData + "/t3.json", "--alpha", "2", "--mode", "soft"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(r.out.find('\n') + 1, 8), "2,2,inf,");

  r = run({"gains", "--model", kData + "/unstable.json", "--alpha", "0", "--mode", "hard"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("0,0,inf,"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("pole@1+0i"), std::string::npos) << r.out;

  r = run({"gains", "--model", kData + "/t3.json", "--alpha", "-1,0,1", "--mode", "hard"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
}

TEST(CliRegion, DefaultSubcommandAndInfinity) {
  const Outcome r = run({"--model", kData + "/t2.json", "--mode", "hard", "--alphas", "65"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"includes_infinity\": true"), std::string::npos);
}

TEST(CliRegion, MatrixValidation) {
  const Outcome r = run({"--model", kData + "/diag12.json", "--kind", "matrix", "--alphas", "33", "--validate", "1000"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find(" 0 violations"), std::string::npos) << r.err;
}

TEST(CliRegion, WritesJsonAndSvg) {
  const std::string json = testing::TempDir() + "srg_t3.json";
  const std::string svg = testing::TempDir() + "srg_t3.svg";
  const Outcome r = run({"--model", kData + "/t3.json", "--mode", "soft", "--alphas", "65", "--out", json, "--svg", svg});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string text = slurp(json);
  EXPECT_NE(text.find("\"includes_infinity\": true"), std::string::npos);
  EXPECT_NE(text.find("[\n      \"inf\",\n      \"inf\"\n    ]"), std::string::npos);
  const std::string pic = slurp(svg);
  EXPECT_EQ(pic.rfind("<svg", 0), 0u);
  EXPECT_NE(pic.find("id=\"infinity\""), std::string::npos);
  EXPECT_NE(pic.find("id=\"boundary\""), std::string::npos);
}

TEST(CliRegion, Deterministic) {
  for (const char* model : {"/t1.json", "/t2.json", "/diag12.json"}) {
    std::vector<std::string> args{"--model", kData + model, "--alphas", "17", "--validate", "20", "--seed", "5"};
    const Outcome a = run(args);
    const Outcome b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.err, b.err);
  }
  std::vector<std::string> g{"gains", "--model", kData + "/t1.json", "--alpha", "-1,0,0.5", "--mode", "hard"};
  EXPECT_EQ(run(g).out, run(g).out);
}

TEST(CliErrors, ExitCodes) {
  EXPECT_EQ(run({"--model", kData + "/malformed.json"}).code, cli::kParseError);
  EXPECT_EQ(run({"--model", kData + "/missing.json"}).code, cli::kParseError);
  EXPECT_EQ(run({"--model", kData + "/t3.json", "--kind", "ss"}).code, cli::kParseError);
  EXPECT_EQ(run({"--model", kData + "/t3.json", "--mode", "firm"}).code, cli::kParseError);
  EXPECT_EQ(run({"--model", kData + "/t3.json", "--alphas", "2"}).code, cli::kParseError);
  EXPECT_EQ(run({"--model", kData + "/t3.json", "--xlim", "3,1", "--svg", "x.svg"}).code, cli::kParseError);
  EXPECT_EQ(run({"--alphas", "9"}).code, cli::kParseError);
  const Outcome r = run({"--model", kData + "/fast_unstable.json", "--mode", "hard", "--validate", "5"});
  EXPECT_EQ(r.code, cli::kNumericError);
  EXPECT_NE(r.err.find("exp(50 t)"), std::string::npos) << r.err;
}

// Boundaries recomputed from the models match the stored paths vertex by
// vertex.
TEST(Golden, BoundaryPaths) {
  for (const char* name : {"t1_soft", "t2_soft", "t2_hard", "t3_soft", "t3_hard"}) {
    const std::string n = name;
    const std::string model = n.substr(0, 2);
    const GainMode mode = parse_gain_mode(n.substr(3));
    const std::vector<ExtComplex> golden = parse_boundary(slurp(kGolden + "/" + n + ".json"));
    const FrequencyGainProvider p(as_lti(load_model(kData + "/" + model + ".json")), mode);
    const SrgRegion r = compute_region(p, 65);
    const std::vector<ExtComplex> now = region_boundary(r, 8).points;
    ASSERT_EQ(now.size(), golden.size()) << n;
    double worst = 0.0;
    for (std::size_t k = 0; k < now.size(); ++k) worst = std::max(worst, chordal_distance(now[k], golden[k]));
    EXPECT_LE(worst, 1e-6) << n;
  }
}

TEST(Svg, ViewportAndDeterminism) {
  const FrequencyGainProvider p(as_lti(load_model(kData + "/t1.json")), GainMode::soft);
  const SrgRegion r = compute_region(p, 33);
  SvgOptions opt;
  opt.annuli = true;
  EXPECT_EQ(render_svg(r, opt), render_svg(r, opt));
  const Viewport v = fit_viewport(r, region_boundary(r, 128), opt);
  // T1 stays within the unit disk; the fit pads by 10%.
  EXPECT_NEAR(v.x1 - v.x0, v.y1 - v.y0, 1e-12);
  EXPECT_GT(v.x1 - v.x0, 1.0);
  EXPECT_LT(v.x1 - v.x0, 2.0 * 1.1 + 1e-6);
  EXPECT_LT(v.x0, -0.5);
  EXPECT_GT(v.x1, 1.0);
  opt.xlim = std::make_pair(-2.0, 2.0);
  EXPECT_EQ(fit_viewport(r, region_boundary(r), opt).x0, -2.0);
}

}  // namespace
}  // namespace srg
