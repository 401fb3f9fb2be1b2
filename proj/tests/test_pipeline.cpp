#include <unistd.h>

#include <filesystem>
#include <numbers>

#include "doctest.h"
#include "jd/error.hpp"
#include "jd/ingest.hpp"
#include "jd/io.hpp"
#include "jd/pipeline.hpp"
#include "oracles.hpp"

using namespace jd;
using oracle::cx;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  return fs::temp_directory_path() / ("jd_pipe_" + std::to_string(::getpid()) + "_" + name);
}

ConvergenceConfig small_config() {
  ConvergenceConfig c = figure1_config(96);
  c.eps = {0.2, 0.05};
  c.render.max_iter = 256;
  return c;
}

}  // namespace

TEST_CASE("theta policies") {
  CHECK(parse_theta_policy("constant") == ThetaPolicy::constant);
  CHECK(parse_theta_policy("checkerboard") == ThetaPolicy::checkerboard);
  CHECK(to_string(ThetaPolicy::checkerboard) == "checkerboard");
  CHECK_THROWS_AS(parse_theta_policy("stripes"), Error);

  const double h = 0.25;
  std::vector<cx> y;
  for (int i = -3; i <= 3; ++i)
    for (int j = 4; j <= 7; ++j) y.emplace_back(i * h, j * h);
  const auto flat = dipole_orientations(y, 0.5, ThetaPolicy::constant);
  for (double t : flat) CHECK(t == 0.5);

  const auto inferred = dipole_orientations(y, 0.5, ThetaPolicy::checkerboard);
  const auto given = dipole_orientations(y, 0.5, ThetaPolicy::checkerboard, h);
  CHECK(inferred == given);
  for (std::size_t k = 0; k < y.size(); ++k) {
    const long long i = std::llround(y[k].real() / h), j = std::llround(y[k].imag() / h);
    CHECK(given[k] == ((i + j) % 2 == 0 ? 0.5 : 0.5 + std::numbers::pi));
  }
  // Horizontal and vertical neighbours always have opposite orientation.
  for (std::size_t a = 0; a < y.size(); ++a)
    for (std::size_t b = 0; b < y.size(); ++b)
      if (std::abs(std::abs(y[a] - y[b]) - h) < 1e-12) CHECK(given[a] != given[b]);

  const std::vector<cx> twins{cx(0, 2), cx(0, 2)};
  CHECK_THROWS_AS(dipole_orientations(twins, 0.0, ThetaPolicy::checkerboard), Error);
}

TEST_CASE("HI fixture orientations cancel row by row") {
  const auto y = hi_fixture().points;
  const auto t = dipole_orientations(y, 0.0, ThetaPolicy::checkerboard);
  cx moment = 0.0;
  for (double th : t) moment += std::polar(1.0, th);
  // The net moment is a small fraction of what a constant orientation gives.
  CHECK(std::abs(moment) <= 0.2 * static_cast<double>(y.size()));
}

TEST_CASE("building from pixels") {
  const BaseMap base = make_base(2);
  const std::vector<cx> y{cx(0, 1.5), cx(0.5, 1.5)};
  // Pitch 0.5: lattice cells (0,3) and (1,3), odd then even parity.
  const DipoleMap m = build_from_pixels(base, y, 0.1, 0.0, 0.1, ThetaPolicy::checkerboard);
  REQUIRE(m.size() == 2);
  CHECK(m.dipoles()[0].eps == 0.1);
  CHECK(std::abs(m.zeros()[0] - cx(-0.05, 1.5)) < 1e-15);
  CHECK(std::abs(m.zeros()[1] - cx(0.55, 1.5)) < 1e-15);

  const std::vector<cx> close{cx(0, 1.5), cx(1.02, 0), cx(0, -0.97)};
  try {
    build_from_pixels(base, close, 0.1, 0.0, 0.05);
    FAIL("expected disjointness_violation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::disjointness_violation);
    const std::string msg = e.what();
    CHECK(msg.find("2 point(s)") != std::string::npos);
    CHECK(msg.find("(1.02,0)") != std::string::npos);
    CHECK(msg.find("(0,-0.97)") != std::string::npos);
  }
}

TEST_CASE("convergence argument checks") {
  ConvergenceConfig c = small_config();
  c.eps = {};
  CHECK_THROWS_AS(run_convergence(c), Error);
  for (const std::vector<double>& bad : {std::vector<double>{0.1, 0.1}, {0.05, 0.1}, {0.1, -0.1}}) {
    c.eps = bad;
    try {
      run_convergence(c);
      FAIL("expected invalid_argument");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::invalid_argument);
    }
  }
  // A Y point on the circle is rejected before any rendering happens.
  c = small_config();
  c.y.push_back(cx(0.6, 0.8));
  c.render.width = c.render.height = 4096;
  try {
    run_convergence(c);
    FAIL("expected disjointness_violation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::disjointness_violation);
  }
}

TEST_CASE("convergence sweep on a small grid") {
  const fs::path dir = scratch("sweep");
  ConvergenceConfig c = small_config();
  c.out_dir = dir.string();
  const ConvergenceRun run = run_convergence(c);
  REQUIRE(run.records.size() == 2);
  for (const auto& r : run.records) {
    CHECK(r.width == 96);
    CHECK(r.max_iter >= 256);
    CHECK(r.julia_points > 0);
    CHECK(r.limit_points > 0);
    CHECK(r.report.d_sym == std::max(r.report.d_ab, r.report.d_ba));
    CHECK(fs::exists(r.png));
  }
  CHECK(run.records[0].depth == run.records[1].depth);
  for (const char* f : {"convergence.csv", "convergence.json", "timing.json", "eps_0.2.png",
                        "eps_0.2.json", "eps_0.05.png"})
    CHECK(fs::exists(dir / f));

  const std::string table = read_text((dir / "convergence.csv").string());
  CHECK(table == convergence_table_csv(run));
  CHECK(table.rfind("eps,d_H,d_JY,d_YJ,", 0) == 0);
  CHECK(table.find("seconds") == std::string::npos);
  const auto j = nlohmann::json::parse(read_text((dir / "convergence.json").string()));
  CHECK(j["theta_policy"] == "checkerboard");
  CHECK(j["records"].size() == 2);
  CHECK(j["records"][1]["eps"] == 0.05);
  CHECK(j.dump().find("seconds") == std::string::npos);
  CHECK(timing_json(run)[0].contains("seconds"));

  // Rerunning reproduces the table and images exactly.
  ConvergenceConfig again = c;
  again.out_dir = (dir / "again").string();
  const ConvergenceRun run2 = run_convergence(again);
  CHECK(convergence_table_csv(run2) == table);
  CHECK(read_text((dir / "eps_0.2.png").string()) == read_text((dir / "again" / "eps_0.2.png").string()));
  fs::remove_all(dir);
}

TEST_CASE("single eps and no output directory") {
  ConvergenceConfig c = small_config();
  c.eps = {0.1};
  const ConvergenceRun run = run_convergence(c);
  CHECK(run.records.size() == 1);
  CHECK(run.records[0].png.empty());
}

TEST_CASE("figure configuration") {
  const ConvergenceConfig c = figure1_config();
  CHECK(c.base.degree() == 2);
  CHECK(c.y.size() == 80);
  CHECK(c.eps == std::vector<double>{0.2, 0.1, 0.05, 0.02});
  CHECK(c.render.width == 1024);
  CHECK(c.render.height == 1024);
  CHECK(c.render.viewport.re_min == -2.0);
  CHECK(c.render.viewport.im_max == 2.0);
  CHECK(c.flavor == Flavor::planar);
  CHECK(c.theta_policy == ThetaPolicy::checkerboard);
}
