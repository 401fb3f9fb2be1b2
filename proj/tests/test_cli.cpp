#include <unistd.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "jd/io.hpp"
#include "oracles.hpp"

using namespace jd;
using oracle::cx;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result jdip(std::vector<std::string> args) {
  args.insert(args.begin(), "jdip");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct Workspace {
  fs::path dir;
  Workspace() {
    static int counter = 0;
    dir = fs::temp_directory_path() / ("jd_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(jdip({}).code == 2);
  CHECK(jdip({"frobnicate"}).code == 2);
  CHECK(jdip({"render"}).code == 2);
  CHECK(jdip({"render", "m.json", "--count", "0"}).code == 2);
  CHECK(jdip({"--help"}).code == 0);
  const auto r = jdip({"render", "m.json", "--viewport", "1,0,0,1"});
  CHECK(r.code == 2);
  CHECK(contains(r.err, "jdip:"));
  Workspace w;
  CHECK(jdip({"build", "--fixture", "hi", "--out", w.dir.string()}).code == 2);  // no --eps
  CHECK(jdip({"build", "--fixture", "hi", "--eps", "0.1,0.05", "--out", w.dir.string()}).code == 2);
  CHECK(jdip({"build", "--fixture", "hi", "--eps", "0.1", "--theta-policy", "x", "--out", w.dir.string()}).code == 2);
}

TEST_CASE("pixelate, build, limitset, hausdorff") {
  Workspace w;
  write_text(w / "pts.csv", "re,im\n0.02,1.49\n0.51,1.5\n0.5,1.52\n");
  auto r = jdip({"pixelate", w / "pts.csv", "--pitch", "0.25", "--out", w.dir.string()});
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "points: 2"));
  CHECK(read_points_csv(w / "pixels.csv") == std::vector<cx>{cx(0, 1.5), cx(0.5, 1.5)});

  r = jdip({"build", "--pixels", w / "pixels.csv", "-N", "3", "--eps", "0.1", "--out", w.dir.string()});
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "dipoles: 2"));
  CHECK(contains(r.out, "degree: 5/2"));
  const DipoleMap m = read_map(w / "map.json");
  CHECK(m.base().degree() == 3);
  CHECK(m.size() == 2);

  r = jdip({"limitset", "--pixels", w / "pixels.csv", "--depth", "2", "--samples", "16", "--out",
            w.dir.string()});
  REQUIRE(r.code == 0);
  CHECK(read_points_csv(w / "limitset.csv").size() == 2 + 4 + 8 + 16);

  write_text(w / "a.csv", "0,0\n");
  write_text(w / "b.csv", "3,4\n");
  r = jdip({"hausdorff", w / "a.csv", w / "b.csv", "--out", w.dir.string()});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(read_text(w / "hausdorff.json"));
  CHECK(j["d_sym"] == 5.0);
  CHECK(j["flavor"] == "planar");
  CHECK(contains(r.out, "\"d_sym\": 5.0"));
}

TEST_CASE("validation errors exit with 3") {
  Workspace w;
  write_text(w / "close.csv", "1.01,0\n0,1.5\n");
  auto r = jdip({"build", "--pixels", w / "close.csv", "--eps", "0.1", "--out", w.dir.string()});
  CHECK(r.code == 3);
  CHECK(contains(r.err, "(1.01,0)"));

  // An empty image has no pixels to place.
  write_text(w / "white.pgm", "P2 2 2 255\n255 255 255 255\n");
  r = jdip({"pixelate", w / "white.pgm", "--pitch", "0.1", "--out", w.dir.string()});
  CHECK(r.code == 3);
  CHECK(contains(r.err, "empty-shape"));

  CHECK(jdip({"render", w / "missing.json", "--out", w.dir.string()}).code == 3);
  write_text(w / "bad.csv", "1,x\n");
  CHECK(jdip({"hausdorff", w / "bad.csv", w / "bad.csv", "--out", w.dir.string()}).code == 3);
}

TEST_CASE("empty pixel set builds the bare base map with a warning") {
  Workspace w;
  write_text(w / "none.csv", "re,im\n");
  const auto r = jdip({"build", "--pixels", w / "none.csv", "--eps", "0.1", "--out", w.dir.string()});
  CHECK(r.code == 0);
  CHECK(contains(r.err, "warning"));
  CHECK(read_map(w / "map.json").size() == 0);
}

TEST_CASE("render: boundary, inverse, and numeric failure") {
  Workspace w;
  write_map(w / "sq.json", build_map(make_base(2), {}));
  auto r = jdip({"render", w / "sq.json", "--grid", "64", "--out", w.dir.string()});
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "method: boundary"));
  CHECK(read_gray_image(w / "render.png").width == 64);
  auto meta = nlohmann::json::parse(read_text(w / "render.json"));
  CHECK(meta["method"] == "boundary");
  CHECK(meta["points"].get<std::size_t>() == read_points_csv(w / "render.csv").size());

  r = jdip({"render", w / "sq.json", "--grid", "80x40", "--method", "inverse", "--count", "500",
            "--burn-in", "10", "--seed", "3", "--out", w.dir.string()});
  REQUIRE(r.code == 0);
  const auto pts = read_points_csv(w / "render.csv");
  CHECK(pts.size() == 500);
  for (cx z : pts) CHECK(std::abs(std::abs(z) - 1.0) < 1e-9);
  const GrayImage img = read_gray_image(w / "render.png");
  CHECK(img.width == 80);
  CHECK(img.height == 40);
  meta = nlohmann::json::parse(read_text(w / "render.json"));
  CHECK(meta["seed"] == 3);
  CHECK(meta["count"] == 500);

  // The whole viewport escapes: no boundary to extract.
  r = jdip({"render", w / "sq.json", "--grid", "32", "--viewport", "5,6,5,6", "--out", w.dir.string()});
  CHECK(r.code == 4);
  CHECK(contains(r.err, "degenerate-grid"));
}

TEST_CASE("config file supplies flags and the command line wins") {
  Workspace w;
  write_text(w / "pts.csv", "0,1.5\n0.5,1.5\n");
  write_text(w / "cfg.json", R"({"eps": 0.1, "build": {"theta": 0.5, "N": 4}, "render": {"grid": 7}})");
  auto r = jdip({"build", "--config", w / "cfg.json", "--pixels", w / "pts.csv", "--out", w.dir.string()});
  REQUIRE(r.code == 0);
  DipoleMap m = read_map(w / "map.json");
  CHECK(m.base().degree() == 4);
  CHECK(m.dipoles()[0].eps == 0.1);
  CHECK(m.dipoles()[0].theta == 0.5);

  r = jdip({"build", "--config", w / "cfg.json", "--pixels", w / "pts.csv", "--theta", "1.25", "-N",
            "2", "--out", w.dir.string()});
  REQUIRE(r.code == 0);
  m = read_map(w / "map.json");
  CHECK(m.base().degree() == 2);
  CHECK(m.dipoles()[0].theta == 1.25);

  write_text(w / "broken.json", "{");
  CHECK(jdip({"build", "--config", w / "broken.json", "--pixels", w / "pts.csv"}).code == 2);
}

TEST_CASE("converge writes the table and images") {
  Workspace w;
  const auto r = jdip({"converge", "--fixture", "hi", "--eps", "0.2,0.1", "--grid", "64",
                       "--theta-policy", "checkerboard", "--out", w.dir.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("eps,d_H,", 0) == 0);
  CHECK(fs::exists(w / "eps_0.2.png"));
  CHECK(fs::exists(w / "eps_0.1.png"));
  CHECK(read_text(w / "convergence.csv") == r.out.substr(0, r.out.find("wrote")));
  CHECK(jdip({"converge", "--fixture", "hi", "--eps", "0.1,0.2", "--grid", "64", "--out", w.dir.string()}).code == 2);
}
