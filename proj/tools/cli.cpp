#include "cli.hpp"

#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "jd/error.hpp"
#include "jd/ingest.hpp"
#include "jd/io.hpp"
#include "jd/limit.hpp"
#include "jd/pipeline.hpp"
#include "jd/render.hpp"
#include "json.hpp"

namespace jd::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Config files are JSON objects. Top-level keys apply to whichever
// subcommand runs; an object keyed by the subcommand name overrides them.
// Arrays become comma lists, so "eps": [0.2, 0.1] reads like --eps 0.2,0.1.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* root) : root_(root) {}

  std::string to_config(const CLI::App* app, bool, bool, std::string) const override {
    json j = json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (opt->get_lnames().empty() || opt->count() == 0) continue;
      const auto& res = opt->results();
      j[opt->get_lnames().front()] = res.size() == 1 ? json(res.front()) : json(res);
    }
    return j.dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    try {
      j = json::parse(input);
    } catch (const json::parse_error& e) {
      throw CLI::ConversionError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config: top level must be an object");

    std::map<std::string, std::string> flat;
    auto absorb = [&](const json& obj) {
      for (const auto& [key, value] : obj.items()) {
        if (value.is_object()) continue;
        std::string name = key;
        std::replace(name.begin(), name.end(), '_', '-');
        flat[name] = scalar(value);
      }
    };
    // Config is read after the command line, so the subcommand is known.
    const auto active = root_->get_subcommands();
    if (active.empty()) return {};
    const std::string section = active.front()->get_name();
    absorb(j);
    if (j.contains(section) && j[section].is_object()) absorb(j[section]);

    std::vector<CLI::ConfigItem> items;
    for (auto& [name, value] : flat) {
      CLI::ConfigItem item;
      item.parents = {section};
      item.name = name;
      item.inputs = {value};
      items.push_back(std::move(item));
    }
    return items;
  }

 private:
  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      std::string s;
      for (const auto& e : v) {
        if (!s.empty()) s += ',';
        s += scalar(e);
      }
      return s;
    }
    return v.dump();
  }

  const CLI::App* root_;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double to_real(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::invalid_argument, what + ": not a number: '" + s + "'");
  }
}

std::vector<double> parse_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const auto& part : split(s, ',')) out.push_back(to_real(part, what));
  if (out.empty()) throw Error(Errc::invalid_argument, what + ": empty list");
  return out;
}

cplx parse_complex(const std::string& s, const std::string& what) {
  const auto v = parse_list(s, what);
  if (v.size() > 2) throw Error(Errc::invalid_argument, what + ": expected re[,im]");
  return {v[0], v.size() == 2 ? v[1] : 0.0};
}

Viewport parse_viewport(const std::string& s) {
  const auto v = parse_list(s, "--viewport");
  if (v.size() != 4)
    throw Error(Errc::invalid_argument, "--viewport expects re_min,re_max,im_min,im_max");
  Viewport vp{v[0], v[1], v[2], v[3]};
  vp.validate();
  return vp;
}

std::pair<int, int> parse_grid(const std::string& s) {
  const auto x = s.find_first_of("xX");
  auto dim = [&](const std::string& t) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(t, &used);
      if (used == t.size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    throw Error(Errc::invalid_argument, "--grid expects W or WxH, got '" + s + "'");
  };
  if (x == std::string::npos) {
    const int w = dim(s);
    return {w, w};
  }
  return {dim(s.substr(0, x)), dim(s.substr(x + 1))};
}

Flavor parse_flavor(const std::string& s) {
  if (s == "planar") return Flavor::planar;
  if (s == "chordal") return Flavor::chordal;
  throw Error(Errc::invalid_argument, "--flavor must be planar or chordal");
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  if (s.size() < suffix.size()) return false;
  std::string tail = s.substr(s.size() - suffix.size());
  std::transform(tail.begin(), tail.end(), tail.begin(), [](unsigned char c) { return std::tolower(c); });
  return tail == suffix;
}

// Flags shared by the subcommands. Each subcommand registers the subset it
// understands.
struct Settings {
  std::string viewport = "-2,2,-2,2";
  std::string grid = "1024";
  int max_iter = 512;
  std::string eps;
  double theta = 0.0;
  std::string theta_policy = "constant";
  std::uint64_t seed = 0;
  int jobs = 0;
  std::string out = ".";

  int degree = 2;
  std::string scale = "1";
  std::string center = "0";
  std::string pixels;
  std::string fixture;

  // pixelate
  std::string input;
  double pitch = 0.0;
  bool polyline = false;

  // build
  double margin = -1.0;

  // render
  std::string map;
  std::string method = "boundary";
  int count = 20000;
  int burn_in = 50;
  std::string start;

  // limitset
  int depth = -1;
  double tol = 0.0;
  int samples = 0;

  // hausdorff
  std::string cloud_a, cloud_b;
  std::string flavor = "planar";
};

void add_viewport(CLI::App* a, Settings& s) {
  a->add_option("--viewport", s.viewport, "re_min,re_max,im_min,im_max")->capture_default_str();
}
void add_grid(CLI::App* a, Settings& s) {
  a->add_option("--grid", s.grid, "Grid size W or WxH")->capture_default_str();
}
void add_render_flags(CLI::App* a, Settings& s) {
  add_viewport(a, s);
  add_grid(a, s);
  a->add_option("--max-iter", s.max_iter, "Initial iteration budget")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  a->add_option("--jobs", s.jobs, "Worker threads (0 = all cores)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
}
void add_base(CLI::App* a, Settings& s) {
  a->add_option("-N,--degree", s.degree, "Degree of the base map")->capture_default_str();
  a->add_option("--scale", s.scale, "Leading coefficient re[,im]")->capture_default_str();
  a->add_option("--center", s.center, "Attracting fixed point re[,im]")->capture_default_str();
}
void add_points(CLI::App* a, Settings& s) {
  auto* px = a->add_option("--pixels", s.pixels, "Pixel-set CSV (re,im)");
  a->add_option("--fixture", s.fixture, "Built-in pixel set")
      ->check(CLI::IsMember({"hi"}))
      ->excludes(px);
}
void add_out(CLI::App* a, Settings& s) {
  a->add_option("--out", s.out, "Output directory")->capture_default_str();
}
BaseMap base_from(const Settings& s) {
  return make_base(s.degree, parse_complex(s.scale, "--scale"), parse_complex(s.center, "--center"));
}

std::vector<cplx> points_from(const Settings& s) {
  if (s.fixture == "hi") return hi_fixture().points;
  if (s.pixels.empty()) throw Error(Errc::invalid_argument, "one of --pixels or --fixture is required");
  return read_points_csv(s.pixels);
}

fs::path out_dir(const Settings& s) {
  const fs::path dir(s.out);
  fs::create_directories(dir);
  return dir;
}

// ---------------------------------------------------------------------------

void cmd_pixelate(const Settings& s, std::ostream& out) {
  if (!(s.pitch > 0.0)) throw Error(Errc::invalid_argument, "--pitch must be positive");
  TargetShape shape;
  if (has_suffix(s.input, ".csv")) {
    auto pts = read_points_csv(s.input);
    if (s.polyline)
      shape = Polyline{std::move(pts)};
    else
      shape = PointList{std::move(pts)};
  } else {
    const GrayImage img = read_gray_image(s.input);
    shape = threshold_gray(img.width, img.height, img.pixels, img.maxval, parse_viewport(s.viewport));
  }
  const PixelSet set = pixelate(shape, s.pitch);
  const fs::path path = out_dir(s) / "pixels.csv";
  write_points_csv(path.string(), set.points);
  out << "points: " << set.points.size() << "\n"
      << "hausdorff bound: " << format_real(pixelate_bound(shape, s.pitch)) << "\n"
      << "wrote " << path.string() << "\n";
}

void cmd_build(const Settings& s, std::ostream& out, std::ostream& err) {
  const BaseMap base = base_from(s);
  const auto y = points_from(s);
  if (s.eps.empty()) throw Error(Errc::invalid_argument, "--eps is required");
  const auto eps = parse_list(s.eps, "--eps");
  if (eps.size() != 1) throw Error(Errc::invalid_argument, "build takes a single --eps value");
  if (y.empty()) err << "warning: empty pixel set; writing the bare base map\n";
  const double margin = s.margin >= 0.0 ? s.margin : eps[0];
  const DipoleMap map =
      build_from_pixels(base, y, eps[0], s.theta, margin, parse_theta_policy(s.theta_policy));
  const fs::path path = out_dir(s) / "map.json";
  write_map(path.string(), map);
  const int k = static_cast<int>(map.size());
  out << "dipoles: " << k << "\n"
      << "degree: " << base.degree() + k << "/" << k << "\n"
      << "wrote " << path.string() << "\n";
}

void cmd_render(const Settings& s, std::ostream& out) {
  const Viewport vp = parse_viewport(s.viewport);
  const auto [w, h] = parse_grid(s.grid);
  const DipoleMap map = read_map(s.map);
  const fs::path dir = out_dir(s);
  json meta;
  JuliaCloud cloud;
  if (s.method == "boundary") {
    ClassifyOptions opts;
    opts.max_iter = s.max_iter;
    opts.jobs = s.jobs;
    const RenderGrid grid = classify_grid(map, vp, w, h, opts);
    cloud = extract_boundary(grid);
    render_png(grid, (dir / "render.png").string());
    meta = grid_metadata(grid);
  } else if (s.method == "inverse") {
    InverseOptions opts;
    opts.count = s.count;
    opts.burn_in = s.burn_in;
    opts.rng_seed = s.seed;
    const BaseMap& b = map.base();
    const cplx start = s.start.empty()
                           ? b.center() + std::polar(base_circle_radius(b), 0.7)
                           : parse_complex(s.start, "--start");
    cloud = inverse_orbit(map, start, opts);
    write_png_gray((dir / "render.png").string(), w, h, render_cloud(cloud.points, vp, w, h));
    meta = {{"viewport", {vp.re_min, vp.re_max, vp.im_min, vp.im_max}},
            {"width", w},
            {"height", h},
            {"count", opts.count},
            {"burn_in", opts.burn_in},
            {"seed", opts.rng_seed},
            {"start", {start.real(), start.imag()}}};
  } else {
    throw Error(Errc::invalid_argument, "--method must be boundary or inverse");
  }
  meta["method"] = to_string(cloud.method);
  meta["points"] = cloud.points.size();
  write_points_csv((dir / "render.csv").string(), cloud.points);
  write_text((dir / "render.json").string(), meta.dump(2) + "\n");
  out << "method: " << to_string(cloud.method) << "\n"
      << "points: " << cloud.points.size() << "\n"
      << "wrote " << (dir / "render.png").string() << ", render.csv, render.json\n";
}

void cmd_limitset(const Settings& s, std::ostream& out) {
  const BaseMap base = base_from(s);
  const auto y = points_from(s);
  double tol = s.tol;
  if (!(tol > 0.0)) {
    const Viewport vp = parse_viewport(s.viewport);
    const auto [w, h] = parse_grid(s.grid);
    tol = std::max(vp.width() / w, vp.height() / h);
  }
  const int depth = s.depth >= 0 ? s.depth : depth_for_tolerance(base, y, tol);
  const int samples = s.samples > 0 ? s.samples : default_circle_samples(base, tol);
  const LimitSet set = limit_set(base, y, depth, samples);
  const fs::path path = out_dir(s) / "limitset.csv";
  write_limit_csv(path.string(), set);
  out << "depth: " << depth << "\n"
      << "points: " << set.points.size() << " (circle " << set.circle_samples << ")\n"
      << "wrote " << path.string() << "\n";
}

void cmd_hausdorff(const Settings& s, std::ostream& out) {
  const auto a = read_points_csv(s.cloud_a);
  const auto b = read_points_csv(s.cloud_b);
  const HausdorffReport r = hausdorff(std::span<const cplx>(a), std::span<const cplx>(b),
                                      parse_flavor(s.flavor), s.jobs);
  const std::string text = report_to_json(r).dump(2) + "\n";
  write_text((out_dir(s) / "hausdorff.json").string(), text);
  out << text;
}

void print_table(const ConvergenceRun& run, std::ostream& out) {
  out << convergence_table_csv(run);
  for (const auto& r : run.records)
    if (!r.png.empty()) out << "wrote " << r.png << "\n";
}

ConvergenceConfig converge_config(const Settings& s, ConvergenceConfig c) {
  c.render.viewport = parse_viewport(s.viewport);
  const auto [w, h] = parse_grid(s.grid);
  c.render.width = w;
  c.render.height = h;
  c.render.max_iter = s.max_iter;
  c.render.jobs = s.jobs;
  c.flavor = parse_flavor(s.flavor);
  c.out_dir = s.out;
  return c;
}

void cmd_converge(const Settings& s, std::ostream& out) {
  ConvergenceConfig c;
  c.base = base_from(s);
  c.y = points_from(s);
  if (s.eps.empty()) throw Error(Errc::invalid_argument, "--eps is required");
  c.eps = parse_list(s.eps, "--eps");
  c.theta = s.theta;
  c.theta_policy = parse_theta_policy(s.theta_policy);
  print_table(run_convergence(converge_config(s, std::move(c))), out);
}

void cmd_figure1(const Settings& s, std::ostream& out) {
  print_table(run_convergence(converge_config(s, figure1_config())), out);
}

int exit_code(const Error& e) {
  switch (classify(e.code())) {
    case ErrorClass::usage: return 2;
    case ErrorClass::validation: return 3;
    case ErrorClass::numeric: return 4;
  }
  return 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app("Julia sets of dipole-perturbed power maps", "jdip");
  app.require_subcommand(1);

  auto* pix = app.add_subcommand("pixelate", "Turn an image or point list into a lattice pixel set");
  pix->add_option("input", s.input, "PGM/PNG image or re,im CSV")->required();
  pix->add_option("--pitch", s.pitch, "Lattice spacing")->required();
  pix->add_flag("--polyline", s.polyline, "Treat CSV rows as polyline vertices");
  add_viewport(pix, s);
  add_out(pix, s);

  auto* build = app.add_subcommand("build", "Place a dipole at every pixel and write the map JSON");
  add_points(build, s);
  add_base(build, s);
  build->add_option("--eps", s.eps, "Dipole separation");
  build->add_option("--theta", s.theta, "Dipole orientation (radians)")->capture_default_str();
  build->add_option("--theta-policy", s.theta_policy, "constant or checkerboard")
      ->capture_default_str();
  build->add_option("--margin", s.margin, "Required distance from the base circle (default eps)");
  add_out(build, s);

  auto* render = app.add_subcommand("render", "Render a map's Julia set");
  render->add_option("map", s.map, "Map JSON")->required();
  add_render_flags(render, s);
  render->add_option("--method", s.method, "boundary or inverse")->capture_default_str();
  render->add_option("--count", s.count, "Inverse-orbit points")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  render->add_option("--burn-in", s.burn_in, "Inverse-orbit points discarded")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  render->add_option("--seed", s.seed, "Random seed")->capture_default_str();
  render->add_option("--start", s.start, "Inverse-orbit starting point re,im");
  add_out(render, s);

  auto* limit = app.add_subcommand("limitset", "Sample the limit set of the pixel set");
  add_points(limit, s);
  add_base(limit, s);
  add_viewport(limit, s);
  add_grid(limit, s);
  limit->add_option("--depth", s.depth, "Preimage depth (default: from --tol)");
  limit->add_option("--tol", s.tol, "Target resolution (default: one pixel of --grid)");
  limit->add_option("--samples", s.samples, "Base-circle samples");
  add_out(limit, s);

  auto* haus = app.add_subcommand("hausdorff", "Hausdorff distance between two point clouds");
  haus->add_option("a", s.cloud_a, "First cloud CSV")->required();
  haus->add_option("b", s.cloud_b, "Second cloud CSV")->required();
  haus->add_option("--flavor", s.flavor, "planar or chordal")->capture_default_str();
  haus->add_option("--jobs", s.jobs, "Worker threads (0 = all cores)")->capture_default_str();
  add_out(haus, s);

  auto* conv = app.add_subcommand("converge", "Sweep eps and measure distance to the limit set");
  add_points(conv, s);
  add_base(conv, s);
  add_render_flags(conv, s);
  conv->add_option("--eps", s.eps, "Strictly decreasing comma list");
  conv->add_option("--theta", s.theta, "Dipole orientation (radians)")->capture_default_str();
  conv->add_option("--theta-policy", s.theta_policy, "constant or checkerboard")
      ->capture_default_str();
  conv->add_option("--flavor", s.flavor, "planar or chordal")->capture_default_str();
  add_out(conv, s);

  auto* fig = app.add_subcommand("figure1", "HI fixture at eps = 0.2, 0.1, 0.05, 0.02");
  add_render_flags(fig, s);
  add_out(fig, s);

  // --config is a top-level option; fallthrough lets it follow the subcommand.
  app.set_config("--config", "", "JSON file supplying any flag; command-line flags win");
  app.config_formatter(std::make_shared<JsonConfig>(&app));
  app.allow_config_extras(CLI::config_extras_mode::ignore);
  for (CLI::App* sub : app.get_subcommands({})) {
    sub->fallthrough();
    sub->allow_config_extras(CLI::config_extras_mode::ignore);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*pix) cmd_pixelate(s, out);
    if (*build) cmd_build(s, out, err);
    if (*render) cmd_render(s, out);
    if (*limit) cmd_limitset(s, out);
    if (*haus) cmd_hausdorff(s, out);
    if (*conv) cmd_converge(s, out);
    if (*fig) cmd_figure1(s, out);
  } catch (const Error& e) {
    err << "jdip: " << e.what() << "\n";
    return exit_code(e);
  } catch (const fs::filesystem_error& e) {
    err << "jdip: " << to_string(Errc::io_failure) << ": " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace jd::cli
