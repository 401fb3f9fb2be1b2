#include "jd/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>

#include "jd/error.hpp"
#include "jd/ingest.hpp"
#include "jd/io.hpp"
#include "jd/limit.hpp"

namespace jd {

using nlohmann::json;

std::string to_string(ThetaPolicy p) {
  return p == ThetaPolicy::constant ? "constant" : "checkerboard";
}

ThetaPolicy parse_theta_policy(const std::string& s) {
  if (s == "constant") return ThetaPolicy::constant;
  if (s == "checkerboard") return ThetaPolicy::checkerboard;
  throw Error(Errc::invalid_argument, "unknown theta policy '" + s + "'");
}

std::vector<double> dipole_orientations(std::span<const cplx> y, double theta, ThetaPolicy policy,
                                        double pitch) {
  std::vector<double> out(y.size(), theta);
  if (policy == ThetaPolicy::constant || y.size() < 2) return out;
  if (!(pitch > 0.0)) {
    std::vector<Vec3> pts;
    pts.reserve(y.size());
    for (cplx z : y) pts.push_back({z.real(), z.imag(), 0.0});
    const BucketGrid grid(pts, median_spacing(pts));
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) best = std::min(best, grid.nearest(pts[i], i).first);
    pitch = std::sqrt(best);
  }
  if (!(pitch > 0.0)) throw Error(Errc::invalid_argument, "checkerboard needs distinct points");
  for (std::size_t k = 0; k < y.size(); ++k) {
    const long long i = std::llround(y[k].real() / pitch);
    const long long j = std::llround(y[k].imag() / pitch);
    if ((i + j) % 2 != 0) out[k] = theta + std::numbers::pi;
  }
  return out;
}

DipoleMap build_from_pixels(const BaseMap& base, std::span<const cplx> y, double eps,
                            double theta, double margin, ThetaPolicy policy) {
  const auto bad = validate_disjoint(y, base, margin);
  if (!bad.empty()) {
    std::string msg = std::to_string(bad.size()) + " point(s) within " + format_real(margin) +
                      " of the base circle:";
    for (const auto& v : bad)
      msg += " (" + format_real(v.point.real()) + "," + format_real(v.point.imag()) + ")";
    throw Error(Errc::disjointness_violation, msg);
  }
  const auto thetas = dipole_orientations(y, theta, policy);
  std::vector<Dipole> dipoles;
  dipoles.reserve(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) dipoles.push_back({y[i], eps, thetas[i]});
  return build_map(base, std::move(dipoles));
}

json grid_metadata(const RenderGrid& grid) {
  const auto h = histogram(grid);
  const Viewport& v = grid.viewport;
  return {{"viewport", {v.re_min, v.re_max, v.im_min, v.im_max}},
          {"width", grid.width},
          {"height", grid.height},
          {"max_iter", grid.max_iter},
          {"r_in", grid.radii.r_in},
          {"r_out", grid.radii.r_out},
          {"labels", {{"inner", h.inner}, {"outer", h.outer}, {"undecided", h.undecided}}}};
}

namespace {

std::string eps_tag(double eps) { return "eps_" + format_real(eps); }

}  // namespace

ConvergenceRun run_convergence(const ConvergenceConfig& config) {
  if (config.eps.empty()) throw Error(Errc::invalid_argument, "eps list is empty");
  for (std::size_t i = 1; i < config.eps.size(); ++i)
    if (!(config.eps[i] < config.eps[i - 1]))
      throw Error(Errc::invalid_argument, "eps list must be strictly decreasing");
  for (double e : config.eps)
    if (!(e > 0.0)) throw Error(Errc::invalid_argument, "eps must be positive");
  config.render.viewport.validate();

  // Every eps must pass the disjointness check before any map is built.
  for (double e : config.eps) {
    const auto bad = validate_disjoint(config.y, config.base, e);
    if (!bad.empty())
      throw Error(Errc::disjointness_violation,
                  "eps " + format_real(e) + ": " + std::to_string(bad.size()) +
                      " point(s) too close to the base circle");
  }
  if (!config.out_dir.empty()) std::filesystem::create_directories(config.out_dir);

  const RenderSettings& rs = config.render;
  const double pixel = std::max(rs.viewport.width() / rs.width, rs.viewport.height() / rs.height);

  // Target set: resolution-matched depth, clipped to the viewport.
  const int depth = depth_for_tolerance(config.base, config.y, pixel);
  const LimitSet yhat =
      limit_set(config.base, config.y, depth, default_circle_samples(config.base, pixel));
  std::vector<cplx> target;
  for (cplx z : yhat.points)
    if (rs.viewport.contains(z)) target.push_back(z);

  ConvergenceRun run;
  run.config = config;
  for (double eps : config.eps) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const DipoleMap map = build_from_pixels(config.base, config.y, eps, config.theta, eps,
                                                 config.theta_policy);
      ClassifyOptions opts;
      opts.max_iter = rs.max_iter;
      opts.jobs = rs.jobs;
      const RenderGrid grid = classify_grid(map, rs.viewport, rs.width, rs.height, opts);
      const JuliaCloud julia = extract_boundary(grid);

      ConvergenceRecord rec;
      rec.eps = eps;
      rec.report = hausdorff(std::span<const cplx>(julia.points), std::span<const cplx>(target),
                             config.flavor, rs.jobs);
      rec.width = grid.width;
      rec.height = grid.height;
      rec.max_iter = grid.max_iter;
      rec.depth = depth;
      rec.limit_points = target.size();
      rec.julia_points = julia.points.size();
      if (!config.out_dir.empty()) {
        const auto base = std::filesystem::path(config.out_dir) / eps_tag(eps);
        rec.png = base.string() + ".png";
        render_png(grid, rec.png);
        write_text(base.string() + ".json", grid_metadata(grid).dump(2) + "\n");
      }
      rec.runtime_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      run.records.push_back(std::move(rec));
    } catch (const Error& e) {
      throw Error(e.code(), "eps " + format_real(eps) + ": " + e.what());
    }
  }

  if (!config.out_dir.empty()) {
    const std::filesystem::path dir(config.out_dir);
    write_text((dir / "convergence.csv").string(), convergence_table_csv(run));
    write_text((dir / "convergence.json").string(), convergence_json(run).dump(2) + "\n");
    write_text((dir / "timing.json").string(), timing_json(run).dump(2) + "\n");
  }
  return run;
}

std::string convergence_table_csv(const ConvergenceRun& run) {
  std::string s = "eps,d_H,d_JY,d_YJ,width,height,max_iter,depth,limit_points,julia_points\n";
  for (const auto& r : run.records) {
    s += format_real(r.eps) + ',' + format_real(r.report.d_sym) + ',' + format_real(r.report.d_ab) +
         ',' + format_real(r.report.d_ba) + ',' + std::to_string(r.width) + ',' +
         std::to_string(r.height) + ',' + std::to_string(r.max_iter) + ',' +
         std::to_string(r.depth) + ',' + std::to_string(r.limit_points) + ',' +
         std::to_string(r.julia_points) + '\n';
  }
  return s;
}

json convergence_json(const ConvergenceRun& run) {
  const auto& c = run.config;
  const Viewport& v = c.render.viewport;
  json records = json::array();
  for (const auto& r : run.records) {
    records.push_back({{"eps", r.eps},
                       {"hausdorff", report_to_json(r.report)},
                       {"width", r.width},
                       {"height", r.height},
                       {"max_iter", r.max_iter},
                       {"depth", r.depth},
                       {"limit_points", r.limit_points},
                       {"julia_points", r.julia_points},
                       {"png", r.png}});
  }
  return {{"base",
           {{"N", c.base.degree()},
            {"C", {c.base.scale().real(), c.base.scale().imag()}},
            {"p", {c.base.center().real(), c.base.center().imag()}}}},
          {"pixels", c.y.size()},
          {"theta", c.theta},
          {"theta_policy", to_string(c.theta_policy)},
          {"eps", c.eps},
          {"viewport", {v.re_min, v.re_max, v.im_min, v.im_max}},
          {"grid", {c.render.width, c.render.height}},
          {"flavor", to_string(c.flavor)},
          {"records", std::move(records)}};
}

json timing_json(const ConvergenceRun& run) {
  json j = json::array();
  for (const auto& r : run.records) j.push_back({{"eps", r.eps}, {"seconds", r.runtime_seconds}});
  return j;
}

ConvergenceConfig figure1_config(int grid) {
  ConvergenceConfig c;
  c.base = make_base(2);
  c.y = hi_fixture().points;
  c.eps = {0.2, 0.1, 0.05, 0.02};
  c.theta = 0.0;
  c.theta_policy = ThetaPolicy::checkerboard;
  c.render.width = grid;
  c.render.height = grid;
  return c;
}

}  // namespace jd
