#pragma once

// End-to-end orchestration: pixel set -> dipole map -> rendered Julia set ->
// limit set -> Hausdorff distance, swept over a decreasing list of eps.

#include <string>
#include <vector>

#include "jd/complex.hpp"
#include "jd/metric.hpp"
#include "jd/render.hpp"
#include "jd/rmap.hpp"
#include "json.hpp"

namespace jd {

/// How dipole orientations are assigned across a lattice point set.
/// checkerboard flips every other lattice cell by pi, so neighbouring dipole
/// moments cancel instead of piling up.
enum class ThetaPolicy { constant, checkerboard };

std::string to_string(ThetaPolicy p);
/// Throws invalid_argument for anything but "constant" / "checkerboard".
ThetaPolicy parse_theta_policy(const std::string& s);

/// Per-point orientation. `pitch` is the lattice spacing used for the parity;
/// 0 infers it as the smallest nearest-neighbour distance in y.
std::vector<double> dipole_orientations(std::span<const cplx> y, double theta, ThetaPolicy policy,
                                        double pitch = 0.0);

/// One dipole of separation eps per point of y, after checking that y keeps
/// `margin` away from the base circle. Throws disjointness_violation listing
/// the offending points.
DipoleMap build_from_pixels(const BaseMap& base, std::span<const cplx> y, double eps,
                            double theta, double margin,
                            ThetaPolicy policy = ThetaPolicy::constant);

struct RenderSettings {
  Viewport viewport;
  int width = 1024;
  int height = 1024;
  int max_iter = 512;
  int jobs = 0;
};

struct ConvergenceConfig {
  BaseMap base = make_base(2);
  std::vector<cplx> y;
  std::vector<double> eps;
  double theta = 0.0;
  ThetaPolicy theta_policy = ThetaPolicy::constant;
  RenderSettings render;
  Flavor flavor = Flavor::planar;
  std::string out_dir;  ///< empty: write nothing
};

struct ConvergenceRecord {
  double eps = 0.0;
  HausdorffReport report;
  int width = 0;
  int height = 0;
  int max_iter = 0;  ///< effective, after automatic extension
  int depth = 0;     ///< limit-set depth used
  std::size_t limit_points = 0;
  std::size_t julia_points = 0;
  double runtime_seconds = 0.0;
  std::string png;
};

struct ConvergenceRun {
  ConvergenceConfig config;
  std::vector<ConvergenceRecord> records;
};

/// Throws invalid_argument when eps is empty or not strictly decreasing;
/// stage errors are rethrown with the offending eps in the message.
ConvergenceRun run_convergence(const ConvergenceConfig& config);

/// Deterministic table (no timings): eps,d_H,d_JY,d_YJ,width,height,max_iter,depth,limit_points,julia_points
std::string convergence_table_csv(const ConvergenceRun& run);
/// Deterministic summary of the run (no timings).
nlohmann::json convergence_json(const ConvergenceRun& run);
nlohmann::json timing_json(const ConvergenceRun& run);

/// The HI fixture, N = 2, eps = 0.2, 0.1, 0.05, 0.02 on [-2,2]^2, with
/// checkerboard orientations.
ConvergenceConfig figure1_config(int grid = 1024);

/// Sidecar metadata for a rendered grid.
nlohmann::json grid_metadata(const RenderGrid& grid);

}  // namespace jd
