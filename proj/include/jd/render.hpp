#pragma once

// Julia-set approximation: basin classification on a pixel grid, boundary
// extraction, and inverse iteration.

#include <cstdint>
#include <string>
#include <vector>

#include "jd/complex.hpp"
#include "jd/rmap.hpp"
#include "jd/roots.hpp"

namespace jd {

enum class Label : std::uint8_t { inner = 0, outer = 1, undecided = 2 };

struct RenderGrid {
  Viewport viewport;
  int width = 0;
  int height = 0;
  int max_iter = 0;  ///< effective budget after any automatic extension
  EscapeRadii radii;
  std::vector<Label> labels;        ///< row-major, row 0 at im_max
  std::vector<std::int32_t> iters;  ///< iteration at which the escape test fired

  double pixel_width() const { return viewport.width() / width; }
  double pixel_height() const { return viewport.height() / height; }
  double pixel_diagonal() const { return std::hypot(pixel_width(), pixel_height()); }
  cplx pixel_center(int col, int row) const {
    return {viewport.re_min + (col + 0.5) * pixel_width(),
            viewport.im_max - (row + 0.5) * pixel_height()};
  }
  Label label(int col, int row) const {
    return labels[static_cast<std::size_t>(row) * width + col];
  }
};

struct ClassifyOptions {
  int max_iter = 512;
  /// Double max_iter while undecided pixels away from the boundary exceed
  /// `undecided_fraction` of the grid.
  bool auto_extend = true;
  int max_extensions = 4;
  double undecided_fraction = 0.05;
  int jobs = 0;  ///< 0 = hardware concurrency
  int tile = 64;
};

struct PointClass {
  Label label;
  int iter;
};

/// Iterates one point until it enters |z-p| <= r_in, |z| >= r_out, or the
/// budget runs out.
PointClass classify_point(const DipoleMap& map, const EscapeRadii& radii, cplx z, int max_iter);

/// Throws no_valid_radius (via escape_radii) and invalid_argument.
RenderGrid classify_grid(const DipoleMap& map, const Viewport& viewport, int width, int height,
                         const ClassifyOptions& opts = {});

/// 1 for pixels that are undecided or have a 4-neighbour with the opposite
/// inner/outer label.
std::vector<std::uint8_t> boundary_mask(const RenderGrid& grid);

struct JuliaCloud {
  enum class Method { boundary, inverse };
  std::vector<cplx> points;
  Method method = Method::boundary;
  // Generator parameters.
  int grid_width = 0;
  int grid_height = 0;
  int count = 0;
  int burn_in = 0;
  std::uint64_t seed = 0;
};

std::string to_string(JuliaCloud::Method m);

/// Centers of boundary pixels. Throws degenerate_grid when there are none.
JuliaCloud extract_boundary(const RenderGrid& grid);

struct InverseOptions {
  int count = 20000;
  int burn_in = 50;
  std::uint64_t rng_seed = 0;
  RootOptions roots{1e-12, 1000};
};

/// Backward orbit: each step solves g(z) = w and keeps one root chosen
/// uniformly at random. Throws fixed_point_seed, no_convergence.
JuliaCloud inverse_orbit(const DipoleMap& map, cplx seed, const InverseOptions& opts = {});

/// All N+k solutions of g(z) = w, by Aberth iteration on P(z) - (w-p) Q(z)
/// with the Newton ratio evaluated in factored form.
std::vector<cplx> solve_preimages(const DipoleMap& map, cplx w, const RootOptions& opts = {});

struct LabelHistogram {
  std::size_t inner = 0;
  std::size_t outer = 0;
  std::size_t undecided = 0;
};
LabelHistogram histogram(const RenderGrid& grid);

/// 8-bit grayscale image: inner white, outer light gray, boundary black.
std::vector<std::uint8_t> render_image(const RenderGrid& grid);

/// Writes render_image as PNG. Throws io_failure.
void render_png(const RenderGrid& grid, const std::string& path);

/// Scatter plot of a cloud: white background, one black pixel per point that
/// falls inside the viewport.
std::vector<std::uint8_t> render_cloud(std::span<const cplx> points, const Viewport& viewport,
                                       int width, int height);

}  // namespace jd
