#include "jd/render.hpp"

#include <algorithm>
#include <random>

#include "jd/error.hpp"
#include "jd/io.hpp"
#include "jd/parallel.hpp"

namespace jd {

PointClass classify_point(const DipoleMap& map, const EscapeRadii& radii, cplx z, int max_iter) {
  const cplx p = map.base().center();
  const double in2 = radii.r_in * radii.r_in;
  const double out2 = radii.r_out * radii.r_out;
  for (int it = 0;; ++it) {
    if (abs2(z - p) <= in2) return {Label::inner, it};
    const double m = abs2(z);
    if (!(m < out2)) return {Label::outer, it};  // also catches the pole sentinel
    if (it == max_iter) return {Label::undecided, max_iter};
    z = map.apply(z);
  }
}

namespace {

// Pixels with a 4-neighbour of the opposite inner/outer label.
std::vector<std::uint8_t> transition_mask(const RenderGrid& g) {
  std::vector<std::uint8_t> mask(g.labels.size(), 0);
  auto opposite = [](Label a, Label b) {
    return (a == Label::inner && b == Label::outer) || (a == Label::outer && b == Label::inner);
  };
  for (int r = 0; r < g.height; ++r)
    for (int c = 0; c < g.width; ++c) {
      const Label l = g.label(c, r);
      if ((c > 0 && opposite(l, g.label(c - 1, r))) ||
          (c + 1 < g.width && opposite(l, g.label(c + 1, r))) ||
          (r > 0 && opposite(l, g.label(c, r - 1))) ||
          (r + 1 < g.height && opposite(l, g.label(c, r + 1))))
        mask[static_cast<std::size_t>(r) * g.width + c] = 1;
    }
  return mask;
}

// Undecided pixels farther than two pixels (Chebyshev) from any transition.
std::size_t stray_undecided(const RenderGrid& g) {
  const auto edge = transition_mask(g);
  // Separable dilation by radius 2.
  std::vector<std::uint8_t> horiz(edge.size(), 0), near(edge.size(), 0);
  for (int r = 0; r < g.height; ++r)
    for (int c = 0; c < g.width; ++c) {
      std::uint8_t v = 0;
      for (int d = std::max(0, c - 2); d <= std::min(g.width - 1, c + 2) && !v; ++d)
        v = edge[static_cast<std::size_t>(r) * g.width + d];
      horiz[static_cast<std::size_t>(r) * g.width + c] = v;
    }
  for (int r = 0; r < g.height; ++r)
    for (int c = 0; c < g.width; ++c) {
      std::uint8_t v = 0;
      for (int d = std::max(0, r - 2); d <= std::min(g.height - 1, r + 2) && !v; ++d)
        v = horiz[static_cast<std::size_t>(d) * g.width + c];
      near[static_cast<std::size_t>(r) * g.width + c] = v;
    }
  std::size_t n = 0;
  for (std::size_t i = 0; i < g.labels.size(); ++i)
    if (g.labels[i] == Label::undecided && !near[i]) ++n;
  return n;
}

void classify_pixels(const DipoleMap& map, RenderGrid& g, const ClassifyOptions& opts,
                     bool only_undecided) {
  const int tile = std::max(1, opts.tile);
  const int tx = (g.width + tile - 1) / tile;
  const int ty = (g.height + tile - 1) / tile;
  parallel_for(static_cast<std::size_t>(tx) * ty, opts.jobs, [&](std::size_t t) {
    const int c0 = static_cast<int>(t % tx) * tile;
    const int r0 = static_cast<int>(t / tx) * tile;
    for (int r = r0; r < std::min(g.height, r0 + tile); ++r)
      for (int c = c0; c < std::min(g.width, c0 + tile); ++c) {
        const std::size_t i = static_cast<std::size_t>(r) * g.width + c;
        if (only_undecided && g.labels[i] != Label::undecided) continue;
        const PointClass pc = classify_point(map, g.radii, g.pixel_center(c, r), g.max_iter);
        g.labels[i] = pc.label;
        g.iters[i] = pc.iter;
      }
  });
}

}  // namespace

RenderGrid classify_grid(const DipoleMap& map, const Viewport& viewport, int width, int height,
                         const ClassifyOptions& opts) {
  viewport.validate();
  if (width < 16 || height < 16) throw Error(Errc::invalid_argument, "grid must be at least 16x16");
  if (opts.max_iter < 1) throw Error(Errc::invalid_argument, "max_iter must be >= 1");

  RenderGrid g;
  g.viewport = viewport;
  g.width = width;
  g.height = height;
  g.max_iter = opts.max_iter;
  g.radii = escape_radii(map);
  g.labels.assign(static_cast<std::size_t>(width) * height, Label::undecided);
  g.iters.assign(g.labels.size(), 0);

  classify_pixels(map, g, opts, false);
  if (opts.auto_extend) {
    const double limit = opts.undecided_fraction * static_cast<double>(g.labels.size());
    for (int e = 0; e < opts.max_extensions; ++e) {
      if (static_cast<double>(stray_undecided(g)) <= limit) break;
      g.max_iter *= 2;
      classify_pixels(map, g, opts, true);
    }
  }
  return g;
}

std::vector<std::uint8_t> boundary_mask(const RenderGrid& grid) {
  auto mask = transition_mask(grid);
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (grid.labels[i] == Label::undecided) mask[i] = 1;
  return mask;
}

std::string to_string(JuliaCloud::Method m) {
  return m == JuliaCloud::Method::boundary ? "boundary" : "inverse";
}

JuliaCloud extract_boundary(const RenderGrid& grid) {
  const auto mask = boundary_mask(grid);
  JuliaCloud cloud;
  cloud.method = JuliaCloud::Method::boundary;
  cloud.grid_width = grid.width;
  cloud.grid_height = grid.height;
  for (int r = 0; r < grid.height; ++r)
    for (int c = 0; c < grid.width; ++c)
      if (mask[static_cast<std::size_t>(r) * grid.width + c])
        cloud.points.push_back(grid.pixel_center(c, r));
  if (cloud.points.empty()) throw Error(Errc::degenerate_grid, "no boundary pixels");
  return cloud;
}

std::vector<cplx> solve_preimages(const DipoleMap& map, cplx w, const RootOptions& opts) {
  const cplx v = w - map.base().center();
  const auto& ex = map.expanded();
  std::vector<cplx> coeffs = ex.numerator;
  for (std::size_t k = 0; k < ex.denominator.size(); ++k) coeffs[k] -= v * ex.denominator[k];

  auto newton = [&](cplx z) {
    const auto loc = map.local(z);
    const cplx diff = loc.shifted - v;
    NewtonStep step;
    // F = Q (G - v):  F'/F = Q'/Q + G'/(G - v)
    step.ratio = 1.0 / (loc.pole_sum + loc.shifted * loc.log_deriv / diff);
    const double scale = std::abs(loc.shifted) + std::abs(v);
    step.converged = std::abs(diff) <= 1e-2 * opts.tol * scale;
    step.acceptable = std::abs(diff) <= opts.tol * scale;
    return step;
  };
  std::vector<cplx> roots = initial_iterates(coeffs);
  aberth(std::span<cplx>(roots), newton, opts.max_iter);
  return roots;
}

JuliaCloud inverse_orbit(const DipoleMap& map, cplx seed, const InverseOptions& opts) {
  if (opts.count < 1 || opts.burn_in < 0)
    throw Error(Errc::invalid_argument, "count must be >= 1 and burn_in >= 0");
  if (seed == map.base().center() || !std::isfinite(abs2(seed)))
    throw Error(Errc::fixed_point_seed, "seed must differ from p and infinity");

  JuliaCloud cloud;
  cloud.method = JuliaCloud::Method::inverse;
  cloud.count = opts.count;
  cloud.burn_in = opts.burn_in;
  cloud.seed = opts.rng_seed;
  cloud.points.reserve(static_cast<std::size_t>(opts.count));

  std::mt19937_64 rng(opts.rng_seed);
  cplx w = seed;
  const int total = opts.burn_in + opts.count;
  for (int t = 0; t < total; ++t) {
    const auto roots = solve_preimages(map, w, opts.roots);
    std::uniform_int_distribution<std::size_t> pick(0, roots.size() - 1);
    w = roots[pick(rng)];
    if (t >= opts.burn_in) cloud.points.push_back(w);
  }
  return cloud;
}

LabelHistogram histogram(const RenderGrid& grid) {
  LabelHistogram h;
  for (Label l : grid.labels) {
    if (l == Label::inner) ++h.inner;
    else if (l == Label::outer) ++h.outer;
    else ++h.undecided;
  }
  return h;
}

std::vector<std::uint8_t> render_image(const RenderGrid& grid) {
  const auto mask = boundary_mask(grid);
  std::vector<std::uint8_t> px(grid.labels.size());
  for (std::size_t i = 0; i < px.size(); ++i) {
    if (mask[i]) px[i] = 0;
    else px[i] = grid.labels[i] == Label::inner ? 255 : 200;
  }
  return px;
}

void render_png(const RenderGrid& grid, const std::string& path) {
  write_png_gray(path, grid.width, grid.height, render_image(grid));
}

std::vector<std::uint8_t> render_cloud(std::span<const cplx> points, const Viewport& viewport,
                                       int width, int height) {
  if (width < 1 || height < 1) throw Error(Errc::invalid_argument, "image size must be positive");
  std::vector<std::uint8_t> img(static_cast<std::size_t>(width) * height, 255);
  const double sx = width / viewport.width();
  const double sy = height / viewport.height();
  for (cplx z : points) {
    if (!viewport.contains(z)) continue;
    const int col = std::min(width - 1, static_cast<int>((z.real() - viewport.re_min) * sx));
    const int row = std::min(height - 1, static_cast<int>((viewport.im_max - z.imag()) * sy));
    img[static_cast<std::size_t>(row) * width + col] = 0;
  }
  return img;
}

}  // namespace jd
