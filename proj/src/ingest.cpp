#include "jd/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jd/error.hpp"

namespace jd {

namespace {

void sort_unique(std::vector<cplx>& pts) {
  auto less = [](cplx u, cplx v) {
    return u.real() < v.real() || (u.real() == v.real() && u.imag() < v.imag());
  };
  std::sort(pts.begin(), pts.end(), less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

// Points spaced at most `step` apart along the segment, endpoints included.
void sample_segment(cplx a, cplx b, double step, std::vector<cplx>& out) {
  const double len = std::abs(b - a);
  const auto n = static_cast<long>(std::ceil(len / step));
  if (n <= 0) {
    out.push_back(a);
    return;
  }
  for (long i = 0; i <= n; ++i) out.push_back(a + (b - a) * (static_cast<double>(i) / n));
}

}  // namespace

cplx snap_to_lattice(cplx z, double pitch) {
  return {std::floor(z.real() / pitch + 0.5) * pitch, std::floor(z.imag() / pitch + 0.5) * pitch};
}

PixelSet pixelate(const TargetShape& shape, double pitch) {
  if (!(pitch > 0.0) || !std::isfinite(pitch))
    throw Error(Errc::invalid_argument, "pitch must be positive");

  std::vector<cplx> samples;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PointList>) {
          samples = s.points;
        } else if constexpr (std::is_same_v<T, Polyline>) {
          if (s.vertices.size() < 2)
            throw Error(Errc::empty_shape, "polyline needs at least two vertices");
          for (std::size_t i = 0; i + 1 < s.vertices.size(); ++i)
            sample_segment(s.vertices[i], s.vertices[i + 1], 0.5 * pitch, samples);
        } else {
          s.viewport.validate();
          if (s.width <= 0 || s.height <= 0 ||
              s.occupied.size() != static_cast<std::size_t>(s.width) * s.height)
            throw Error(Errc::invalid_argument, "malformed bitmap");
          // Each occupied pixel is a rectangle of the plane; sample it on a
          // sub-grid no coarser than pitch/2.
          const double px = s.viewport.width() / s.width;
          const double py = s.viewport.height() / s.height;
          const int sx = std::max(1, static_cast<int>(std::ceil(px / (0.5 * pitch))));
          const int sy = std::max(1, static_cast<int>(std::ceil(py / (0.5 * pitch))));
          for (int r = 0; r < s.height; ++r)
            for (int c = 0; c < s.width; ++c) {
              if (!s.occupied[static_cast<std::size_t>(r) * s.width + c]) continue;
              for (int j = 0; j < sy; ++j)
                for (int i = 0; i < sx; ++i)
                  samples.emplace_back(s.viewport.re_min + (c + (i + 0.5) / sx) * px,
                                       s.viewport.im_max - (r + (j + 0.5) / sy) * py);
            }
        }
      },
      shape);

  if (samples.empty()) throw Error(Errc::empty_shape, "shape has no occupied points");
  PixelSet out;
  out.resolution = pitch;
  out.points.reserve(samples.size());
  for (cplx z : samples) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(Errc::invalid_argument, "non-finite shape point");
    out.points.push_back(snap_to_lattice(z, pitch));
  }
  sort_unique(out.points);
  return out;
}

double pixelate_bound(const TargetShape& shape, double pitch) {
  double bound = pitch * std::sqrt(2.0) / 2.0;
  if (std::holds_alternative<Polyline>(shape)) bound += 0.5 * pitch;
  if (const auto* bm = std::get_if<Bitmap>(&shape)) {
    const double px = bm->viewport.width() / bm->width;
    const double py = bm->viewport.height() / bm->height;
    const int sx = std::max(1, static_cast<int>(std::ceil(px / (0.5 * pitch))));
    const int sy = std::max(1, static_cast<int>(std::ceil(py / (0.5 * pitch))));
    bound += 0.5 * std::hypot(px / sx, py / sy);
  }
  return bound;
}

std::vector<DisjointViolation> validate_disjoint(std::span<const cplx> points,
                                                 const BaseMap& base, double margin) {
  if (!(margin > 0.0)) throw Error(Errc::invalid_argument, "margin must be positive");
  const double r = base_circle_radius(base);
  std::vector<DisjointViolation> out;
  for (cplx z : points) {
    const double d = std::abs(std::abs(z - base.center()) - r);
    if (d < margin) out.push_back({z, d});
  }
  return out;
}

PixelSet hi_fixture() {
  // 12 rows x 12 columns of a 1/16 lattice. H: two 2-wide bars and a 4x2
  // crossbar; I: one 2-wide bar. 2*24 + 8 + 24 = 80 cells.
  constexpr double pitch = 1.0 / 16.0;
  constexpr int rows = 12;
  constexpr double base_im = 1.25;
  auto at = [&](int col, int row) { return cplx((col - 6) * pitch, base_im + row * pitch); };

  PixelSet out;
  out.resolution = pitch;
  for (int row = rows - 1; row >= 0; --row) {
    for (int col : {0, 1, 6, 7, 10, 11}) out.points.push_back(at(col, row));
    if (row == 5 || row == 6)
      for (int col = 2; col <= 5; ++col) out.points.push_back(at(col, row));
  }
  return out;
}

Bitmap threshold_gray(int width, int height, std::span<const std::uint16_t> gray, int maxval,
                      const Viewport& viewport) {
  if (width <= 0 || height <= 0 || maxval <= 0 ||
      gray.size() != static_cast<std::size_t>(width) * height)
    throw Error(Errc::parse_error, "image dimensions do not match pixel data");
  Bitmap bm;
  bm.width = width;
  bm.height = height;
  bm.viewport = viewport;
  bm.occupied.resize(gray.size());
  for (std::size_t i = 0; i < gray.size(); ++i)
    bm.occupied[i] = 2.0 * gray[i] < static_cast<double>(maxval) ? 1 : 0;
  return bm;
}

}  // namespace jd
