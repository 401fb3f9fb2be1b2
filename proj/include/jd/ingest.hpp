#pragma once

// Turning a target shape into a finite lattice point set.

#include <cstdint>
#include <variant>
#include <vector>

#include "jd/complex.hpp"
#include "jd/rmap.hpp"

namespace jd {

struct Bitmap {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> occupied;  ///< row-major, row 0 at the top (im_max)
  Viewport viewport;
};

struct PointList {
  std::vector<cplx> points;
};

struct Polyline {
  std::vector<cplx> vertices;
};

using TargetShape = std::variant<Bitmap, PointList, Polyline>;

struct PixelSet {
  std::vector<cplx> points;
  double resolution = 0.0;
};

/// Nearest lattice center k * pitch (per coordinate).
cplx snap_to_lattice(cplx z, double pitch);

/// Occupied lattice cells of `shape` at `pitch`, deduplicated and sorted.
/// Throws empty_shape, invalid_argument.
PixelSet pixelate(const TargetShape& shape, double pitch);

/// Hausdorff bound between a shape and its pixelation at `pitch`.
double pixelate_bound(const TargetShape& shape, double pitch);

struct DisjointViolation {
  cplx point;
  double distance;  ///< distance to the base circle
};

/// Every point closer than `margin` to the base circle.
std::vector<DisjointViolation> validate_disjoint(std::span<const cplx> points,
                                                 const BaseMap& base, double margin);

/// The fixed 80-point block-letter "HI" used by the figure reproduction.
PixelSet hi_fixture();

/// Threshold grayscale samples (0 = black) at half of `maxval`.
Bitmap threshold_gray(int width, int height, std::span<const std::uint16_t> gray,
                      int maxval, const Viewport& viewport);

}  // namespace jd
