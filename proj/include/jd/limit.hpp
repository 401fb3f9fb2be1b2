#pragma once

// Sampled limit set: Y, its iterated preimages under the base map, and the
// base circle.

#include <cstdint>
#include <span>
#include <vector>

#include "jd/complex.hpp"
#include "jd/rmap.hpp"

namespace jd {

struct LimitSet {
  static constexpr int kCircleLayer = -1;

  std::vector<cplx> points;
  std::vector<int> layer;          ///< 0 = Y, j = j-th preimage layer, -1 = circle
  std::vector<std::int64_t> parent;  ///< index of the image point, -1 if none
  int depth = 0;
  int circle_samples = 0;

  std::size_t layer_size(int j) const;
};

/// p + the N-th roots of (y - p)/C. Throws center_point for y == p.
std::vector<cplx> preimage_point(const BaseMap& base, cplx y);

/// Throws center_point, invalid_argument.
LimitSet limit_set(const BaseMap& base, std::span<const cplx> y, int depth, int circle_samples);

/// Smallest depth whose preimage layer lies within `tol` of the base circle.
int depth_for_tolerance(const BaseMap& base, std::span<const cplx> y, double tol);

/// Default circle sampling: max(256, ceil(2 pi r / pitch)).
int default_circle_samples(const BaseMap& base, double pitch);

}  // namespace jd
