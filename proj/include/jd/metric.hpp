#pragma once

// Hausdorff distance between finite point clouds, planar or chordal, with
// bucketed nearest-neighbour search.

#include <span>
#include <string>
#include <vector>

#include "jd/complex.hpp"

namespace jd {

enum class Flavor { planar, chordal };

std::string to_string(Flavor f);

/// Chord length between the images of z and w on the unit Riemann sphere.
double chordal_distance(const SpherePoint& z, const SpherePoint& w);

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

/// Coordinates the metric is computed in: (re, im, 0) for planar, the
/// stereographic image on the unit sphere for chordal. Throws
/// infinite_point for infinity in the planar flavor.
Vec3 embed(const SpherePoint& z, Flavor flavor);

/// Euclidean distance between embedded points.
double embedded_distance(const Vec3& a, const Vec3& b);

struct DirectedHausdorff {
  double distance = 0.0;
  std::size_t from = 0;  ///< index in the source cloud realizing the sup
  std::size_t to = 0;    ///< its nearest neighbour in the target cloud
};

struct HausdorffReport {
  double d_ab = 0.0;
  double d_ba = 0.0;
  double d_sym = 0.0;
  Flavor flavor = Flavor::planar;
  SpherePoint witness_ab_from, witness_ab_to;
  SpherePoint witness_ba_from, witness_ba_to;
};

/// Exact Hausdorff distance between two finite clouds. Throws empty_cloud,
/// infinite_point.
HausdorffReport hausdorff(std::span<const SpherePoint> a, std::span<const SpherePoint> b,
                          Flavor flavor = Flavor::planar, int jobs = 1);
HausdorffReport hausdorff(std::span<const cplx> a, std::span<const cplx> b,
                          Flavor flavor = Flavor::planar, int jobs = 1);

/// Uniform-grid index over a fixed set of 3-D points.
class BucketGrid {
 public:
  BucketGrid(std::span<const Vec3> points, double pitch);

  /// Nearest indexed point to q, optionally skipping index `skip`.
  /// Returns (squared distance, index).
  std::pair<double, std::size_t> nearest(const Vec3& q,
                                         std::size_t skip = static_cast<std::size_t>(-1)) const;

  double pitch() const { return pitch_; }

 private:
  long cell_coord(double v, double origin) const;

  std::span<const Vec3> points_;
  double pitch_;
  Vec3 origin_;
  long nx_ = 1, ny_ = 1, nz_ = 1;
  std::vector<std::size_t> start_;  // CSR offsets, size cells+1
  std::vector<std::size_t> index_;
};

/// Median nearest-neighbour spacing within a cloud (0 for a singleton).
double median_spacing(std::span<const Vec3> points);

DirectedHausdorff directed_hausdorff(std::span<const Vec3> from, const BucketGrid& to, int jobs = 1);

}  // namespace jd
