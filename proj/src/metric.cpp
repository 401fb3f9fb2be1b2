#include "jd/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jd/error.hpp"
#include "jd/parallel.hpp"

namespace jd {

std::string to_string(Flavor f) { return f == Flavor::planar ? "planar" : "chordal"; }

double chordal_distance(const SpherePoint& z, const SpherePoint& w) {
  if (z.at_infinity() && w.at_infinity()) return 0.0;
  if (z.at_infinity()) return 2.0 / std::sqrt(1.0 + abs2(w.value()));
  if (w.at_infinity()) return 2.0 / std::sqrt(1.0 + abs2(z.value()));
  return 2.0 * std::abs(z.value() - w.value()) /
         std::sqrt((1.0 + abs2(z.value())) * (1.0 + abs2(w.value())));
}

Vec3 embed(const SpherePoint& z, Flavor flavor) {
  if (flavor == Flavor::planar) {
    if (z.at_infinity()) throw Error(Errc::infinite_point, "planar distance to infinity");
    return {z.re(), z.im(), 0.0};
  }
  if (z.at_infinity()) return {0.0, 0.0, 1.0};
  const double m = abs2(z.value());
  const double s = 1.0 + m;
  return {2.0 * z.re() / s, 2.0 * z.im() / s, (m - 1.0) / s};
}

namespace {

double dist2(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return dx * dx + dy * dy + dz * dz;
}

struct Box {
  Vec3 lo, hi;
};

Box bounds(std::span<const Vec3> pts) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  Box b{{inf, inf, inf}, {-inf, -inf, -inf}};
  for (const Vec3& p : pts) {
    b.lo = {std::min(b.lo.x, p.x), std::min(b.lo.y, p.y), std::min(b.lo.z, p.z)};
    b.hi = {std::max(b.hi.x, p.x), std::max(b.hi.y, p.y), std::max(b.hi.z, p.z)};
  }
  return b;
}

}  // namespace

double embedded_distance(const Vec3& a, const Vec3& b) { return std::sqrt(dist2(a, b)); }

BucketGrid::BucketGrid(std::span<const Vec3> points, double pitch) : points_(points), pitch_(pitch) {
  const Box box = bounds(points);
  const double ex = box.hi.x - box.lo.x;
  const double ey = box.hi.y - box.lo.y;
  const double ez = box.hi.z - box.lo.z;
  const double extent = std::max({ex, ey, ez});
  const double n = static_cast<double>(std::max<std::size_t>(points.size(), 1));
  if (!(pitch_ > 0.0) || !std::isfinite(pitch_)) pitch_ = extent > 0.0 ? extent / std::sqrt(n) : 1.0;

  // Keep the cell count proportional to the point count.
  const double max_cells = std::max(64.0, 4.0 * n);
  auto cells = [&](double h) {
    return (std::floor(ex / h) + 1.0) * (std::floor(ey / h) + 1.0) * (std::floor(ez / h) + 1.0);
  };
  while (cells(pitch_) > max_cells) pitch_ *= 1.25;

  origin_ = box.lo;
  nx_ = static_cast<long>(std::floor(ex / pitch_)) + 1;
  ny_ = static_cast<long>(std::floor(ey / pitch_)) + 1;
  nz_ = static_cast<long>(std::floor(ez / pitch_)) + 1;

  const auto ncell = static_cast<std::size_t>(nx_ * ny_ * nz_);
  std::vector<std::size_t> cell_of(points.size());
  start_.assign(ncell + 1, 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const long cx = std::clamp(cell_coord(points[i].x, origin_.x), 0L, nx_ - 1);
    const long cy = std::clamp(cell_coord(points[i].y, origin_.y), 0L, ny_ - 1);
    const long cz = std::clamp(cell_coord(points[i].z, origin_.z), 0L, nz_ - 1);
    cell_of[i] = static_cast<std::size_t>((cz * ny_ + cy) * nx_ + cx);
    ++start_[cell_of[i] + 1];
  }
  for (std::size_t c = 0; c < ncell; ++c) start_[c + 1] += start_[c];
  index_.resize(points.size());
  std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
  for (std::size_t i = 0; i < points.size(); ++i) index_[fill[cell_of[i]]++] = i;
}

long BucketGrid::cell_coord(double v, double origin) const {
  const double c = std::floor((v - origin) / pitch_);
  return static_cast<long>(std::clamp(c, -1e12, 1e12));
}

std::pair<double, std::size_t> BucketGrid::nearest(const Vec3& q, std::size_t skip) const {
  const long cx = cell_coord(q.x, origin_.x);
  const long cy = cell_coord(q.y, origin_.y);
  const long cz = cell_coord(q.z, origin_.z);
  auto outside = [](long c, long n) { return c < 0 ? -c : (c >= n ? c - n + 1 : 0L); };
  const long r0 = std::max({outside(cx, nx_), outside(cy, ny_), outside(cz, nz_)});
  const long rmax = std::max({std::abs(cx), std::abs(cx - nx_ + 1), std::abs(cy),
                              std::abs(cy - ny_ + 1), std::abs(cz), std::abs(cz - nz_ + 1)});

  double best = std::numeric_limits<double>::infinity();
  std::size_t best_i = static_cast<std::size_t>(-1);
  auto scan = [&](long i, long j, long k) {
    const auto c = static_cast<std::size_t>((k * ny_ + j) * nx_ + i);
    for (std::size_t s = start_[c]; s < start_[c + 1]; ++s) {
      const std::size_t idx = index_[s];
      if (idx == skip) continue;
      const double d = dist2(q, points_[idx]);
      if (d < best || (d == best && idx < best_i)) {
        best = d;
        best_i = idx;
      }
    }
  };

  for (long r = r0; r <= rmax; ++r) {
    const long i0 = std::max(0L, cx - r), i1 = std::min(nx_ - 1, cx + r);
    const long j0 = std::max(0L, cy - r), j1 = std::min(ny_ - 1, cy + r);
    const long k0 = std::max(0L, cz - r), k1 = std::min(nz_ - 1, cz + r);
    for (long i = i0; i <= i1; ++i)
      for (long j = j0; j <= j1; ++j) {
        if (std::abs(i - cx) == r || std::abs(j - cy) == r) {
          for (long k = k0; k <= k1; ++k) scan(i, j, k);
        } else {
          if (cz - r >= 0 && cz - r < nz_) scan(i, j, cz - r);
          if (r > 0 && cz + r >= 0 && cz + r < nz_) scan(i, j, cz + r);
        }
      }
    // Cells at ring r+1 are at least r * pitch away; one ring of slack
    // absorbs rounding in the cell assignment.
    if (r >= 1) {
      const double reach = static_cast<double>(r - 1) * pitch_;
      if (best <= reach * reach) break;
    }
  }
  return {best, best_i};
}

double median_spacing(std::span<const Vec3> points) {
  if (points.size() < 2) return 0.0;
  const Box box = bounds(points);
  double e[3] = {box.hi.x - box.lo.x, box.hi.y - box.lo.y, box.hi.z - box.lo.z};
  std::sort(e, e + 3);
  const double n = static_cast<double>(points.size());
  double pitch = e[1] * e[2] > 0.0 ? std::sqrt(e[1] * e[2] / n) : e[2] / n;
  if (!(pitch > 0.0)) return 0.0;
  const BucketGrid grid(points, pitch);
  std::vector<double> nn(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) nn[i] = grid.nearest(points[i], i).first;
  auto mid = nn.begin() + static_cast<std::ptrdiff_t>(nn.size() / 2);
  std::nth_element(nn.begin(), mid, nn.end());
  return std::sqrt(*mid);
}

DirectedHausdorff directed_hausdorff(std::span<const Vec3> from, const BucketGrid& to, int jobs) {
  std::vector<std::pair<double, std::size_t>> nn(from.size());
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (from.size() + kChunk - 1) / kChunk;
  parallel_for(chunks, jobs, [&](std::size_t c) {
    const std::size_t end = std::min(from.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) nn[i] = to.nearest(from[i]);
  });
  DirectedHausdorff out;
  double worst = -1.0;
  for (std::size_t i = 0; i < nn.size(); ++i) {
    if (nn[i].first > worst) {
      worst = nn[i].first;
      out.from = i;
      out.to = nn[i].second;
    }
  }
  out.distance = std::sqrt(worst);
  return out;
}

HausdorffReport hausdorff(std::span<const SpherePoint> a, std::span<const SpherePoint> b,
                          Flavor flavor, int jobs) {
  if (a.empty() || b.empty()) throw Error(Errc::empty_cloud, "Hausdorff distance needs nonempty clouds");
  std::vector<Vec3> ea, eb;
  ea.reserve(a.size());
  eb.reserve(b.size());
  for (const auto& z : a) ea.push_back(embed(z, flavor));
  for (const auto& z : b) eb.push_back(embed(z, flavor));

  const double pitch = median_spacing(a.size() <= b.size() ? std::span<const Vec3>(ea)
                                                           : std::span<const Vec3>(eb));
  const BucketGrid ga(ea, pitch);
  const BucketGrid gb(eb, pitch);
  const DirectedHausdorff ab = directed_hausdorff(ea, gb, jobs);
  const DirectedHausdorff ba = directed_hausdorff(eb, ga, jobs);

  HausdorffReport r;
  r.flavor = flavor;
  r.d_ab = ab.distance;
  r.d_ba = ba.distance;
  r.d_sym = std::max(r.d_ab, r.d_ba);
  r.witness_ab_from = a[ab.from];
  r.witness_ab_to = b[ab.to];
  r.witness_ba_from = b[ba.from];
  r.witness_ba_to = a[ba.to];
  return r;
}

HausdorffReport hausdorff(std::span<const cplx> a, std::span<const cplx> b, Flavor flavor, int jobs) {
  std::vector<SpherePoint> sa(a.begin(), a.end());
  std::vector<SpherePoint> sb(b.begin(), b.end());
  return hausdorff(sa, sb, flavor, jobs);
}

}  // namespace jd
