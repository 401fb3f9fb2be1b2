#include "jd/limit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "jd/error.hpp"

namespace jd {

std::size_t LimitSet::layer_size(int j) const {
  return static_cast<std::size_t>(std::count(layer.begin(), layer.end(), j));
}

std::vector<cplx> preimage_point(const BaseMap& base, cplx y) {
  const cplx p = base.center();
  if (y == p) throw Error(Errc::center_point, "the center has only itself as preimage");
  const int n = base.degree();
  const cplx w = (y - p) / base.scale();
  const double r = std::pow(std::abs(w), 1.0 / n);
  const double phi = std::arg(w) / n;
  std::vector<cplx> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) out.push_back(p + std::polar(r, phi + 2.0 * std::numbers::pi * k / n));
  return out;
}

LimitSet limit_set(const BaseMap& base, std::span<const cplx> y, int depth, int circle_samples) {
  if (depth < 0) throw Error(Errc::invalid_argument, "depth must be >= 0");
  if (circle_samples < 8) throw Error(Errc::invalid_argument, "need at least 8 circle samples");

  LimitSet out;
  out.depth = depth;
  out.circle_samples = circle_samples;
  const auto n = static_cast<std::size_t>(base.degree());
  std::size_t total = 0;
  for (std::size_t j = 0, layer = y.size(); j <= static_cast<std::size_t>(depth); ++j, layer *= n)
    total += layer;
  out.points.reserve(total + circle_samples);
  out.layer.reserve(total + circle_samples);
  out.parent.reserve(total + circle_samples);

  for (cplx z : y) {
    if (z == base.center()) throw Error(Errc::center_point, "Y contains the center p");
    out.points.push_back(z);
    out.layer.push_back(0);
    out.parent.push_back(-1);
  }
  std::size_t begin = 0;
  std::size_t end = out.points.size();
  for (int j = 1; j <= depth; ++j) {
    for (std::size_t i = begin; i < end; ++i) {
      for (cplx z : preimage_point(base, out.points[i])) {
        out.points.push_back(z);
        out.layer.push_back(j);
        out.parent.push_back(static_cast<std::int64_t>(i));
      }
    }
    begin = end;
    end = out.points.size();
  }

  const double r = base_circle_radius(base);
  for (int s = 0; s < circle_samples; ++s) {
    out.points.push_back(base.center() + std::polar(r, 2.0 * std::numbers::pi * s / circle_samples));
    out.layer.push_back(LimitSet::kCircleLayer);
    out.parent.push_back(-1);
  }
  return out;
}

int depth_for_tolerance(const BaseMap& base, std::span<const cplx> y, double tol) {
  if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "tolerance must be positive");
  if (y.empty()) return 0;
  const double r = base_circle_radius(base);
  const double inv_c = 1.0 / std::abs(base.scale());
  const double inv_n = 1.0 / base.degree();
  double lo = std::abs(y[0] - base.center());
  double hi = lo;
  for (cplx z : y) {
    const double m = std::abs(z - base.center());
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  // The recursion is monotone in the modulus, so the extremes bound every
  // point of the layer.
  constexpr int kMaxDepth = 1000;
  for (int k = 0; k < kMaxDepth; ++k) {
    if (std::abs(lo - r) < tol && std::abs(hi - r) < tol) return k;
    lo = std::pow(lo * inv_c, inv_n);
    hi = std::pow(hi * inv_c, inv_n);
  }
  return kMaxDepth;
}

int default_circle_samples(const BaseMap& base, double pitch) {
  const double n = std::ceil(2.0 * std::numbers::pi * base_circle_radius(base) / pitch);
  return static_cast<int>(std::clamp(n, 256.0, 1e8));
}

}  // namespace jd
