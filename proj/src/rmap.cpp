#include "jd/rmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "jd/error.hpp"

namespace jd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Relative slack on the sampled inequalities; exact-boundary radii such as
// 1/2 and 2 for z^2 must certify despite rounding.
constexpr double kCertSlack = 1e-12;

std::string fmt_c(cplx z) {
  return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

cplx ipow(cplx z, int n) {
  cplx r = 1.0;
  for (; n > 0; n >>= 1) {
    if (n & 1) r = cmul(r, z);
    z = cmul(z, z);
  }
  return r;
}

// Multiplies the ascending polynomial `poly` in place by (z - root).
void mul_linear(std::vector<cplx>& poly, cplx root) {
  poly.push_back(0.0);
  for (std::size_t k = poly.size() - 1; k > 0; --k) poly[k] = poly[k - 1] - root * poly[k];
  poly[0] = -root * poly[0];
}

}  // namespace

BaseMap::BaseMap(int degree, cplx scale, cplx center)
    : degree_(degree), scale_(scale), center_(center) {
  if (degree < 2) throw Error(Errc::degree_too_small, "N = " + std::to_string(degree));
  if (scale == cplx(0.0)) throw Error(Errc::zero_scale, "C must be nonzero");
  if (!std::isfinite(abs2(scale)) || !std::isfinite(abs2(center)))
    throw Error(Errc::invalid_argument, "non-finite base map parameter");
}

cplx BaseMap::operator()(cplx z) const { return center_ + cmul(scale_, ipow(z - center_, degree_)); }

BaseMap make_base(int degree, cplx scale, cplx center) { return {degree, scale, center}; }

double base_circle_radius(const BaseMap& base) {
  return std::pow(std::abs(base.scale()), -1.0 / (base.degree() - 1));
}

cplx Dipole::zero() const { return center + 0.5 * eps * std::polar(1.0, theta); }
cplx Dipole::pole() const { return center - 0.5 * eps * std::polar(1.0, theta); }

std::pair<cplx, cplx> dipole_zero_pole(const Dipole& d) {
  if (!(d.eps > 0.0) || !std::isfinite(d.eps))
    throw Error(Errc::invalid_dipole, "separation must be positive");
  return {d.zero(), d.pole()};
}

double dipole_deviation_bound(const Dipole& d, double dist) {
  if (!(dist > 0.5 * d.eps))
    throw Error(Errc::inside_disk, "distance " + std::to_string(dist) + " <= eps/2");
  return d.eps / (dist - 0.5 * d.eps);
}

// ---------------------------------------------------------------------------

DipoleMap::DipoleMap(BaseMap base, std::vector<Dipole> dipoles)
    : base_(base), dipoles_(std::move(dipoles)) {
  const cplx p = base_.center();
  zeros_.reserve(dipoles_.size());
  poles_.reserve(dipoles_.size());
  for (const auto& d : dipoles_) {
    if (!std::isfinite(abs2(d.center)) || !std::isfinite(d.theta))
      throw Error(Errc::invalid_dipole, "non-finite dipole at " + fmt_c(d.center));
    auto [a, b] = dipole_zero_pole(d);
    if (std::abs(a - p) <= kPoleSnap || std::abs(b - p) <= kPoleSnap)
      throw Error(Errc::dipole_collides_with_center,
                  "dipole at " + fmt_c(d.center) + " has a zero or pole at p");
    zeros_.push_back(a);
    poles_.push_back(b);
  }

  // Any two of the 2k zeros/poles closer than kPoleSnap would cancel or merge.
  std::vector<cplx> all(zeros_);
  all.insert(all.end(), poles_.begin(), poles_.end());
  std::sort(all.begin(), all.end(),
            [](cplx u, cplx v) { return u.real() < v.real(); });
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size() && all[j].real() - all[i].real() <= kPoleSnap; ++j) {
      if (std::abs(all[j] - all[i]) <= kPoleSnap)
        throw Error(Errc::duplicate_pole_zero, "coincident zero/pole near " + fmt_c(all[i]));
    }
  }

  expanded_.numerator = {base_.scale()};
  for (int i = 0; i < base_.degree(); ++i) mul_linear(expanded_.numerator, p);
  for (cplx a : zeros_) mul_linear(expanded_.numerator, a);
  expanded_.denominator = {1.0};
  for (cplx b : poles_) mul_linear(expanded_.denominator, b);
}

cplx DipoleMap::apply_chunked(cplx z) const {
  constexpr double snap2 = kPoleSnap * kPoleSnap;
  const std::size_t k = zeros_.size();
  cplx acc = 1.0;
  for (std::size_t i = 0; i < k;) {
    const std::size_t end = std::min(k, i + 8);
    cplx num = 1.0;
    cplx den = 1.0;
    for (; i < end; ++i) {
      const cplx zb = z - poles_[i];
      if (abs2(zb) <= snap2) return {kInf, 0.0};
      num = cmul(num, z - zeros_[i]);
      den = cmul(den, zb);
    }
    acc = cmul(acc, cdiv(num, den));
  }
  const cplx w = base_.center() + cmul(base_.scale(), cmul(ipow(z - base_.center(), base_.degree()), acc));
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return {kInf, 0.0};
  return w;
}

cplx DipoleMap::apply_ratio(cplx z) const {
  constexpr double snap2 = kPoleSnap * kPoleSnap;
  cplx acc = 1.0;
  for (std::size_t i = 0; i < zeros_.size(); ++i) {
    const cplx zb = z - poles_[i];
    if (abs2(zb) <= snap2) return {kInf, 0.0};
    acc = cmul(acc, cdiv(z - zeros_[i], zb));
  }
  const cplx w = base_.center() + cmul(base_.scale(), cmul(ipow(z - base_.center(), base_.degree()), acc));
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return {kInf, 0.0};
  return w;
}

SpherePoint DipoleMap::eval(const SpherePoint& z) const {
  if (z.at_infinity()) return SpherePoint::infinity();
  const cplx w = apply(z.value());
  if (!std::isfinite(w.real())) return SpherePoint::infinity();
  return w;
}

DipoleMap::Local DipoleMap::local(cplx z) const {
  const cplx d = z - base_.center();
  cplx prod = 1.0;
  cplx ld = cdiv(static_cast<double>(base_.degree()), d);
  cplx ps = 0.0;
  for (std::size_t i = 0; i < zeros_.size(); ++i) {
    const cplx inv_a = cdiv(1.0, z - zeros_[i]);
    const cplx inv_b = cdiv(1.0, z - poles_[i]);
    prod = cmul(prod, cmul(z - zeros_[i], inv_b));
    ld += inv_a - inv_b;
    ps += inv_b;
  }
  return {cmul(base_.scale(), cmul(ipow(d, base_.degree()), prod)), ld, ps};
}

DipoleMap build_map(const BaseMap& base, std::vector<Dipole> dipoles) {
  return {base, std::move(dipoles)};
}

SpherePoint eval(const DipoleMap& map, const SpherePoint& z) { return map.eval(z); }

const ExpandedMap& expanded_coefficients(const DipoleMap& map) { return map.expanded(); }

// ---------------------------------------------------------------------------
// Escape radii

bool certify_inner(const DipoleMap& map, double r_in, int samples) {
  if (!(r_in > 0.0) || !std::isfinite(r_in)) return false;
  const cplx p = map.base().center();
  for (cplx b : map.poles())
    if (!(std::abs(b - p) > r_in)) return false;
  for (int s = 0; s < samples; ++s) {
    const cplx z = p + std::polar(r_in, 2.0 * std::numbers::pi * s / samples);
    const cplx w = map.apply(z);
    if (!std::isfinite(w.real()) || !(std::abs(w - p) <= 0.5 * r_in * (1.0 + kCertSlack))) return false;
  }
  return true;
}

bool certify_outer(const DipoleMap& map, double r_out, int samples) {
  if (!(r_out > 0.0) || !std::isfinite(r_out)) return false;
  if (!(std::abs(map.base().center()) < r_out)) return false;
  for (cplx a : map.zeros())
    if (!(std::abs(a) < r_out)) return false;
  for (int s = 0; s < samples; ++s) {
    const cplx z = std::polar(r_out, 2.0 * std::numbers::pi * s / samples);
    const cplx w = map.apply(z);
    if (std::isfinite(w.real()) && !(std::abs(w) >= 2.0 * r_out * (1.0 - kCertSlack))) return false;
  }
  return true;
}

namespace {

// Worst-case |prod of dipole factors| over the disk |z - p| <= r.
double inner_product_bound(const DipoleMap& map, double r) {
  const cplx p = map.base().center();
  double m = 1.0;
  for (const auto& d : map.dipoles()) {
    const double dist = std::abs(d.center - p) - r;
    if (!(dist > 0.5 * d.eps)) return kInf;
    m *= 1.0 + dipole_deviation_bound(d, dist);
  }
  return m;
}

// Worst-case lower bound on |prod of dipole factors| over |z| >= r.
double outer_product_bound(const DipoleMap& map, double r) {
  double m = 1.0;
  for (const auto& d : map.dipoles()) {
    const double dist = r - std::abs(d.center);
    if (!(dist > 1.5 * d.eps)) return 0.0;
    m *= 1.0 - dipole_deviation_bound(d, dist);
  }
  return m;
}

bool outer_bound_holds(const DipoleMap& map, double r) {
  const BaseMap& base = map.base();
  const double pa = std::abs(base.center());
  if (r <= pa) return false;
  const double m = outer_product_bound(map, r);
  if (m <= 0.0) return false;
  const double c = std::abs(base.scale());
  const int n = base.degree();
  const double t = r - pa;
  return c * std::pow(t, n) * m - pa >= 2.0 * r && n * c * std::pow(t, n - 1) * m >= 2.0;
}

}  // namespace

EscapeRadii escape_radii(const DipoleMap& map) {
  const BaseMap& base = map.base();
  const double c = std::abs(base.scale());
  const double e = 1.0 / (base.degree() - 1);
  constexpr int kRetries = 40;

  EscapeRadii out;

  double r = std::pow(1.0 / (2.0 * c), e);
  for (int i = 0; i < 2000; ++i) {
    const double m = inner_product_bound(map, r);
    if (std::isfinite(m)) {
      r = std::min(r, std::pow(1.0 / (2.0 * c * m), e));
      break;
    }
    r *= 0.5;
  }
  bool ok = false;
  for (int i = 0; i <= kRetries && !ok; ++i, r *= 0.5) {
    if (certify_inner(map, r)) {
      out.r_in = r;
      ok = true;
    }
  }
  if (!ok) throw Error(Errc::no_valid_radius, "no certified inner radius");

  double lo = std::pow(2.0 / c, e);
  for (cplx a : map.zeros()) lo = std::max(lo, std::abs(a));
  lo = std::max(lo, std::abs(base.center()));
  double hi = lo;
  int doublings = 0;
  while (!outer_bound_holds(map, hi)) {
    if (++doublings > 2000 || !std::isfinite(hi))
      throw Error(Errc::no_valid_radius, "no outer radius candidate");
    lo = hi;
    hi *= 2.0;
  }
  if (doublings > 0) {
    for (int i = 0; i < 60; ++i) {
      const double mid = 0.5 * (lo + hi);
      (outer_bound_holds(map, mid) ? hi : lo) = mid;
    }
  }
  ok = false;
  for (int i = 0; i <= kRetries && !ok; ++i, hi *= 2.0) {
    if (certify_outer(map, hi)) {
      out.r_out = hi;
      ok = true;
    }
  }
  if (!ok) throw Error(Errc::no_valid_radius, "no certified outer radius");
  return out;
}

}  // namespace jd
