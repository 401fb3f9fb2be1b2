#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace jd {

using cplx = std::complex<double>;
using Cloud = std::vector<cplx>;

/// A point of the Riemann sphere: a finite complex number or infinity.
class SpherePoint {
 public:
  SpherePoint() = default;
  SpherePoint(cplx z) : z_(z) {}  // NOLINT(google-explicit-constructor)
  SpherePoint(double re, double im) : z_(re, im) {}

  static SpherePoint infinity() {
    SpherePoint s;
    s.inf_ = true;
    return s;
  }

  bool at_infinity() const { return inf_; }
  /// Finite value; (0,0) for infinity.
  cplx value() const { return z_; }
  double re() const { return z_.real(); }
  double im() const { return z_.imag(); }

  friend bool operator==(const SpherePoint& a, const SpherePoint& b) {
    return a.inf_ == b.inf_ && a.z_ == b.z_;
  }

 private:
  cplx z_{0.0, 0.0};
  bool inf_ = false;
};

/// Axis-aligned rectangle of the complex plane.
struct Viewport {
  double re_min = -2.0;
  double re_max = 2.0;
  double im_min = -2.0;
  double im_max = 2.0;

  double width() const { return re_max - re_min; }
  double height() const { return im_max - im_min; }
  bool contains(cplx z) const {
    return z.real() >= re_min && z.real() <= re_max && z.imag() >= im_min &&
           z.imag() <= im_max;
  }
  void validate() const;
};

// Plain arithmetic helpers; std::complex operators route through the
// NaN-recovering runtime helpers, which are slow in inner loops.
inline cplx cmul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

inline cplx cdiv(cplx a, cplx b) {
  const double d = b.real() * b.real() + b.imag() * b.imag();
  return {(a.real() * b.real() + a.imag() * b.imag()) / d,
          (a.imag() * b.real() - a.real() * b.imag()) / d};
}

inline double abs2(cplx z) { return z.real() * z.real() + z.imag() * z.imag(); }

}  // namespace jd
