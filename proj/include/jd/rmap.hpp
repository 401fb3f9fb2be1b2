#pragma once

// Base power maps, dipoles, and the composite rational map
//
//   g(z) = p + C (z - p)^N * prod_i (z - a_i) / (z - b_i)
//
// together with the dynamical constants derived from them.

#include <span>
#include <utility>
#include <vector>

#include "jd/complex.hpp"

namespace jd {

/// f(z) = p + C (z - p)^N. Invariant circle |z - p| = |C|^(-1/(N-1)).
class BaseMap {
 public:
  BaseMap(int degree, cplx scale, cplx center);

  int degree() const { return degree_; }
  cplx scale() const { return scale_; }
  cplx center() const { return center_; }

  cplx operator()(cplx z) const;

 private:
  int degree_;
  cplx scale_;
  cplx center_;
};

BaseMap make_base(int degree, cplx scale = 1.0, cplx center = 0.0);

double base_circle_radius(const BaseMap& base);

/// Zero a = c + (eps/2) e^{i theta}, pole b = c - (eps/2) e^{i theta}.
struct Dipole {
  cplx center;
  double eps = 0.0;
  double theta = 0.0;

  cplx zero() const;
  cplx pole() const;
};

/// Returns (zero, pole). Throws invalid_dipole if eps is not positive.
std::pair<cplx, cplx> dipole_zero_pole(const Dipole& d);

/// Upper bound for |(z-a)/(z-b) - 1| when |z - c| >= dist.
double dipole_deviation_bound(const Dipole& d, double dist);

struct EscapeRadii {
  double r_in = 0.0;   ///< |z-p| <= r_in  implies |g(z)-p| <= |z-p|/2
  double r_out = 0.0;  ///< |z| >= r_out   implies |g(z)| >= 2|z|
};

/// Ascending coefficients of g(z) - p = P(z) / Q(z).
struct ExpandedMap {
  std::vector<cplx> numerator;
  std::vector<cplx> denominator;
};

class DipoleMap {
 public:
  DipoleMap(BaseMap base, std::vector<Dipole> dipoles);

  const BaseMap& base() const { return base_; }
  std::span<const Dipole> dipoles() const { return dipoles_; }
  std::span<const cplx> zeros() const { return zeros_; }
  std::span<const cplx> poles() const { return poles_; }
  std::size_t size() const { return dipoles_.size(); }

  /// Factored-form evaluation on the sphere.
  SpherePoint eval(const SpherePoint& z) const;

  /// Factored-form evaluation of a finite point. Returns a non-finite value
  /// (real part +inf) for points within kPoleSnap of a pole or on overflow.
  cplx apply(cplx z) const {
    if (!dipoles_.empty() && abs2(z) < kChunkedLimit2) return apply_chunked(z);
    return apply_ratio(z);
  }

  /// (g(z) - p), its logarithmic derivative, and the sum of 1/(z - b_i).
  struct Local {
    cplx shifted;   ///< g(z) - p
    cplx log_deriv; ///< g'(z) / (g(z) - p)
    cplx pole_sum;  ///< sum_i 1/(z - b_i)
  };
  Local local(cplx z) const;

  const ExpandedMap& expanded() const { return expanded_; }

  static constexpr double kPoleSnap = 1e-12;

 private:
  static constexpr double kChunkedLimit2 = 1e16;  // |z| < 1e8
  cplx apply_chunked(cplx z) const;
  cplx apply_ratio(cplx z) const;

  BaseMap base_;
  std::vector<Dipole> dipoles_;
  std::vector<cplx> zeros_;
  std::vector<cplx> poles_;
  ExpandedMap expanded_;
};

DipoleMap build_map(const BaseMap& base, std::vector<Dipole> dipoles);

SpherePoint eval(const DipoleMap& map, const SpherePoint& z);

/// Candidate-and-certify escape radii. Throws no_valid_radius.
EscapeRadii escape_radii(const DipoleMap& map);

/// True when `samples` equally spaced points on each circle satisfy the
/// contraction and expansion inequalities and the pole/zero placement allows
/// the maximum principle to extend them to the whole disk and exterior.
bool certify_inner(const DipoleMap& map, double r_in, int samples = 4096);
bool certify_outer(const DipoleMap& map, double r_out, int samples = 4096);

const ExpandedMap& expanded_coefficients(const DipoleMap& map);

}  // namespace jd
