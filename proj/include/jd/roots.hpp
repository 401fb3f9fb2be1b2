#pragma once

// Simultaneous polynomial root finding (Aberth-Ehrlich iteration).

#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "jd/complex.hpp"
#include "jd/error.hpp"

namespace jd {

struct RootOptions {
  double tol = 1e-12;
  int max_iter = 1000;
};

/// All roots of sum_k coeffs[k] z^k. Each returned root satisfies
/// |P(root)| <= tol * sum_k |coeffs[k]| |root|^k.
/// Throws invalid_argument (degree < 1, zero leading coefficient) and
/// no_convergence.
std::vector<cplx> poly_roots(std::span<const cplx> coeffs, const RootOptions& opts = {});

/// Evaluates an ascending-order polynomial by Horner's rule.
cplx horner(std::span<const cplx> coeffs, cplx z);

/// sum_k |coeffs[k]| |z|^k, the scale against which residuals are measured.
double residual_scale(std::span<const cplx> coeffs, cplx z);

/// Unique positive root x of |c_n| x^n = sum_{k<n} |c_k| x^k; every root of
/// the polynomial lies in |z| <= x.
double cauchy_radius(std::span<const cplx> coeffs);

/// n points on |z - center| = radius at angles 2 pi k / n + 0.4.
std::vector<cplx> circle_start(std::size_t n, double radius, cplx center = 0.0);

/// Coefficients of P(z + shift).
std::vector<cplx> taylor_shift(std::span<const cplx> coeffs, cplx shift);

/// Initial iterates: concentric circles about the root centroid
/// -c_{n-1}/(n c_n), radii and root counts read off the Newton polygon of the
/// recentred coefficient magnitudes.
std::vector<cplx> initial_iterates(std::span<const cplx> coeffs);

/// One Newton quantity per iterate: the ratio F(z)/F'(z), whether the
/// residual is small enough to stop at z, and whether it at least meets the
/// caller's tolerance (enough to stop once the steps stall).
struct NewtonStep {
  cplx ratio;
  bool converged = false;
  bool acceptable = false;
};

/// Gauss-Seidel Aberth iteration on `roots` in place. `newton(z)` supplies
/// F(z)/F'(z). Returns the number of sweeps; throws no_convergence.
template <class Newton>
int aberth(std::span<cplx> roots, Newton&& newton, int max_iter) {
  constexpr double kStepRel = 4.0 * 2.220446049250313e-16;
  const std::size_t n = roots.size();
  std::vector<char> done(n, 0);
  std::size_t remaining = n;
  int sweep = 0;
  for (; sweep < max_iter && remaining > 0; ++sweep) {
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      const cplx z = roots[k];
      const NewtonStep step = newton(z);
      if (step.converged) {
        // Keep z: near a cluster the correction from here can be large.
        done[k] = 1;
        --remaining;
        continue;
      }
      cplx w{std::numeric_limits<double>::quiet_NaN(), 0.0};
      if (std::isfinite(step.ratio.real()) && std::isfinite(step.ratio.imag())) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < n; ++j)
          if (j != k) s += cdiv(1.0, z - roots[j]);
        w = cdiv(step.ratio, 1.0 - cmul(step.ratio, s));
      }
      if (std::isfinite(w.real()) && std::isfinite(w.imag())) {
        roots[k] = z - w;
      } else {
        // Stationary point of F; nudge off it.
        roots[k] = z * cplx(1.0, 1e-7) + 1e-7;
        continue;
      }
      if (step.acceptable && std::abs(w) <= kStepRel * std::abs(roots[k])) {
        done[k] = 1;
        --remaining;
      }
    }
  }
  if (remaining > 0)
    throw Error(Errc::no_convergence,
                std::to_string(remaining) + " roots unconverged after " + std::to_string(sweep) +
                    " sweeps");
  return sweep;
}

}  // namespace jd
