#include "jd/roots.hpp"

#include <algorithm>
#include <complex>
#include <limits>

namespace jd {

cplx horner(std::span<const cplx> coeffs, cplx z) {
  cplx acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = cmul(acc, z) + *it;
  return acc;
}

double residual_scale(std::span<const cplx> coeffs, cplx z) {
  const double r = std::abs(z);
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

double cauchy_radius(std::span<const cplx> coeffs) {
  const std::size_t n = coeffs.size() - 1;
  const double lead = std::abs(coeffs[n]);
  // u(x) = sum_{k<n} |c_k / c_n| x^(k-n) is decreasing; find u(x) = 1.
  auto u = [&](double x) {
    double acc = 0.0;
    const double inv = 1.0 / x;
    double pw = inv;
    for (std::size_t k = n; k-- > 0;) {
      acc += std::abs(coeffs[k]) / lead * pw;
      pw *= inv;
    }
    return acc;
  };
  double hi = 1.0;
  for (std::size_t k = 0; k < n; ++k) hi = std::max(hi, 1.0 + std::abs(coeffs[k]) / lead);
  if (u(hi) == 0.0) return 0.0;  // all lower coefficients vanish: z^n
  double lo_log = std::log(hi) - 800.0;
  double hi_log = std::log(hi);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo_log + hi_log);
    (u(std::exp(mid)) > 1.0 ? lo_log : hi_log) = mid;
  }
  return std::exp(hi_log);
}

std::vector<cplx> circle_start(std::size_t n, double radius, cplx center) {
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k)
    out[k] = center + std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(k) / n + 0.4);
  return out;
}

std::vector<cplx> taylor_shift(std::span<const cplx> coeffs, cplx shift) {
  std::vector<cplx> c(coeffs.begin(), coeffs.end());
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t k = n - 1; k-- > i;) c[k] += shift * c[k + 1];
  return c;
}

std::vector<cplx> initial_iterates(std::span<const cplx> coeffs) {
  const std::size_t n = coeffs.size() - 1;
  const cplx centroid = -coeffs[n - 1] / (static_cast<double>(n) * coeffs[n]);
  const auto shifted = taylor_shift(coeffs, centroid);

  // Upper convex hull of (k, log|c_k|): each edge k_i -> k_j carries j - i
  // roots of modulus about (|c_i| / |c_j|)^(1/(j-i)) about the centroid.
  std::vector<double> lg(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double a = std::abs(shifted[k]);
    lg[k] = a > 0.0 ? std::log(a) : -std::numeric_limits<double>::infinity();
  }
  std::vector<std::size_t> hull;
  for (std::size_t k = 0; k <= n; ++k) {
    if (!std::isfinite(lg[k])) continue;
    while (hull.size() >= 2) {
      const std::size_t i = hull[hull.size() - 2], j = hull.back();
      // Drop j when it lies on or below the chord i -> k.
      if ((lg[j] - lg[i]) * static_cast<double>(k - i) <= (lg[k] - lg[i]) * static_cast<double>(j - i))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(k);
  }

  std::vector<cplx> out;
  out.reserve(n);
  if (hull.front() > 0) {
    // Leading zero coefficients of the recentred polynomial: roots at the centroid.
    for (std::size_t k = 0; k < hull.front(); ++k)
      out.push_back(centroid + std::polar(1e-8, 2.0 * std::numbers::pi * k / hull.front() + 0.4));
  }
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const std::size_t i = hull[h], j = hull[h + 1];
    const double r = std::exp((lg[i] - lg[j]) / static_cast<double>(j - i));
    const auto ring = circle_start(j - i, r, centroid);
    out.insert(out.end(), ring.begin(), ring.end());
  }
  return out;
}

namespace {

// Newton polish in extended precision; keeps a step only if it lowers the
// residual.
cplx polish(std::span<const cplx> coeffs, cplx z) {
  using lc = std::complex<long double>;
  auto eval = [&](lc x, lc& d) {
    lc p = 0.0L;
    d = 0.0L;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      d = d * x + p;
      p = p * x + lc(it->real(), it->imag());
    }
    return p;
  };
  lc x(z.real(), z.imag());
  lc d;
  lc p = eval(x, d);
  for (int i = 0; i < 3 && std::abs(p) > 0.0L && std::abs(d) > 0.0L; ++i) {
    const lc cand = x - p / d;
    lc d2;
    const lc p2 = eval(cand, d2);
    if (!(std::abs(p2) < std::abs(p))) break;
    x = cand;
    p = p2;
    d = d2;
  }
  return {static_cast<double>(x.real()), static_cast<double>(x.imag())};
}

}  // namespace

std::vector<cplx> poly_roots(std::span<const cplx> coeffs, const RootOptions& opts) {
  if (coeffs.size() < 2) throw Error(Errc::invalid_argument, "degree must be >= 1");
  const std::size_t n = coeffs.size() - 1;
  if (coeffs[n] == cplx(0.0)) throw Error(Errc::invalid_argument, "leading coefficient is zero");
  for (cplx c : coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw Error(Errc::invalid_argument, "non-finite coefficient");
  if (n == 1) return {-coeffs[0] / coeffs[1]};

  std::vector<cplx> deriv(n);
  for (std::size_t k = 1; k <= n; ++k) deriv[k - 1] = coeffs[k] * static_cast<double>(k);

  // Stop a little below the requested residual, but never below what Horner
  // evaluation itself can resolve (about 2n ulp of the scale).
  const double stop = std::max(opts.tol * 1e-2, 8.0 * static_cast<double>(n) *
                                                    std::numeric_limits<double>::epsilon());
  auto newton = [&](cplx z) {
    cplx p = 0.0;
    cplx d = 0.0;
    double scale = 0.0;
    const double r = std::abs(z);
    for (std::size_t k = n + 1; k-- > 0;) {
      d = cmul(d, z) + p;
      p = cmul(p, z) + coeffs[k];
      scale = scale * r + std::abs(coeffs[k]);
    }
    NewtonStep step;
    // Library division scales its operands; far-out iterates overflow |d|^2.
    step.ratio = (p == cplx(0.0)) ? cplx(0.0) : p / d;
    step.converged = std::abs(p) <= stop * scale;
    step.acceptable = std::abs(p) <= opts.tol * scale;
    return step;
  };

  std::vector<cplx> roots = initial_iterates(coeffs);
  aberth(std::span<cplx>(roots), newton, opts.max_iter);

  auto certified = [&](cplx z) { return std::abs(horner(coeffs, z)) <= opts.tol * residual_scale(coeffs, z); };
  for (cplx& z : roots) {
    const cplx polished = polish(coeffs, z);
    if (certified(polished)) z = polished;
    else if (!certified(z)) throw Error(Errc::no_convergence, "root residual above tolerance");
  }
  return roots;
}

}  // namespace jd
