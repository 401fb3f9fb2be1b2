#pragma once

// Independent reference implementations used as test oracles. Deliberately
// naive: direct formulas, quadratic loops, no shared code with the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using cx = std::complex<double>;
using lcx = std::complex<long double>;

// p + C (z-p)^N prod (z - a_i) / (z - b_i), straight from the definition.
inline cx direct_map(int n, cx c, cx p, const std::vector<cx>& zeros, const std::vector<cx>& poles,
                     cx z) {
  lcx v = lcx(c.real(), c.imag());
  const lcx d(z.real() - p.real(), z.imag() - p.imag());
  for (int i = 0; i < n; ++i) v *= d;
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    v *= lcx(z.real(), z.imag()) - lcx(zeros[i].real(), zeros[i].imag());
    v /= lcx(z.real(), z.imag()) - lcx(poles[i].real(), poles[i].imag());
  }
  return cx(static_cast<double>(v.real()) + p.real(), static_cast<double>(v.imag()) + p.imag());
}

// Ascending coefficients of lead * prod (z - r_i), accumulated in long double.
inline std::vector<cx> poly_from_roots(const std::vector<cx>& roots, cx lead = 1.0) {
  std::vector<lcx> c{lcx(lead.real(), lead.imag())};
  for (cx r : roots) {
    std::vector<lcx> next(c.size() + 1, 0.0L);
    const lcx rr(r.real(), r.imag());
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= rr * c[k];
    }
    c = std::move(next);
  }
  std::vector<cx> out;
  for (const lcx& v : c) out.emplace_back(static_cast<double>(v.real()), static_cast<double>(v.imag()));
  return out;
}

inline cx eval_poly(const std::vector<cx>& c, cx z) {
  cx s = 0.0;
  cx zk = 1.0;
  for (cx v : c) {
    s += v * zk;
    zk *= z;
  }
  return s;
}

// sup over a of inf over b, by full pairwise scan.
inline double directed_hausdorff(const std::vector<cx>& a, const std::vector<cx>& b) {
  double worst = 0.0;
  for (cx x : a) {
    double best = std::numeric_limits<double>::infinity();
    for (cx y : b) best = std::min(best, std::abs(x - y));
    worst = std::max(worst, best);
  }
  return worst;
}

inline double hausdorff(const std::vector<cx>& a, const std::vector<cx>& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

// Minimum-cost perfect matching (Hungarian method, O(n^3)). Returns match[i]
// = column assigned to row i.
inline std::vector<int> hungarian(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> match(n);
  for (int j = 1; j <= n; ++j) match[p[j] - 1] = j - 1;
  return match;
}

// Largest |found - expected| after optimal matching.
inline double matched_error(const std::vector<cx>& found, const std::vector<cx>& expected) {
  std::vector<std::vector<double>> cost(found.size(), std::vector<double>(expected.size()));
  for (std::size_t i = 0; i < found.size(); ++i)
    for (std::size_t j = 0; j < expected.size(); ++j) cost[i][j] = std::abs(found[i] - expected[j]);
  const auto m = hungarian(cost);
  double worst = 0.0;
  for (std::size_t i = 0; i < found.size(); ++i) worst = std::max(worst, cost[i][m[i]]);
  return worst;
}

// How far rounding exact coefficients to double moves the known roots:
// long-double Newton on the rounded coefficients, started at each root.
inline double rounding_shift(const std::vector<cx>& coeffs, const std::vector<cx>& roots) {
  double worst = 0.0;
  for (cx r : roots) {
    lcx z(r.real(), r.imag());
    for (int it = 0; it < 60; ++it) {
      lcx p = 0.0L, d = 0.0L;
      for (std::size_t k = coeffs.size(); k-- > 0;) {
        d = d * z + p;
        p = p * z + lcx(coeffs[k].real(), coeffs[k].imag());
      }
      if (d == lcx(0.0L)) break;
      z -= p / d;
    }
    worst = std::max(worst, static_cast<double>(std::abs(z - lcx(r.real(), r.imag()))));
  }
  return worst;
}

inline std::vector<cx> circle(int n, double r, cx center = 0.0, double phase = 0.0) {
  std::vector<cx> out;
  for (int k = 0; k < n; ++k)
    out.push_back(center + std::polar(r, 2.0 * std::numbers::pi * k / n + phase));
  return out;
}

inline cx random_in_disk(std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(r * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
}

}  // namespace oracle
