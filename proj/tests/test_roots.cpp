#include <random>

#include "doctest.h"
#include "jd/error.hpp"
#include "jd/roots.hpp"
#include "oracles.hpp"

using namespace jd;
using oracle::cx;

namespace {

std::vector<cx> random_roots(std::mt19937_64& rng, int n, double radius) {
  std::vector<cx> r;
  for (int i = 0; i < n; ++i) r.push_back(oracle::random_in_disk(rng, radius));
  return r;
}

double worst_residual_ratio(const std::vector<cx>& coeffs, const std::vector<cx>& roots) {
  double worst = 0.0;
  for (cx z : roots) {
    double scale = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) scale += std::abs(coeffs[k]) * std::pow(std::abs(z), k);
    worst = std::max(worst, std::abs(oracle::eval_poly(coeffs, z)) / scale);
  }
  return worst;
}

}  // namespace

TEST_CASE("small polynomials") {
  const std::vector<cx> sq{-1.0, 0.0, 1.0};
  CHECK(oracle::matched_error(poly_roots(sq), {1.0, -1.0}) < 1e-14);
  const auto cubic = oracle::poly_from_roots({1.0, 2.0, 3.0});
  CHECK(oracle::matched_error(poly_roots(cubic), {1.0, 2.0, 3.0}) < 1e-13);
  const std::vector<cx> linear{cx(2, 1), cx(0, 1)};
  const auto r = poly_roots(linear);
  REQUIRE(r.size() == 1);
  CHECK(std::abs(r[0] - cx(-1, 2)) < 1e-15);
}

TEST_CASE("argument errors") {
  const std::vector<cx> constant{1.0};
  const std::vector<cx> zero_lead{1.0, 2.0, 0.0};
  for (const auto* c : {&constant, &zero_lead}) {
    try {
      poly_roots(*c);
      FAIL("expected invalid_argument");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::invalid_argument);
    }
  }
}

TEST_CASE("an impossible iteration budget reports no convergence") {
  std::mt19937_64 rng(1);
  const auto c = oracle::poly_from_roots(random_roots(rng, 30, 2.0));
  try {
    poly_roots(c, {1e-12, 1});
    FAIL("expected no_convergence");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::no_convergence);
  }
}

TEST_CASE("degree 50 with known roots") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto roots = random_roots(rng, 50, 2.0);
    const auto c = oracle::poly_from_roots(roots);
    const auto found = poly_roots(c);
    REQUIRE(found.size() == 50);
    CHECK(oracle::matched_error(found, roots) < 1e-8);
  }
}

TEST_CASE("degree 100 and above: residual certificate") {
  std::mt19937_64 rng(3);
  for (int n : {100, 120, 160}) {
    const auto roots = random_roots(rng, n, 1.5);
    const auto c = oracle::poly_from_roots(roots, cx(0.7, -0.2));
    const auto found = poly_roots(c);
    REQUIRE(found.size() == static_cast<std::size_t>(n));
    CHECK(worst_residual_ratio(c, found) <= 1e-12);
  }
  // Random coefficients rather than random roots.
  std::normal_distribution<double> g;
  std::vector<cx> c;
  for (int k = 0; k <= 128; ++k) c.emplace_back(g(rng), g(rng));
  const auto found = poly_roots(c);
  CHECK(found.size() == 128);
  CHECK(worst_residual_ratio(c, found) <= 1e-12);
}

TEST_CASE("degree 82: always certified, exact wherever the coefficients allow") {
  std::mt19937_64 rng(82);
  int well_conditioned = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto roots = random_roots(rng, 82, 2.0);
    const auto c = oracle::poly_from_roots(roots);
    std::vector<cx> found;
    REQUIRE_NOTHROW(found = poly_roots(c));
    CHECK(worst_residual_ratio(c, found) <= 1e-12);
    // Roots that double coefficients pin down to 1e-9 must come back to 1e-8.
    if (oracle::rounding_shift(c, roots) <= 1e-9) {
      ++well_conditioned;
      CHECK(oracle::matched_error(found, roots) <= 1e-8);
    }
  }
  CHECK(well_conditioned >= 50);
}

TEST_CASE("iterates thrown far out come back") {
  // Roots spread over five orders of magnitude push early iterates far away.
  std::vector<cx> roots;
  for (int i = 0; i < 40; ++i) roots.push_back(std::polar(std::pow(10.0, -2 + i / 8.0), 0.7 * i));
  const auto c = oracle::poly_from_roots(roots);
  const auto found = poly_roots(c);
  CHECK(worst_residual_ratio(c, found) <= 1e-12);
}

TEST_CASE("reconstruction from roots for degree up to 30") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  for (int n = 1; n <= 30; ++n) {
    std::vector<cx> c;
    for (int k = 0; k < n; ++k) c.emplace_back(g(rng), g(rng));
    c.emplace_back(1.0);
    const auto roots = poly_roots(c);
    const auto rebuilt = oracle::poly_from_roots(roots);
    double norm = 0.0;
    for (cx v : c) norm = std::max(norm, std::abs(v));
    for (int k = 0; k <= n; ++k) CHECK(std::abs(rebuilt[k] - c[k]) <= 1e-6 * norm);
  }
}

TEST_CASE("repeated and clustered roots") {
  const auto triple = oracle::poly_from_roots({1.0, 1.0, 1.0, -2.0});
  const auto r = poly_roots(triple);
  CHECK(worst_residual_ratio(triple, r) <= 1e-12);
  // A multiple root is only determined to about eps^(1/m).
  CHECK(oracle::matched_error(r, {1.0, 1.0, 1.0, -2.0}) < 1e-4);

  std::vector<cx> cluster;
  for (int i = 0; i < 20; ++i) cluster.push_back(cx(1.5, 0.5) + std::polar(1e-3, 0.3 * i));
  for (int i = 0; i < 5; ++i) cluster.push_back(std::polar(2.0, 1.2 * i));
  const auto c = oracle::poly_from_roots(cluster);
  CHECK(worst_residual_ratio(c, poly_roots(c)) <= 1e-12);
}

TEST_CASE("Horner and residual scale") {
  const std::vector<cx> c{cx(1, 1), -2.0, cx(0, 3), 0.5};
  for (cx z : {cx(0.3, -1.2), cx(2, 2), cx(-1, 0)}) {
    CHECK(std::abs(horner(c, z) - oracle::eval_poly(c, z)) < 1e-13);
    double s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) s += std::abs(c[k]) * std::pow(std::abs(z), k);
    CHECK(residual_scale(c, z) == doctest::Approx(s).epsilon(1e-14));
  }
}

TEST_CASE("Cauchy radius encloses every root") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto roots = random_roots(rng, 5 + trial, 0.5 + trial * 0.2);
    const auto c = oracle::poly_from_roots(roots, cx(3.0, 1.0));
    const double r = cauchy_radius(c);
    for (cx z : roots) CHECK(std::abs(z) <= r * (1 + 1e-12));
    // And it solves |c_n| x^n = sum_{k<n} |c_k| x^k.
    double lhs = std::abs(c.back()) * std::pow(r, c.size() - 1);
    double rhs = 0.0;
    for (std::size_t k = 0; k + 1 < c.size(); ++k) rhs += std::abs(c[k]) * std::pow(r, k);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("Taylor shift") {
  const std::vector<cx> c{cx(1, -1), 2.0, cx(0, 0.5), -1.0, 0.25};
  const cx s(0.7, -0.3);
  const auto shifted = taylor_shift(c, s);
  for (cx z : {cx(0, 0), cx(1, 1), cx(-0.4, 2)})
    CHECK(std::abs(oracle::eval_poly(shifted, z) - oracle::eval_poly(c, z + s)) < 1e-12);
}

TEST_CASE("initial iterates are deterministic circles") {
  const auto a = circle_start(8, 2.0, cx(1, 0));
  REQUIRE(a.size() == 8);
  for (int k = 0; k < 8; ++k) {
    CHECK(std::abs(a[k] - cx(1, 0)) == doctest::Approx(2.0));
    CHECK(std::arg(a[k] - cx(1, 0)) == doctest::Approx(std::remainder(2 * std::numbers::pi * k / 8 + 0.4, 2 * std::numbers::pi)));
  }
  std::mt19937_64 rng(6);
  const auto c = oracle::poly_from_roots(random_roots(rng, 40, 2.0));
  const auto s1 = initial_iterates(c);
  CHECK(s1.size() == 40);
  CHECK(s1 == initial_iterates(c));
}

TEST_CASE("roots are deterministic") {
  std::mt19937_64 rng(7);
  const auto c = oracle::poly_from_roots(random_roots(rng, 82, 2.0));
  CHECK(poly_roots(c) == poly_roots(c));
}
