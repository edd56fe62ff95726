#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "slopedesign/designs.hpp"

using namespace slopedesign;

namespace {

const double kSqrt2 = std::numbers::sqrt2;
const double kSqrt3 = std::numbers::sqrt3;

// Reference values from a 40-digit evaluation of the basis derivatives on
// the exact support points (ascending powers).
const std::vector<std::vector<double>> kDerivN3 = {
    {8.663460352, -40.99593456, 35.50352078},
    {-1.866025404, 22.75833025, -28.53941916},
    {0.6666666667, -8.618802154, 13.92820323},
};
const std::vector<std::vector<double>> kRootsN3 = {
    {0.27849178, 0.87620876},
    {0.092790222, 0.70464473},
    {0.090621477, 0.52818068},
};

// Basis polynomial evaluated straight from the product formula.
double basis_direct(const std::vector<double>& s, std::size_t i, double z) {
  double num = z, den = s[i];
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (j == i) continue;
    num *= z - s[j];
    den *= s[i] - s[j];
  }
  return num / den;
}

}  // namespace

TEST_CASE("problem validation") {
  CHECK_THROWS_AS(DesignProblem(0, 1.0), InvalidProblem);
  CHECK_THROWS_AS(DesignProblem(2, 0.0), InvalidProblem);
  CHECK_THROWS_AS(DesignProblem(2, -1.0), InvalidProblem);
  CHECK_NOTHROW(DesignProblem(1, 0.1));
}

TEST_CASE("design validation") {
  auto make = [](std::vector<double> x, std::vector<double> w) { return Design{std::move(x), std::move(w)}; };
  CHECK_NOTHROW(make({0.5, 1.0}, {0.25, 0.75}).validate(1.0));
  CHECK_THROWS_AS(make({0.5, 1.0}, {0.25, 0.70}).validate(1.0), InvalidProblem);
  CHECK_THROWS_AS(make({1.0, 0.5}, {0.25, 0.75}).validate(1.0), InvalidProblem);
  CHECK_THROWS_AS(make({0.5, 1.5}, {0.25, 0.75}).validate(1.0), InvalidProblem);
  CHECK_THROWS_AS(make({0.5, 1.0}, {0.0, 1.0}).validate(1.0), InvalidProblem);
  CHECK_THROWS_AS(make({0.5}, {0.5, 0.5}).validate(1.0), InvalidProblem);
}

TEST_CASE("support_points") {
  const auto s2 = support_points(DesignProblem(2, 1.0));
  REQUIRE(s2.size() == 2);
  CHECK(s2[0] == doctest::Approx(kSqrt2 - 1.0).epsilon(1e-14));
  CHECK(s2[1] == 1.0);

  const auto s1 = support_points(DesignProblem(1, 1.0));
  REQUIRE(s1.size() == 1);
  CHECK(s1[0] == 1.0);

  const auto s4 = support_points(DesignProblem(4, 1.0));
  const std::vector<double> printed{0.1127, 0.4802, 0.8477, 1.0};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(s4[i] - printed[i]) < 1e-4);

  const auto s3 = support_points(DesignProblem(3, 2.0));
  const std::vector<double> exact{3.0 * kSqrt3 - 5.0, kSqrt3 - 1.0, 1.0};
  for (std::size_t i = 0; i < 3; ++i) CHECK(s3[i] == doctest::Approx(2.0 * exact[i]).epsilon(1e-13));

  for (unsigned n = 1; n <= 10; ++n) {
    const auto s = support_points(DesignProblem(n, 1.0));
    CHECK(std::is_sorted(s.begin(), s.end()));
    CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
    CHECK(s.front() > 0.0);
  }
}

TEST_CASE("lagrange_basis interpolates and has no intercept") {
  for (unsigned n = 1; n <= 10; ++n) {
    const DesignProblem problem(n, 1.0);
    const auto s = support_points(problem);
    const auto basis = lagrange_basis(problem);
    REQUIRE(basis.size() == n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(basis[i].degree() == n);
      CHECK(basis[i].coeff(0) == 0.0);
      CHECK(basis[i](0.0) == 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(std::abs(basis[i](s[j]) - (i == j ? 1.0 : 0.0)) <= 1e-9);
      }
      for (double z : {-0.3, 0.17, 0.5, 1.2}) {
        CHECK(basis[i](z) == doctest::Approx(basis_direct(s, i, z)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("n = 2 basis in closed form") {
  const DesignProblem problem(2, 1.0);
  const auto basis = lagrange_basis(problem);
  // L_1(z) = (z^2 - z) / (4 - 3 sqrt 2)
  const double den = 4.0 - 3.0 * kSqrt2;
  CHECK(basis[0].coeff(1) == doctest::Approx(-1.0 / den).epsilon(1e-13));
  CHECK(basis[0].coeff(2) == doctest::Approx(1.0 / den).epsilon(1e-13));

  const auto d = weight_functions(problem);
  // L_1'(z) = -(4 + 3 sqrt 2)/2 (2z - 1)
  const double k1 = (4.0 + 3.0 * kSqrt2) / 2.0;
  CHECK(std::abs(d[0].coeff(0) - k1) < 1e-12);
  CHECK(std::abs(d[0].coeff(1) + 2.0 * k1) < 1e-12);
  // L_2'(z) = -(2 + sqrt 2)/2 (-2z + sqrt 2 - 1)
  const double k2 = (2.0 + kSqrt2) / 2.0;
  CHECK(std::abs(d[1].coeff(0) + k2 * (kSqrt2 - 1.0)) < 1e-12);
  CHECK(std::abs(d[1].coeff(1) - 2.0 * k2) < 1e-12);
}

TEST_CASE("weight_functions") {
  SUBCASE("n = 1") {
    const auto d = weight_functions(DesignProblem(1, 1.0));
    REQUIRE(d.size() == 1);
    CHECK(d[0].degree() == 0u);
    CHECK(d[0].coeff(0) == doctest::Approx(1.0));
    CHECK(weight_functions(DesignProblem(1, 4.0))[0].coeff(0) == doctest::Approx(0.25));
  }
  SUBCASE("n = 3 against high-precision reference") {
    const auto d = weight_functions(DesignProblem(3, 1.0));
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(d[i].degree() == 2u);
      for (std::size_t k = 0; k < 3; ++k) CHECK(d[i].coeff(k) == doctest::Approx(kDerivN3[i][k]).epsilon(1e-9));
    }
    // Printed two-decimal table: agrees to about 1e-2, not to its last digit.
    const std::vector<double> printed_l2{-1.8680, 22.767, -28.548};
    for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(d[1].coeff(k) - printed_l2[k]) < 1e-2);
  }
  SUBCASE("n = 4 printed cubic") {
    const auto d = weight_functions(DesignProblem(4, 1.0));
    const std::vector<double> printed_l4{-0.65327, 15.858, -61.552, 56.968};
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(d[3].coeff(k) - printed_l4[k]) < 5e-3);
  }
  SUBCASE("derivatives match finite differences of the direct basis") {
    const DesignProblem problem(5, 1.0);
    const auto s = support_points(problem);
    const auto d = weight_functions(problem);
    const double h = 1e-6;
    for (std::size_t i = 0; i < 5; ++i) {
      for (double z : {-0.2, 0.33, 0.8}) {
        const double fd = (basis_direct(s, i, z + h) - basis_direct(s, i, z - h)) / (2.0 * h);
        CHECK(d[i](z) == doctest::Approx(fd).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("weights_at") {
  CHECK(weights_at(DesignProblem(1, 1.0), 0.7) == std::vector<double>{1.0});

  const DesignProblem p2(2, 1.0);
  const auto w = weights_at(p2, 1.0);
  // |L_1'(1)| = (4 + 3 sqrt 2)/2, |L_2'(1)| = (2 + sqrt 2)(3 - sqrt 2)/2
  const double l1 = (4.0 + 3.0 * kSqrt2) / 2.0;
  const double l2 = (2.0 + kSqrt2) * (3.0 - kSqrt2) / 2.0;
  CHECK(w[0] == doctest::Approx(l1 / (l1 + l2)).epsilon(1e-13));
  CHECK(w[1] == doctest::Approx(l2 / (l1 + l2)).epsilon(1e-13));

  const auto w3 = weights_at(DesignProblem(3, 1.0), 1.0);
  CHECK(std::all_of(w3.begin(), w3.end(), [](double v) { return v > 0.0; }));
  CHECK(std::accumulate(w3.begin(), w3.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("partition of unity") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 3.0);
  for (unsigned n = 1; n <= 10; ++n) {
    const DesignProblem problem(n, 1.0);
    for (int t = 0; t < 50; ++t) {
      const auto w = weights_at(problem, u(rng));
      CHECK(std::abs(std::accumulate(w.begin(), w.end(), 0.0) - 1.0) <= 1e-12);
      for (double v : w) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
    }
  }
}

TEST_CASE("admissible_region golden values") {
  SUBCASE("n = 1") {
    const auto r = admissible_region(DesignProblem(1, 1.0));
    REQUIRE(r.intervals.size() == 1);
    CHECK(r.intervals[0].lo == -kInf);
    CHECK(r.intervals[0].hi == kInf);
  }
  SUBCASE("n = 2: boundary is the positive root (sqrt 2 - 1)/2") {
    const auto r = admissible_region(DesignProblem(2, 1.0));
    REQUIRE(r.intervals.size() == 2);
    CHECK(r.intervals[0].hi == doctest::Approx((kSqrt2 - 1.0) / 2.0).epsilon(1e-12));
    CHECK(r.intervals[1].lo == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("n = 3") {
    const auto r = admissible_region(DesignProblem(3, 1.0));
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t k = 0; k < 2; ++k) CHECK(r.boundary_roots[i][k] == doctest::Approx(kRootsN3[i][k]).epsilon(1e-7));
    }
    const std::vector<double> printed{0.090, 0.2785, 0.528, 0.8758};
    const auto ends = r.finite_endpoints();
    REQUIRE(ends.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(ends[k] - printed[k]) < 2e-3);
  }
  SUBCASE("n = 4") {
    const auto r = admissible_region(DesignProblem(4, 1.0));
    const std::vector<double> printed{0.05071, 0.1696, 0.3175, 0.6432, 0.7123, 0.9332};
    const auto ends = r.finite_endpoints();
    REQUIRE(ends.size() == 6);
    for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(ends[k] - printed[k]) < 2e-3);
  }
}

TEST_CASE("each basis derivative has n - 1 real roots, strictly interlacing") {
  for (unsigned n = 2; n <= 10; ++n) {
    const auto r = admissible_region(DesignProblem(n, 1.0));
    REQUIRE(r.boundary_roots.size() == n);
    for (const auto& roots : r.boundary_roots) CHECK(roots.size() == n - 1);
    // omega_{n,k} < omega_{n-1,k} < ... < omega_{1,k} < omega_{n,k+1}
    std::vector<double> chain;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      for (std::size_t i = n; i-- > 0;) chain.push_back(r.boundary_roots[i][k]);
    }
    for (std::size_t t = 1; t < chain.size(); ++t) CHECK(chain[t - 1] < chain[t]);
    // intervals are ordered and disjoint
    for (std::size_t j = 1; j < r.intervals.size(); ++j) {
      CHECK(r.intervals[j - 1].lo < r.intervals[j - 1].hi);
      CHECK(r.intervals[j - 1].hi < r.intervals[j].lo);
    }
  }
}

TEST_CASE("sign pattern of the weight functions on each interval") {
  for (unsigned n = 2; n <= 10; ++n) {
    const DesignProblem problem(n, 1.0);
    const auto region = admissible_region(problem);
    const auto d = weight_functions(problem);
    for (std::size_t j = 0; j < n; ++j) {
      const auto& iv = region.intervals[j];
      const double lo = std::isfinite(iv.lo) ? iv.lo : iv.hi - 1.0;
      const double hi = std::isfinite(iv.hi) ? iv.hi : iv.lo + 1.0;
      const int expected = (n + j + 1) % 2 == 0 ? 1 : -1;  // (-1)^(n+j), j one-based
      for (int t = 1; t < 10; ++t) {
        const double z = lo + (hi - lo) * t / 10.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double alt = (n - (i + 1)) % 2 == 0 ? 1.0 : -1.0;
          CHECK(alt * d[i](z) * expected > 0.0);
        }
      }
    }
  }
}

TEST_CASE("scaling equivariance") {
  for (unsigned n = 1; n <= 10; ++n) {
    for (double a : {0.5, 3.0, 7.0}) {
      const DesignProblem unit(n, 1.0), scaled(n, a);
      const auto s1 = support_points(unit);
      const auto sa = support_points(scaled);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(sa[i] - a * s1[i]) <= 1e-12 * a * s1[i]);

      const auto e1 = admissible_region(unit).finite_endpoints();
      const auto ea = admissible_region(scaled).finite_endpoints();
      REQUIRE(e1.size() == ea.size());
      for (std::size_t k = 0; k < e1.size(); ++k) CHECK(std::abs(ea[k] - a * e1[k]) <= 1e-9 * std::abs(a * e1[k]));

      for (double z : {-0.4, 0.05, 0.6, 1.3}) {
        const auto w1 = weights_at(unit, z);
        const auto wa = weights_at(scaled, a * z);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(wa[i] - w1[i]) <= 1e-10);
      }
    }
  }
}

TEST_CASE("optimal_design") {
  SUBCASE("n = 1 puts all mass at a") {
    const Design d = optimal_design(DesignProblem(1, 1.0), 0.3);
    CHECK(d.points == std::vector<double>{1.0});
    CHECK(d.weights == std::vector<double>{1.0});
    CHECK(optimal_design(DesignProblem(1, 2.5), -10.0).points == std::vector<double>{2.5});
  }
  SUBCASE("n = 3 inside the middle interval") {
    const DesignProblem problem(3, 1.0);
    const Design d = optimal_design(problem, 0.4);
    REQUIRE(d.points.size() == 3);
    CHECK(d.points[0] == doctest::Approx(3.0 * kSqrt3 - 5.0).epsilon(1e-13));
    CHECK(d.points[1] == doctest::Approx(kSqrt3 - 1.0).epsilon(1e-13));
    CHECK(d.points[2] == 1.0);
    const auto w = weights_at(problem, 0.4);
    for (std::size_t i = 0; i < 3; ++i) CHECK(d.weights[i] == w[i]);
    CHECK_NOTHROW(d.validate(1.0));
  }
  SUBCASE("n = 3 in a gap") {
    try {
      (void)optimal_design(DesignProblem(3, 1.0), 0.2);
      FAIL("expected NotCovered");
    } catch (const NotCovered& e) {
      CHECK(e.z == 0.2);
      CHECK(e.region.intervals.size() == 3);
    }
  }
  SUBCASE("boundary points are reported") {
    const DesignProblem problem(3, 1.0);
    const double edge = admissible_region(problem).intervals[1].lo;
    CHECK_THROWS_AS(optimal_design(problem, edge), BoundaryPoint);
    CHECK_THROWS_AS(optimal_design(problem, edge + 5e-11), BoundaryPoint);
    CHECK_NOTHROW(optimal_design(problem, edge + 1e-6));
  }
}
