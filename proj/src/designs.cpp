#include "slopedesign/designs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace slopedesign {

namespace {

constexpr double kWeightFloor = 1e-14;
constexpr int kMaxWindowDoublings = 60;

std::string describe(double z) { return std::to_string(z); }

}  // namespace

DesignProblem::DesignProblem(unsigned degree, double endpoint) : n(degree), a(endpoint) {
  if (n < 1) throw InvalidProblem("degree must be at least 1");
  if (!(a > 0.0) || !std::isfinite(a)) throw InvalidProblem("interval endpoint must be positive and finite");
}

void Design::validate(double a, double sum_tol) const {
  if (points.empty() || points.size() != weights.size())
    throw InvalidProblem("design needs matching, non-empty points and weights");
  double sum = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i] >= 0.0 && points[i] <= a)) throw InvalidProblem("design point outside [0, a]");
    if (i > 0 && !(points[i] > points[i - 1])) throw InvalidProblem("design points must be strictly increasing");
    if (!(weights[i] > 0.0)) throw InvalidProblem("design weights must be positive");
    sum += weights[i];
  }
  if (std::abs(sum - 1.0) > sum_tol) throw InvalidProblem("design weights must sum to one");
}

std::optional<std::size_t> AdmissibleRegion::locate(double z) const {
  for (std::size_t j = 0; j < intervals.size(); ++j) {
    if (intervals[j].contains(z)) return j;
  }
  return std::nullopt;
}

std::vector<double> AdmissibleRegion::finite_endpoints() const {
  std::vector<double> out;
  for (const auto& iv : intervals) {
    if (std::isfinite(iv.lo)) out.push_back(iv.lo);
    if (std::isfinite(iv.hi)) out.push_back(iv.hi);
  }
  return out;
}

NotCovered::NotCovered(double z_, AdmissibleRegion region_)
    : Error("z = " + describe(z_) + " is outside the admissible region"), z(z_), region(std::move(region_)) {}

BoundaryPoint::BoundaryPoint(double z_, double endpoint_, AdmissibleRegion region_)
    : Error("z = " + describe(z_) + " lies on a boundary of the admissible region"),
      z(z_),
      endpoint(endpoint_),
      region(std::move(region_)) {}

std::vector<double> support_points(const DesignProblem& problem) {
  const unsigned n = problem.n;
  const double shift = std::cos(std::numbers::pi / (2.0 * n));
  std::vector<double> s(n);
  for (unsigned i = 0; i < n; ++i) {
    s[i] = problem.a * (std::cos(i * std::numbers::pi / n) + shift) / (1.0 + shift);
  }
  std::sort(s.begin(), s.end());
  s.back() = problem.a;
  return s;
}

std::vector<Poly> lagrange_basis(const DesignProblem& problem) {
  const auto s = support_points(problem);
  std::vector<Poly> basis;
  basis.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    Poly num{0.0, 1.0};
    double den = s[i];
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j == i) continue;
      num = num * Poly{-s[j], 1.0};
      den *= s[i] - s[j];
    }
    basis.push_back(num * (1.0 / den));
  }
  return basis;
}

std::vector<Poly> weight_functions(const DesignProblem& problem) {
  auto basis = lagrange_basis(problem);
  for (auto& p : basis) p = derivative(p);
  return basis;
}

std::vector<double> weights_at(const DesignProblem& problem, double z) {
  const auto derivs = weight_functions(problem);
  std::vector<double> w(derivs.size());
  std::transform(derivs.begin(), derivs.end(), w.begin(), [z](const Poly& d) { return std::abs(d(z)); });
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  if (total < kWeightFloor) throw AllDerivativesVanish();
  for (double& v : w) v /= total;
  return w;
}

AdmissibleRegion admissible_region(const DesignProblem& problem, double root_tol) {
  const unsigned n = problem.n;
  AdmissibleRegion region;
  if (n == 1) {
    region.intervals.push_back({-kInf, kInf});
    region.boundary_roots.emplace_back();
    return region;
  }

  for (const auto& d : weight_functions(problem)) {
    double half_width = 2.0 * problem.a;
    RootList found = real_roots(d, -half_width, half_width, root_tol);
    for (int k = 0; found.roots.size() < n - 1 && k < kMaxWindowDoublings; ++k) {
      half_width *= 2.0;
      found = real_roots(d, -half_width, half_width, root_tol);
    }
    if (found.roots.size() != n - 1) throw Degenerate("basis derivative does not have n-1 real roots");
    region.boundary_roots.push_back(std::move(found.roots));
  }

  const auto& first = region.boundary_roots.front();
  const auto& last = region.boundary_roots.back();
  for (unsigned j = 0; j < n; ++j) {
    const double lo = j == 0 ? -kInf : first[j - 1];
    const double hi = j == n - 1 ? kInf : last[j];
    region.intervals.push_back({lo, hi});
  }
  return region;
}

Design optimal_design(const DesignProblem& problem, double z, double boundary_tol) {
  if (problem.n == 1) return Design{{problem.a}, {1.0}};
  return optimal_design(problem, z, admissible_region(problem), boundary_tol);
}

Design optimal_design(const DesignProblem& problem, double z, const AdmissibleRegion& region, double boundary_tol) {
  if (problem.n == 1) return Design{{problem.a}, {1.0}};
  for (double e : region.finite_endpoints()) {
    if (std::abs(z - e) <= boundary_tol) throw BoundaryPoint(z, e, region);
  }
  if (!region.locate(z)) throw NotCovered(z, region);
  return Design{support_points(problem), weights_at(problem, z)};
}

}  // namespace slopedesign
