#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "slopedesign/errors.hpp"
#include "slopedesign/polynomial.hpp"

namespace slopedesign {

/// Slope estimation in y = theta_1 x + ... + theta_n x^n on [0, a].
struct DesignProblem {
  DesignProblem(unsigned degree, double endpoint);

  unsigned n;
  double a;
};

/// Finite probability measure on [0, a].
struct Design {
  std::vector<double> points;   // strictly increasing
  std::vector<double> weights;  // positive, sum to one

  /// Throws InvalidProblem when the design breaks its invariants.
  void validate(double a, double sum_tol = 1e-12) const;
};

struct Interval {
  double lo;
  double hi;

  [[nodiscard]] bool contains(double z) const { return lo < z && z < hi; }
};

/// Union of open z-intervals on which the Chebyshev-point design is optimal.
struct AdmissibleRegion {
  std::vector<Interval> intervals;
  /// boundary_roots[i][k]: (k+1)-th ascending root of the derivative of the
  /// (i+1)-th basis polynomial.
  std::vector<std::vector<double>> boundary_roots;

  /// Zero-based index of the interval whose interior holds z.
  [[nodiscard]] std::optional<std::size_t> locate(double z) const;
  /// Finite endpoints in ascending order.
  [[nodiscard]] std::vector<double> finite_endpoints() const;
};

class NotCovered : public Error {
 public:
  NotCovered(double z, AdmissibleRegion region);
  double z;
  AdmissibleRegion region;
};

class BoundaryPoint : public Error {
 public:
  BoundaryPoint(double z, double endpoint, AdmissibleRegion region);
  double z;
  double endpoint;
  AdmissibleRegion region;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Extremal points of the rescaled Chebyshev polynomial, ascending; the last
/// one is a.
std::vector<double> support_points(const DesignProblem& problem);

/// Lagrange basis without intercept on the support points: L_i(s_j) = delta_ij
/// and L_i(0) = 0.
std::vector<Poly> lagrange_basis(const DesignProblem& problem);

/// Derivatives of the basis; |L_i'(z)| is the unnormalized weight of s_i.
std::vector<Poly> weight_functions(const DesignProblem& problem);

std::vector<double> weights_at(const DesignProblem& problem, double z);

AdmissibleRegion admissible_region(const DesignProblem& problem, double root_tol = 1e-12);

/// Optimal design for estimating the slope at z. Throws NotCovered outside the
/// region and BoundaryPoint within boundary_tol of a finite endpoint.
Design optimal_design(const DesignProblem& problem, double z, double boundary_tol = 1e-10);

/// Same, against a region the caller already computed for `problem`.
Design optimal_design(const DesignProblem& problem, double z, const AdmissibleRegion& region,
                      double boundary_tol = 1e-10);

}  // namespace slopedesign
