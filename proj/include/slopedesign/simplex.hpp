#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace slopedesign {

enum class Pricing {
  bland,    // smallest eligible index enters; never cycles
  dantzig,  // most negative reduced cost; Bland takes over on degenerate stalls
};

struct SimplexOptions {
  Pricing pricing = Pricing::dantzig;
  double pivot_tol = 1e-11;
  double optimality_tol = 1e-11;
  std::size_t max_iterations = 100000;
  /// Consecutive degenerate pivots after which dantzig pricing hands over to
  /// Bland's rule until the objective moves again.
  std::size_t stall_limit = 20;
};

struct SimplexResult {
  Eigen::VectorXd x;
  double objective = 0.0;
  std::vector<Eigen::Index> basis;  // column index of the basic variable per row
  std::size_t iterations = 0;
};

/// Two-phase revised primal simplex (dense, basis refactorized each step) for
///   minimize cost^T x  subject to  A x = b,  x >= 0.
/// Throws Infeasible when phase one leaves a positive artificial, and
/// NumericalFailure on unboundedness or when the iteration cap is hit.
/// `start`, if given, is a feasible basis (one column per row) that replaces
/// phase one; it is ignored when singular or infeasible.
SimplexResult simplex_minimize(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& cost,
                               const SimplexOptions& options = {}, std::span<const Eigen::Index> start = {});

}  // namespace slopedesign
