#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "slopedesign/designs.hpp"
#include "slopedesign/simplex.hpp"

namespace slopedesign {

/// Uniform grid of m points on [0, a].
struct GridSpec {
  std::size_t m = 2001;
};

/// The uniform grid merged with the closed-form support points, ascending
/// and free of duplicates and of the origin (f(0) = 0 carries no information).
std::vector<double> lp_grid(const DesignProblem& problem, const GridSpec& grid);

struct LpDesign {
  double h = 0.0;
  double variance = 0.0;  // h^2
  Design design;
  std::size_t iterations = 0;
};

/// c-optimal design over a finite candidate set via Elfving's representation:
/// minimize sum (u_i + v_i) subject to sum (u_i - v_i) f(x_i) = c, u, v >= 0.
LpDesign lp_c_optimal(unsigned n, std::span<const double> candidates, const Eigen::VectorXd& c,
                      const SimplexOptions& options = {});

/// Same on lp_grid(problem, grid).
LpDesign lp_c_optimal(const DesignProblem& problem, const Eigen::VectorXd& c, const GridSpec& grid = {},
                      const SimplexOptions& options = {});

struct RestrictedWeights {
  double variance = 0.0;
  std::vector<double> weights;
  std::vector<double> beta;  // solution of F beta = c, F = (f(s_1), ..., f(s_n))
};

/// Optimal weights for a fixed support of exactly n points. Throws
/// SingularSupport when two points coincide or a point is zero.
RestrictedWeights restricted_weights(std::span<const double> support, const Eigen::VectorXd& c);

struct OracleReport {
  /// "covered", "boundary" or "not_covered".
  std::string status;
  double closed_form_variance = 0.0;  // NaN unless covered
  double lp_variance = 0.0;
  double restricted_variance = 0.0;
  Design lp_design;
  Design restricted_design;
  double max_weight_discrepancy = 0.0;  // LP design against the restricted design
  double lp_relative_gap = 0.0;         // (restricted - lp) / restricted
  double outside_threshold = 0.0;       // gap needed to call the closed-form support suboptimal
  bool agrees = false;
  bool closed_form_suboptimal = false;
};

OracleReport compare(const DesignProblem& problem, double z, const GridSpec& grid = {});

}  // namespace slopedesign
