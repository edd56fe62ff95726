#include "slopedesign/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "slopedesign/elfving.hpp"

namespace slopedesign {

namespace {

constexpr double kMassFloor = 1e-12;
constexpr double kLpAgreement = 1e-2;
constexpr double kRestrictedAgreement = 1e-9;

Design to_design(const std::map<double, double>& mass) {
  Design d;
  const double total =
      std::accumulate(mass.begin(), mass.end(), 0.0, [](double acc, const auto& kv) { return acc + kv.second; });
  for (const auto& [x, w] : mass) {
    if (w <= kMassFloor * total) continue;
    d.points.push_back(x);
    d.weights.push_back(w);
  }
  const double kept = std::accumulate(d.weights.begin(), d.weights.end(), 0.0);
  for (double& w : d.weights) w /= kept;
  return d;
}

double weight_discrepancy(const Design& lhs, const Design& rhs) {
  std::map<double, double> diff;
  for (std::size_t i = 0; i < lhs.points.size(); ++i) diff[lhs.points[i]] += lhs.weights[i];
  for (std::size_t i = 0; i < rhs.points.size(); ++i) diff[rhs.points[i]] -= rhs.weights[i];
  double worst = 0.0;
  for (const auto& [x, d] : diff) worst = std::max(worst, std::abs(d));
  return worst;
}

// Candidates nearest the Chebyshev support on (0, max]; u or v column by the
// sign of the interpolation coefficient. Empty when no such basis exists.
std::vector<Eigen::Index> starting_basis(unsigned n, std::span<const double> candidates, const Eigen::MatrixXd& scaled,
                                         const Eigen::VectorXd& rhs) {
  const double top = *std::max_element(candidates.begin(), candidates.end());
  if (!(top > 0.0) || candidates.size() < n) return {};
  std::vector<Eigen::Index> picked;
  for (double s : support_points(DesignProblem(n, top))) {
    Eigen::Index best = 0;
    for (std::size_t k = 1; k < candidates.size(); ++k) {
      if (std::abs(candidates[k] - s) < std::abs(candidates[static_cast<std::size_t>(best)] - s))
        best = static_cast<Eigen::Index>(k);
    }
    if (std::find(picked.begin(), picked.end(), best) != picked.end() || candidates[static_cast<std::size_t>(best)] <= 0.0)
      return {};
    picked.push_back(best);
  }
  Eigen::MatrixXd basis(n, n);
  for (unsigned j = 0; j < n; ++j) basis.col(j) = scaled.col(picked[j]);
  const Eigen::VectorXd beta = Eigen::FullPivLU<Eigen::MatrixXd>(basis).solve(rhs);
  const auto count = static_cast<Eigen::Index>(candidates.size());
  for (unsigned j = 0; j < n; ++j) {
    if (beta[j] < 0.0) picked[j] += count;
  }
  return picked;
}

}  // namespace

std::vector<double> lp_grid(const DesignProblem& problem, const GridSpec& grid) {
  if (grid.m < problem.n + 1) throw InvalidProblem("grid must have at least n + 1 points");
  std::vector<double> pts;
  pts.reserve(grid.m + problem.n);
  for (std::size_t k = 1; k < grid.m; ++k) {
    pts.push_back(problem.a * static_cast<double>(k) / static_cast<double>(grid.m - 1));
  }
  pts.back() = problem.a;
  for (double s : support_points(problem)) pts.push_back(s);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

LpDesign lp_c_optimal(unsigned n, std::span<const double> candidates, const Eigen::VectorXd& c,
                      const SimplexOptions& options) {
  if (c.size() != static_cast<Eigen::Index>(n)) throw Error("lp_c_optimal: c must have length n");
  if (c.isZero(0.0)) throw Error("lp_c_optimal: c must be nonzero");
  const auto count = static_cast<Eigen::Index>(candidates.size());

  Eigen::MatrixXd f(n, count);
  for (Eigen::Index i = 0; i < count; ++i) f.col(i) = regression_vector(candidates[static_cast<std::size_t>(i)], n);
  // Row equilibration: raw powers span many orders of magnitude for larger n.
  Eigen::VectorXd row_scale = f.cwiseAbs().rowwise().maxCoeff();
  if ((row_scale.array() == 0.0).any()) throw Infeasible("candidate set spans no direction of some coordinate");
  row_scale = row_scale.cwiseInverse();
  const Eigen::MatrixXd scaled = row_scale.asDiagonal() * f;
  const Eigen::VectorXd rhs = row_scale.cwiseProduct(c);

  Eigen::MatrixXd lp(n, 2 * count);
  lp << scaled, -scaled;
  const auto start = starting_basis(n, candidates, scaled, rhs);
  const SimplexResult sol = simplex_minimize(lp, rhs, Eigen::VectorXd::Ones(2 * count), options, start);

  // Re-solve the optimal basis directly; the tableau accumulates rounding.
  Eigen::VectorXd x = sol.x;
  std::vector<Eigen::Index> structural;
  for (Eigen::Index k : sol.basis) {
    if (k < 2 * count) structural.push_back(k);
  }
  if (structural.size() == n) {
    Eigen::MatrixXd basis(n, n);
    for (unsigned j = 0; j < n; ++j) basis.col(j) = lp.col(structural[j]);
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
    if (lu.isInvertible()) {
      const Eigen::VectorXd xb = lu.solve(rhs);
      if (xb.minCoeff() >= -1e-9 * xb.lpNorm<1>()) {
        x.setZero();
        for (unsigned j = 0; j < n; ++j) x[structural[j]] = std::max(0.0, xb[j]);
      }
    }
  }

  std::map<double, double> mass;
  for (Eigen::Index k = 0; k < 2 * count; ++k) {
    if (x[k] > 0.0) mass[candidates[static_cast<std::size_t>(k % count)]] += x[k];
  }
  LpDesign out;
  out.h = x.sum();
  out.variance = out.h * out.h;
  out.design = to_design(mass);
  out.iterations = sol.iterations;
  return out;
}

LpDesign lp_c_optimal(const DesignProblem& problem, const Eigen::VectorXd& c, const GridSpec& grid,
                      const SimplexOptions& options) {
  const auto pts = lp_grid(problem, grid);
  return lp_c_optimal(problem.n, pts, c, options);
}

RestrictedWeights restricted_weights(std::span<const double> support, const Eigen::VectorXd& c) {
  const auto n = static_cast<Eigen::Index>(support.size());
  if (c.size() != n) throw SingularSupport("support size must equal the model dimension");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(support[static_cast<std::size_t>(i)]) <= 1e-12) throw SingularSupport("support contains the origin");
    for (Eigen::Index j = 0; j < i; ++j) {
      if (std::abs(support[static_cast<std::size_t>(i)] - support[static_cast<std::size_t>(j)]) <= 1e-12)
        throw SingularSupport("support points coincide");
    }
  }

  Eigen::MatrixXd f(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    f.col(i) = regression_vector(support[static_cast<std::size_t>(i)], static_cast<unsigned>(n));
  }
  const Eigen::VectorXd row_scale = f.cwiseAbs().rowwise().maxCoeff().cwiseInverse();
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(row_scale.asDiagonal() * f);
  const Eigen::VectorXd beta = lu.solve(row_scale.cwiseProduct(c));

  RestrictedWeights out;
  out.beta.assign(beta.data(), beta.data() + n);
  const double total = beta.lpNorm<1>();
  out.variance = total * total;
  for (Eigen::Index i = 0; i < n; ++i) out.weights.push_back(std::abs(beta[i]) / total);
  return out;
}

OracleReport compare(const DesignProblem& problem, double z, const GridSpec& grid) {
  OracleReport report;
  const Eigen::VectorXd c = slope_vector(z, problem.n);
  const auto support = support_points(problem);

  report.closed_form_variance = std::numeric_limits<double>::quiet_NaN();
  try {
    (void)optimal_design(problem, z);
    double total = 0.0;
    for (const auto& d : weight_functions(problem)) total += std::abs(d(z));
    report.closed_form_variance = total * total;
    report.status = "covered";
  } catch (const BoundaryPoint&) {
    report.status = "boundary";
  } catch (const NotCovered&) {
    report.status = "not_covered";
  }

  const LpDesign lp = lp_c_optimal(problem, c, grid);
  report.lp_variance = lp.variance;
  report.lp_design = lp.design;

  const RestrictedWeights restricted = restricted_weights(support, c);
  report.restricted_variance = restricted.variance;
  std::map<double, double> mass;
  for (std::size_t i = 0; i < support.size(); ++i) mass[support[i]] = restricted.weights[i];
  report.restricted_design = to_design(mass);

  report.max_weight_discrepancy = weight_discrepancy(lp.design, report.restricted_design);
  report.lp_relative_gap = (report.restricted_variance - report.lp_variance) / report.restricted_variance;
  // Grid effects shrink like (spacing / a)^2.
  const double spacing = 1.0 / static_cast<double>(grid.m - 1);
  report.outside_threshold = std::max(1e-6, 3.0 * spacing * spacing);

  if (report.status == "covered") {
    const double cf = report.closed_form_variance;
    report.agrees = std::abs(report.lp_variance - cf) <= kLpAgreement * cf &&
                    std::abs(report.restricted_variance - cf) <= kRestrictedAgreement * cf;
  } else {
    report.closed_form_suboptimal = report.lp_relative_gap > report.outside_threshold;
  }
  return report;
}

}  // namespace slopedesign
