#include "slopedesign/elfving.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace slopedesign {

namespace {

// Rows sqrt(w_i) f(x_i)^T with columns scaled to unit max-abs; returns the
// column scales so callers can undo the scaling on c.
Eigen::MatrixXd weighted_design_rows(const Design& design, unsigned n, Eigen::VectorXd& col_scale) {
  const auto m = static_cast<Eigen::Index>(design.points.size());
  Eigen::MatrixXd rows(m, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    rows.row(i) = std::sqrt(design.weights[static_cast<std::size_t>(i)]) *
                  regression_vector(design.points[static_cast<std::size_t>(i)], n).transpose();
  }
  col_scale = rows.cwiseAbs().colwise().maxCoeff().transpose();
  for (Eigen::Index k = 0; k < col_scale.size(); ++k) {
    if (col_scale[k] == 0.0) col_scale[k] = 1.0;
  }
  rows = rows * col_scale.cwiseInverse().asDiagonal();
  return rows;
}

}  // namespace

Eigen::VectorXd regression_vector(double x, unsigned n) {
  Eigen::VectorXd f(n);
  double power = x;
  for (unsigned k = 0; k < n; ++k) {
    f[k] = power;
    power *= x;
  }
  return f;
}

Eigen::VectorXd slope_vector(double z, unsigned n) {
  Eigen::VectorXd c(n);
  double power = 1.0;
  for (unsigned k = 0; k < n; ++k) {
    c[k] = (k + 1) * power;
    power *= z;
  }
  return c;
}

InfoMatrix info_matrix(const Design& design, unsigned n) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < design.points.size(); ++i) {
    const Eigen::VectorXd f = regression_vector(design.points[i], n);
    m.noalias() += design.weights[i] * f * f.transpose();
  }
  return {m};
}

double variance(const Design& design, const Eigen::VectorXd& c, double admissible_tol) {
  const auto n = static_cast<unsigned>(c.size());
  Eigen::VectorXd scale;
  const Eigen::MatrixXd rows = weighted_design_rows(design, n, scale);
  // A = rows * D with D = diag(scale): A^T u = c  <=>  rows^T u = c / scale.
  const Eigen::VectorXd rhs = c.cwiseQuotient(scale);
  const Eigen::MatrixXd at = rows.transpose();
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(at);
  const Eigen::VectorXd u = cod.solve(rhs);
  const double residual = (at * u - rhs).norm();
  if (residual > admissible_tol * rhs.norm()) return kInf;
  return u.squaredNorm();
}

double variance_normal_equations(const Design& design, const Eigen::VectorXd& c, double admissible_tol) {
  const auto n = static_cast<unsigned>(c.size());
  const Eigen::MatrixXd m = info_matrix(design, n).entries;
  // Jacobi equilibration: D M D (D^-1 v) = D c.
  Eigen::VectorXd d = m.diagonal().cwiseSqrt();
  for (Eigen::Index k = 0; k < d.size(); ++k) d[k] = d[k] > 0.0 ? 1.0 / d[k] : 1.0;
  const Eigen::MatrixXd scaled = d.asDiagonal() * m * d.asDiagonal();
  const Eigen::VectorXd rhs = d.cwiseProduct(c);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-13);
  const Eigen::VectorXd w = svd.solve(rhs);
  const double residual = (scaled * w - rhs).norm();
  if (residual > admissible_tol * rhs.norm()) return kInf;
  return rhs.dot(w);
}

Poly extremal_polynomial(const DesignProblem& problem) {
  const double shift = std::cos(std::numbers::pi / (2.0 * problem.n));
  const Poly s = compose_affine(chebyshev_t(problem.n), (1.0 + shift) / problem.a, -shift);
  // S_n(0) = cos(n pi - pi/2) = 0; drop the rounding residue
  std::vector<double> c(s.coeffs().begin(), s.coeffs().end());
  c[0] = 0.0;
  return Poly(std::move(c));
}

ZOutsideRegion::ZOutsideRegion(double z_)
    : Error("z = " + std::to_string(z_) + " is not interior to the admissible region"), z(z_) {}

bool ElfvingCertificate::verifies() const {
  if (!(condition1_margin <= tol)) return false;
  for (double r : condition2_residuals) {
    if (!(r <= tol)) return false;
  }
  return condition3_residual <= tol * (1.0 + c_max);
}

ElfvingCertificate certify(const DesignProblem& problem, double z, const Design& design,
                           const CertifyOptions& options) {
  const unsigned n = problem.n;
  const AdmissibleRegion region = admissible_region(problem, options.root_tol);
  const auto j = region.locate(z);
  if (!j) throw ZOutsideRegion(z);

  const Poly s = extremal_polynomial(problem);
  ElfvingCertificate cert;
  cert.tol = options.tol;
  cert.interval = *j;
  cert.p.assign(s.coeffs().begin() + 1, s.coeffs().end());
  cert.p.resize(n, 0.0);

  double total = 0.0;
  for (const auto& d : weight_functions(problem)) total += std::abs(d(z));
  // (-1)^(n+j) with j one-based.
  const bool negative = (n + *j + 1) % 2 == 1;
  cert.h = negative ? -total : total;
  if (cert.h < 0.0) {
    for (double& v : cert.p) v = -v;
    cert.h = -cert.h;
  }

  const Poly extremal = Poly([&] {
    std::vector<double> c(n + 1, 0.0);
    std::copy(cert.p.begin(), cert.p.end(), c.begin() + 1);
    return c;
  }());

  std::vector<double> probes;
  const std::size_t grid = std::max<std::size_t>(options.grid, 2);
  probes.reserve(grid + n + 1);
  for (std::size_t k = 0; k < grid; ++k) probes.push_back(problem.a * static_cast<double>(k) / static_cast<double>(grid - 1));
  if (n > 1) {
    for (double x : real_roots(derivative(extremal), 0.0, problem.a, options.root_tol).roots) probes.push_back(x);
  }
  double peak = 0.0;
  for (double x : probes) peak = std::max(peak, std::abs(extremal(x)));
  cert.condition1_margin = peak - 1.0;

  const Eigen::VectorXd c = slope_vector(z, n);
  cert.c_max = c.cwiseAbs().maxCoeff();
  Eigen::VectorXd represented = Eigen::VectorXd::Zero(n);
  for (std::size_t i = 0; i < design.points.size(); ++i) {
    const double value = extremal(design.points[i]);
    cert.condition2_residuals.push_back(std::abs(std::abs(value) - 1.0));
    represented += design.weights[i] * value * regression_vector(design.points[i], n);
  }
  cert.condition3_residual = (c - cert.h * represented).cwiseAbs().maxCoeff();
  return cert;
}

}  // namespace slopedesign
