#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "slopedesign/designs.hpp"
#include "slopedesign/polynomial.hpp"

namespace slopedesign {

/// f(x) = (x, x^2, ..., x^n).
Eigen::VectorXd regression_vector(double x, unsigned n);

/// c = f'(z) = (1, 2z, ..., n z^(n-1)).
Eigen::VectorXd slope_vector(double z, unsigned n);

struct InfoMatrix {
  Eigen::MatrixXd entries;
};

/// M = sum_i w_i f(x_i) f(x_i)^T.
InfoMatrix info_matrix(const Design& design, unsigned n);

/// c^T M^- c when c lies in the column space of M, +inf otherwise.
///
/// Computed as the squared norm of the minimum-norm solution u of A^T u = c,
/// where A has rows sqrt(w_i) f(x_i)^T, so M = A^T A is never formed.
/// admissible_tol is the relative residual separating "in the column space"
/// from "not".
double variance(const Design& design, const Eigen::VectorXd& c, double admissible_tol = 1e-8);

/// Same functional through the normal equations M v = c solved with an SVD
/// pseudo-inverse. Independent second route used to check that the value
/// does not depend on the generalized inverse.
double variance_normal_equations(const Design& design, const Eigen::VectorXd& c, double admissible_tol = 1e-8);

/// S_n(x) = T_n(x (1 + cos(pi/2n)) / a - cos(pi/2n)).
Poly extremal_polynomial(const DesignProblem& problem);

class ZOutsideRegion : public Error {
 public:
  explicit ZOutsideRegion(double z);
  double z;
};

struct CertifyOptions {
  std::size_t grid = 2001;
  double tol = 1e-8;
  double root_tol = 1e-12;
};

struct ElfvingCertificate {
  std::vector<double> p;  // coefficients of x^1..x^n
  double h = 0.0;
  double condition1_margin = 0.0;
  std::vector<double> condition2_residuals;
  double condition3_residual = 0.0;
  double c_max = 0.0;          // max |c_k|, scales the condition (3) threshold
  std::size_t interval = 0;    // zero-based index of the region interval holding z
  double tol = 1e-8;

  [[nodiscard]] bool verifies() const;
};

/// Checks the three Elfving conditions for `design` with the extremal
/// polynomial S_n and the closed-form h. Throws ZOutsideRegion when z is not
/// interior to the admissible region.
ElfvingCertificate certify(const DesignProblem& problem, double z, const Design& design,
                           const CertifyOptions& options = {});

}  // namespace slopedesign
