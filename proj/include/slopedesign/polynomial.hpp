#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace slopedesign {

/// Dense univariate real polynomial, coefficients stored in ascending powers.
///
/// Storage may carry trailing zeros; degree() ignores them. The coefficient
/// vector is never empty: the zero polynomial is stored as {0}.
class Poly {
 public:
  Poly() : coeffs_{0.0} {}
  Poly(std::initializer_list<double> coeffs);
  explicit Poly(std::vector<double> coeffs);

  static Poly constant(double value) { return Poly{value}; }
  static Poly monomial(std::size_t power, double scale = 1.0);
  /// Monic polynomial with the given roots.
  static Poly from_roots(std::span<const double> roots);

  /// Highest index with a nonzero coefficient; empty for the zero polynomial.
  [[nodiscard]] std::optional<std::size_t> degree() const;
  [[nodiscard]] bool is_zero() const { return !degree().has_value(); }

  [[nodiscard]] std::span<const double> coeffs() const { return coeffs_; }
  /// Coefficient of x^k; zero beyond storage.
  [[nodiscard]] double coeff(std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : 0.0;
  }
  [[nodiscard]] double leading() const;
  [[nodiscard]] double max_abs_coeff() const;

  /// Horner evaluation.
  double operator()(double x) const;

  /// Copy with trailing zeros removed (keeps at least one coefficient).
  [[nodiscard]] Poly trimmed() const;

  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(double s);

  friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
  friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
  friend Poly operator*(Poly lhs, double s) { return lhs *= s; }
  friend Poly operator*(double s, Poly rhs) { return rhs *= s; }
  friend Poly operator-(Poly p) { return p *= -1.0; }
  friend Poly operator*(const Poly& lhs, const Poly& rhs);

 private:
  std::vector<double> coeffs_;
};

double eval(const Poly& p, double x);

Poly derivative(const Poly& p);

/// q(x) = p(alpha * x + beta), expanded by Horner's scheme in polynomial
/// arithmetic.
Poly compose_affine(const Poly& p, double alpha, double beta);

/// Chebyshev polynomial of the first kind, T_n(cos t) = cos(n t).
Poly chebyshev_t(unsigned n);

/// Euclidean division; returns {quotient, remainder}. Throws ZeroPolynomial
/// when the divisor is zero.
std::pair<Poly, Poly> divmod(const Poly& num, const Poly& den);

struct RootList {
  std::vector<double> roots;  // strictly increasing
  double tol = 0.0;           // width of the final sign-change bracket
};

/// Distinct real roots of p in the open interval (lo, hi).
///
/// Roots are isolated with a Sturm sequence built on the square-free part of
/// p and refined by bisection until the bracket is narrower than tol.
/// Multiple roots are reported once. Throws ZeroPolynomial for p == 0 and
/// Degenerate when isolation cannot be certified.
RootList real_roots(const Poly& p, double lo, double hi, double tol = 1e-12);

/// Sturm sequence p, p', -rem(...), ... with each member scaled to unit
/// max-abs coefficient. Exposed for tests.
std::vector<Poly> sturm_sequence(const Poly& p);

}  // namespace slopedesign
