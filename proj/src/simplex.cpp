#include "slopedesign/simplex.hpp"

#include <cmath>
#include <limits>
#include <span>

#include "slopedesign/errors.hpp"

namespace slopedesign {

namespace {

// Revised simplex over [A | I]; the trailing identity block holds the
// phase-one artificials. The basis is refactorized every iteration (n is
// small), so no rounding accumulates across pivots.
class Solver {
 public:
  Solver(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const SimplexOptions& options)
      : rows_(a.rows()), cols_(a.cols()), options_(options), a_(a), b_(b) {
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (b_[i] < 0.0) {
        a_.row(i) *= -1.0;
        b_[i] = -b_[i];
      }
      basis_.push_back(cols_ + i);
    }
  }

  Eigen::VectorXd column(Eigen::Index k) const {
    if (k < cols_) return a_.col(k);
    return Eigen::VectorXd::Unit(rows_, k - cols_);
  }

  bool artificial(Eigen::Index k) const { return k >= cols_; }

  void set_cost(const Eigen::VectorXd& structural, double artificial_cost) {
    cost_ = Eigen::VectorXd::Constant(cols_ + rows_, artificial_cost);
    cost_.head(cols_) = structural;
  }

  double objective() const {
    const Eigen::VectorXd xb = factor().solve(b_);
    double total = 0.0;
    for (Eigen::Index i = 0; i < rows_; ++i) total += cost_[basis_[static_cast<std::size_t>(i)]] * xb[i];
    return total;
  }

  void optimize() {
    std::size_t stalled = 0;
    double last = std::numeric_limits<double>::infinity();
    for (;;) {
      if (iterations_ >= options_.max_iterations) throw NumericalFailure("simplex iteration cap reached");
      const Eigen::MatrixXd basis = basis_matrix();
      const Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis);
      const Eigen::VectorXd xb = lu.solve(b_);
      Eigen::VectorXd cb(rows_);
      for (Eigen::Index i = 0; i < rows_; ++i) cb[i] = cost_[basis_[static_cast<std::size_t>(i)]];
      const Eigen::VectorXd y = Eigen::PartialPivLU<Eigen::MatrixXd>(basis.transpose()).solve(cb);
      const double current = cb.dot(xb);
      stalled = current < last - 1e-14 * (1.0 + std::abs(current)) ? 0 : stalled + 1;
      last = std::min(last, current);

      const bool bland = options_.pricing == Pricing::bland || stalled >= options_.stall_limit;
      const Eigen::Index enter = choose_entering(y, bland);
      if (enter < 0) return;
      const Eigen::VectorXd w = lu.solve(column(enter));
      const Eigen::Index leave = choose_leaving(xb, w);
      if (leave < 0) throw NumericalFailure("linear program is unbounded");
      basis_[static_cast<std::size_t>(leave)] = enter;
      ++iterations_;
    }
  }

  // Swaps basic artificials for structural columns wherever possible.
  void expel_artificials() {
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (!artificial(basis_[static_cast<std::size_t>(i)])) continue;
      // row i of B^-1 A
      const Eigen::PartialPivLU<Eigen::MatrixXd> lut(basis_matrix().transpose());
      const Eigen::RowVectorXd r = lut.solve(Eigen::VectorXd::Unit(rows_, i)).transpose() * a_;
      Eigen::Index best = -1;
      double best_abs = options_.pivot_tol;
      for (Eigen::Index j = 0; j < cols_; ++j) {
        if (in_basis(j)) continue;
        if (std::abs(r[j]) > best_abs) {
          best_abs = std::abs(r[j]);
          best = j;
        }
      }
      if (best >= 0) basis_[static_cast<std::size_t>(i)] = best;
    }
  }

  SimplexResult result() const {
    SimplexResult r;
    r.x = Eigen::VectorXd::Zero(cols_);
    const Eigen::VectorXd xb = factor().solve(b_);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const Eigen::Index k = basis_[static_cast<std::size_t>(i)];
      if (k < cols_) r.x[k] = std::max(0.0, xb[i]);
    }
    r.basis = basis_;
    r.iterations = iterations_;
    return r;
  }

  void forbid_artificials() { artificials_allowed_ = false; }

  // Installs a caller-supplied starting basis when it is nonsingular and
  // primal feasible.
  bool try_basis(std::span<const Eigen::Index> start) {
    if (static_cast<Eigen::Index>(start.size()) != rows_) return false;
    const std::vector<Eigen::Index> saved = basis_;
    basis_.assign(start.begin(), start.end());
    for (Eigen::Index k : basis_) {
      if (k < 0 || k >= cols_) {
        basis_ = saved;
        return false;
      }
    }
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(basis_matrix());
    if (lu.rank() < rows_) {
      basis_ = saved;
      return false;
    }
    const Eigen::VectorXd xb = lu.solve(b_);
    if ((basis_matrix() * xb - b_).norm() > 1e-9 * (1.0 + b_.norm()) ||
        xb.minCoeff() < -1e-12 * (1.0 + xb.cwiseAbs().maxCoeff())) {
      basis_ = saved;
      return false;
    }
    return true;
  }

 private:
  Eigen::MatrixXd basis_matrix() const {
    Eigen::MatrixXd basis(rows_, rows_);
    for (Eigen::Index i = 0; i < rows_; ++i) basis.col(i) = column(basis_[static_cast<std::size_t>(i)]);
    return basis;
  }

  Eigen::PartialPivLU<Eigen::MatrixXd> factor() const { return Eigen::PartialPivLU<Eigen::MatrixXd>(basis_matrix()); }

  bool in_basis(Eigen::Index k) const {
    for (Eigen::Index b : basis_) {
      if (b == k) return true;
    }
    return false;
  }

  Eigen::Index choose_entering(const Eigen::VectorXd& y, bool bland) const {
    const Eigen::VectorXd reduced = cost_.head(cols_) - a_.transpose() * y;
    Eigen::Index best = -1;
    double best_value = -options_.optimality_tol;
    for (Eigen::Index j = 0; j < cols_; ++j) {
      if (reduced[j] >= best_value || in_basis(j)) continue;
      if (bland) return j;
      best = j;
      best_value = reduced[j];
    }
    return best;
  }

  Eigen::Index choose_leaving(const Eigen::VectorXd& xb, const Eigen::VectorXd& w) const {
    const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
    Eigen::Index best = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const Eigen::Index k = basis_[static_cast<std::size_t>(i)];
      double ratio;
      if (!artificials_allowed_ && artificial(k) && std::abs(w[i]) > options_.pivot_tol * scale) {
        ratio = 0.0;  // a leftover artificial must stay at zero
      } else if (w[i] > options_.pivot_tol * scale) {
        ratio = std::max(0.0, xb[i]) / w[i];
      } else {
        continue;
      }
      if (ratio < best_ratio || (ratio == best_ratio && k < basis_[static_cast<std::size_t>(best)])) {
        best_ratio = ratio;
        best = i;
      }
    }
    return best;
  }

  Eigen::Index rows_;
  Eigen::Index cols_;
  SimplexOptions options_;
  Eigen::MatrixXd a_;
  Eigen::VectorXd b_;
  Eigen::VectorXd cost_;
  std::vector<Eigen::Index> basis_;
  std::size_t iterations_ = 0;
  bool artificials_allowed_ = true;
};

}  // namespace

SimplexResult simplex_minimize(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& cost,
                               const SimplexOptions& options, std::span<const Eigen::Index> start) {
  if (a.rows() != b.size() || a.cols() != cost.size()) throw Error("simplex: dimension mismatch");
  Solver solver(a, b, options);

  if (!solver.try_basis(start)) {
    solver.set_cost(Eigen::VectorXd::Zero(a.cols()), 1.0);
    solver.optimize();
    const double infeasibility = solver.objective();
    if (infeasibility > 1e-9 * (1.0 + b.lpNorm<1>())) throw Infeasible("linear program has no feasible point");
    solver.expel_artificials();
  }

  solver.set_cost(cost, 0.0);
  solver.forbid_artificials();
  solver.optimize();

  SimplexResult r = solver.result();
  r.objective = cost.dot(r.x);
  return r;
}

}  // namespace slopedesign
