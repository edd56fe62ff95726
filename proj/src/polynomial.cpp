#include "slopedesign/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "slopedesign/errors.hpp"

namespace slopedesign {

namespace {

// Remainders below this fraction of the dividend's scale end the Sturm chain.
constexpr double kRemainderCutoff = 1e-10;
constexpr int kMaxBisections = 400;

Poly normalized(const Poly& p) {
  const double m = p.max_abs_coeff();
  return m > 0.0 ? p * (1.0 / m) : p;
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

int sign_variations(const std::vector<Poly>& seq, double x) {
  int count = 0;
  int last = 0;
  for (const auto& s : seq) {
    const int sg = sign_of(s(x));
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++count;
    last = sg;
  }
  return count;
}

// Chain p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k). Stops at the first
// remainder that is numerically zero; the last member is then gcd(p, p').
std::vector<Poly> build_chain(const Poly& p) {
  std::vector<Poly> seq;
  seq.push_back(normalized(p.trimmed()));
  Poly d = derivative(seq.front());
  if (d.is_zero()) return seq;
  seq.push_back(normalized(d.trimmed()));
  while (seq.back().degree().value_or(0) > 0) {
    const Poly& num = seq[seq.size() - 2];
    const Poly& den = seq.back();
    auto [q, r] = divmod(num, den);
    const double scale = std::max(1.0, q.max_abs_coeff());
    if (r.is_zero() || r.max_abs_coeff() <= kRemainderCutoff * scale) break;
    seq.push_back(normalized(-r.trimmed()));
  }
  return seq;
}

}  // namespace

Poly::Poly(std::initializer_list<double> coeffs) : coeffs_(coeffs) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

Poly::Poly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

Poly Poly::monomial(std::size_t power, double scale) {
  std::vector<double> c(power + 1, 0.0);
  c[power] = scale;
  return Poly(std::move(c));
}

Poly Poly::from_roots(std::span<const double> roots) {
  Poly p{1.0};
  for (double r : roots) p = p * Poly{-r, 1.0};
  return p;
}

std::optional<std::size_t> Poly::degree() const {
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    if (coeffs_[k] != 0.0) return k;
  }
  return std::nullopt;
}

double Poly::leading() const {
  const auto d = degree();
  return d ? coeffs_[*d] : 0.0;
}

double Poly::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double Poly::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::trimmed() const {
  const auto d = degree();
  if (!d) return Poly{};
  return Poly(std::vector<double>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(*d) + 1));
}

Poly& Poly::operator+=(const Poly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  return *this;
}

Poly& Poly::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

Poly operator*(const Poly& lhs, const Poly& rhs) {
  std::vector<double> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
  }
  return Poly(std::move(out));
}

double eval(const Poly& p, double x) { return p(x); }

Poly derivative(const Poly& p) {
  const auto c = p.coeffs();
  if (c.size() <= 1) return Poly{};
  std::vector<double> out(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) out[k - 1] = static_cast<double>(k) * c[k];
  return Poly(std::move(out));
}

Poly compose_affine(const Poly& p, double alpha, double beta) {
  const auto c = p.coeffs();
  const Poly inner{beta, alpha};
  Poly q{c.back()};
  for (std::size_t k = c.size() - 1; k-- > 0;) q = q * inner + Poly{c[k]};
  return q;
}

Poly chebyshev_t(unsigned n) {
  Poly prev{1.0};
  if (n == 0) return prev;
  Poly cur{0.0, 1.0};
  const Poly two_x{0.0, 2.0};
  for (unsigned k = 1; k < n; ++k) {
    Poly next = two_x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::pair<Poly, Poly> divmod(const Poly& num, const Poly& den) {
  const auto dd = den.degree();
  if (!dd) throw ZeroPolynomial();
  const auto nd = num.degree();
  if (!nd || *nd < *dd) return {Poly{}, num.trimmed()};

  std::vector<double> rem(num.coeffs().begin(), num.coeffs().begin() + static_cast<std::ptrdiff_t>(*nd) + 1);
  std::vector<double> quot(*nd - *dd + 1, 0.0);
  const double lead = den.coeff(*dd);
  for (std::size_t k = quot.size(); k-- > 0;) {
    const double q = rem[k + *dd] / lead;
    quot[k] = q;
    for (std::size_t j = 0; j <= *dd; ++j) rem[k + j] -= q * den.coeff(j);
    rem[k + *dd] = 0.0;
  }
  rem.resize(*dd == 0 ? 1 : *dd);
  return {Poly(std::move(quot)), Poly(std::move(rem)).trimmed()};
}

std::vector<Poly> sturm_sequence(const Poly& p) {
  if (p.is_zero()) throw ZeroPolynomial();
  return build_chain(p);
}

RootList real_roots(const Poly& p, double lo, double hi, double tol) {
  if (p.is_zero()) throw ZeroPolynomial();
  if (!(lo < hi)) throw Error("real_roots: empty query interval");
  RootList out;
  out.tol = tol;
  if (*p.degree() == 0) return out;

  std::vector<Poly> seq = build_chain(p);
  if (seq.back().degree().value_or(0) > 0) {
    // p has repeated roots: work with p / gcd(p, p').
    Poly square_free = normalized(divmod(seq.front(), seq.back()).first);
    seq = build_chain(square_free);
  }
  const Poly& q = seq.front();

  struct Pending {
    double l, r;
    int vl, vr;
  };
  std::vector<Pending> stack;
  stack.push_back({lo, hi, sign_variations(seq, lo), sign_variations(seq, hi)});
  while (!stack.empty()) {
    auto [l, r, vl, vr] = stack.back();
    stack.pop_back();
    const int count = vl - vr;
    if (count < 0) throw Degenerate("real_roots: inconsistent Sturm counts");
    if (count == 0) continue;
    if (count > 1) {
      if (r - l <= tol) throw Degenerate("real_roots: cannot separate clustered roots");
      double mid = 0.5 * (l + r);
      if (q(mid) == 0.0) mid = l + 0.4999 * (r - l);
      const int vm = sign_variations(seq, mid);
      stack.push_back({mid, r, vm, vr});
      stack.push_back({l, mid, vl, vm});
      continue;
    }
    // Exactly one distinct root in (l, r].
    double fl = q(l);
    double fr = q(r);
    if (fr == 0.0) {
      if (r < hi) out.roots.push_back(r);
      continue;
    }
    if (sign_of(fl) * sign_of(fr) >= 0) throw Degenerate("real_roots: isolated root without sign change");
    for (int it = 0; it < kMaxBisections && r - l > tol; ++it) {
      const double mid = 0.5 * (l + r);
      if (mid <= l || mid >= r) break;
      const double fm = q(mid);
      if (fm == 0.0) {
        l = r = mid;
        break;
      }
      if (sign_of(fm) == sign_of(fl)) {
        l = mid;
        fl = fm;
      } else {
        r = mid;
      }
    }
    out.roots.push_back(0.5 * (l + r));
  }
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

}  // namespace slopedesign
