#pragma once

#include <hclf/fpoly.hpp>

namespace hclf {

/// Truncated power series a_0 + a_1 t + ... + a_{prec-1} t^{prec-1} over a
/// finite field. The precision is the coefficient vector length; binary
/// operations truncate to the smaller precision.
class TSeries {
 public:
  TSeries() : f_(nullptr) {}
  TSeries(const Field& F, int prec) : f_(&F), c_(static_cast<size_t>(prec), 0) {}
  TSeries(const Field& F, std::vector<i64> coeffs) : f_(&F), c_(std::move(coeffs)) {}

  const Field& field() const { return *f_; }
  int prec() const { return static_cast<int>(c_.size()); }
  i64 coeff(int i) const { return (i >= 0 && i < prec()) ? c_[i] : 0; }
  void set(int i, i64 v) { c_[static_cast<size_t>(i)] = v; }
  const std::vector<i64>& coeffs() const { return c_; }

  static TSeries constant(const Field& F, i64 a, int prec) {
    TSeries s(F, prec);
    if (prec > 0) s.c_[0] = a;
    return s;
  }
  /// t itself, to the given precision.
  static TSeries t(const Field& F, int prec) {
    TSeries s(F, prec);
    if (prec > 1) s.c_[1] = 1;
    return s;
  }

  TSeries truncated(int prec) const {
    TSeries s(*f_, std::min(prec, this->prec()));
    for (int i = 0; i < s.prec(); ++i) s.c_[i] = c_[i];
    return s;
  }

  TSeries operator+(const TSeries& o) const {
    TSeries s(*f_, std::min(prec(), o.prec()));
    for (int i = 0; i < s.prec(); ++i) s.c_[i] = f_->add(c_[i], o.c_[i]);
    return s;
  }
  TSeries operator-(const TSeries& o) const {
    TSeries s(*f_, std::min(prec(), o.prec()));
    for (int i = 0; i < s.prec(); ++i) s.c_[i] = f_->sub(c_[i], o.c_[i]);
    return s;
  }
  TSeries operator*(const TSeries& o) const {
    int n = std::min(prec(), o.prec());
    TSeries s(*f_, n);
    for (int i = 0; i < n; ++i) {
      if (c_[i] == 0) continue;
      for (int j = 0; j + i < n; ++j) {
        if (o.c_[j] == 0) continue;
        s.c_[i + j] = f_->add(s.c_[i + j], f_->mul(c_[i], o.c_[j]));
      }
    }
    return s;
  }
  TSeries scaled(i64 a) const {
    TSeries s(*f_, prec());
    for (int i = 0; i < prec(); ++i) s.c_[i] = f_->mul(c_[i], a);
    return s;
  }
  /// Multiplication by t^k (coefficients shifted up, precision kept).
  TSeries shifted(int k) const {
    TSeries s(*f_, prec());
    for (int i = prec() - 1; i >= k; --i) s.c_[i] = c_[i - k];
    return s;
  }

  /// Order of vanishing (prec() if identically zero to this precision).
  int valuation() const {
    for (int i = 0; i < prec(); ++i)
      if (c_[i] != 0) return i;
    return prec();
  }

  /// Multiplicative inverse; requires a unit constant term.
  TSeries inverse() const {
    if (prec() == 0 || c_[0] == 0) throw FieldError("series inverse of non-unit");
    TSeries b(*f_, prec());
    i64 a0i = f_->inv(c_[0]);
    b.c_[0] = a0i;
    for (int k = 1; k < prec(); ++k) {
      i64 s = 0;
      for (int i = 1; i <= k; ++i) s = f_->add(s, f_->mul(coeff(i), b.c_[k - i]));
      b.c_[k] = f_->neg(f_->mul(a0i, s));
    }
    return b;
  }

 private:
  const Field* f_;
  std::vector<i64> c_;
};

/// p(s) for a polynomial p over the same field as the series s.
inline TSeries poly_at_series(const FPoly& p, const TSeries& s) {
  TSeries r = TSeries::constant(s.field(), 0, s.prec());
  for (int i = p.deg(); i >= 0; --i)
    r = r * s + TSeries::constant(s.field(), p.coeff(i), s.prec());
  return r;
}

/// Square root with prescribed constant term y0 (y0^2 = a_0, y0 != 0).
/// Requires odd characteristic.
inline TSeries series_sqrt(const TSeries& a, i64 y0) {
  const Field& F = a.field();
  if (F.p() == 2) throw FieldError("series_sqrt needs odd characteristic");
  if (F.mul(y0, y0) != a.coeff(0) || y0 == 0)
    throw FieldError("series_sqrt: bad initial branch value");
  TSeries y(F, a.prec());
  y.set(0, y0);
  i64 d = F.inv(F.smul(2, y0));  // 1/(2 y0)
  for (int k = 1; k < a.prec(); ++k) {
    i64 s = 0;
    for (int i = 1; i < k; ++i) s = F.add(s, F.mul(y.coeff(i), y.coeff(k - i)));
    y.set(k, F.mul(F.sub(a.coeff(k), s), d));
  }
  return y;
}

/// Solves f(x(t)) = t^2 with x(0) = x0, where f(x0) = 0 and f'(x0) != 0
/// (local coordinate at a ramification point of y^2 = f). Odd characteristic.
inline TSeries series_solve_ramified(const FPoly& f, i64 x0, int prec) {
  const Field& F = f.field();
  FPoly fs = f.compose_linear(1, x0);  // fs(xi) = f(x0 + xi)
  if (fs.coeff(0) != 0 || fs.coeff(1) == 0)
    throw FieldError("series_solve_ramified: not a simple ramification point");
  TSeries t2(F, prec);
  if (prec > 2) t2.set(2, 1);
  i64 b1i = F.inv(fs.coeff(1));
  // fixed point iteration xi <- (t^2 - sum_{j>=2} b_j xi^j)/b_1; gains at
  // least one t-order of accuracy per round starting from xi = t^2/b_1
  TSeries xi = t2.scaled(b1i);
  for (int round = 0; round < prec; ++round) {
    TSeries tail(F, prec);
    TSeries pw = xi * xi;
    for (int j = 2; j <= fs.deg(); ++j) {
      tail = tail + pw.scaled(fs.coeff(j));
      if (j < fs.deg()) pw = pw * xi;
    }
    xi = (t2 - tail).scaled(b1i);
  }
  // x(t) = x0 + xi(t)
  TSeries x = xi;
  x.set(0, F.add(x.coeff(0), x0));
  return x;
}

}  // namespace hclf
