// Dense univariate polynomials over a Field, with gcd, squarefree and
// irreducible factorization (distinct-degree plus deterministic
// Cantor-Zassenhaus splitting) and root extraction.
#pragma once

#include <algorithm>
#include <optional>
#include <utility>

#include "hclf/field.hpp"

namespace hclf {

class FPoly {
 public:
  FPoly() : f_(nullptr) {}
  explicit FPoly(const Field& F) : f_(&F) {}
  FPoly(const Field& F, std::vector<i64> coeffs) : f_(&F), c_(std::move(coeffs)) { trim(); }
  static FPoly constant(const Field& F, i64 a) {
    return a == 0 ? FPoly(F) : FPoly(F, {a});
  }
  static FPoly x(const Field& F) { return FPoly(F, {0, 1}); }

  const Field& field() const { return *f_; }
  const std::vector<i64>& coeffs() const { return c_; }
  bool zero() const { return c_.empty(); }
  int deg() const { return static_cast<int>(c_.size()) - 1; }  // deg 0 poly -> 0, zero -> -1
  i64 coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : 0; }
  i64 lc() const { return c_.empty() ? 0 : c_.back(); }
  bool monic() const { return lc() == 1; }

  bool operator==(const FPoly& o) const { return c_ == o.c_; }
  bool operator!=(const FPoly& o) const { return c_ != o.c_; }

  FPoly operator+(const FPoly& o) const {
    std::vector<i64> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = f_->add(coeff(i), o.coeff(i));
    return FPoly(*f_, std::move(r));
  }
  FPoly operator-(const FPoly& o) const {
    std::vector<i64> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = f_->sub(coeff(i), o.coeff(i));
    return FPoly(*f_, std::move(r));
  }
  FPoly operator-() const {
    std::vector<i64> r(c_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = f_->neg(c_[i]);
    return FPoly(*f_, std::move(r));
  }
  FPoly operator*(const FPoly& o) const {
    if (zero() || o.zero()) return FPoly(*f_);
    std::vector<i64> r(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (size_t j = 0; j < o.c_.size(); ++j)
        r[i + j] = f_->add(r[i + j], f_->mul(c_[i], o.c_[j]));
    }
    return FPoly(*f_, std::move(r));
  }
  FPoly scaled(i64 s) const {
    std::vector<i64> r(c_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = f_->mul(c_[i], s);
    return FPoly(*f_, std::move(r));
  }
  FPoly monic_scaled() const { return zero() ? *this : scaled(f_->inv(lc())); }

  /// (quotient, remainder) with divisor != 0.
  std::pair<FPoly, FPoly> divrem(const FPoly& d) const {
    if (d.zero()) throw FieldError("division by zero polynomial");
    FPoly r = *this;
    FPoly qt(*f_);
    if (deg() >= d.deg()) qt.c_.assign(deg() - d.deg() + 1, 0);
    i64 lcinv = f_->inv(d.lc());
    while (!r.zero() && r.deg() >= d.deg()) {
      i64 t = f_->mul(r.lc(), lcinv);
      int sh = r.deg() - d.deg();
      qt.c_[sh] = t;
      for (int i = 0; i <= d.deg(); ++i)
        r.c_[sh + i] = f_->sub(r.c_[sh + i], f_->mul(t, d.c_[i]));
      r.trim();
    }
    qt.trim();
    return {qt, r};
  }
  FPoly operator/(const FPoly& d) const { return divrem(d).first; }
  FPoly operator%(const FPoly& d) const { return divrem(d).second; }

  FPoly derivative() const {
    if (deg() < 1) return FPoly(*f_);
    std::vector<i64> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = f_->smul(static_cast<i64>(i), c_[i]);
    return FPoly(*f_, std::move(r));
  }

  i64 eval(i64 x) const {
    i64 r = 0;
    for (int i = deg(); i >= 0; --i) r = f_->add(f_->mul(r, x), c_[i]);
    return r;
  }

  FPoly pow_mod(i64 e, const FPoly& m) const {
    FPoly b = *this % m;
    FPoly r = FPoly::constant(*f_, 1) % m;
    while (e > 0) {
      if (e & 1) r = (r * b) % m;
      b = (b * b) % m;
      e >>= 1;
    }
    return r;
  }

  static FPoly gcd(FPoly a, FPoly b) {
    while (!b.zero()) {
      a = a % b;
      std::swap(a, b);
    }
    return a.zero() ? a : a.monic_scaled();
  }

  bool squarefree() const { return gcd(*this, derivative()).deg() <= 0 && !derivative().zero(); }

  /// Substitute x -> a*x + b.
  FPoly compose_linear(i64 a, i64 b) const {
    FPoly lin(*f_, {b, a});
    FPoly r(*f_);
    for (int i = deg(); i >= 0; --i) r = r * lin + FPoly::constant(*f_, c_[i]);
    return r;
  }

  /// Coefficients mapped elementwise by fn (e.g. a field embedding or Frobenius).
  template <typename Fn>
  FPoly map_coeffs(const Field& target, Fn&& fn) const {
    std::vector<i64> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = fn(c_[i]);
    return FPoly(target, std::move(r));
  }

  /// True iff irreducible over the coefficient field (deg >= 1).
  bool irreducible() const;

  /// Monic irreducible factors with multiplicities, deterministically ordered.
  std::vector<std::pair<FPoly, int>> factor() const;

  /// All roots in the coefficient field, sorted by element index.
  std::vector<i64> roots() const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  const Field* f_;
  std::vector<i64> c_;
};

namespace detail {

// Deterministic equal-degree splitting: factors of `f` all of degree d.
inline void edf(const FPoly& f, int d, std::vector<FPoly>& out) {
  const Field& F = f.field();
  if (f.deg() == d) {
    out.push_back(f.monic_scaled());
    return;
  }
  // q^d elements in the residue fields; (q^d - 1)/2 splits for odd q
  i64 qd = 1;
  for (int i = 0; i < d; ++i) qd *= F.q();
  for (i64 delta = 0;; ++delta) {
    if (delta >= F.q() * 4) throw FieldError("equal-degree splitting failed");
    FPoly shift(F, {delta % F.q(), 1});
    // mix in higher-degree test elements after exhausting linear shifts
    if (delta >= F.q()) {
      shift = FPoly(F, {delta % F.q(), (delta / F.q()) % F.q(), 1});
    }
    FPoly g(F);
    if (F.p() == 2) {
      // trace map sum shift^(2^i)
      FPoly t = shift % f;
      FPoly acc = t;
      i64 steps = d;
      // trace over F_2; field size q = 2^k, residue field 2^(k d)
      steps = static_cast<i64>(F.k()) * d;
      for (i64 i = 1; i < steps; ++i) {
        t = (t * t) % f;
        acc = acc + t;
      }
      g = FPoly::gcd(acc, f);
    } else {
      FPoly t = shift.pow_mod((qd - 1) / 2, f) - FPoly::constant(F, 1);
      g = FPoly::gcd(t, f);
    }
    if (g.deg() > 0 && g.deg() < f.deg()) {
      edf(g, d, out);
      edf((f / g).monic_scaled(), d, out);
      return;
    }
  }
}

}  // namespace detail

inline std::vector<std::pair<FPoly, int>> FPoly::factor() const {
  const Field& F = *f_;
  if (deg() < 1) throw FieldError("factoring a constant");
  std::vector<std::pair<FPoly, int>> result;
  // squarefree decomposition (handles p-th power collapse)
  struct Item { FPoly f; int mult; };
  std::vector<Item> stack{{monic_scaled(), 1}};
  std::vector<Item> squarefree_parts;
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    FPoly g = it.f;
    if (g.deg() < 1) continue;
    FPoly d = g.derivative();
    if (d.zero()) {
      // g = sum a_i x^(p i): take p-th root of coefficients
      std::vector<i64> r(g.deg() / F.p() + 1);
      i64 root_e = F.q() / F.p();  // a^(q/p) is the p-th root in F_q
      for (int i = 0; i <= g.deg(); i += static_cast<int>(F.p()))
        r[i / F.p()] = F.pow(g.coeff(i), root_e);
      stack.push_back({FPoly(F, r), it.mult * static_cast<int>(F.p())});
      continue;
    }
    FPoly c = FPoly::gcd(g, d);
    FPoly w = (g / c).monic_scaled();
    int m = 1;
    while (w.deg() > 0) {
      FPoly y = FPoly::gcd(w, c);
      FPoly part = (w / y).monic_scaled();
      if (part.deg() > 0) squarefree_parts.push_back({part, it.mult * m});
      w = y;
      c = (c / y).monic_scaled();
      ++m;
    }
    if (c.deg() > 0) stack.push_back({c, it.mult});
  }
  // distinct-degree + equal-degree on each squarefree part
  for (const auto& part : squarefree_parts) {
    FPoly g = part.f;
    FPoly xq = FPoly::x(F);
    int d = 0;
    while (g.deg() > 0) {
      ++d;
      if (2 * d > g.deg()) {
        std::vector<FPoly> fs;
        detail::edf(g, g.deg(), fs);
        for (auto& ff : fs) result.emplace_back(ff, part.mult);
        break;
      }
      xq = xq.pow_mod(F.q(), g);
      FPoly sub = xq - FPoly::x(F);
      FPoly h = FPoly::gcd(sub, g);
      if (h.deg() > 0) {
        std::vector<FPoly> fs;
        detail::edf(h, d, fs);
        for (auto& ff : fs) result.emplace_back(ff, part.mult);
        g = (g / h).monic_scaled();
        xq = xq % g;
      }
    }
  }
  std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
    if (a.first.deg() != b.first.deg()) return a.first.deg() < b.first.deg();
    return a.first.coeffs() < b.first.coeffs();
  });
  return result;
}

inline bool FPoly::irreducible() const {
  if (deg() < 1) return false;
  if (deg() == 1) return true;
  auto fs = monic_scaled().factor();
  return fs.size() == 1 && fs[0].second == 1 && fs[0].first.deg() == deg();
}

inline std::vector<i64> FPoly::roots() const {
  const Field& F = *f_;
  std::vector<i64> rs;
  if (deg() < 1) return rs;
  if (F.q() <= 4096) {
    for (i64 x = 0; x < F.q(); ++x)
      if (eval(x) == 0) rs.push_back(x);
    return rs;
  }
  // strip to the product of distinct linear factors, then split
  FPoly xq = FPoly::x(F).pow_mod(F.q(), *this);
  FPoly lin = FPoly::gcd(xq - FPoly::x(F), *this);
  if (lin.deg() < 1) return rs;
  std::vector<FPoly> fs;
  detail::edf(lin, 1, fs);
  for (const auto& l : fs) rs.push_back(F.neg(l.coeff(0)));
  std::sort(rs.begin(), rs.end());
  return rs;
}

/// Monic irreducible polynomials of degree d over F, in lexicographic
/// order of coefficient vectors (low degree first).
inline std::vector<FPoly> irreducible_polys(const Field& F, int d) {
  std::vector<FPoly> out;
  i64 total = 1;
  for (int i = 0; i < d; ++i) total *= F.q();
  for (i64 n = 0; n < total; ++n) {
    std::vector<i64> c(d + 1);
    i64 m = n;
    for (int i = d - 1; i >= 0; --i) { c[i] = m % F.q(); m /= F.q(); }
    c[d] = 1;
    FPoly f(F, c);
    if (d == 1) {
      out.push_back(f);
      continue;
    }
    bool has_root = false;
    if (F.q() <= 4096) {
      for (i64 x = 0; x < F.q() && !has_root; ++x)
        if (f.eval(x) == 0) has_root = true;
    }
    if (!has_root && f.irreducible()) out.push_back(f);
  }
  return out;
}

}  // namespace hclf
