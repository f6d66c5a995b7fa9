// Mumford representation and composition/reduction arithmetic for divisor
// classes on models with a single rational branch at infinity (deg f odd).
// Classes are taken relative to the infinite place, which is the default
// base divisor for such models.
#pragma once

#include <set>
#include <tuple>

#include "hclf/divisor.hpp"
#include "hclf/field_embed.hpp"
#include "hclf/linalg.hpp"

namespace hclf {

namespace detail {

/// Extended gcd: returns (g, s, t) with s a + t b = g and g monic.
inline std::tuple<FPoly, FPoly, FPoly> ext_gcd(const FPoly& a, const FPoly& b) {
  const Field& F = a.field();
  FPoly r0 = a, r1 = b;
  FPoly s0 = FPoly::constant(F, 1), s1 = FPoly::constant(F, 0);
  FPoly t0 = FPoly::constant(F, 0), t1 = FPoly::constant(F, 1);
  while (!r1.zero()) {
    auto [q, r] = r0.divrem(r1);
    r0 = r1; r1 = r;
    FPoly ns = s0 - q * s1; s0 = s1; s1 = ns;
    FPoly nt = t0 - q * t1; t0 = t1; t1 = nt;
  }
  if (!r0.zero()) {
    i64 c = F.inv(r0.lc());
    r0 = r0.scaled(c);
    s0 = s0.scaled(c);
    t0 = t0.scaled(c);
  }
  return {r0, s0, t0};
}

/// Preimage of a big-field element under the fixed embedding of F; the
/// element must lie in the embedded copy of F.
inline i64 descend(const Field& F, const Field& Fbig, i64 c) {
  if (&F == &Fbig) return c;
  const RelBasis& rb = RelBasis::get(F, Fbig);
  auto co = rb.coords(c);
  for (size_t j = 1; j < co.size(); ++j)
    if (co[j] != 0) throw FieldError("internal: element does not descend to the subfield");
  return co[0];
}

inline FPoly descend_poly(const Field& F, const Field& Fbig, const FPoly& p) {
  return p.map_coeffs(F, [&](i64 c) { return descend(F, Fbig, c); });
}

}  // namespace detail

/// Reduced pair (u, v): u monic, deg v < deg u, u | v^2 + v h - f.
struct Mumford {
  const Field* F = nullptr;
  FPoly u, v;

  bool operator==(const Mumford& o) const { return u == o.u && v == o.v; }
  bool operator!=(const Mumford& o) const { return !(*this == o); }
};

inline bool mumford_less(const Mumford& a, const Mumford& b) {
  if (a.u.deg() != b.u.deg()) return a.u.deg() < b.u.deg();
  if (a.u.coeffs() != b.u.coeffs()) return a.u.coeffs() < b.u.coeffs();
  return a.v.coeffs() < b.v.coeffs();
}

inline void require_odd_degree_model(const CurveModel& m) {
  if (m.real)
    throw FieldError("pair arithmetic needs an odd-degree model with one infinite place");
}

inline Mumford mumford_zero(const CurveModel& m) {
  return Mumford{m.base, FPoly::constant(*m.base, 1), FPoly::constant(*m.base, 0)};
}

inline bool mumford_valid(const CurveModel& m, const Mumford& M) {
  if (M.u.zero() || !M.u.monic()) return false;
  if (!M.v.zero() && M.v.deg() >= M.u.deg()) return false;
  return ((M.v * M.v + M.v * m.h - m.f) % M.u).zero();
}

inline Mumford mumford_neg(const CurveModel& m, const Mumford& M) {
  return Mumford{m.base, M.u, (-m.h - M.v) % M.u};
}

/// Cantor composition; the result is semi-reduced but may have deg u > g.
inline Mumford mumford_compose(const CurveModel& m, const Mumford& A, const Mumford& B) {
  auto [d1, e1, e2] = detail::ext_gcd(A.u, B.u);
  auto [d, c1, c2] = detail::ext_gcd(d1, A.v + B.v + m.h);
  FPoly s1 = c1 * e1, s2 = c1 * e2, s3 = c2;
  auto [u, ru] = (A.u * B.u).divrem(d * d);
  if (!ru.zero()) throw FieldError("internal: inexact division in composition");
  auto [w, rw] = (s1 * A.u * B.v + s2 * B.u * A.v + s3 * (A.v * B.v + m.f)).divrem(d);
  if (!rw.zero()) throw FieldError("internal: inexact division in composition");
  u = u.monic_scaled();
  return Mumford{m.base, u, w % u};
}

inline Mumford mumford_reduce(const CurveModel& m, Mumford M) {
  while (M.u.deg() > m.genus) {
    auto [u2, r] = (m.f - M.v * m.h - M.v * M.v).divrem(M.u);
    if (!r.zero()) throw FieldError("internal: inexact division in reduction");
    if (u2.deg() <= 0) return mumford_zero(m);
    u2 = u2.monic_scaled();
    M = Mumford{m.base, u2, (-m.h - M.v) % u2};
  }
  if (M.u.deg() == 0) return mumford_zero(m);
  return M;
}

inline Mumford mumford_add(const CurveModel& m, const Mumford& A, const Mumford& B) {
  return mumford_reduce(m, mumford_compose(m, A, B));
}

inline Mumford mumford_smul(const CurveModel& m, Mumford M, i64 n) {
  if (n < 0) { M = mumford_neg(m, M); n = -n; }
  Mumford acc = mumford_zero(m);
  Mumford pw = M;
  for (; n; n >>= 1) {
    if (n & 1) acc = mumford_add(m, acc, pw);
    if (n > 1) pw = mumford_add(m, pw, pw);
  }
  return acc;
}

/// Class of [P - deg(P) * infinity] in reduced form.
inline Mumford place_class(const CurveModel& m, const Place& pl) {
  require_odd_degree_model(m);
  const Field& F = *m.base;
  if (pl.rep().inf) return mumford_zero(m);
  int d = pl.degree;
  const Field& Fd = *pl.rep().fld;
  std::set<i64> xs;
  for (const auto& pt : pl.orbit) xs.insert(pt.x);
  if (2 * static_cast<int>(xs.size()) == d)
    return mumford_zero(m);  // the place is the full zero divisor of its x-polynomial
  // u = minimal polynomial of the x-coordinate over the base field
  FPoly uu = FPoly::constant(Fd, 1);
  for (i64 x0 : xs) uu = uu * FPoly(Fd, {Fd.neg(x0), 1});
  FPoly u = detail::descend_poly(F, Fd, uu);
  // v = the base-field polynomial of degree < d matching y on the orbit
  FPoly v = FPoly::constant(F, 0);
  if (d == 1) {
    v = FPoly::constant(F, pl.rep().y);
  } else {
    const RelBasis& rb = RelBasis::get(F, Fd);
    FMatrix A(d, std::vector<i64>(d));
    std::vector<i64> rhs = rb.coords(pl.rep().y);
    i64 pw = 1;
    for (int j = 0; j < d; ++j) {
      auto co = rb.coords(pw);
      for (int i = 0; i < d; ++i) A[i][j] = co[i];
      pw = Fd.mul(pw, pl.rep().x);
    }
    auto sol = solve_linear(F, A, rhs);
    if (!sol) throw FieldError("internal: interpolation failed for a place");
    v = FPoly(F, *sol);
  }
  Mumford M{&F, u, v};
  if (!mumford_valid(m, M)) throw FieldError("internal: invalid pair built from a place");
  return mumford_reduce(m, M);
}

/// Class of [D - deg(D) * infinity]; infinite places contribute nothing.
inline Mumford divisor_class(const CurveModel& m, const Divisor& D) {
  Mumford acc = mumford_zero(m);
  for (const auto& [pl, n] : D.terms) {
    if (n == 0 || pl.rep().inf) continue;
    Mumford step = place_class(m, pl);
    if (n < 0) step = mumford_neg(m, step);
    for (int i = 0; i < std::abs(n); ++i) acc = mumford_add(m, acc, step);
  }
  return acc;
}

/// The effective affine divisor (weight deg u) underlying a reduced pair.
inline Divisor mumford_to_divisor(const CurveModel& m, const Mumford& M) {
  const Field& F = *m.base;
  Divisor D;
  if (M.u.deg() <= 0) return D;
  for (const auto& [pi, mult] : M.u.factor()) {
    int e = pi.deg();
    const Field& Fe = e == 1 ? F : Field::get(F.p(), F.k() * e);
    const Embedding& em = Embedding::get(F, Fe);
    FPoly pie = pi.map_coeffs(Fe, [&](i64 c) { return em(c); });
    auto rs = pie.roots();
    if (rs.empty()) throw FieldError("internal: factor of u has no root at its degree");
    i64 x0 = rs.front();
    FPoly ve = M.v.map_coeffs(Fe, [&](i64 c) { return em(c); });
    i64 y0 = ve.eval(x0);
    detail::FrobMap frob(Fe, F.q());
    Place pl{e, detail::frobenius_orbit(Fe, frob, GeometricPoint{&Fe, false, x0, y0})};
    D = D + divisor_of_place(pl, mult);
  }
  return D;
}

/// Coefficientwise application of the subq-power map (an automorphism of
/// the base field fixing the level-1 coefficients).
inline Mumford mumford_frobenius(const CurveModel& m, const Mumford& M, i64 subq) {
  const Field& F = *m.base;
  auto fr = [&](i64 c) { return F.frobenius_power(c, subq, 1); };
  return Mumford{&F, M.u.map_coeffs(F, fr), M.v.map_coeffs(F, fr)};
}

}  // namespace hclf
