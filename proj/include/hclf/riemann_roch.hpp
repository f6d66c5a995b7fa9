// Function spaces L(D) = { phi : div(phi) + D >= 0 } and exact divisors of
// functions phi = (u(x) + v(x) y) / w(x), for models in odd characteristic.
// This is the general engine that works for both odd- and even-degree f.
#pragma once

#include <map>

#include "hclf/cantor.hpp"
#include "hclf/series.hpp"

namespace hclf {

/// A function (u + v y) / w on the curve.
struct RRFunction {
  FPoly u, v, w;
};

/// L(D) presented by a common denominator w and numerator pairs (u, v).
struct RRSpace {
  FPoly w;
  std::vector<std::pair<FPoly, FPoly>> basis;
  int dim() const { return static_cast<int>(basis.size()); }
};

namespace detail {

inline i64 floordiv(i64 a, i64 b) {
  i64 q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

inline FPoly lift_poly(const FPoly& p, const Field& Fd) {
  const Embedding& em = Embedding::get(p.field(), Fd);
  return p.map_coeffs(Fd, [&](i64 c) { return em(c); });
}

/// One affine closed point with its x-line data.
struct AffineSite {
  Place place;
  FPoly minpoly;  // irreducible over the base field, vanishing at x(P)
  int e = 1;      // ramification index over the x-line
};

/// All affine places lying over an irreducible polynomial pi(x).
inline std::vector<AffineSite> places_over(const CurveModel& m, const FPoly& pi) {
  const Field& F = *m.base;
  int dx = pi.deg();
  const Field& Fd = dx == 1 ? F : Field::get(F.p(), F.k() * dx);
  FPoly pid = lift_poly(pi, Fd);
  auto rs = pid.roots();
  if (static_cast<int>(rs.size()) != dx)
    throw FieldError("internal: irreducible factor does not split at its degree");
  i64 x0 = rs.front();
  FPoly hd = lift_poly(m.h, Fd), fd = lift_poly(m.f, Fd);
  auto ys = affine_ys(m, Fd, hd, fd, x0);
  std::vector<AffineSite> out;
  FPoly pim = pi.monic_scaled();
  if (ys.size() == 1) {  // ramified over the x-line
    FrobMap frob(Fd, F.q());
    out.push_back(AffineSite{
        Place{dx, frobenius_orbit(Fd, frob, GeometricPoint{&Fd, false, x0, ys[0]})}, pim, 2});
  } else if (ys.size() == 2) {  // split: two places at the degree of x
    FrobMap frob(Fd, F.q());
    for (i64 y0 : ys)
      out.push_back(AffineSite{
          Place{dx, frobenius_orbit(Fd, frob, GeometricPoint{&Fd, false, x0, y0})}, pim, 1});
  } else {  // inert: one place of twice the degree of x
    const Field& F2 = Field::get(F.p(), F.k() * 2 * dx);
    const Embedding& up = Embedding::get(Fd, F2);
    i64 x1 = up(x0);
    FPoly h2 = lift_poly(m.h, F2), f2 = lift_poly(m.f, F2);
    auto ys2 = affine_ys(m, F2, h2, f2, x1);
    if (ys2.size() != 2) throw FieldError("internal: inert place has no point at twice the degree");
    FrobMap frob(F2, F.q());
    out.push_back(AffineSite{
        Place{2 * dx, frobenius_orbit(F2, frob, GeometricPoint{&F2, false, x1, ys2[0]})}, pim, 1});
  }
  std::sort(out.begin(), out.end(),
            [](const AffineSite& a, const AffineSite& b) { return place_less(a.place, b.place); });
  return out;
}

/// Site data recovered from an existing affine place.
inline AffineSite site_from_place(const CurveModel& m, const Place& pl) {
  const Field& F = *m.base;
  const Field& Fd = *pl.rep().fld;
  std::set<i64> xs;
  for (const auto& pt : pl.orbit) xs.insert(pt.x);
  FPoly uu = FPoly::constant(Fd, 1);
  for (i64 x0 : xs) uu = uu * FPoly(Fd, {Fd.neg(x0), 1});
  return AffineSite{pl, descend_poly(F, Fd, uu), pl.rep().y == 0 ? 2 : 1};
}

/// Local expansion of u(x) + v(x) y at an affine site, to the given
/// precision in the local parameter.
inline TSeries site_expansion(const CurveModel& m, const AffineSite& s, const FPoly& u,
                              const FPoly& v, int prec) {
  const Field& FP = *s.place.rep().fld;
  i64 x0 = s.place.rep().x, y0 = s.place.rep().y;
  FPoly fP = lift_poly(m.f, FP);
  TSeries xs(FP, prec), ys(FP, prec);
  if (s.e == 1) {
    xs = TSeries::t(FP, prec);
    xs.set(0, x0);
    ys = series_sqrt(poly_at_series(fP, xs), y0);
  } else {
    xs = series_solve_ramified(fP, x0, prec);
    ys = TSeries::t(FP, prec);
  }
  return poly_at_series(lift_poly(u, FP), xs) + poly_at_series(lift_poly(v, FP), xs) * ys;
}

/// Reversed-f branch series z(t) with z(0) = s, where z(t)^2 = t^{2g+2} f(1/t).
inline TSeries branch_series(const CurveModel& m, const Field& Fb, i64 s, int prec) {
  std::vector<i64> rev(m.f.coeffs().rbegin(), m.f.coeffs().rend());
  FPoly frev = lift_poly(FPoly(*m.base, rev), Fb);
  TSeries t = TSeries::t(Fb, prec);
  return series_sqrt(poly_at_series(frev, t), s);
}

}  // namespace detail

/// Basis of L(D).  The divisor may contain any places of the model; the
/// model must use odd characteristic.
inline RRSpace rr_space(const CurveModel& m, const Divisor& D) {
  const Field& F = *m.base;
  if (F.p() == 2) throw FieldError("function space engine requires odd characteristic");
  const int g = m.genus;

  // split the divisor into affine and infinite parts
  std::map<Place, int, decltype(&place_less)> naff(&place_less);
  std::map<i64, int> ninf_branch;  // branch value (rep y) -> multiplicity, degree-1 infinite
  int ninf2 = 0;                   // multiplicity of a degree-2 infinite place
  for (const auto& [pl, n] : D.terms) {
    if (!pl.rep().inf) {
      naff[pl] = n;
    } else if (pl.degree == 1) {
      ninf_branch[pl.rep().y] += n;
    } else {
      ninf2 += n;
    }
  }

  // common denominator w and the list of sites carrying conditions
  std::map<std::vector<i64>, int> wfac;  // minpoly coeffs -> exponent in w
  std::map<Place, detail::AffineSite, decltype(&place_less)> sites(&place_less);
  for (const auto& [pl, n] : naff) {
    auto s = detail::site_from_place(m, pl);
    sites.emplace(pl, s);
    if (n > 0) wfac[s.minpoly.coeffs()] += static_cast<int>((n + s.e - 1) / s.e);
  }
  FPoly w = FPoly::constant(F, 1);
  for (const auto& [pc, k] : wfac) {
    FPoly pi(F, pc);
    for (int i = 0; i < k; ++i) w = w * pi;
    for (auto& s : detail::places_over(m, pi))
      if (!sites.count(s.place)) sites.emplace(s.place, s);
  }

  // degree bounds for u and v
  i64 W = w.deg();
  i64 Du, Dv;
  std::vector<std::pair<i64, int>> branch_conds;  // (branch value s, #conditions)
  if (!m.real) {
    i64 ninf = ninf_branch.count(0) ? ninf_branch[0] : 0;
    Du = W + detail::floordiv(ninf, 2);
    Dv = W + detail::floordiv(ninf - (2 * g + 1), 2);
  } else {
    auto inf = infinite_points(m);
    if (inf.size() == 2) {
      i64 n0 = ninf_branch.count(inf[0].y) ? ninf_branch[inf[0].y] : 0;
      i64 n1 = ninf_branch.count(inf[1].y) ? ninf_branch[inf[1].y] : 0;
      i64 nmax = std::max(n0, n1);
      Du = W + nmax;
      Dv = Du - (g + 1);
      if (n0 < nmax) branch_conds.push_back({inf[0].y, static_cast<int>(nmax - n0)});
      if (n1 < nmax) branch_conds.push_back({inf[1].y, static_cast<int>(nmax - n1)});
    } else {  // inert infinite place: equal pole bounds on both branches
      Du = W + ninf2;
      Dv = Du - (g + 1);
    }
  }
  int nu = Du >= 0 ? static_cast<int>(Du) + 1 : 0;
  int nv = Dv >= 0 ? static_cast<int>(Dv) + 1 : 0;
  int cols = nu + nv;
  if (cols == 0) return RRSpace{w, {}};

  FMatrix rows;
  auto add_rows_over = [&](const Field& FP, const std::vector<std::vector<i64>>& cond) {
    // cond[c] = the FP-valued coefficient of condition per unknown column
    if (&FP == &F) {
      for (const auto& r : cond) rows.push_back(r);
      return;
    }
    const RelBasis& rb = RelBasis::get(F, FP);
    for (const auto& r : cond) {
      std::vector<std::vector<i64>> sub(rb.dim(), std::vector<i64>(cols, 0));
      for (int c = 0; c < cols; ++c) {
        auto co = rb.coords(r[c]);
        for (int i = 0; i < rb.dim(); ++i) sub[i][c] = co[i];
      }
      for (auto& rr : sub) rows.push_back(std::move(rr));
    }
  };

  // affine conditions
  for (const auto& [pl, site] : sites) {
    int n = naff.count(pl) ? naff.at(pl) : 0;
    int vw = wfac.count(site.minpoly.coeffs()) ? site.e * wfac.at(site.minpoly.coeffs()) : 0;
    int r = vw - n;
    if (r <= 0) continue;
    const Field& FP = *pl.rep().fld;
    i64 x0 = pl.rep().x, y0 = pl.rep().y;
    FPoly fP = detail::lift_poly(m.f, FP);
    TSeries xs(FP, r), ys(FP, r);
    if (site.e == 1) {
      xs = TSeries::t(FP, r);
      xs.set(0, x0);
      ys = series_sqrt(poly_at_series(fP, xs), y0);
    } else {
      xs = series_solve_ramified(fP, x0, r);
      ys = TSeries::t(FP, r);
    }
    // column series: expansion of each unknown monomial
    std::vector<TSeries> colser(cols, TSeries(FP, r));
    TSeries pw = TSeries::constant(FP, 1, r);
    for (int j = 0; j < std::max(nu, nv); ++j) {
      if (j < nu) colser[j] = pw;
      if (j < nv) colser[nu + j] = pw * ys;
      pw = pw * xs;
    }
    std::vector<std::vector<i64>> cond(r, std::vector<i64>(cols, 0));
    for (int i = 0; i < r; ++i)
      for (int c = 0; c < cols; ++c) cond[i][c] = colser[c].coeff(i);
    add_rows_over(FP, cond);
  }

  // Laurent conditions at a rational branch at infinity (real models)
  for (auto [s, ccount] : branch_conds) {
    TSeries z = detail::branch_series(m, F, s, ccount);
    std::vector<std::vector<i64>> cond(ccount, std::vector<i64>(cols, 0));
    for (int j = 0; j < nu; ++j) {
      i64 ex = Du - j;
      if (ex < ccount) cond[static_cast<size_t>(ex)][j] = 1;
    }
    for (int j = 0; j < nv; ++j) {
      i64 base = Du - (g + 1) - j;
      for (int i = 0; i < ccount; ++i)
        if (i - base >= 0) cond[i][nu + j] = z.coeff(static_cast<int>(i - base));
    }
    add_rows_over(F, cond);
  }

  RRSpace out{w, {}};
  if (rows.empty()) rows.push_back(std::vector<i64>(cols, 0));
  for (const auto& vec : nullspace(F, rows)) {
    std::vector<i64> uc(vec.begin(), vec.begin() + nu);
    std::vector<i64> vc(vec.begin() + nu, vec.end());
    out.basis.push_back({FPoly(F, uc), FPoly(F, vc)});
  }
  return out;
}

/// The exact divisor of (u + v y)/w; throws if u = v = 0.
inline Divisor divisor_of_function(const CurveModel& m, const FPoly& u, const FPoly& v,
                                   const FPoly& w) {
  const Field& F = *m.base;
  if (F.p() == 2) throw FieldError("function divisor engine requires odd characteristic");
  if (u.zero() && v.zero()) throw FieldError("divisor of the zero function");
  const int g = m.genus;
  std::map<Place, int, decltype(&place_less)> vals(&place_less);

  // zeros and poles from the denominator w
  if (w.deg() >= 1) {
    for (const auto& [pi, k] : w.factor())
      for (const auto& s : detail::places_over(m, pi)) vals[s.place] -= k * s.e;
  }

  // affine zeros of u + v y, located through the norm u^2 - v^2 f
  FPoly norm = u * u - v * v * m.f;
  if (norm.zero()) throw FieldError("internal: vanishing norm for a nonzero function");
  if (norm.deg() >= 1) {
    for (const auto& [pi, M] : norm.factor()) {
      auto sites = detail::places_over(m, pi);
      if (sites.size() == 2) {
        int a0 = detail::site_expansion(m, sites[0], u, v, M + 1).valuation();
        int a1 = detail::site_expansion(m, sites[1], u, v, M + 1).valuation();
        if (a0 + a1 != M) throw FieldError("internal: split valuations do not add up");
        vals[sites[0].place] += a0;
        vals[sites[1].place] += a1;
      } else if (sites[0].e == 2) {  // ramified
        int a = detail::site_expansion(m, sites[0], u, v, 2 * M + 1).valuation();
        if (a > 2 * M) throw FieldError("internal: ramified valuation out of range");
        vals[sites[0].place] += a;
      } else {  // inert: conjugation fixes the place
        if (M % 2 != 0) throw FieldError("internal: odd norm multiplicity at an inert place");
        vals[sites[0].place] += M / 2;
      }
    }
  }

  // behaviour at infinity
  if (!m.real) {
    i64 vinf;
    if (v.zero()) vinf = -2 * u.deg();
    else if (u.zero()) vinf = -(2 * g + 1) - 2 * v.deg();
    else vinf = std::min<i64>(-2 * u.deg(), -(2 * g + 1) - 2 * v.deg());
    vinf += 2 * w.deg();
    Place inf{1, {GeometricPoint{&F, true, 0, 0}}};
    vals[inf] += static_cast<int>(vinf);
  } else {
    i64 B0 = std::max(u.zero() ? -1 : u.deg(), v.zero() ? -1 : v.deg() + g + 1);
    auto branch_val = [&](const Field& Fb, i64 s) {
      int prec = static_cast<int>(2 * B0 + 2 * g + norm.deg() + 4);
      TSeries z = detail::branch_series(m, Fb, s, prec);
      const Embedding& em = Embedding::get(F, Fb);
      TSeries N(Fb, prec);
      for (int j = 0; j <= u.deg(); ++j)
        if (B0 - j < prec) N.set(static_cast<int>(B0 - j), em(u.coeff(j)));
      TSeries Sv(Fb, prec);
      for (int j = 0; j <= v.deg() && !v.zero(); ++j) {
        i64 ex = B0 - (g + 1) - j;
        if (ex >= 0 && ex < prec) Sv.set(static_cast<int>(ex), em(v.coeff(j)));
      }
      N = N + z * Sv;
      int val = N.valuation();
      if (val == prec) throw FieldError("internal: could not resolve valuation at infinity");
      return static_cast<int>(val - B0);
    };
    auto inf = infinite_points(m);
    if (inf.size() == 2) {
      for (const auto& pt : inf) {
        Place pl{1, {pt}};
        vals[pl] += branch_val(F, pt.y) + static_cast<int>(w.deg());
      }
    } else {
      const Field& F2 = Field::get(F.p(), F.k() * 2);
      FPoly zeq(F2, {F2.neg(Embedding::get(F, F2)(m.f.coeff(2 * g + 2))), 0, 1});
      auto zs = zeq.roots();
      if (zs.size() != 2) throw FieldError("internal: inert branch value not found");
      detail::FrobMap frob(F2, F.q());
      Place pl{2, detail::frobenius_orbit(F2, frob, GeometricPoint{&F2, true, 0, zs[0]})};
      vals[pl] += branch_val(F2, zs[0]) + static_cast<int>(w.deg());
    }
  }

  Divisor out;
  i64 total = 0;
  for (const auto& [pl, n] : vals) {
    if (n == 0) continue;
    out = out + divisor_of_place(pl, n);
    total += static_cast<i64>(n) * pl.degree;
  }
  if (total != 0) throw FieldError("internal: divisor of a function has nonzero degree");
  return out;
}

}  // namespace hclf
