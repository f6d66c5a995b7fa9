#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

#include <hclf/field_embed.hpp>
#include <hclf/fpoly.hpp>

namespace hclf {

using bigint = boost::multiprecision::cpp_int;
using i128 = __int128;

/// Desk-scale resource caps; all enumeration-style operations check them.
struct Config {
  i64 max_enum_field = 59049;        // largest field whose elements are enumerated
  i64 max_orbit_field = 1 << 21;     // largest field scanned for place orbits
  i64 max_group = 5000;              // largest Jacobian group enumerated
  i64 max_principal_scan = 200000;   // projective scan bound for principality witnesses
  i64 max_product_order = 64;        // |J| cap for whole-character-table products
};

inline Config& config() {
  static Config c;
  return c;
}

struct GeometricPoint {
  const Field* fld = nullptr;
  bool inf = false;
  i64 x = 0;
  i64 y = 0;  // branch value of y/x^{g+1} for infinite points on a real model

  bool operator==(const GeometricPoint& o) const {
    return inf == o.inf && x == o.x && y == o.y;
  }
};

/// Total order on points of one field: infinity first, then (x, y).
inline bool point_less(const GeometricPoint& a, const GeometricPoint& b) {
  if (a.inf != b.inf) return a.inf;
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

/// A closed point: one Frobenius orbit of geometric points at its own degree.
struct Place {
  int degree = 1;
  std::vector<GeometricPoint> orbit;  // sorted; coordinates live in F_{q^degree}

  const GeometricPoint& rep() const { return orbit.front(); }
  bool operator==(const Place& o) const {
    return degree == o.degree && rep() == o.rep();
  }
};

inline bool place_less(const Place& a, const Place& b) {
  if (a.degree != b.degree) return a.degree < b.degree;
  return point_less(a.rep(), b.rep());
}

/// A validated hyperelliptic model y^2 + h(x) y = f(x). In odd characteristic
/// h is always normalized to zero.
struct CurveModel {
  const Field* base = nullptr;
  FPoly h, f;
  int genus = 0;
  bool real = false;  // deg f == 2g + 2
  std::string label;

  i64 q() const { return base->q(); }
};

namespace detail {

/// Fast a -> a^{subq} map; precomputes the linear action on the power basis
/// for fields without log tables.
class FrobMap {
 public:
  FrobMap(const Field& F, i64 subq) : f_(&F), subq_(subq) {
    if (F.q() > Field::kTableLimit) {
      cols_.resize(static_cast<size_t>(F.k()));
      i64 b = 1;  // basis element x^i as an index is p^i
      for (int i = 0; i < F.k(); ++i) {
        cols_[static_cast<size_t>(i)] = F.pow(b, subq_);
        b *= F.p();
      }
    }
  }
  i64 operator()(i64 a) const {
    if (cols_.empty()) return f_->frobenius_power(a, subq_, 1);
    i64 r = 0;
    auto d = f_->digits(a);
    for (int i = 0; i < f_->k(); ++i)
      if (d[static_cast<size_t>(i)])
        r = f_->add(r, f_->smul(d[static_cast<size_t>(i)], cols_[static_cast<size_t>(i)]));
    return r;
  }

 private:
  const Field* f_;
  i64 subq_;
  std::vector<i64> cols_;
};

/// Solutions u of u^2 + u = a in characteristic two (sorted; empty or {u, u+1}).
inline std::vector<i64> artin_schreier_solve(const Field& F, i64 a) {
  std::vector<i64> out;
  if (F.q() <= 4096) {
    for (i64 u = 0; u < F.q(); ++u)
      if (F.add(F.mul(u, u), u) == a) out.push_back(u);
    std::sort(out.begin(), out.end());
    return out;
  }
  // solve the F_2-linear system (Frob + id) u = a on the power basis
  int k = F.k();
  std::vector<std::vector<i64>> m(static_cast<size_t>(k), std::vector<i64>(static_cast<size_t>(k + 1), 0));
  i64 b = 1;
  for (int j = 0; j < k; ++j) {
    i64 img = F.add(F.mul(b, b), b);
    auto d = F.digits(img);
    for (int i = 0; i < k; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = d[static_cast<size_t>(i)];
    b *= 2;
  }
  auto da = F.digits(a);
  for (int i = 0; i < k; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(k)] = da[static_cast<size_t>(i)];
  std::vector<int> pivot_col(static_cast<size_t>(k), -1);
  int row = 0;
  for (int col = 0; col < k && row < k; ++col) {
    int piv = -1;
    for (int r = row; r < k; ++r)
      if (m[static_cast<size_t>(r)][static_cast<size_t>(col)]) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(m[static_cast<size_t>(row)], m[static_cast<size_t>(piv)]);
    for (int r = 0; r < k; ++r)
      if (r != row && m[static_cast<size_t>(r)][static_cast<size_t>(col)])
        for (int c = col; c <= k; ++c)
          m[static_cast<size_t>(r)][static_cast<size_t>(c)] ^= m[static_cast<size_t>(row)][static_cast<size_t>(c)];
    pivot_col[static_cast<size_t>(row)] = col;
    ++row;
  }
  for (int r = row; r < k; ++r)
    if (m[static_cast<size_t>(r)][static_cast<size_t>(k)]) return out;  // inconsistent
  std::vector<i64> sol(static_cast<size_t>(k), 0);
  for (int r = 0; r < row; ++r)
    sol[static_cast<size_t>(pivot_col[static_cast<size_t>(r)])] = m[static_cast<size_t>(r)][static_cast<size_t>(k)];
  i64 u = F.from_digits(sol);
  out = {u, F.add(u, 1)};
  std::sort(out.begin(), out.end());
  return out;
}

/// Solutions z of z^2 + b z = c, sorted. Handles both parities of the
/// characteristic; a double root is reported once.
inline std::vector<i64> solve_quadratic(const Field& F, i64 b, i64 c) {
  if (F.p() != 2) {
    // z = -b/2 +- sqrt(b^2/4 + c)
    i64 half = F.inv(F.smul(2, 1));
    i64 mb2 = F.neg(F.mul(b, half));
    i64 disc = F.add(F.mul(mb2, mb2), c);
    if (disc == 0) return {mb2};
    if (!F.is_square(disc)) return {};
    i64 r = F.sqrt(disc);
    std::vector<i64> out{F.add(mb2, r), F.sub(mb2, r)};
    std::sort(out.begin(), out.end());
    return out;
  }
  if (b == 0) return {F.pow(c, F.q() / 2)};  // unique square root in char 2
  i64 a = F.div(c, F.mul(b, b));
  auto us = artin_schreier_solve(F, a);
  std::vector<i64> out;
  for (i64 u : us) out.push_back(F.mul(b, u));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Validates raw coefficients and returns a normalized model. In odd
/// characteristic the square is completed so that h = 0 downstream.
inline CurveModel validate_curve(const Field& F, FPoly h, FPoly f, std::string label = {}) {
  if (&h.field() != &F || &f.field() != &F) throw FieldError("curve coefficients over a different field");
  if (F.p() != 2) {
    if (!h.zero()) {
      i64 half = F.inv(F.smul(2, 1));
      FPoly h2 = h.scaled(half);
      f = f + h2 * h2;
      h = FPoly(F);
    }
    if (f.deg() < 3) throw FieldError("degree of f too small: genus would be 0");
    if (!f.squarefree()) throw FieldError("singular model: f is not squarefree");
    int d = f.deg();
    int g = (d + 1) / 2 - 1;
    CurveModel m{&F, h, f, g, d == 2 * g + 2, std::move(label)};
    return m;
  }
  // characteristic two: h must be nonzero
  if (h.zero()) throw FieldError("characteristic two requires h != 0");
  if (f.deg() < 3) throw FieldError("degree of f too small: genus would be 0");
  int d = f.deg();
  int g = (d + 1) / 2 - 1;
  if (h.deg() > (d % 2 == 0 ? g + 1 : g))
    throw FieldError("deg h too large for the genus of this model");
  // affine smoothness: a singular point needs h(x0) = 0
  for (auto& [pi, mult] : h.deg() >= 1 ? h.factor() : std::vector<std::pair<FPoly, int>>{}) {
    (void)mult;
    const Field& Fd = Field::get(F.p(), F.k() * std::max(pi.deg(), 1));
    const Embedding& em = Embedding::get(F, Fd);
    auto lift = [&](const FPoly& p) { return p.map_coeffs(Fd, [&](i64 c) { return em(c); }); };
    FPoly pid = lift(pi);
    auto roots = pid.roots();
    FPoly fd = lift(f), hd = lift(h);
    FPoly fdp = fd.derivative(), hdp = hd.derivative();
    for (i64 x0 : roots) {
      i64 y0 = Fd.pow(fd.eval(x0), Fd.q() / 2);  // sqrt in char 2
      if (Fd.add(Fd.mul(hdp.eval(x0), y0), fdp.eval(x0)) == 0)
        throw FieldError("singular affine point on characteristic-two model");
    }
  }
  if (d % 2 == 0) {
    // real model: check the point(s) at infinity when the branch equation is ramified
    i64 ht = h.coeff(g + 1), ft = f.coeff(2 * g + 2);
    if (ht == 0) {
      i64 z0 = F.pow(ft, F.q() / 2);
      if (F.add(F.mul(h.coeff(g), z0), f.coeff(2 * g + 1)) == 0)
        throw FieldError("singular point at infinity on characteristic-two model");
    }
  }
  CurveModel m{&F, h, f, g, d == 2 * g + 2, std::move(label)};
  return m;
}

/// The same curve re-read over F_{q^n} (coefficients embedded).
inline CurveModel base_change(const CurveModel& m, int n) {
  if (n == 1) return m;
  const Field& Fn = Field::get(m.base->p(), m.base->k() * n);
  const Embedding& em = Embedding::get(*m.base, Fn);
  auto lift = [&](const FPoly& p) { return p.map_coeffs(Fn, [&](i64 c) { return em(c); }); };
  return CurveModel{&Fn, lift(m.h), lift(m.f), m.genus, m.real, m.label};
}

/// y-coordinates over a given x (affine), sorted.
inline std::vector<i64> affine_ys(const CurveModel& m, const Field& F, const FPoly& hF,
                                  const FPoly& fF, i64 x) {
  (void)m;
  return detail::solve_quadratic(F, hF.eval(x), fF.eval(x));
}

/// Rational points at infinity of the model over its own base.
inline std::vector<GeometricPoint> infinite_points(const CurveModel& m) {
  const Field& F = *m.base;
  if (!m.real) return {GeometricPoint{&F, true, 0, 0}};
  i64 ht = m.h.coeff(m.genus + 1), ft = m.f.coeff(2 * m.genus + 2);
  std::vector<GeometricPoint> out;
  for (i64 z : detail::solve_quadratic(F, ht, ft)) out.push_back(GeometricPoint{&F, true, 0, z});
  std::sort(out.begin(), out.end(), point_less);
  return out;
}

/// All points of C over the model's own base field, infinity included,
/// in the fixed deterministic order.
inline std::vector<GeometricPoint> rational_points(const CurveModel& m) {
  const Field& F = *m.base;
  if (F.q() > config().max_enum_field) throw FieldError("field size cap exceeded in rational_points");
  std::vector<GeometricPoint> out = infinite_points(m);
  for (i64 x = 0; x < F.q(); ++x)
    for (i64 y : affine_ys(m, F, m.h, m.f, x)) out.push_back(GeometricPoint{&F, false, x, y});
  std::sort(out.begin(), out.end(), point_less);
  return out;
}

/// Points of C(F_{q^n}).
inline std::vector<GeometricPoint> rational_points(const CurveModel& m, int n) {
  return rational_points(base_change(m, n));
}

namespace detail {

inline std::vector<GeometricPoint> frobenius_orbit(const Field& Fbig, const FrobMap& frob,
                                                   GeometricPoint p0) {
  std::vector<GeometricPoint> orbit{p0};
  GeometricPoint p = p0;
  for (;;) {
    p = GeometricPoint{&Fbig, p.inf, frob(p.x), frob(p.y)};
    if (p == p0) break;
    orbit.push_back(p);
  }
  std::sort(orbit.begin(), orbit.end(), point_less);
  return orbit;
}

}  // namespace detail

/// All closed points of exact degree d on the model over its own base.
inline std::vector<Place> places_of_degree(const CurveModel& m, int d) {
  const Field& F = *m.base;
  std::vector<Place> out;
  if (d == 1) {
    for (const auto& p : rational_points(m)) out.push_back(Place{1, {p}});
    return out;
  }
  const Field& Fbig = Field::get(F.p(), F.k() * d);
  if (Fbig.q() > config().max_orbit_field) throw FieldError("field size cap exceeded in places_of_degree");
  const Embedding& em = Embedding::get(F, Fbig);
  FPoly hb = m.h.map_coeffs(Fbig, [&](i64 c) { return em(c); });
  FPoly fb = m.f.map_coeffs(Fbig, [&](i64 c) { return em(c); });
  detail::FrobMap frob(Fbig, F.q());

  // inert infinite place on a real model splits at degree 2
  if (d == 2 && m.real) {
    i64 ht = hb.coeff(m.genus + 1), ft = fb.coeff(2 * m.genus + 2);
    auto zs = detail::solve_quadratic(Fbig, ht, ft);
    if (zs.size() == 2 && frob(zs[0]) != zs[0]) {
      Place pl{2, {GeometricPoint{&Fbig, true, 0, zs[0]}, GeometricPoint{&Fbig, true, 0, zs[1]}}};
      std::sort(pl.orbit.begin(), pl.orbit.end(), point_less);
      out.push_back(std::move(pl));
    }
  }

  std::vector<bool> visited(static_cast<size_t>(Fbig.q()), false);
  for (i64 x0 = 0; x0 < Fbig.q(); ++x0) {
    if (visited[static_cast<size_t>(x0)]) continue;
    int e = 0;
    i64 xx = x0;
    do {
      visited[static_cast<size_t>(xx)] = true;
      xx = frob(xx);
      ++e;
    } while (xx != x0);
    if (e == d) {
      for (i64 y0 : affine_ys(m, Fbig, hb, fb, x0))
        out.push_back(Place{d, detail::frobenius_orbit(Fbig, frob, GeometricPoint{&Fbig, false, x0, y0})});
    } else if (2 * e == d) {
      auto ys = affine_ys(m, Fbig, hb, fb, x0);
      if (ys.size() == 2) {
        i64 y0 = ys[0];
        i64 yy = y0;
        for (int i = 0; i < e; ++i) yy = frob(yy);
        if (yy != y0)  // y genuinely of degree 2e: a single place of degree d
          out.push_back(Place{d, detail::frobenius_orbit(Fbig, frob, GeometricPoint{&Fbig, false, x0, y0})});
      }
    }
  }
  for (const auto& pl : out)
    if (static_cast<int>(pl.orbit.size()) != d) throw FieldError("internal: orbit size mismatch in places_of_degree");
  std::sort(out.begin(), out.end(), place_less);
  return out;
}

/// #C(F_{q^n}).
inline i64 point_count(const CurveModel& m, int n) {
  return static_cast<i64>(rational_points(m, n).size());
}

namespace detail {

/// Power sums s_m of the Frobenius eigenvalues from the zeta numerator
/// coefficients a_0..a_{2g} (s_m for m = 1..len).
inline std::vector<i128> eigen_power_sums(const std::vector<i64>& a, int len) {
  int deg = static_cast<int>(a.size()) - 1;
  std::vector<i128> s(static_cast<size_t>(len) + 1, 0);
  for (int mth = 1; mth <= len; ++mth) {
    i128 acc = 0;
    if (mth <= deg) acc = -static_cast<i128>(mth) * a[static_cast<size_t>(mth)];
    for (int i = 1; i < mth && i <= deg; ++i) acc -= static_cast<i128>(a[static_cast<size_t>(i)]) * s[static_cast<size_t>(mth - i)];
    s[static_cast<size_t>(mth)] = acc;
  }
  return s;
}

/// Monic elementary-symmetric reconstruction: given power sums s_1..s_g of
/// the roots, returns a_0..a_g of prod (1 - alpha T) (a_m integers).
inline std::vector<i128> newton_coefficients(const std::vector<i128>& s, int g) {
  std::vector<i128> a(static_cast<size_t>(g) + 1, 0);
  a[0] = 1;
  for (int mth = 1; mth <= g; ++mth) {
    i128 acc = 0;
    for (int i = 1; i <= mth; ++i) acc += a[static_cast<size_t>(mth - i)] * s[static_cast<size_t>(i)];
    if (acc % mth != 0) throw FieldError("internal: Newton identity division failed");
    a[static_cast<size_t>(mth)] = -acc / mth;
  }
  return a;
}

}  // namespace detail

/// Numerator P(T) of the zeta function: degree 2g, P(0) = 1, leading
/// coefficient q^g, from point counts N_1..N_g plus the functional equation.
inline std::vector<i64> zeta_numerator(const CurveModel& m) {
  int g = m.genus;
  i64 q = m.q();
  std::vector<i128> s(static_cast<size_t>(g) + 1, 0);
  i128 qm = 1;
  for (int mth = 1; mth <= g; ++mth) {
    qm *= q;
    i64 nm = point_count(m, mth);
    s[static_cast<size_t>(mth)] = qm + 1 - nm;
  }
  auto a = detail::newton_coefficients(s, g);
  std::vector<i64> out(static_cast<size_t>(2 * g) + 1, 0);
  for (int j = 0; j <= g; ++j) out[static_cast<size_t>(j)] = static_cast<i64>(a[static_cast<size_t>(j)]);
  i128 qp = 1;
  for (int j = g - 1; j >= 0; --j) {
    qp *= q;
    out[static_cast<size_t>(2 * g - j)] = static_cast<i64>(qp * a[static_cast<size_t>(j)]);
  }
  return out;
}

/// Numerator of zeta of C tensor F_{q^n}, derived from the level-one numerator
/// by power sums (no large-field counting).
inline std::vector<i64> zeta_numerator_level(const std::vector<i64>& p1, i64 q, int g, int n) {
  auto s = detail::eigen_power_sums(p1, n * g);
  std::vector<i128> sn(static_cast<size_t>(g) + 1, 0);
  for (int mth = 1; mth <= g; ++mth) sn[static_cast<size_t>(mth)] = s[static_cast<size_t>(n * mth)];
  auto b = detail::newton_coefficients(sn, g);
  std::vector<i64> out(static_cast<size_t>(2 * g) + 1, 0);
  for (int j = 0; j <= g; ++j) out[static_cast<size_t>(j)] = static_cast<i64>(b[static_cast<size_t>(j)]);
  i128 qn = 1;
  for (int i = 0; i < n; ++i) qn *= q;
  i128 qp = 1;
  for (int j = g - 1; j >= 0; --j) {
    qp *= qn;
    out[static_cast<size_t>(2 * g - j)] = static_cast<i64>(qp * b[static_cast<size_t>(j)]);
  }
  return out;
}

namespace detail {

inline bigint det_bareiss(std::vector<std::vector<bigint>> a) {
  int n = static_cast<int>(a.size());
  if (n == 0) return 1;
  bigint prev = 1;
  bigint sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[static_cast<size_t>(k)][static_cast<size_t>(k)] == 0) {
      int piv = -1;
      for (int r = k + 1; r < n; ++r)
        if (a[static_cast<size_t>(r)][static_cast<size_t>(k)] != 0) { piv = r; break; }
      if (piv < 0) return 0;
      std::swap(a[static_cast<size_t>(k)], a[static_cast<size_t>(piv)]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        bigint num = a[static_cast<size_t>(i)][static_cast<size_t>(j)] * a[static_cast<size_t>(k)][static_cast<size_t>(k)] -
                     a[static_cast<size_t>(i)][static_cast<size_t>(k)] * a[static_cast<size_t>(k)][static_cast<size_t>(j)];
        a[static_cast<size_t>(i)][static_cast<size_t>(j)] = num / prev;
      }
    prev = a[static_cast<size_t>(k)][static_cast<size_t>(k)];
  }
  return sign * a[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)];
}

}  // namespace detail

/// |J_C(F_{q^n})| = det(I - M^n) with M the companion matrix of the monic
/// reciprocal T^{2g} P(1/T); cross-checked against P_n(1).
inline i64 jacobian_order(const CurveModel& m, int n) {
  auto p1 = zeta_numerator(m);
  int deg = static_cast<int>(p1.size()) - 1;
  // companion matrix of A(T) = T^{2g} P(1/T) = T^{2g} + a_1 T^{2g-1} + ... + a_{2g}
  std::vector<std::vector<bigint>> M(static_cast<size_t>(deg), std::vector<bigint>(static_cast<size_t>(deg), 0));
  for (int i = 1; i < deg; ++i) M[static_cast<size_t>(i)][static_cast<size_t>(i - 1)] = 1;
  for (int i = 0; i < deg; ++i) M[static_cast<size_t>(i)][static_cast<size_t>(deg - 1)] = -bigint(p1[static_cast<size_t>(deg - i)]);
  // Mn = M^n
  auto mat_mul = [&](const std::vector<std::vector<bigint>>& A, const std::vector<std::vector<bigint>>& B) {
    std::vector<std::vector<bigint>> C(static_cast<size_t>(deg), std::vector<bigint>(static_cast<size_t>(deg), 0));
    for (int i = 0; i < deg; ++i)
      for (int k = 0; k < deg; ++k)
        if (A[static_cast<size_t>(i)][static_cast<size_t>(k)] != 0)
          for (int j = 0; j < deg; ++j)
            C[static_cast<size_t>(i)][static_cast<size_t>(j)] += A[static_cast<size_t>(i)][static_cast<size_t>(k)] * B[static_cast<size_t>(k)][static_cast<size_t>(j)];
    return C;
  };
  std::vector<std::vector<bigint>> Mn(static_cast<size_t>(deg), std::vector<bigint>(static_cast<size_t>(deg), 0));
  for (int i = 0; i < deg; ++i) Mn[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
  for (int i = 0; i < n; ++i) Mn = mat_mul(Mn, M);
  for (int i = 0; i < deg; ++i)
    for (int j = 0; j < deg; ++j) Mn[static_cast<size_t>(i)][static_cast<size_t>(j)] = (i == j ? 1 : 0) - Mn[static_cast<size_t>(i)][static_cast<size_t>(j)];
  bigint det = detail::det_bareiss(std::move(Mn));
  auto pn = zeta_numerator_level(p1, m.q(), m.genus, n);
  i128 pn1 = 0;
  for (i64 c : pn) pn1 += c;
  if (det != bigint(static_cast<i64>(pn1))) throw FieldError("internal: jacobian order determinant mismatch");
  return static_cast<i64>(pn1);
}

}  // namespace hclf
