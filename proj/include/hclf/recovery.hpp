// The reconstruction procedure: reading rational point classes back out of
// character L-coefficients alone, with geometry-free data bundles, cross-curve
// comparisons, Frobenius twists, and the search for small real examples.
#pragma once

#include "hclf/lfun.hpp"
#include "hclf/parallel.hpp"

namespace hclf {

/// Abstract group presentation: no curve geometry, only invariant factors.
struct GroupPresentation {
  i64 order = 1;
  i64 exponent = 1;
  std::vector<i64> invariants;  // ascending, each divides the next
};

/// Everything the reconstruction is allowed to see: the abstract group, the
/// level, the zeta data (trivial character), and the nontrivial
/// L-polynomials in all_characters order (trivial slot omitted).
struct LDataBundle {
  GroupPresentation group;
  int n = 1;
  int genus = 0;
  ZetaPair zeta;
  std::vector<LPolynomial> lfunctions;  // size order - 1
};

namespace detail {

/// chi exponents for the bundle's characters, in all_characters order.
inline std::vector<std::vector<i64>> bundle_characters(const GroupPresentation& G) {
  std::vector<std::vector<i64>> out;
  std::vector<i64> a(G.invariants.size(), 0);
  for (i64 i = 0; i < G.order; ++i) {
    out.push_back(a);
    for (size_t j = a.size(); j-- > 0;) {
      if (++a[j] < G.invariants[j]) break;
      a[j] = 0;
    }
  }
  return out;
}

inline i64 bundle_char_exponent(const GroupPresentation& G, const std::vector<i64>& chi,
                                const std::vector<i64>& coords) {
  i64 e = 0;
  for (size_t i = 0; i < coords.size(); ++i)
    e = (e + chi[i] % G.invariants[i] * coords[i] % G.exponent * (G.exponent / G.invariants[i])) %
        G.exponent;
  return e;
}

inline std::vector<i64> bundle_coords_of_index(const GroupPresentation& G, i64 idx) {
  std::vector<i64> c(G.invariants.size(), 0);
  for (size_t i = G.invariants.size(); i-- > 0;) {
    c[i] = idx % G.invariants[i];
    idx /= G.invariants[i];
  }
  return c;
}

/// c_d of the trivial character: the t^d series coefficient of the zeta data.
inline bigint trivial_coefficient(const ZetaPair& zp, int d) {
  bigint total = 0;
  for (int a = 0; a <= d && a < static_cast<int>(zp.numerator.size()); ++a) {
    bigint geo = 0, pw = 1;
    for (int b = 0; b <= d - a; ++b) {
      geo += pw;
      pw *= zp.qn;
    }
    total += zp.numerator[static_cast<size_t>(a)] * geo;
  }
  return total;
}

}  // namespace detail

/// Exact census inversion: N(x, d) = (1/|G|) sum_chi chi(-x) c_d(chi).
/// Enforces vanishing zeta-components, |G|-divisibility and nonnegativity;
/// a violation means the bundle is inconsistent.
inline std::vector<i64> invert_counts(const LDataBundle& bundle, int d) {
  const GroupPresentation& G = bundle.group;
  i64 N = G.exponent;
  if (static_cast<i64>(bundle.lfunctions.size()) != G.order - 1)
    throw FieldError("bundle is missing nontrivial L-polynomials");
  auto chars = detail::bundle_characters(G);
  // bucket form of c_d for every character (trivial first), in i64 for speed
  std::vector<std::vector<i64>> cd;
  auto to_i64 = [](const bigint& v) {
    if (v > std::numeric_limits<i64>::max() / 2 || v < std::numeric_limits<i64>::min() / 2)
      throw FieldError("bundle coefficient out of the supported range");
    return static_cast<i64>(v);
  };
  for (i64 ci = 0; ci < G.order; ++ci) {
    std::vector<i64> b(static_cast<size_t>(N), 0);
    if (ci == 0) {
      b[0] = to_i64(detail::trivial_coefficient(bundle.zeta, d));
    } else {
      const LPolynomial& L = bundle.lfunctions[static_cast<size_t>(ci - 1)];
      if (d < static_cast<int>(L.coeffs.size())) {
        const CycloInt& c = L.coeffs[static_cast<size_t>(d)];
        if (c.order != N) throw FieldError("bundle L-coefficient has the wrong cyclotomic order");
        for (size_t j = 0; j < c.coeffs.size(); ++j) b[j] = to_i64(c.coeffs[j]);
      }
      // degrees beyond 2g-2 contribute 0: the L-polynomial has stopped
    }
    cd.push_back(std::move(b));
  }
  std::vector<i64> counts;
  for (i64 xi = 0; xi < G.order; ++xi) {
    auto coords = detail::bundle_coords_of_index(G, xi);
    std::vector<i64> acc(static_cast<size_t>(N), 0);
    for (i64 ci = 0; ci < G.order; ++ci) {
      i64 e = detail::bundle_char_exponent(G, chars[static_cast<size_t>(ci)], coords);
      const auto& row = cd[static_cast<size_t>(ci)];
      // chi(-x) = zeta^{-e}: rotate the bucket representation down by e
      for (i64 j = 0; j < N; ++j) {
        if (row[static_cast<size_t>(j)] == 0) continue;
        i64& slot = acc[static_cast<size_t>(((j - e) % N + N) % N)];
        if (__builtin_add_overflow(slot, row[static_cast<size_t>(j)], &slot))
          throw FieldError("overflow in census inversion");
      }
    }
    std::vector<bigint> accb(acc.begin(), acc.end());
    CycloInt total = cyclo_from_buckets(N, accb);
    if (!cyclo_is_integer(total))
      throw FieldError("census inversion: nonvanishing cyclotomic components");
    bigint v = cyclo_as_integer(total);
    if (v % G.order != 0) throw FieldError("census inversion: sum not divisible by |G|");
    v /= G.order;
    if (v < 0) throw FieldError("census inversion: negative count");
    if (v > std::numeric_limits<i64>::max()) throw FieldError("census inversion: count overflow");
    counts.push_back(static_cast<i64>(v));
  }
  return counts;
}

/// Group indices x with N(x, 1) = 1: the image of the rational points.
/// Consumes only the degree-1 coefficients; every N(x, 1) must be 0 or 1.
inline std::vector<i64> recover_point_classes(const LDataBundle& bundle) {
  auto counts = invert_counts(bundle, 1);
  std::vector<i64> out;
  for (i64 xi = 0; xi < bundle.group.order; ++xi) {
    i64 v = counts[static_cast<size_t>(xi)];
    if (v != 0 && v != 1)
      throw FieldError("census inversion: degree-1 count outside {0, 1}");
    if (v == 1) out.push_back(xi);
  }
  return out;
}

/// Geometry context for one curve at one level.
struct LevelGeometry {
  CurveModel model;  // already base-changed
  std::shared_ptr<Jacobian> J;
  GroupStructure G;
  CensusTable census;
};

inline LevelGeometry level_geometry(const CurveModel& base, int n,
                                    std::optional<Divisor> d1 = std::nullopt) {
  LevelGeometry L;
  L.model = n == 1 ? base : base_change(base, n);
  L.J = std::make_shared<Jacobian>(L.model, std::move(d1));
  L.G = group_structure(*L.J);
  L.census = census_table(*L.J, L.G, n, std::max(0, 2 * L.model.genus - 2));
  return L;
}

/// Build the geometry-free bundle for a curve at level n.
inline LDataBundle make_bundle(const CurveModel& base, const LevelGeometry& geo) {
  LDataBundle b;
  b.group = GroupPresentation{geo.G.order, geo.G.exponent, geo.G.invariants};
  b.n = geo.census.n;
  b.genus = geo.model.genus;
  b.zeta = zeta_pair(base, geo.census.n);
  auto chars = all_characters(geo.G);
  for (size_t ci = 1; ci < chars.size(); ++ci)
    b.lfunctions.push_back(l_polynomial(geo.G, geo.census, chars[ci]));
  return b;
}

struct RecoveryReport {
  bool pass = true;
  std::vector<i64> recovered;       // group indices from the bundle alone
  std::vector<i64> expected;        // true Abel-Jacobi image of the points
  std::vector<i64> degree_one_only; // recovery rerun with higher coefficients stripped
};

/// End-to-end reconstruction check at level n: build the bundle from
/// geometry, strip the geometry, recover, compare with the true point image.
inline RecoveryReport verify_recovery(const CurveModel& base, int n) {
  LevelGeometry geo = level_geometry(base, n);
  LDataBundle bundle = make_bundle(base, geo);
  RecoveryReport rep;
  rep.recovered = recover_point_classes(bundle);
  for (const auto& pl : places_of_degree(geo.model, 1))
    rep.expected.push_back(
        group_index_of(geo.G, geo.G.coords_of(geo.J->class_of(divisor_of_place(pl)))));
  std::sort(rep.expected.begin(), rep.expected.end());
  // the output may consume only c_1: deleting higher coefficients changes nothing
  LDataBundle stripped = bundle;
  for (auto& L : stripped.lfunctions)
    if (L.coeffs.size() > 2) L.coeffs.resize(2);
  rep.degree_one_only = recover_point_classes(stripped);
  rep.pass = rep.recovered == rep.expected && rep.degree_one_only == rep.recovered;
  return rep;
}

/// Generator images defining psi_n : J(C x F_{q^n}) -> J(C' x F_{q^n}).
struct CrossCurveMap {
  // gen_images[n-1][i] = coordinates in G'_n of psi_n(i-th generator of G_n)
  std::vector<std::vector<std::vector<i64>>> gen_images;
};

struct CrossCurveReport {
  bool pass = true;
  // failures: (level n, character index in all_characters order)
  std::vector<std::pair<int, i64>> failing;
  bool maps_valid = true;  // bijective homomorphisms commuting with inclusions
  bool points_match = true;
};

namespace detail {

/// Index-level map G -> G' from generator images; throws if not a bijective
/// homomorphism.
inline std::vector<i64> build_index_map(const GroupStructure& G, const GroupStructure& Gp,
                                        const std::vector<std::vector<i64>>& gen_images) {
  if (gen_images.size() != G.invariants.size())
    throw FieldError("cross-curve map: one image per generator required");
  for (size_t i = 0; i < gen_images.size(); ++i) {
    // the image must be killed by the generator's order
    for (size_t j = 0; j < Gp.invariants.size(); ++j)
      if (gen_images[i][j] * G.invariants[i] % Gp.invariants[j] != 0)
        throw FieldError("cross-curve map: image order does not divide the generator order");
  }
  std::vector<i64> map(static_cast<size_t>(G.order));
  std::vector<char> hit(static_cast<size_t>(Gp.order), 0);
  for (i64 xi = 0; xi < G.order; ++xi) {
    auto c = group_coords_of_index(G, xi);
    std::vector<i64> img(Gp.invariants.size(), 0);
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = 0; j < img.size(); ++j)
        img[j] = (img[j] + c[i] * gen_images[i][j]) % Gp.invariants[j];
    i64 t = group_index_of(Gp, img);
    map[static_cast<size_t>(xi)] = t;
    hit[static_cast<size_t>(t)] = 1;
  }
  for (char h : hit)
    if (!h) throw FieldError("cross-curve map is not bijective");
  return map;
}

}  // namespace detail

/// The level-n divisor obtained by pulling a base divisor up the extension.
inline Divisor lift_divisor(const CurveModel& base, const Divisor& D, int n) {
  if (n == 1) return D;
  Divisor out;
  for (const auto& [pl, mult] : D.terms)
    for (const auto& q : base_change_place(*base.base, pl, n)) out = out + mult * divisor_of_place(q);
  return out;
}

/// Compare the full level-n L-data of C and C' through psi_n for n <= n_max.
/// Optional base divisors (given on the level-1 curves) replace the defaults.
inline CrossCurveReport cross_curve_check(const CurveModel& C, const CurveModel& Cp,
                                          const CrossCurveMap& psi, int n_max,
                                          std::optional<Divisor> d1C = std::nullopt,
                                          std::optional<Divisor> d1Cp = std::nullopt) {
  CrossCurveReport rep;
  if (static_cast<int>(psi.gen_images.size()) < n_max)
    throw FieldError("cross-curve map must supply psi_n for every level");
  std::vector<LevelGeometry> geoC, geoCp;
  std::vector<std::vector<i64>> maps;
  for (int n = 1; n <= n_max; ++n) {
    geoC.push_back(level_geometry(
        C, n, d1C ? std::optional<Divisor>(lift_divisor(C, *d1C, n)) : std::nullopt));
    geoCp.push_back(level_geometry(
        Cp, n, d1Cp ? std::optional<Divisor>(lift_divisor(Cp, *d1Cp, n)) : std::nullopt));
    try {
      maps.push_back(detail::build_index_map(geoC.back().G, geoCp.back().G,
                                             psi.gen_images[static_cast<size_t>(n - 1)]));
    } catch (const FieldError&) {
      rep.maps_valid = false;
      rep.pass = false;
      return rep;
    }
  }
  // commuting with the inclusions J(F_q) -> J(F_{q^n})
  for (int n = 2; n <= n_max; ++n) {
    const auto& g1 = geoC[0];
    const auto& gn = geoC[static_cast<size_t>(n - 1)];
    const auto& gp1 = geoCp[0];
    const auto& gpn = geoCp[static_cast<size_t>(n - 1)];
    auto include = [&](const LevelGeometry& lo, const LevelGeometry& hi, const DivClass& x) {
      Divisor up;
      for (const auto& [pl, mult] : (x.E + (-x.m) * lo.J->d1()).terms)
        for (const auto& q : base_change_place(*lo.model.base, pl, n)) up = up + mult * divisor_of_place(q);
      return group_index_of(hi.G, hi.G.coords_of(hi.J->canonicalize(up)));
    };
    for (const auto& x : g1.G.elements) {
      i64 lhs = maps[static_cast<size_t>(n - 1)][static_cast<size_t>(include(g1, gn, x))];
      i64 via1 = maps[0][static_cast<size_t>(group_index_of(g1.G, g1.G.coords_of(x)))];
      DivClass x1p = gp1.G.elements[0];
      // locate the element of G'_1 with index via1
      for (const auto& y : gp1.G.elements)
        if (group_index_of(gp1.G, gp1.G.coords_of(y)) == via1) x1p = y;
      i64 rhs = include(gp1, gpn, x1p);
      if (lhs != rhs) {
        rep.maps_valid = false;
        rep.pass = false;
      }
    }
  }
  // per-level, per-character comparison of exact L-data: the coefficient
  // c_d(chi) of C equals c_d(chi o psi^{-1}) of C' exactly when
  // sum_x chi(x) (N_C(x, d) - N_C'(psi x, d)) vanishes
  for (int n = 1; n <= n_max; ++n) {
    const auto& gc = geoC[static_cast<size_t>(n - 1)];
    const auto& gp = geoCp[static_cast<size_t>(n - 1)];
    const auto& map = maps[static_cast<size_t>(n - 1)];
    auto chars = all_characters(gc.G);
    if (!(zeta_pair(C, n).numerator == zeta_pair(Cp, n).numerator)) {
      rep.pass = false;
      rep.failing.emplace_back(n, 0);
    }
    int D = std::max(0, 2 * gc.model.genus - 2);
    std::vector<std::vector<i64>> diff;
    bool any = false;
    for (int d = 0; d <= D; ++d) {
      std::vector<i64> row(static_cast<size_t>(gc.G.order), 0);
      for (i64 x = 0; x < gc.G.order; ++x) {
        row[static_cast<size_t>(x)] =
            gc.census.counts[static_cast<size_t>(d)][static_cast<size_t>(x)] -
            gp.census.counts[static_cast<size_t>(d)][static_cast<size_t>(map[static_cast<size_t>(x)])];
        any |= row[static_cast<size_t>(x)] != 0;
      }
      diff.push_back(std::move(row));
    }
    if (any) {
      i64 N = gc.G.exponent;
      for (size_t ci = 1; ci < chars.size(); ++ci) {
        bool ok = true;
        for (int d = 0; d <= D && ok; ++d) {
          std::vector<bigint> buckets(static_cast<size_t>(N), 0);
          for (i64 x = 0; x < gc.G.order; ++x) {
            if (diff[static_cast<size_t>(d)][static_cast<size_t>(x)] == 0) continue;
            buckets[static_cast<size_t>(
                character_exponent(chars[ci], group_coords_of_index(gc.G, x)))] +=
                diff[static_cast<size_t>(d)][static_cast<size_t>(x)];
          }
          ok = cyclo_is_zero(cyclo_from_buckets(N, buckets));
        }
        if (!ok) {
          rep.pass = false;
          rep.failing.emplace_back(n, static_cast<i64>(ci));
        }
      }
    }
    // the recovered point sets must correspond under psi
    std::vector<i64> ptsC, ptsCp;
    for (const auto& pl : places_of_degree(gc.model, 1))
      ptsC.push_back(map[static_cast<size_t>(
          group_index_of(gc.G, gc.G.coords_of(gc.J->class_of(divisor_of_place(pl)))))]);
    for (const auto& pl : places_of_degree(gp.model, 1))
      ptsCp.push_back(group_index_of(gp.G, gp.G.coords_of(gp.J->class_of(divisor_of_place(pl)))));
    std::sort(ptsC.begin(), ptsC.end());
    std::sort(ptsCp.begin(), ptsCp.end());
    if (ptsC != ptsCp) {
      rep.points_match = false;
      rep.pass = false;
    }
  }
  return rep;
}

/// The p^m-power twist: raise every coefficient of h and f to the p^m.
inline CurveModel frobenius_twist(const CurveModel& m, int e) {
  i64 subq = 1;
  for (int i = 0; i < e; ++i) subq *= m.base->p();
  auto pw = [&](const FPoly& a) {
    return a.map_coeffs(*m.base, [&](i64 c) { return m.base->frobenius_power(c, subq, 1); });
  };
  return validate_curve(*m.base, pw(m.h), pw(m.f), m.label.empty() ? "" : m.label + "^twist");
}

/// The coordinatewise point bijection induced by the twist, on places.
inline Place twist_place(const CurveModel& m, const Place& pl, int e) {
  i64 subq = 1;
  for (int i = 0; i < e; ++i) subq *= m.base->p();
  return frobenius_place(pl, subq);
}

/// One survivor of the small-example search.
struct ExampleCurve {
  CurveModel model;
  Place split_place;             // the unique split rational place of the x-line
  std::vector<i64> zeta;         // zeta numerator over F_3
};

/// Enumerate genus-2 sextic models over F_3 (1458 candidates) and keep those
/// that are smooth, have no irreducible factor of f of degree <= 2, have
/// exactly one split rational place on the x-line (infinity included), and
/// class number 5.
inline std::vector<ExampleCurve> search_f3_example(int workers = 1) {
  const Field& F3 = Field::get(3, 1);
  auto check = [&](std::size_t cand) -> std::optional<ExampleCurve> {
    i64 lead = 1 + static_cast<i64>(cand) / 729;
    i64 code = static_cast<i64>(cand) % 729;
    std::vector<i64> f(7, 0);
    f[6] = lead;
    for (int i = 0; i < 6; ++i) {
      f[static_cast<size_t>(i)] = code % 3;
      code /= 3;
    }
    FPoly fp(F3, f);
    if (!fp.squarefree()) return std::nullopt;  // smoothness of the model
    for (const auto& [pi, mult] : fp.factor())
      if (pi.deg() <= 2) return std::nullopt;
    CurveModel m = validate_curve(F3, FPoly(F3, {}), fp, "search");
    // split rational places of the x-line contribute two rational points
    // with the same x (infinity included)
    auto pts = rational_points(m);
    std::map<std::string, int> by_x;
    for (const auto& pt : pts) {
      std::string key = pt.inf ? "inf" : "x" + std::to_string(pt.x);
      ++by_x[key];
    }
    int split_count = 0;
    for (const auto& [key, cnt] : by_x)
      if (cnt == 2) ++split_count;
    if (split_count != 1 || jacobian_order(m, 1) != 5) return std::nullopt;
    // locate the split place among the rational places
    for (const auto& pl : places_of_degree(m, 1)) {
      const auto& rep = pl.rep();
      std::string key = rep.inf ? "inf" : "x" + std::to_string(rep.x);
      if (by_x[key] == 2) return ExampleCurve{m, pl, zeta_numerator(m)};
    }
    return std::nullopt;  // the split place might be non-rational; skip
  };
  // candidates are independent; results are merged in candidate order, so
  // the output is identical for any worker count
  auto results = parallel_map<std::optional<ExampleCurve>>(2 * 729, workers, check);
  std::vector<ExampleCurve> out;
  for (auto& r : results)
    if (r) out.push_back(std::move(*r));
  return out;
}

/// Genus-2 isomorphism test over the common base field: x -> (ax+b)/(cx+d)
/// modulo scalars, y -> e y / (cx+d)^{g+1}.
inline bool are_isomorphic_hyperelliptic(const CurveModel& m1, const CurveModel& m2) {
  if (m1.genus != 2 || m2.genus != 2) throw FieldError("isomorphism test implemented for genus 2");
  if (m1.base != m2.base) return false;
  if (m1.base->p() == 2) throw FieldError("isomorphism test implemented for odd characteristic");
  const Field& F = *m1.base;
  // squares in F*
  std::set<i64> squares;
  for (i64 a = 1; a < F.q(); ++a) squares.insert(F.mul(a, a));
  auto lin = [&](i64 a, i64 b) { return FPoly(F, {b, a}); };  // a x + b
  for (i64 a = 0; a < F.q(); ++a)
    for (i64 b = 0; b < F.q(); ++b)
      for (i64 c = 0; c < F.q(); ++c)
        for (i64 d = 0; d < F.q(); ++d) {
          if (F.sub(F.mul(a, d), F.mul(b, c)) == 0) continue;
          // N(x) = (cx+d)^6 f1((ax+b)/(cx+d))
          FPoly num = FPoly::constant(F, 0);
          FPoly up = FPoly::constant(F, 1);       // (ax+b)^i
          std::vector<FPoly> down(7, FPoly::constant(F, 1));
          for (int i = 1; i <= 6; ++i) down[static_cast<size_t>(i)] = down[static_cast<size_t>(i - 1)] * lin(c, d);
          for (int i = 0; i <= 6; ++i) {
            i64 ci = m1.f.coeff(i);
            if (ci != 0) num = num + (up * down[static_cast<size_t>(6 - i)]).scaled(ci);
            up = up * lin(a, b);
          }
          if (num.deg() < 0) continue;
          // need num == e^2 f2 for some e in F*
          if (num.deg() != m2.f.deg()) continue;
          i64 ratio = F.mul(num.lc(), F.inv(m2.f.lc()));
          if (!squares.count(ratio)) continue;
          if (num == m2.f.scaled(ratio)) return true;
        }
  return false;
}

}  // namespace hclf
