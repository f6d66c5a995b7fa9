// Character L-polynomials of the class field cover: census-based computation,
// the independent Euler-product truncation, whole-character-table products,
// and the change-of-variable (base extension) consistency check.
#pragma once

#include <Eigen/Eigenvalues>
#include <complex>

#include "hclf/census.hpp"

namespace hclf {

/// L(t, chi) as exact cyclotomic coefficients c_0..c_D (D = max(0, 2g-2)).
struct LPolynomial {
  std::vector<CycloInt> coeffs;
  std::vector<i64> character;  // exponents of chi on the group generators
  int n = 1;                   // level: the curve lives over F_{q^n}
};

/// Zeta data returned for the trivial character: numerator P_n(t); the
/// denominator is always (1 - t)(1 - q_n t).
struct ZetaPair {
  std::vector<i64> numerator;
  i64 qn = 0;
  int n = 1;
};

inline ZetaPair zeta_pair(const CurveModel& base, int n) {
  auto p1 = zeta_numerator(base);
  i64 qn = 1;
  for (int i = 0; i < n; ++i) qn *= base.q();
  return ZetaPair{zeta_numerator_level(p1, base.q(), base.genus, n), qn, n};
}

/// L(t, chi) = sum_d (sum_x chi(x) N(x, d)) t^d for nontrivial chi.
inline LPolynomial l_polynomial(const GroupStructure& G, const CensusTable& census,
                                const Character& chi) {
  if (chi.trivial()) throw FieldError("the trivial character yields zeta data, not an L-polynomial");
  int D = census.max_degree;  // callers pass a census through 2g-2
  i64 N = G.exponent;
  LPolynomial L;
  L.character = chi.exponents;
  L.n = census.n;
  for (int d = 0; d <= D; ++d) {
    std::vector<bigint> buckets(static_cast<size_t>(N), 0);
    for (i64 j = 0; j < G.order; ++j) {
      i64 cnt = census.counts[static_cast<size_t>(d)][static_cast<size_t>(j)];
      if (cnt == 0) continue;
      i64 e = character_exponent(chi, group_coords_of_index(G, j));
      buckets[static_cast<size_t>(e)] += cnt;
    }
    L.coeffs.push_back(cyclo_from_buckets(N, buckets));
  }
  return L;
}

namespace detail {

inline i64 binom_i64(i64 n, i64 k) {
  i128 r = 1;
  for (i64 i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<i64>::max()) throw FieldError("binomial overflow in series product");
  }
  return static_cast<i64>(r);
}

/// Index of (coords of index j) + shift, mixed-radix over the invariants.
inline i64 index_shift(const GroupStructure& G, i64 j, const std::vector<i64>& shift) {
  i64 idx = 0;
  for (size_t i = G.invariants.size(); i-- > 0;) {
    i64 d = G.invariants[i];
    i64 c = (j % d + shift[i]) % d;
    j /= d;
    i64 w = 1;
    for (size_t l = i + 1; l < G.invariants.size(); ++l) w *= G.invariants[l];
    idx += c * w;
  }
  return idx;
}

}  // namespace detail

/// One aggregated Euler factor (1 - [g] t^tdeg)^(-count) with [g] a group element.
struct EulerFactor {
  int tdeg = 1;
  i64 gindex = 0;
  i64 count = 1;
};

/// Z[G]-valued power series product of Euler factors, truncated at degree
/// trunc; result[m][j] is the coefficient of t^m at the group element of
/// index j.
inline std::vector<std::vector<i64>> group_series_product(const GroupStructure& G,
                                                          const std::vector<EulerFactor>& factors,
                                                          int trunc) {
  // precompute strides once for index arithmetic
  std::vector<std::vector<i64>> S(static_cast<size_t>(trunc) + 1,
                                  std::vector<i64>(static_cast<size_t>(G.order), 0));
  S[0][0] = 1;  // identity has all-zero coordinates, hence index 0
  for (const auto& fac : factors) {
    std::vector<i64> g = group_coords_of_index(G, fac.gindex);
    for (int m = trunc; m >= fac.tdeg; --m) {
      std::vector<i64> shift(G.invariants.size(), 0);
      for (int k = 1; k * fac.tdeg <= m; ++k) {
        shift = coords_add(G, shift, g);
        i64 b = detail::binom_i64(fac.count + k - 1, k);
        const auto& src = S[static_cast<size_t>(m - k * fac.tdeg)];
        auto& dst = S[static_cast<size_t>(m)];
        for (i64 j = 0; j < G.order; ++j) {
          if (src[static_cast<size_t>(j)] == 0) continue;
          i64 tj = detail::index_shift(G, j, shift);
          i64 add = b * src[static_cast<size_t>(j)];
          if (b != 0 && add / b != src[static_cast<size_t>(j)])
            throw FieldError("overflow in group series product");
          dst[static_cast<size_t>(tj)] += add;
        }
      }
    }
  }
  return S;
}

/// Evaluate a Z[G]-valued series coefficientwise at chi.
inline std::vector<CycloInt> series_character_values(const GroupStructure& G,
                                                     const std::vector<std::vector<i64>>& S,
                                                     const Character& chi) {
  i64 N = G.exponent;
  // character exponent at every group index, computed once
  std::vector<i64> expo(static_cast<size_t>(G.order));
  for (i64 j = 0; j < G.order; ++j)
    expo[static_cast<size_t>(j)] = character_exponent(chi, group_coords_of_index(G, j));
  std::vector<CycloInt> out;
  for (const auto& coeff : S) {
    std::vector<bigint> buckets(static_cast<size_t>(N), 0);
    for (i64 j = 0; j < G.order; ++j)
      if (coeff[static_cast<size_t>(j)] != 0)
        buckets[static_cast<size_t>(expo[static_cast<size_t>(j)])] += coeff[static_cast<size_t>(j)];
    out.push_back(cyclo_from_buckets(N, buckets));
  }
  return out;
}

/// Euler factors of the level curve itself: one (1 - [Frob_P] t^{deg P})
/// aggregate per (degree, class) over all places of degree <= trunc.
inline std::vector<EulerFactor> euler_factors(
    const GroupStructure& G, const std::vector<std::pair<Place, std::vector<i64>>>& pcc,
    int trunc) {
  std::map<std::pair<int, i64>, i64> agg;
  for (const auto& [pl, coords] : pcc)
    if (pl.degree <= trunc) ++agg[{pl.degree, group_index_of(G, coords)}];
  std::vector<EulerFactor> out;
  for (const auto& [key, cnt] : agg) out.push_back(EulerFactor{key.first, key.second, cnt});
  return out;
}

inline std::vector<EulerFactor> euler_factors(const Jacobian& J, const GroupStructure& G,
                                              int trunc) {
  return euler_factors(G, place_class_coords(J, G, trunc), trunc);
}

/// Truncated Euler product of L(t, chi): the independent oracle for the
/// census-based coefficients.
inline std::vector<CycloInt> euler_product_truncation(const Jacobian& J, const GroupStructure& G,
                                                      const Character& chi, int trunc) {
  auto S = group_series_product(G, euler_factors(J, G, trunc), trunc);
  return series_character_values(G, S, chi);
}

/// Product of L(t, chi) over every nontrivial chi times the zeta numerator
/// P_n(t): an integer polynomial of degree |G|(2g-2) + 2 with constant 1.
inline std::vector<bigint> character_table_product(const GroupStructure& G,
                                                   const std::vector<LPolynomial>& nontrivial,
                                                   const ZetaPair& zp) {
  if (G.order > config().max_product_order)
    throw FieldError("group exceeds max_product_order cap for character-table products");
  if (static_cast<i64>(nontrivial.size()) != G.order - 1)
    throw FieldError("character-table product needs every nontrivial L-polynomial");
  i64 N = G.exponent;
  std::vector<CycloInt> prod{cyclo_int(N, 1)};
  auto mul_poly = [&](const std::vector<CycloInt>& a, const std::vector<CycloInt>& b) {
    std::vector<CycloInt> r(a.size() + b.size() - 1, cyclo_int(N, 0));
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j)
        r[i + j] = cyclo_add(r[i + j], cyclo_mul(a[i], b[j]));
    return r;
  };
  for (const auto& L : nontrivial) prod = mul_poly(prod, L.coeffs);
  std::vector<CycloInt> zeta_poly;
  for (i64 c : zp.numerator) zeta_poly.push_back(cyclo_int(N, c));
  prod = mul_poly(prod, zeta_poly);
  std::vector<bigint> out;
  for (const auto& c : prod) out.push_back(cyclo_as_integer(c));  // throws if not rational
  if (out.empty() || out[0] != 1) throw FieldError("character-table product has constant term != 1");
  return out;
}

/// Largest deviation of |root| from target over all complex roots of a
/// polynomial (floating-point diagnostic via companion eigenvalues).
inline double max_root_modulus_deviation(const std::vector<std::complex<double>>& coeffs,
                                         double target) {
  int D = static_cast<int>(coeffs.size()) - 1;
  while (D > 0 && std::abs(coeffs[static_cast<size_t>(D)]) == 0.0) --D;
  if (D <= 0) throw FieldError("root diagnostic needs a nonconstant polynomial");
  std::complex<double> lead = coeffs[static_cast<size_t>(D)];
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(D, D);
  for (int i = 1; i < D; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < D; ++i) C(i, D - 1) = -coeffs[static_cast<size_t>(i)] / lead;
  Eigen::VectorXcd ev = C.eigenvalues();
  double worst = 0.0;
  for (int i = 0; i < D; ++i) worst = std::max(worst, std::abs(std::abs(ev[i]) - target));
  return worst;
}

inline std::complex<double> cyclo_to_complex(const CycloInt& a) {
  std::complex<double> s = 0.0;
  const double tau = 2.0 * std::acos(-1.0);
  for (size_t j = 0; j < a.coeffs.size(); ++j) {
    if (a.coeffs[j] == 0) continue;
    double x = static_cast<double>(a.coeffs[j]);
    s += x * std::polar(1.0, tau * static_cast<double>(j) / static_cast<double>(a.order));
  }
  return s;
}

/// Worst |root| deviation from target over every L-factor and the zeta
/// numerator. The factor roots are exactly the roots of the character-table
/// product, but small-degree factors keep the eigenvalue problem
/// well-conditioned where the assembled product would not be.
inline double weil_root_deviation(const std::vector<LPolynomial>& nontrivial, const ZetaPair& zp,
                                  double target) {
  double worst = 0.0;
  for (const auto& L : nontrivial) {
    std::vector<std::complex<double>> c;
    for (const auto& a : L.coeffs) c.push_back(cyclo_to_complex(a));
    if (c.size() >= 2) worst = std::max(worst, max_root_modulus_deviation(c, target));
  }
  std::vector<std::complex<double>> z;
  for (i64 a : zp.numerator) z.emplace_back(static_cast<double>(a), 0.0);
  worst = std::max(worst, max_root_modulus_deviation(z, target));
  return worst;
}

/// Splitting of one base place under base extension to level n.
struct PlaceSplitting {
  int base_degree = 0;
  std::vector<int> upstairs_degrees;  // degrees of the places above, sorted
};

/// Report from the change-of-variable identity
///   L(t^n, chi on the level-n curve) =
///   prod over base places P, prod over Q | P of (1 - chi(Frob_Q) t^{n deg Q})^{-1}.
struct ChangeOfVariableReport {
  bool pass = true;
  int trunc = 0;
  // (character index in all_characters order, t-degree) of each mismatch
  std::vector<std::pair<i64, int>> mismatches;
  std::vector<PlaceSplitting> splittings;
};

inline ChangeOfVariableReport change_of_variable_check(const CurveModel& base, int n,
                                                       std::optional<int> trunc_opt = std::nullopt) {
  int trunc = trunc_opt.value_or(2 * base.genus + 2);
  CurveModel mn = base_change(base, n);
  Jacobian J(mn);
  GroupStructure G = group_structure(J);
  CensusTable census = census_table(J, G, n, trunc / n);

  ChangeOfVariableReport rep;
  rep.trunc = trunc;

  // right-hand side: group base places, verify splitting, aggregate factors
  std::map<std::pair<int, i64>, i64> agg;
  for (int d = 1; d <= trunc; ++d) {
    int g = std::gcd(n, d);
    if (n * (d / g) > trunc) continue;  // factor degree beyond the window
    for (const auto& pl : places_of_degree(base, d)) {
      auto ups = base_change_place(*base.base, pl, n);
      PlaceSplitting sp;
      sp.base_degree = d;
      for (const auto& q : ups) sp.upstairs_degrees.push_back(q.degree);
      std::sort(sp.upstairs_degrees.begin(), sp.upstairs_degrees.end());
      // splitting law: gcd(n, d) places, each of degree d / gcd(n, d)
      if (static_cast<int>(ups.size()) != g) rep.pass = false;
      for (int ud : sp.upstairs_degrees)
        if (ud != d / g) rep.pass = false;
      rep.splittings.push_back(sp);
      for (const auto& q : ups)
        ++agg[{n * q.degree, group_index_of(G, G.coords_of(J.class_of(divisor_of_place(q))))}];
    }
  }
  std::vector<EulerFactor> factors;
  for (const auto& [key, cnt] : agg) factors.push_back(EulerFactor{key.first, key.second, cnt});
  auto S = group_series_product(G, factors, trunc);

  // Comparing the class-indexed series coefficients S[m][x] against the
  // level-n census (placed at degrees m = n k, zero elsewhere) is equivalent
  // to comparing the two t-expansions character by character: both sides of
  // the identity have m-th coefficient sum_x D[m][x] chi(x) for their
  // respective count vectors D, and the characters separate points of the
  // group.
  std::vector<std::vector<i64>> diff(static_cast<size_t>(trunc) + 1,
                                     std::vector<i64>(static_cast<size_t>(G.order), 0));
  bool any = false;
  for (int m = 1; m <= trunc; ++m) {
    for (i64 x = 0; x < G.order; ++x) {
      i64 lhs = (m % n == 0) ? census.counts[static_cast<size_t>(m / n)][static_cast<size_t>(x)] : 0;
      diff[static_cast<size_t>(m)][static_cast<size_t>(x)] =
          lhs - S[static_cast<size_t>(m)][static_cast<size_t>(x)];
      if (diff[static_cast<size_t>(m)][static_cast<size_t>(x)] != 0) any = true;
    }
  }
  // trivial-character cross-check: the total count in each degree must match
  // the rational expansion P_n(u) / ((1 - u)(1 - q_n u)) of the level-n zeta
  // function at u = t^n
  for (int k = 1; k * n <= trunc; ++k) {
    i64 total = 0;
    for (i64 x = 0; x < G.order; ++x) {
      i64 c = census.counts[static_cast<size_t>(k)][static_cast<size_t>(x)];
      if (__builtin_add_overflow(total, c, &total)) throw FieldError("divisor total overflow");
    }
    if (total != effective_divisor_count(base, n, k)) {
      rep.pass = false;
      rep.mismatches.emplace_back(0, k * n);
    }
  }
  if (any) {
    rep.pass = false;
    // identify the failing (character, degree) pairs from the difference rows
    auto chars = all_characters(G);
    for (size_t ci = 0; ci < chars.size(); ++ci) {
      std::vector<i64> exps(static_cast<size_t>(G.order));
      for (i64 x = 0; x < G.order; ++x)
        exps[static_cast<size_t>(x)] = character_exponent(chars[ci], group_coords_of_index(G, x));
      for (int m = 1; m <= trunc; ++m) {
        std::vector<bigint> buckets(static_cast<size_t>(G.exponent), 0);
        bool nz = false;
        for (i64 x = 0; x < G.order; ++x) {
          i64 d = diff[static_cast<size_t>(m)][static_cast<size_t>(x)];
          if (d != 0) {
            buckets[static_cast<size_t>(exps[static_cast<size_t>(x)])] += d;
            nz = true;
          }
        }
        if (nz && !cyclo_is_zero(cyclo_from_buckets(G.exponent, buckets)))
          rep.mismatches.emplace_back(static_cast<i64>(ci), m);
      }
    }
  }
  return rep;
}

}  // namespace hclf
