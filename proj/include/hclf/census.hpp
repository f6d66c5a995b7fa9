// Divisor census: enumeration of effective divisors by degree and histograms
// of their classes in the divisor class group.
#pragma once

#include "hclf/characters.hpp"

namespace hclf {

/// counts[d][i] = number of effective divisors D of degree d with
/// [D - d*D1] equal to the group element of mixed-radix index i.
struct CensusTable {
  int n = 1;
  int max_degree = 0;
  std::vector<std::vector<i64>> counts;
};

inline std::vector<Place> places_up_to(const CurveModel& m, int dmax) {
  std::vector<Place> out;
  for (int d = 1; d <= dmax; ++d)
    for (auto& pl : places_of_degree(m, d)) out.push_back(pl);
  return out;
}

/// All effective divisors of degree exactly d, in a fixed deterministic order.
inline std::vector<Divisor> effective_divisors(const CurveModel& m, int d, std::optional<int> bound = std::nullopt) {
  int cap = bound.value_or(2 * m.genus);
  if (d < 0 || d > cap) throw FieldError("effective divisor degree outside the configured bound");
  auto pls = places_up_to(m, d);
  std::vector<Divisor> out;
  std::vector<int> mult(pls.size(), 0);
  // one frame per place actually used (depth <= d), iterating over the
  // choice of the next place consumed
  std::function<void(size_t, int)> rec = [&](size_t i, int rem) {
    if (rem == 0) {
      Divisor D;
      for (size_t j = 0; j < pls.size(); ++j)
        if (mult[j] > 0) D = D + divisor_of_place(pls[j], mult[j]);
      out.push_back(D);
      return;
    }
    // pls is sorted by degree: stop at the first place too large
    for (size_t j = i; j < pls.size(); ++j) {
      int dd = pls[j].degree;
      if (dd > rem) break;
      for (int k = 1; k * dd <= rem; ++k) {
        mult[j] = k;
        rec(j + 1, rem - k * dd);
      }
      mult[j] = 0;
    }
  };
  rec(0, d);
  return out;
}

/// Group coordinates of [P - deg(P) * D1] for every place of degree <= dmax.
inline std::vector<std::pair<Place, std::vector<i64>>> place_class_coords(const Jacobian& J,
                                                                          const GroupStructure& G,
                                                                          int dmax) {
  std::vector<std::pair<Place, std::vector<i64>>> out;
  for (const auto& pl : places_up_to(J.model(), dmax))
    out.emplace_back(pl, G.coords_of(J.class_of(divisor_of_place(pl))));
  return out;
}

/// Histogram of [D - d*D1] over all effective divisors D of degree d,
/// indexed by group_index_of; every class appears (possibly with count 0).
inline std::vector<i64> class_counts_from(
    const GroupStructure& G, const std::vector<std::pair<Place, std::vector<i64>>>& pcc, int d) {
  std::vector<i64> counts(static_cast<size_t>(G.order), 0);
  std::vector<i64> zero(G.invariants.size(), 0);
  // one frame per place actually used in the divisor (depth <= d), iterating
  // over the choice of the next place consumed; pcc is sorted by degree, so
  // the scan stops at the first place too large for the remaining degree
  std::function<void(size_t, int, const std::vector<i64>&)> rec =
      [&](size_t i, int rem, const std::vector<i64>& acc) {
        if (rem == 0) {
          ++counts[static_cast<size_t>(group_index_of(G, acc))];
          return;
        }
        for (size_t j = i; j < pcc.size(); ++j) {
          int dd = pcc[j].first.degree;
          if (dd > rem) break;
          std::vector<i64> a = acc;
          for (int k = 1; k * dd <= rem; ++k) {
            a = coords_add(G, a, pcc[j].second);
            rec(j + 1, rem - k * dd, a);
          }
        }
      };
  rec(0, d, zero);
  return counts;
}

inline std::vector<i64> class_counts(const Jacobian& J, const GroupStructure& G, int d,
                                     std::optional<int> bound = std::nullopt) {
  int cap = bound.value_or(2 * J.model().genus);
  if (d < 0 || d > cap) throw FieldError("census degree outside the configured bound");
  return class_counts_from(G, place_class_coords(J, G, d), d);
}

/// N(x, d) for d > 2g - 2, independent of x: (q^(d-g+1) - 1) / (q - 1).
inline i64 class_count_closed_form(i64 qn, int g, int d) {
  if (d <= 2 * g - 2) throw FieldError("closed form requires degree above 2g - 2");
  i64 v = 0;
  for (int i = 0; i <= d - g; ++i) {
    i64 nv = v * qn + 1;
    if (nv < v) throw FieldError("overflow in class_count_closed_form");
    v = nv;
  }
  return v;
}

/// Full census through degree dmax: enumerated for d <= 2g-2, closed form above.
inline CensusTable census_table(const Jacobian& J, const GroupStructure& G, int level_n, int dmax) {
  const CurveModel& m = J.model();
  CensusTable T;
  T.n = level_n;
  T.max_degree = dmax;
  for (int d = 0; d <= dmax; ++d) {
    if (d <= 2 * m.genus - 2) {
      T.counts.push_back(class_counts(J, G, d, std::max(2 * m.genus, dmax)));
    } else {
      i64 v = class_count_closed_form(m.q(), m.genus, d);
      T.counts.emplace_back(static_cast<size_t>(G.order), v);
    }
  }
  return T;
}

/// Total number of effective divisors of degree d on the level-n curve,
/// read off the zeta function: t^d coefficient of P_n(t)/((1-t)(1-q_n t)).
inline i64 effective_divisor_count(const CurveModel& base, int n, int d) {
  auto p1 = zeta_numerator(base);
  auto pn = zeta_numerator_level(p1, base.q(), base.genus, n);
  i64 qn = 1;
  for (int i = 0; i < n; ++i) qn *= base.q();
  // sum over a + b + c = d of pn[a] * q^b (coefficients of 1/(1-qt) * 1/(1-t))
  i64 total = 0;
  for (int a = 0; a <= d && a < static_cast<int>(pn.size()); ++a) {
    i64 geo = 0, pw = 1;  // sum_{b=0}^{d-a} q^b
    for (int b = 0; b <= d - a; ++b) {
      geo += pw;
      pw *= qn;
    }
    total += pn[static_cast<size_t>(a)] * geo;
  }
  return total;
}

}  // namespace hclf
