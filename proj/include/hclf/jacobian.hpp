// Divisor class groups: canonical class representatives relative to a base
// divisor D1, the full group enumeration, and the abelian invariant-factor
// decomposition with explicit generators and coordinates.
#pragma once

#include <functional>
#include <optional>

#include "hclf/riemann_roch.hpp"

namespace hclf {

/// Canonical representative of a divisor class: the minimal shift count m
/// and the lexicographically least effective E with [E - m D1] = the class.
struct DivClass {
  int m = 0;
  Divisor E;

  bool operator==(const DivClass& o) const { return m == o.m && E == o.E; }
  bool operator!=(const DivClass& o) const { return !(*this == o); }
};

inline bool divclass_less(const DivClass& a, const DivClass& b) {
  if (a.m != b.m) return a.m < b.m;
  return divisor_less(a.E, b.E);
}

inline std::string class_key(const DivClass& c) {
  return std::to_string(c.m) + "|" + divisor_key(c.E);
}

/// The q-power map on a place of a model defined over an extension of F_q.
inline Place frobenius_place(const Place& pl, i64 subq) {
  const Field& Fd = *pl.rep().fld;
  std::vector<GeometricPoint> orb;
  for (const auto& pt : pl.orbit)
    orb.push_back(GeometricPoint{&Fd, pt.inf, Fd.frobenius_power(pt.x, subq, 1),
                                 Fd.frobenius_power(pt.y, subq, 1)});
  std::sort(orb.begin(), orb.end(), point_less);
  return Place{pl.degree, orb};
}

inline Divisor frobenius_divisor(const Divisor& D, i64 subq) {
  Divisor out;
  for (const auto& [pl, n] : D.terms) out = out + divisor_of_place(frobenius_place(pl, subq), n);
  return out;
}

/// Divisor class group of one model with a fixed base divisor.
class Jacobian {
 public:
  explicit Jacobian(const CurveModel& model, std::optional<Divisor> d1 = std::nullopt)
      : m_(model) {
    if (d1) {
      d1_ = *d1;
    } else {
      auto pls = places_of_degree(m_, 1);
      if (pls.empty()) throw FieldError("no rational place available for the base divisor");
      d1_ = divisor_of_place(pls.front(), 1);
    }
    if (d1_.degree() <= 0) throw FieldError("base divisor must have positive degree");
    fast_ = !m_.real && d1_.terms.size() == 1 && d1_.terms[0].second == 1 &&
            d1_.terms[0].first.rep().inf;
    if (!fast_ && m_.base->p() == 2)
      throw FieldError(
          "this base divisor requires the function-space engine (odd characteristic only)");
  }

  const CurveModel& model() const { return m_; }
  const Divisor& d1() const { return d1_; }

  DivClass zero() const { return DivClass{0, Divisor{}}; }
  bool is_zero(const DivClass& c) const { return c.m == 0 && c.E.zero(); }

  /// Canonical representative of [D0] for a degree-0 divisor D0.
  DivClass canonicalize(const Divisor& D0) const {
    if (D0.degree() != 0) throw FieldError("canonicalize needs a degree-0 divisor");
    if (fast_) {
      Mumford M = divisor_class(m_, D0);
      return DivClass{M.u.deg() <= 0 ? 0 : M.u.deg(), mumford_to_divisor(m_, M)};
    }
    const Field& F = *m_.base;
    for (int mm = 0; mm <= 2 * m_.genus + 2; ++mm) {
      Divisor D = D0 + mm * d1_;
      RRSpace L = rr_space(m_, D);
      if (L.dim() == 0) continue;
      if (L.dim() == 1)
        return DivClass{mm, divisor_of_function(m_, L.basis[0].first, L.basis[0].second, L.w) + D};
      // several sections: pick the lexicographically least effective divisor
      std::optional<Divisor> best;
      int k = L.dim();
      std::vector<int> idx(static_cast<size_t>(k), 0);
      std::function<void(int, const FPoly&, const FPoly&, bool)> scan =
          [&](int pos, const FPoly& u, const FPoly& v, bool started) {
            if (pos == k) {
              if (!started) return;
              Divisor E = divisor_of_function(m_, u, v, L.w) + D;
              if (!best || divisor_less(E, *best)) best = E;
              return;
            }
            if (!started) {
              scan(pos + 1, u, v, false);  // leading zeros
              scan(pos + 1, u + L.basis[pos].first, v + L.basis[pos].second, true);
              return;
            }
            for (i64 c = 0; c < F.q(); ++c)
              scan(pos + 1, u + L.basis[pos].first.scaled(c), v + L.basis[pos].second.scaled(c),
                   true);
          };
      scan(0, FPoly::constant(F, 0), FPoly::constant(F, 0), false);
      return DivClass{mm, *best};
    }
    throw FieldError("internal: no canonical representative found");
  }

  /// Class of [D - (deg D / deg D1) D1]; deg D1 must divide deg D.
  DivClass class_of(const Divisor& D) const {
    i64 d = D.degree(), d1 = d1_.degree();
    if (d % d1 != 0) throw FieldError("divisor degree not divisible by the base divisor degree");
    return canonicalize(D + static_cast<int>(-d / d1) * d1_);
  }

  DivClass add(const DivClass& a, const DivClass& b) const {
    return canonicalize(a.E + b.E + (-(a.m + b.m)) * d1_);
  }
  DivClass neg(const DivClass& a) const { return canonicalize(a.m * d1_ - a.E); }
  DivClass sub(const DivClass& a, const DivClass& b) const { return add(a, neg(b)); }
  DivClass smul(const DivClass& a, i64 n) const {
    DivClass step = n < 0 ? neg(a) : a;
    i64 k = n < 0 ? -n : n;
    DivClass acc = zero();
    DivClass pw = step;
    for (; k; k >>= 1) {
      if (k & 1) acc = add(acc, pw);
      if (k > 1) pw = add(pw, pw);
    }
    return acc;
  }

  /// Image under the subq-power map; the base divisor must be stable.
  DivClass frobenius(const DivClass& a, i64 subq) const {
    if (!(frobenius_divisor(d1_, subq) == d1_))
      throw FieldError("base divisor is not Frobenius-stable");
    return canonicalize(frobenius_divisor(a.E, subq) + (-a.m) * d1_);
  }

  /// Every class, as canonical representatives in a fixed order.
  std::vector<DivClass> enumerate() const {
    if (d1_.degree() != 1)
      throw FieldError("group enumeration requires a degree-1 base divisor");
    i64 order = jacobian_order(m_, 1);
    if (order > config().max_group) throw FieldError("class group larger than the supported cap");
    std::map<std::string, DivClass> seen;
    auto visit = [&](const Divisor& E) {
      DivClass c = canonicalize(E + static_cast<int>(-E.degree()) * d1_);
      seen.emplace(class_key(c), c);
    };
    std::vector<std::vector<Place>> pls(static_cast<size_t>(m_.genus) + 1);
    for (int d = 1; d <= m_.genus; ++d) pls[static_cast<size_t>(d)] = places_of_degree(m_, d);
    Divisor cur;
    // multisets of places with total degree <= genus, smallest degrees first
    std::function<void(int, size_t, int)> rec = [&](int remaining, size_t di, int pi) {
      visit(cur);
      for (size_t d = di; d <= static_cast<size_t>(m_.genus); ++d) {
        if (static_cast<int>(d) > remaining) break;
        const auto& v = pls[d];
        for (size_t i = (d == di ? static_cast<size_t>(pi) : 0); i < v.size(); ++i) {
          cur = cur + divisor_of_place(v[i], 1);
          rec(remaining - static_cast<int>(d), d, static_cast<int>(i));
          cur = cur + divisor_of_place(v[i], -1);
        }
      }
    };
    rec(m_.genus, 1, 0);
    if (static_cast<i64>(seen.size()) != order)
      throw FieldError("internal: group enumeration disagrees with the zeta class number");
    std::vector<DivClass> out;
    for (auto& [k, c] : seen) out.push_back(c);
    std::sort(out.begin(), out.end(), divclass_less);
    return out;
  }

 private:
  CurveModel m_;
  Divisor d1_;
  bool fast_ = false;
};

/// Principality test with a function witness when one exists.  Uses the
/// function-space engine (odd characteristic).
inline std::pair<bool, std::optional<RRFunction>> is_principal(const CurveModel& m,
                                                               const Divisor& D) {
  if (D.degree() != 0) return {false, std::nullopt};
  RRSpace L = rr_space(m, D);
  if (L.dim() == 0) return {false, std::nullopt};
  const auto& [u, v] = L.basis[0];
  Divisor dphi = divisor_of_function(m, u, v, L.w);
  if (!(dphi + D).zero()) throw FieldError("internal: witness has the wrong divisor");
  return {true, RRFunction{u, v, L.w}};
}

/// Explicit invariant-factor decomposition of the class group.
struct GroupStructure {
  i64 order = 1;
  i64 exponent = 1;
  std::vector<i64> invariants;        // ascending, each divides the next
  std::vector<DivClass> generators;   // generators[i] has exact order invariants[i]
  std::vector<DivClass> elements;     // all classes, sorted canonically
  std::map<std::string, std::vector<i64>> coords;  // class_key -> generator coordinates

  const std::vector<i64>& coords_of(const DivClass& c) const {
    auto it = coords.find(class_key(c));
    if (it == coords.end()) throw FieldError("class not in the enumerated group");
    return it->second;
  }
};

inline GroupStructure group_structure(const Jacobian& J) {
  GroupStructure G;
  G.elements = J.enumerate();
  i64 N = static_cast<i64>(G.elements.size());
  G.order = N;

  // order of each element (by prime-power refinement of N)
  auto order_of = [&](const DivClass& x) {
    i64 o = N;
    for (i64 p : detail::prime_factors(N))
      while (o % p == 0 && J.is_zero(J.smul(x, o / p))) o /= p;
    return o;
  };

  // per-prime bases of the Sylow subgroups
  std::vector<std::pair<i64, std::vector<int>>> shapes;   // (p, partition, descending)
  std::vector<std::vector<DivClass>> bases;
  for (i64 p : detail::prime_factors(N)) {
    int a = 0;
    for (i64 t = N; t % p == 0; t /= p) ++a;
    i64 pa = 1;
    for (int i = 0; i < a; ++i) pa *= p;
    // the Sylow subgroup: images of (N / p^a) * x, with exact orders
    std::map<std::string, std::pair<DivClass, i64>> sy;
    for (const auto& x : G.elements) {
      DivClass y = J.smul(x, N / pa);
      sy.emplace(class_key(y), std::make_pair(y, 0));
    }
    for (auto& [k, yo] : sy) yo.second = order_of(yo.first);
    // partition from the counts of p^j-torsion
    std::vector<int> mexp;  // m_j with #{x : p^j x = 0} = p^{m_j}
    for (int j = 0; j <= a; ++j) {
      i64 pj = 1;
      for (int i = 0; i < j; ++i) pj *= p;
      i64 cnt = 0;
      for (auto& [k, yo] : sy)
        if (yo.second <= pj && pj % yo.second == 0) ++cnt;
      int e = 0;
      while (cnt > 1) { cnt /= p; ++e; }
      mexp.push_back(e);
    }
    std::vector<int> delta;  // delta_j = #{parts >= j}
    for (size_t j = 1; j < mexp.size(); ++j) delta.push_back(mexp[j] - mexp[j - 1]);
    std::vector<int> lambda;  // the partition, descending
    for (int i = 1; i <= (delta.empty() ? 0 : delta[0]); ++i) {
      int cnt = 0;
      for (int dj : delta)
        if (dj >= i) ++cnt;
      lambda.push_back(cnt);
    }
    // greedy basis with exhaustive independence verification
    std::vector<DivClass> basis;
    for (int li : lambda) {
      i64 target = 1;
      for (int i = 0; i < li; ++i) target *= p;
      bool found = false;
      for (auto& [k, yo] : sy) {
        if (yo.second != target) continue;
        // accepted iff basis + candidate generates freely: all combinations
        // of multiples are pairwise distinct
        bool ok = true;
        std::map<std::string, char> full;
        std::vector<DivClass> bplus = basis;
        bplus.push_back(yo.first);
        std::function<void(size_t, DivClass)> build = [&](size_t bi, DivClass cur) {
          if (!ok) return;
          if (bi == bplus.size()) {
            if (!full.emplace(class_key(cur), 1).second) ok = false;
            return;
          }
          i64 oi = order_of(bplus[bi]);
          DivClass t = cur;
          for (i64 c = 0; c < oi && ok; ++c) {
            build(bi + 1, t);
            if (c + 1 < oi) t = J.add(t, bplus[bi]);
          }
        };
        build(0, J.zero());
        if (!ok) continue;
        basis.push_back(yo.first);
        found = true;
        break;
      }
      if (!found) throw FieldError("internal: no independent generator found in a Sylow subgroup");
    }
    shapes.push_back({p, lambda});
    bases.push_back(basis);
  }

  // combine the per-prime partitions into invariant factors
  size_t rank = 0;
  for (auto& [p, lam] : shapes) rank = std::max(rank, lam.size());
  std::vector<i64> inv(rank, 1);
  std::vector<DivClass> gens(rank, J.zero());
  for (size_t pi = 0; pi < shapes.size(); ++pi) {
    auto& [p, lam] = shapes[pi];
    for (size_t i = 0; i < lam.size(); ++i) {
      i64 pe = 1;
      for (int t = 0; t < lam[i]; ++t) pe *= p;
      inv[i] *= pe;
      gens[i] = J.add(gens[i], bases[pi][i]);
    }
  }
  // descending by construction; expose ascending
  std::reverse(inv.begin(), inv.end());
  std::reverse(gens.begin(), gens.end());
  G.invariants = inv;
  G.generators = gens;
  G.exponent = rank ? inv.back() : 1;

  // coordinates: regenerate the whole group from the generators
  std::function<void(size_t, DivClass, std::vector<i64>&)> build = [&](size_t bi, DivClass cur,
                                                                       std::vector<i64>& c) {
    if (bi == gens.size()) {
      if (!G.coords.emplace(class_key(cur), c).second)
        throw FieldError("internal: generators do not regenerate the group freely");
      return;
    }
    DivClass t = cur;
    for (i64 a = 0; a < G.invariants[bi]; ++a) {
      c.push_back(a);
      build(bi + 1, t, c);
      c.pop_back();
      t = J.add(t, gens[bi]);
    }
  };
  std::vector<i64> cc;
  build(0, J.zero(), cc);
  if (rank == 0) G.coords.emplace(class_key(J.zero()), std::vector<i64>{});
  if (static_cast<i64>(G.coords.size()) != N)
    throw FieldError("internal: generator regeneration misses classes");
  for (const auto& x : G.elements)
    if (!G.coords.count(class_key(x)))
      throw FieldError("internal: an enumerated class is outside the regenerated group");
  return G;
}

}  // namespace hclf
