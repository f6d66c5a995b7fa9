#pragma once

#include <map>
#include <numeric>
#include <sstream>

#include <hclf/curve.hpp>

namespace hclf {

/// Formal integer combination of places, stored as (place, multiplicity)
/// terms sorted by place order with nonzero multiplicities.
struct Divisor {
  std::vector<std::pair<Place, int>> terms;

  int degree() const {
    int d = 0;
    for (const auto& [pl, m] : terms) d += pl.degree * m;
    return d;
  }
  bool effective() const {
    for (const auto& [pl, m] : terms)
      if (m < 0) return false;
    return true;
  }
  bool zero() const { return terms.empty(); }

  int mult_of(const Place& p) const {
    for (const auto& [pl, m] : terms)
      if (pl == p) return m;
    return 0;
  }
};

inline Divisor divisor_of_place(const Place& p, int mult = 1) {
  if (mult == 0) return {};
  return Divisor{{{p, mult}}};
}

inline Divisor operator+(const Divisor& a, const Divisor& b) {
  Divisor r;
  size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    if (j >= b.terms.size() || (i < a.terms.size() && place_less(a.terms[i].first, b.terms[j].first))) {
      r.terms.push_back(a.terms[i++]);
    } else if (i >= a.terms.size() || place_less(b.terms[j].first, a.terms[i].first)) {
      r.terms.push_back(b.terms[j++]);
    } else {
      int m = a.terms[i].second + b.terms[j].second;
      if (m != 0) r.terms.emplace_back(a.terms[i].first, m);
      ++i;
      ++j;
    }
  }
  return r;
}

inline Divisor operator-(const Divisor& a) {
  Divisor r = a;
  for (auto& [pl, m] : r.terms) m = -m;
  return r;
}

inline Divisor operator-(const Divisor& a, const Divisor& b) { return a + (-b); }

inline Divisor operator*(int c, const Divisor& a) {
  if (c == 0) return {};
  Divisor r = a;
  for (auto& [pl, m] : r.terms) m *= c;
  return r;
}

inline bool operator==(const Divisor& a, const Divisor& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (size_t i = 0; i < a.terms.size(); ++i)
    if (!(a.terms[i].first == b.terms[i].first) || a.terms[i].second != b.terms[i].second) return false;
  return true;
}

/// Lexicographic order on divisors: compare the sorted term sequences.
inline bool divisor_less(const Divisor& a, const Divisor& b) {
  size_t n = std::min(a.terms.size(), b.terms.size());
  for (size_t i = 0; i < n; ++i) {
    if (place_less(a.terms[i].first, b.terms[i].first)) return true;
    if (place_less(b.terms[i].first, a.terms[i].first)) return false;
    if (a.terms[i].second != b.terms[i].second) return a.terms[i].second < b.terms[i].second;
  }
  return a.terms.size() < b.terms.size();
}

inline std::string place_key(const Place& p) {
  std::ostringstream os;
  os << p.degree << (p.rep().inf ? ":inf:" : ":aff:") << p.rep().x << ":" << p.rep().y;
  return os.str();
}

inline std::string divisor_key(const Divisor& d) {
  std::ostringstream os;
  for (const auto& [pl, m] : d.terms) os << place_key(pl) << "*" << m << ";";
  return os.str();
}

/// Splits one level-l place under base change by a further factor of n:
/// a degree-d place yields gcd(n, d) places of degree d / gcd(n, d) whose
/// points live in the compositum. `F` is the model base at level l.
inline std::vector<Place> base_change_place(const Field& F, const Place& p, int n) {
  int d = p.degree;
  int gg = std::gcd(n, d);
  int dnew = d / gg;
  int lcm = n * dnew;  // lcm(n, d)
  const Field& Fold = *p.rep().fld;
  const Field& Fnew = Field::get(F.p(), F.k() * lcm);
  const Embedding& em = Embedding::get(Fold, Fnew);
  // Frobenius of the new base field F_{q^n}
  i64 qn = 1;
  for (int i = 0; i < n; ++i) qn *= F.q();
  detail::FrobMap frobn(Fnew, qn);
  std::vector<GeometricPoint> pts;
  for (const auto& gp : p.orbit) pts.push_back(GeometricPoint{&Fnew, gp.inf, em(gp.x), em(gp.y)});
  std::sort(pts.begin(), pts.end(), point_less);
  std::vector<Place> out;
  std::vector<bool> used(pts.size(), false);
  for (size_t i = 0; i < pts.size(); ++i) {
    if (used[i]) continue;
    std::vector<GeometricPoint> orbit;
    GeometricPoint cur = pts[i];
    do {
      for (size_t j = 0; j < pts.size(); ++j)
        if (!used[j] && pts[j] == cur) used[j] = true;
      orbit.push_back(cur);
      cur = GeometricPoint{&Fnew, cur.inf, frobn(cur.x), frobn(cur.y)};
    } while (!(cur == pts[i]));
    std::sort(orbit.begin(), orbit.end(), point_less);
    out.push_back(Place{static_cast<int>(orbit.size()), std::move(orbit)});
  }
  if (static_cast<int>(out.size()) != gg) throw FieldError("internal: place splitting count mismatch");
  for (const auto& pl : out)
    if (pl.degree != dnew) throw FieldError("internal: place splitting degree mismatch");
  std::sort(out.begin(), out.end(), place_less);
  return out;
}

/// Base-changes a divisor at level l to level l*n (each place split).
inline Divisor base_change_divisor(const Field& F, const Divisor& D, int n) {
  Divisor out;
  for (const auto& [pl, m] : D.terms)
    for (const auto& q : base_change_place(F, pl, n)) out = out + m * divisor_of_place(q);
  return out;
}

}  // namespace hclf
