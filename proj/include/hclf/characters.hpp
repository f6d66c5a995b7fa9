// Characters of the divisor class group, valued in Z[zeta_N] where N is the
// group exponent, evaluated through generator coordinates.
#pragma once

#include "hclf/cyclotomic.hpp"
#include "hclf/jacobian.hpp"

namespace hclf {

/// A character chi with chi(g_i) = zeta_N ^ (a_i * N / d_i); exponents a_i in [0, d_i).
struct Character {
  const GroupStructure* group = nullptr;
  std::vector<i64> exponents;

  bool trivial() const {
    for (i64 a : exponents)
      if (a != 0) return false;
    return true;
  }
};

/// Mixed-radix index of a coordinate vector (radices = invariants, row-major).
inline i64 group_index_of(const GroupStructure& G, const std::vector<i64>& coords) {
  i64 idx = 0;
  for (size_t i = 0; i < coords.size(); ++i) idx = idx * G.invariants[i] + coords[i];
  return idx;
}

inline std::vector<i64> group_coords_of_index(const GroupStructure& G, i64 idx) {
  std::vector<i64> c(G.invariants.size(), 0);
  for (size_t i = G.invariants.size(); i-- > 0;) {
    c[i] = idx % G.invariants[i];
    idx /= G.invariants[i];
  }
  return c;
}

/// Coordinate sum modulo the invariants (group law in coordinates).
inline std::vector<i64> coords_add(const GroupStructure& G, const std::vector<i64>& a,
                                   const std::vector<i64>& b) {
  std::vector<i64> c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % G.invariants[i];
  return c;
}

inline std::vector<i64> coords_neg(const GroupStructure& G, const std::vector<i64>& a) {
  std::vector<i64> c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = (G.invariants[i] - a[i]) % G.invariants[i];
  return c;
}

/// All |G| characters; the first entry is the trivial character.
inline std::vector<Character> all_characters(const GroupStructure& G) {
  if (G.order > config().max_group) throw FieldError("group exceeds max_group cap");
  std::vector<Character> out;
  out.reserve(static_cast<size_t>(G.order));
  std::vector<i64> a(G.invariants.size(), 0);
  for (i64 i = 0; i < G.order; ++i) {
    out.push_back(Character{&G, a});
    for (size_t j = a.size(); j-- > 0;) {
      if (++a[j] < G.invariants[j]) break;
      a[j] = 0;
    }
  }
  return out;
}

/// Exponent e with chi(x) = zeta_N^e, from coordinates of x.
inline i64 character_exponent(const Character& chi, const std::vector<i64>& coords) {
  const GroupStructure& G = *chi.group;
  i64 N = G.exponent;
  i64 e = 0;
  for (size_t i = 0; i < coords.size(); ++i) {
    i64 step = N / G.invariants[i];
    e = (e + chi.exponents[i] % G.invariants[i] * coords[i] % N * step) % N;
  }
  return e;
}

inline CycloInt evaluate(const Character& chi, const std::vector<i64>& coords) {
  return zeta_power(chi.group->exponent, character_exponent(chi, coords));
}

inline CycloInt evaluate(const Character& chi, const DivClass& x) {
  return evaluate(chi, chi.group->coords_of(x));
}

/// chi-bar, defined through group negation: chi_bar(x) = chi(-x).
inline Character conjugate_character(const Character& chi) {
  Character out{chi.group, coords_neg(*chi.group, chi.exponents)};
  return out;
}

}  // namespace hclf
