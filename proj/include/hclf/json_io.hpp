#pragma once

// JSON ingestion and serialization.
//
// Curve specification document:
//   {"p": int, "a": int, "modulus": [ints], "h": [...], "f": [...], "label": str}
// where `modulus` gives the defining polynomial of F_{p^a} over F_p
// (coefficients low-degree first, monic) and each coefficient of h and f is
// either a plain integer (an element of the prime subfield) or a list of `a`
// integers, the coordinates with respect to the power basis of `modulus`.
//
// Internally every field is interned with a canonical modulus, so a spec
// with a custom modulus is mapped onto the canonical field by locating a
// root of the supplied modulus there; coordinate vectors are evaluated at
// that root.  The root is chosen deterministically (least element index).
//
// Cyclotomic integers serialize as {"order": N, "coeffs": [...]}; a
// coefficient outside the int64 range becomes a decimal string.

#include <nlohmann/json.hpp>

#include <unistd.h>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hclf/census.hpp"
#include "hclf/curve.hpp"
#include "hclf/cyclotomic.hpp"
#include "hclf/divisor.hpp"
#include "hclf/field.hpp"
#include "hclf/fpoly.hpp"
#include "hclf/jacobian.hpp"

namespace hclf {

using json = nlohmann::ordered_json;

namespace detail {

/// Deterministic image of the power basis of `modulus` inside the canonical
/// field F_{p^a}: powers of the least root of `modulus` there.
inline std::vector<i64> modulus_basis(const Field& F, const std::vector<i64>& modulus) {
  int a = F.k();
  if (static_cast<int>(modulus.size()) != a + 1) throw FieldError("modulus degree must equal a");
  if (((modulus.back() % F.p()) + F.p()) % F.p() != 1) throw FieldError("modulus must be monic");
  std::vector<i64> basis(static_cast<size_t>(a));
  if (modulus == F.modulus()) {
    // power basis of the canonical generator: element codes 1, p, p^2, ...
    i64 pw = 1;
    for (int i = 0; i < a; ++i, pw *= F.p()) basis[static_cast<size_t>(i)] = pw;
    return basis;
  }
  std::vector<i64> lifted;
  for (i64 c : modulus) lifted.push_back(((c % F.p()) + F.p()) % F.p());
  FPoly mod(F, lifted);
  auto rs = mod.roots();
  if (rs.empty()) throw FieldError("modulus is not irreducible of degree a");
  i64 r = rs.front(), pw = 1;
  for (int i = 0; i < a; ++i) {
    basis[static_cast<size_t>(i)] = pw;
    pw = F.mul(pw, r);
  }
  return basis;
}

inline i64 element_from_json(const Field& F, const std::vector<i64>& basis, const json& j) {
  std::vector<i64> coords;
  if (j.is_number_integer()) {
    coords.push_back(j.get<i64>());
  } else if (j.is_array()) {
    if (j.size() > basis.size()) throw FieldError("field element has too many coordinates");
    for (const auto& c : j) {
      if (!c.is_number_integer()) throw FieldError("field element coordinates must be integers");
      coords.push_back(c.get<i64>());
    }
  } else {
    throw FieldError("field element must be an integer or a list of integers");
  }
  i64 v = 0;
  for (size_t i = 0; i < coords.size(); ++i) {
    i64 c = ((coords[i] % F.p()) + F.p()) % F.p();
    v = F.add(v, F.smul(c, basis[i]));
  }
  return v;
}

/// Base-p digits of an element code of the canonical field, length a.
inline std::vector<i64> element_coords(const Field& F, i64 v) {
  std::vector<i64> out(static_cast<size_t>(F.k()));
  for (int i = 0; i < F.k(); ++i) {
    out[static_cast<size_t>(i)] = v % F.p();
    v /= F.p();
  }
  return out;
}

}  // namespace detail

inline CurveModel curve_from_json(const json& j) {
  for (const char* key : {"p", "a", "h", "f"})
    if (!j.contains(key)) throw FieldError(std::string("curve spec missing field: ") + key);
  i64 p = j.at("p").get<i64>();
  int a = j.at("a").get<int>();
  const Field& F = Field::get(p, a);
  std::vector<i64> modulus;
  if (j.contains("modulus") && !j.at("modulus").is_null())
    modulus = j.at("modulus").get<std::vector<i64>>();
  else
    modulus = F.modulus();
  auto basis = detail::modulus_basis(F, modulus);
  auto read_poly = [&](const json& arr) {
    if (!arr.is_array()) throw FieldError("polynomial must be a list of coefficients");
    std::vector<i64> cs;
    for (const auto& c : arr) cs.push_back(detail::element_from_json(F, basis, c));
    return FPoly(F, cs);
  };
  std::string label = j.contains("label") ? j.at("label").get<std::string>() : std::string();
  return validate_curve(F, read_poly(j.at("h")), read_poly(j.at("f")), label);
}

inline CurveModel curve_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FieldError("cannot open curve spec: " + path);
  json j = json::parse(in);
  return curve_from_json(j);
}

inline json curve_to_json(const CurveModel& m) {
  const Field& F = *m.base;
  json j;
  j["p"] = F.p();
  j["a"] = F.k();
  j["modulus"] = F.modulus();
  auto poly = [&](const FPoly& f) {
    json arr = json::array();
    for (int i = 0; i <= std::max(f.deg(), 0); ++i) arr.push_back(detail::element_coords(F, f.coeff(i)));
    return arr;
  };
  j["h"] = poly(m.h);
  j["f"] = poly(m.f);
  j["label"] = m.label;
  return j;
}

inline json cyclo_to_json(const CycloInt& a) {
  json j;
  j["order"] = a.order;
  json cs = json::array();
  for (const bigint& c : a.coeffs) {
    if (c >= std::numeric_limits<std::int64_t>::min() && c <= std::numeric_limits<std::int64_t>::max())
      cs.push_back(static_cast<std::int64_t>(c));
    else
      cs.push_back(c.str());
  }
  j["coeffs"] = cs;
  return j;
}

// ---------------------------------------------------------------------------
// Census cache: one file per (curve spec, distinguished divisor, level,
// degree), keyed by a content hash, written atomically (temp file + rename).
// The directory comes from set_cache_dir or the HCLF_CACHE_DIR environment
// variable; with neither set the cache is disabled.

namespace detail {

inline std::string& cache_dir_storage() {
  static std::string dir = [] {
    const char* env = std::getenv("HCLF_CACHE_DIR");
    return std::string(env ? env : "");
  }();
  return dir;
}

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace detail

inline void set_cache_dir(const std::string& dir) { detail::cache_dir_storage() = dir; }
inline const std::string& cache_dir() { return detail::cache_dir_storage(); }

/// Content hash identifying one cached census row.
inline std::string census_cache_key(const CurveModel& m, const Divisor& d1, int n, int d) {
  std::ostringstream os;
  os << curve_to_json(m).dump() << '|' << divisor_key(d1) << '|' << n << '|' << d;
  std::uint64_t h = detail::fnv1a(os.str());
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::optional<std::vector<i64>> cache_load(const std::string& key) {
  if (cache_dir().empty()) return std::nullopt;
  std::ifstream in(cache_dir() + "/" + key + ".json");
  if (!in) return std::nullopt;
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.contains("counts")) return std::nullopt;
  return j.at("counts").get<std::vector<i64>>();
}

inline void cache_store(const std::string& key, const std::vector<i64>& counts) {
  if (cache_dir().empty()) return;
  json j;
  j["schema_version"] = 1;
  j["counts"] = counts;
  std::string path = cache_dir() + "/" + key + ".json";
  std::string tmp = path + ".tmp." + std::to_string(static_cast<unsigned long long>(::getpid()));
  {
    std::ofstream out(tmp);
    if (!out) return;  // cache is best-effort
    out << j.dump() << '\n';
  }
  std::rename(tmp.c_str(), path.c_str());
}

/// census_table with the enumerated rows (d <= 2g - 2) backed by the cache.
inline CensusTable census_table_cached(const Jacobian& J, const GroupStructure& G, int level_n,
                                       int dmax) {
  const CurveModel& m = J.model();
  CensusTable T;
  T.n = level_n;
  T.max_degree = dmax;
  for (int d = 0; d <= dmax; ++d) {
    if (d <= 2 * m.genus - 2) {
      std::string key = census_cache_key(m, J.d1(), level_n, d);
      auto hit = cache_load(key);
      if (hit && static_cast<i64>(hit->size()) == G.order) {
        T.counts.push_back(std::move(*hit));
      } else {
        T.counts.push_back(class_counts(J, G, d, std::max(2 * m.genus, dmax)));
        cache_store(key, T.counts.back());
      }
    } else {
      i64 v = class_count_closed_form(m.q(), m.genus, d);
      T.counts.emplace_back(static_cast<size_t>(G.order), v);
    }
  }
  return T;
}

}  // namespace hclf
