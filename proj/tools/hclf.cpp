// hclf: character L-functions of Hilbert class fields of hyperelliptic
// curves over small finite fields, and reconstruction of rational point
// classes from L-data.
//
// Output is JSON lines with fixed key order.  Exit codes: 0 success,
// 1 mathematical inconsistency found by a check, 2 usage error.

#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hclf/census.hpp"
#include "hclf/characters.hpp"
#include "hclf/curve.hpp"
#include "hclf/divisor.hpp"
#include "hclf/jacobian.hpp"
#include "hclf/json_io.hpp"
#include "hclf/lfun.hpp"
#include "hclf/parallel.hpp"
#include "hclf/recovery.hpp"

namespace {

using namespace hclf;

constexpr int kSchemaVersion = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

CurveModel load_curve(const std::string& path) {
  try {
    return curve_from_file(path);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad curve spec '") + path + "': " + e.what());
  }
}

json head(const std::string& command, const CurveModel& m) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["curve"] = m.label;
  return j;
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

/// Parse a "--d1 deg:index" selector against a (level) model.
std::optional<Divisor> parse_d1(const CurveModel& m, const std::string& spec) {
  if (spec.empty()) return std::nullopt;
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw UsageError("--d1 expects deg:index");
  int deg = 0;
  std::size_t index = 0;
  try {
    deg = std::stoi(spec.substr(0, colon));
    index = static_cast<std::size_t>(std::stoul(spec.substr(colon + 1)));
  } catch (const std::exception&) {
    throw UsageError("--d1 expects deg:index with integer fields");
  }
  auto pls = places_of_degree(m, deg);
  if (index >= pls.size())
    throw UsageError("--d1 index out of range: only " + std::to_string(pls.size()) +
                     " places of degree " + std::to_string(deg));
  return divisor_of_place(pls[index]);
}

struct Level {
  CurveModel model;
  std::shared_ptr<Jacobian> J;
  GroupStructure G;
};

Level make_level(const CurveModel& base, int n, const std::string& d1_spec) {
  Level L;
  L.model = n == 1 ? base : base_change(base, n);
  L.J = std::make_shared<Jacobian>(L.model, parse_d1(L.model, d1_spec));
  L.G = group_structure(*L.J);
  return L;
}

/// Class representatives by group index, as divisor keys.
std::vector<std::string> class_keys(const GroupStructure& G) {
  std::vector<std::string> keys(static_cast<std::size_t>(G.order));
  for (const auto& c : G.elements)
    keys[static_cast<std::size_t>(group_index_of(G, G.coords_of(c)))] = class_key(c);
  return keys;
}

/// Census rows for d = 0..dmax, cached and computed in parallel by degree.
CensusTable census_rows(const Level& L, int n, int dmax, int workers) {
  const CurveModel& m = L.model;
  CensusTable T;
  T.n = n;
  T.max_degree = dmax;
  T.counts = parallel_map<std::vector<i64>>(
      static_cast<std::size_t>(dmax) + 1, workers, [&](std::size_t d) -> std::vector<i64> {
        int dd = static_cast<int>(d);
        if (dd > 2 * m.genus - 2)
          return std::vector<i64>(static_cast<std::size_t>(L.G.order),
                                  class_count_closed_form(m.q(), m.genus, dd));
        std::string key = census_cache_key(m, L.J->d1(), n, dd);
        if (auto hit = cache_load(key); hit && static_cast<i64>(hit->size()) == L.G.order)
          return std::move(*hit);
        auto row = class_counts(*L.J, L.G, dd, std::max(2 * m.genus, dmax));
        cache_store(key, row);
        return row;
      });
  return T;
}

int cmd_zeta(const std::string& curve_path, int n) {
  CurveModel m = load_curve(curve_path);
  ZetaPair zp = zeta_pair(m, n);
  json j = head("zeta", m);
  j["n"] = n;
  j["qn"] = zp.qn;
  j["numerator"] = zp.numerator;
  emit(j);
  return 0;
}

int cmd_census(const std::string& curve_path, int n, int dmax_opt, const std::string& d1_spec,
               int workers) {
  CurveModel m = load_curve(curve_path);
  Level L = make_level(m, n, d1_spec);
  int dmax = dmax_opt >= 0 ? dmax_opt : std::max(1, 2 * m.genus - 2);
  json hd = head("census", m);
  hd["n"] = n;
  hd["invariants"] = L.G.invariants;
  hd["classes"] = class_keys(L.G);
  emit(hd);
  CensusTable T = census_rows(L, n, dmax, workers);
  for (int d = 1; d <= dmax; ++d) {
    json j = head("census-row", m);
    j["n"] = n;
    j["d"] = d;
    j["counts"] = T.counts[static_cast<std::size_t>(d)];
    emit(j);
  }
  return 0;
}

int cmd_lfun(const std::string& curve_path, int n, bool all_chars, const std::string& char_spec,
             const std::string& d1_spec, int workers) {
  CurveModel m = load_curve(curve_path);
  Level L = make_level(m, n, d1_spec);
  CensusTable T = census_rows(L, n, std::max(0, 2 * m.genus - 2), workers);
  auto chars = all_characters(L.G);
  std::vector<std::size_t> wanted;
  if (all_chars) {
    for (std::size_t i = 0; i < chars.size(); ++i) wanted.push_back(i);
  } else {
    if (char_spec.empty()) throw UsageError("lfun needs --all-chars or --character");
    std::vector<i64> exps;
    std::stringstream ss(char_spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) exps.push_back(std::stoll(tok));
    if (exps.size() != L.G.invariants.size())
      throw UsageError("--character needs one exponent per group invariant");
    for (std::size_t i = 0; i < chars.size(); ++i)
      if (chars[i].exponents == exps) wanted.push_back(i);
    if (wanted.empty()) throw UsageError("--character exponents out of range");
  }
  auto lines = parallel_map<std::string>(wanted.size(), workers, [&](std::size_t wi) {
    const Character& chi = chars[wanted[wi]];
    json j = head("lfun", m);
    j["n"] = n;
    j["character"] = chi.exponents;
    json cs = json::array();
    if (chi.trivial()) {
      // the trivial character carries the zeta numerator
      for (i64 c : zeta_pair(m, n).numerator) cs.push_back(cyclo_to_json(cyclo_int(1, c)));
    } else {
      for (const auto& c : l_polynomial(L.G, T, chi).coeffs) cs.push_back(cyclo_to_json(c));
    }
    j["coeffs"] = cs;
    return j.dump();
  });
  for (const auto& s : lines) std::cout << s << "\n";
  return 0;
}

int cmd_recover(const std::string& curve_path, int n) {
  CurveModel m = load_curve(curve_path);
  RecoveryReport rep = verify_recovery(m, n);
  LevelGeometry geo = level_geometry(m, n);
  auto keys = class_keys(geo.G);
  json j = head("recover", m);
  j["n"] = n;
  j["recovered"] = rep.recovered;
  json cls = json::array();
  for (i64 x : rep.recovered) cls.push_back(keys[static_cast<std::size_t>(x)]);
  j["classes"] = cls;
  j["count"] = rep.recovered.size();
  j["pass"] = rep.pass;
  emit(j);
  return rep.pass ? 0 : 1;
}

CrossCurveMap map_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open map file: " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.contains("gen_images")) throw UsageError("bad map file: " + path);
  CrossCurveMap psi;
  psi.gen_images = j.at("gen_images").get<std::vector<std::vector<std::vector<i64>>>>();
  return psi;
}

int cmd_cross_check(const std::string& curve_path, const std::string& other_path,
                    const std::string& map_path, int n_max) {
  CurveModel a = load_curve(curve_path);
  CurveModel b = load_curve(other_path);
  CrossCurveMap psi = map_from_file(map_path);
  CrossCurveReport rep = cross_curve_check(a, b, psi, n_max);
  json j = head("cross-check", a);
  j["other"] = b.label;
  j["n_max"] = n_max;
  j["maps_valid"] = rep.maps_valid;
  j["points_match"] = rep.points_match;
  json fl = json::array();
  for (auto [nn, ci] : rep.failing) fl.push_back(json::array({nn, ci}));
  j["failing"] = fl;
  j["pass"] = rep.pass;
  emit(j);
  return rep.pass ? 0 : 1;
}

int cmd_twist(const std::string& curve_path, int e) {
  CurveModel m = load_curve(curve_path);
  CurveModel tw = frobenius_twist(m, e);
  bool zeta_match = zeta_numerator(m) == zeta_numerator(tw);
  json j = head("twist", m);
  j["e"] = e;
  j["twisted"] = curve_to_json(tw);
  j["zeta_match"] = zeta_match;
  emit(j);
  return zeta_match ? 0 : 1;
}

int cmd_search_example(int workers) {
  auto found = search_f3_example(workers);
  for (const auto& ex : found) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "search-example";
    j["curve"] = curve_to_json(ex.model);
    j["zeta"] = ex.zeta;
    j["split_place"] = divisor_key(divisor_of_place(ex.split_place));
    emit(j);
  }
  return found.empty() ? 1 : 0;
}

int cmd_isom(const std::string& curve_path, const std::string& other_path) {
  CurveModel a = load_curve(curve_path);
  CurveModel b = load_curve(other_path);
  json j = head("isom", a);
  j["other"] = b.label;
  j["isomorphic"] = are_isomorphic_hyperelliptic(a, b);
  emit(j);
  return 0;
}

int cmd_artin_check(const std::string& curve_path, int n, int trunc) {
  CurveModel m = load_curve(curve_path);
  ChangeOfVariableReport rep =
      change_of_variable_check(m, n, trunc >= 0 ? std::optional<int>(trunc) : std::nullopt);
  json j = head("artin-check", m);
  j["n"] = n;
  j["trunc"] = rep.trunc;
  j["places_checked"] = rep.splittings.size();
  json ms = json::array();
  for (auto [ci, deg] : rep.mismatches) ms.push_back(json::array({ci, deg}));
  j["mismatches"] = ms;
  j["pass"] = rep.pass;
  emit(j);
  return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"character L-functions of Hilbert class fields of hyperelliptic curves"};
  app.require_subcommand(1);

  int workers = 1;
  std::string cache_dir_flag;
  app.add_option("--workers", workers, "worker threads (output is identical for any value)");
  app.add_option("--cache-dir", cache_dir_flag, "census cache directory (or HCLF_CACHE_DIR)");

  std::string curve_path, other_path, map_path, d1_spec, char_spec;
  int n = 1, n_max = 2, dmax = -1, e = 1, trunc = -1;
  bool all_chars = false;

  auto* zeta = app.add_subcommand("zeta", "zeta numerator of the curve at level n");
  zeta->add_option("--curve", curve_path)->required();
  zeta->add_option("--n", n);

  auto* census = app.add_subcommand("census", "class-indexed effective divisor counts");
  census->add_option("--curve", curve_path)->required();
  census->add_option("--n", n);
  census->add_option("--dmax", dmax);
  census->add_option("--d1", d1_spec, "distinguished degree-1 divisor, deg:index");

  auto* lfun = app.add_subcommand("lfun", "L-polynomials of ray class characters");
  lfun->add_option("--curve", curve_path)->required();
  lfun->add_option("--n", n);
  lfun->add_flag("--all-chars", all_chars);
  lfun->add_option("--character", char_spec, "comma-separated exponents");
  lfun->add_option("--d1", d1_spec, "distinguished degree-1 divisor, deg:index");

  auto* recover = app.add_subcommand("recover", "reconstruct point classes from L-data");
  recover->add_option("--curve", curve_path)->required();
  recover->add_option("--n", n);

  auto* cross = app.add_subcommand("cross-check", "compare L-data of two curves under a map");
  cross->add_option("--curve", curve_path)->required();
  cross->add_option("--other", other_path)->required();
  cross->add_option("--map", map_path, "JSON file with gen_images")->required();
  cross->add_option("--n-max", n_max);

  auto* twist = app.add_subcommand("twist", "Frobenius twist of the curve");
  twist->add_option("--curve", curve_path)->required();
  twist->add_option("--e", e, "power of the p-th power map");

  app.add_subcommand("search-example", "search genus-2 curves over F_3 with class number 5");

  auto* isom = app.add_subcommand("isom", "test two models for isomorphism");
  isom->add_option("--curve", curve_path)->required();
  isom->add_option("--other", other_path)->required();

  auto* artin = app.add_subcommand("artin-check", "change-of-variable identity for L-data");
  artin->add_option("--curve", curve_path)->required();
  artin->add_option("--n", n);
  artin->add_option("--trunc", trunc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  if (!cache_dir_flag.empty()) hclf::set_cache_dir(cache_dir_flag);

  try {
    if (zeta->parsed()) return cmd_zeta(curve_path, n);
    if (census->parsed()) return cmd_census(curve_path, n, dmax, d1_spec, workers);
    if (lfun->parsed()) return cmd_lfun(curve_path, n, all_chars, char_spec, d1_spec, workers);
    if (recover->parsed()) return cmd_recover(curve_path, n);
    if (cross->parsed()) return cmd_cross_check(curve_path, other_path, map_path, n_max);
    if (twist->parsed()) return cmd_twist(curve_path, e);
    if (app.get_subcommand("search-example")->parsed()) return cmd_search_example(workers);
    if (isom->parsed()) return cmd_isom(curve_path, other_path);
    if (artin->parsed()) return cmd_artin_check(curve_path, n, trunc);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    // a computation-level failure is a mathematical inconsistency finding
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "error";
    j["error"] = e.what();
    emit(j);
    return 1;
  }
  std::cerr << "no subcommand\n";
  return 2;
}
