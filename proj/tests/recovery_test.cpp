#include <gtest/gtest.h>

#include "hclf/recovery.hpp"

namespace hclf {
namespace {

CurveModel curve(const Field& F, std::vector<i64> f, std::string label = "t") {
  return validate_curve(F, FPoly(F, {}), FPoly(F, std::move(f)), std::move(label));
}

TEST(Recovery, InversionRoundTripMatchesCensus) {
  std::vector<CurveModel> models = {
      curve(Field::get(3, 1), {1, 2, 0, 0, 0, 1}),
      curve(Field::get(5, 1), {0, 1, 0, 0, 0, 1}),
      curve(Field::get(3, 1), {2, 1, 0, 0, 0, 0, 1}),  // real sextic
  };
  for (const auto& m : models) {
    LevelGeometry geo = level_geometry(m, 1);
    LDataBundle bundle = make_bundle(m, geo);
    for (int d = 0; d <= std::max(0, 2 * m.genus - 2); ++d)
      EXPECT_EQ(invert_counts(bundle, d), geo.census.counts[static_cast<size_t>(d)])
          << m.label << " degree " << d;
    // beyond 2g-2 the inversion must reproduce the closed form uniformly
    for (int d = 2 * m.genus - 1; d <= 2 * m.genus; ++d) {
      auto counts = invert_counts(bundle, d);
      i64 expect = class_count_closed_form(m.q(), m.genus, d);
      for (i64 v : counts) EXPECT_EQ(v, expect);
    }
  }
}

TEST(Recovery, VerifyRecoveryLevelOneAndTwo) {
  std::vector<CurveModel> models = {
      curve(Field::get(3, 1), {1, 2, 0, 0, 0, 1}),
      curve(Field::get(5, 1), {0, 1, 0, 0, 0, 1}),
      curve(Field::get(3, 1), {2, 1, 0, 0, 0, 0, 1}),
  };
  for (const auto& m : models) {
    RecoveryReport rep = verify_recovery(m, 1);
    EXPECT_TRUE(rep.pass) << m.label;
    EXPECT_EQ(rep.recovered, rep.expected);
    EXPECT_EQ(rep.degree_one_only, rep.recovered);
    EXPECT_EQ(rep.recovered.size(), places_of_degree(m, 1).size());
  }
  // one level-2 run on a quintic with a small extended group
  RecoveryReport rep2 = verify_recovery(models[0], 2);
  EXPECT_TRUE(rep2.pass);
}

TEST(Recovery, PermutedBundleFailsConsistency) {
  CurveModel m = curve(Field::get(3, 1), {1, 2, 0, 0, 0, 1});
  LevelGeometry geo = level_geometry(m, 1);
  LDataBundle bundle = make_bundle(m, geo);
  // rotate the L-data one character forward: chi_i receives chi_{i+1}'s data
  LDataBundle bad = bundle;
  std::rotate(bad.lfunctions.begin(), bad.lfunctions.begin() + 1, bad.lfunctions.end());
  bool failed = false;
  try {
    auto pts = recover_point_classes(bad);
    std::vector<i64> expect;
    for (const auto& pl : places_of_degree(geo.model, 1))
      expect.push_back(
          group_index_of(geo.G, geo.G.coords_of(geo.J->class_of(divisor_of_place(pl)))));
    std::sort(expect.begin(), expect.end());
    failed = pts != expect;
  } catch (const FieldError&) {
    failed = true;
  }
  EXPECT_TRUE(failed);
}

TEST(Recovery, SearchFindsNonIsomorphicSurvivors) {
  auto survivors = search_f3_example();
  ASSERT_GE(survivors.size(), 2u);
  std::vector<i64> golden = {1, -2, 3, -6, 9};
  for (const auto& ex : survivors) {
    EXPECT_EQ(ex.zeta, golden);
    EXPECT_EQ(point_count(ex.model, 1), 2);
    EXPECT_EQ(point_count(ex.model, 2), 12);
    EXPECT_EQ(jacobian_order(ex.model, 1), 5);
    EXPECT_EQ(ex.split_place.degree, 1);
  }
  // at least two pairwise non-isomorphic survivors
  bool found_pair = false;
  for (size_t i = 0; i < survivors.size() && !found_pair; ++i)
    for (size_t j = i + 1; j < survivors.size() && !found_pair; ++j)
      found_pair = !are_isomorphic_hyperelliptic(survivors[i].model, survivors[j].model);
  EXPECT_TRUE(found_pair);
  // sanity for the isomorphism test itself: every curve is isomorphic to itself
  EXPECT_TRUE(are_isomorphic_hyperelliptic(survivors[0].model, survivors[0].model));
}

TEST(Recovery, GoldenLDataOnSurvivors) {
  auto survivors = search_f3_example();
  ASSERT_GE(survivors.size(), 1u);
  for (const auto& ex : survivors) {
    Jacobian J(ex.model, divisor_of_place(ex.split_place));
    GroupStructure G = group_structure(J);
    ASSERT_EQ(G.order, 5);
    CensusTable census = census_table(J, G, 1, 2);
    auto chars = all_characters(G);
    for (size_t ci = 1; ci < chars.size(); ++ci) {
      LPolynomial L = l_polynomial(G, census, chars[ci]);
      CycloInt z = cyclo_sub(L.coeffs[1], cyclo_int(5, 1));
      bool primitive = false;
      for (i64 e = 1; e <= 4; ++e) primitive |= (z == zeta_power(5, e));
      EXPECT_TRUE(primitive);
      EXPECT_EQ(L.coeffs[2], cyclo_scalar_mul(z, 3));
    }
  }
}

TEST(Recovery, FrobeniusTwistPreservesAllData) {
  // a curve over F_9 with coefficients outside the prime field
  const Field& F9 = Field::get(3, 2);
  i64 gen = 0;
  for (i64 a = 2; a < 9; ++a) {
    // pick a non-prime-field element: one not fixed by x -> x^3
    if (F9.frobenius_power(a, 3, 1) != a) {
      gen = a;
      break;
    }
  }
  ASSERT_NE(gen, 0);
  auto nonprime = [&](const FPoly& f) {
    for (int i = 0; i <= f.deg(); ++i)
      if (F9.frobenius_power(f.coeff(i), 3, 1) != f.coeff(i)) return true;
    return false;
  };
  std::optional<CurveModel> m;
  for (std::vector<i64> fv :
       {std::vector<i64>{0, 3, 0, 0, 0, 1}, {4, 1, 1, 0, 0, 1}, {0, 6, 0, 0, 0, 1}}) {
    FPoly f(F9, fv);
    if (!f.squarefree()) continue;
    CurveModel cand = validate_curve(F9, FPoly(F9, {}), f, "tw");
    if (!nonprime(cand.f) || jacobian_order(cand, 2) > config().max_group) continue;
    m = cand;
    break;
  }
  ASSERT_TRUE(m.has_value());
  CurveModel tw = frobenius_twist(*m, 1);
  EXPECT_FALSE(tw.f == m->f);  // the twist genuinely moves the curve
  EXPECT_EQ(zeta_numerator(tw), zeta_numerator(*m));
  // the coordinatewise bijection transports the base divisor and generators
  Divisor d1C = Jacobian(*m).d1();
  Divisor d1Cp = frobenius_divisor(d1C, 3);
  CrossCurveMap psi;
  for (int n = 1; n <= 2; ++n) {
    LevelGeometry gc = level_geometry(*m, n, lift_divisor(*m, d1C, n));
    LevelGeometry gp = level_geometry(tw, n, lift_divisor(tw, d1Cp, n));
    std::vector<std::vector<i64>> images;
    for (const auto& g : gc.G.generators) {
      Divisor moved = frobenius_divisor(g.E + (-g.m) * gc.J->d1(), 3);
      images.push_back(gp.G.coords_of(gp.J->canonicalize(moved)));
    }
    psi.gen_images.push_back(images);
  }
  CrossCurveReport rep = cross_curve_check(*m, tw, psi, 2, d1C, d1Cp);
  EXPECT_TRUE(rep.maps_valid);
  EXPECT_TRUE(rep.points_match);
  EXPECT_TRUE(rep.pass) << rep.failing.size() << " failing comparisons";
}

}  // namespace
}  // namespace hclf
