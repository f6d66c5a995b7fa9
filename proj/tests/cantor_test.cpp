#include <gtest/gtest.h>

#include <map>
#include <queue>

#include "hclf/cantor.hpp"

namespace hclf {
namespace {

CurveModel curve(const Field& F, std::vector<i64> h, std::vector<i64> f) {
  return validate_curve(F, FPoly(F, std::move(h)), FPoly(F, std::move(f)), "t");
}

struct MumLess {
  const CurveModel* m;
  bool operator()(const Mumford& a, const Mumford& b) const { return mumford_less(a, b); }
};

// Closure of the place classes (degrees 1..2g) under the group law.
std::vector<Mumford> group_closure(const CurveModel& m) {
  std::vector<Mumford> gens;
  for (int d = 1; d <= 2 * m.genus; ++d)
    for (const auto& pl : places_of_degree(m, d)) gens.push_back(place_class(m, pl));
  std::map<Mumford, int, MumLess> seen{MumLess{&m}};
  std::queue<Mumford> todo;
  seen.emplace(mumford_zero(m), 0);
  todo.push(mumford_zero(m));
  while (!todo.empty()) {
    Mumford c = todo.front();
    todo.pop();
    for (const auto& g : gens) {
      Mumford s = mumford_add(m, c, g);
      if (seen.emplace(s, 0).second) todo.push(s);
    }
  }
  std::vector<Mumford> out;
  for (auto& [k, v] : seen) out.push_back(k);
  return out;
}

TEST(Cantor, ClosureMatchesZetaOrder) {
  const Field& F3 = Field::get(3, 1);
  const Field& F5 = Field::get(5, 1);
  const Field& F2 = Field::get(2, 1);
  std::vector<CurveModel> models = {
      curve(F3, {}, {1, 2, 0, 0, 0, 1}),           // genus 2 over F_3
      curve(F5, {}, {1, 1, 0, 0, 0, 1}),           // genus 2 over F_5
      curve(F3, {}, {1, 1, 0, 0, 0, 0, 0, 1}),     // genus 3 over F_3
      curve(F2, {0, 1}, {1, 0, 0, 0, 0, 1}),       // genus 2, characteristic two
  };
  for (const auto& m : models) {
    auto grp = group_closure(m);
    // Oracle: the group order is P(1) for the zeta numerator P.
    EXPECT_EQ(static_cast<i64>(grp.size()), jacobian_order(m, 1)) << m.label;
    for (const auto& c : grp) {
      EXPECT_TRUE(mumford_valid(m, c));
      EXPECT_LE(c.u.deg(), m.genus);
      // inverse really inverts
      EXPECT_EQ(mumford_add(m, c, mumford_neg(m, c)), mumford_zero(m));
      // element order divides group order
      EXPECT_EQ(mumford_smul(m, c, static_cast<i64>(grp.size())), mumford_zero(m));
    }
  }
}

TEST(Cantor, ClosureMatchesZetaOrderLevelTwo) {
  const Field& F3 = Field::get(3, 1);
  CurveModel m = curve(F3, {}, {1, 2, 0, 0, 0, 1});
  CurveModel m2 = base_change(m, 2);
  auto grp = group_closure(m2);
  EXPECT_EQ(static_cast<i64>(grp.size()), jacobian_order(m, 2));
}

TEST(Cantor, PrimeOrderGroupsAreCyclic) {
  const Field& F3 = Field::get(3, 1);
  int found = 0;
  for (i64 code = 0; code < 243; ++code) {
    std::vector<i64> f = {code % 3, (code / 3) % 3, (code / 9) % 3, (code / 27) % 3,
                          (code / 81) % 3, 1};
    CurveModel m;
    try {
      m = curve(F3, {}, f);
    } catch (const FieldError&) {
      continue;
    }
    if (jacobian_order(m, 1) != 5) continue;
    ++found;
    auto grp = group_closure(m);
    ASSERT_EQ(grp.size(), 5u);
    int order5 = 0;
    for (const auto& c : grp)
      if (c != mumford_zero(m) && mumford_smul(m, c, 5) == mumford_zero(m)) ++order5;
    EXPECT_EQ(order5, 4);  // cyclic of prime order
  }
  EXPECT_GT(found, 0);
}

// Principal divisors must map to the identity class.
TEST(Cantor, PrincipalDivisorsAreZero) {
  const Field& F3 = Field::get(3, 1);
  const Field& F5 = Field::get(5, 1);
  for (const auto& m : {curve(F3, {}, {1, 2, 0, 0, 0, 1}), curve(F5, {}, {1, 1, 0, 0, 0, 1}),
                        curve(F3, {}, {1, 1, 0, 0, 0, 0, 0, 1})}) {
    const Field& F = *m.base;
    // div(x - a): the affine places over x = a, with ramification multiplicity
    std::vector<Place> all;
    for (int d = 1; d <= 2; ++d)
      for (const auto& pl : places_of_degree(m, d)) all.push_back(pl);
    for (i64 a = 0; a < F.q(); ++a) {
      Divisor zeros;
      for (const auto& pl : all) {
        if (pl.rep().inf) continue;
        if (pl.degree == 1 && pl.rep().x == a) {
          int mult = (m.f.eval(a) == 0) ? 2 : 1;  // ramified point counts twice
          zeros = zeros + divisor_of_place(pl, mult);
        } else if (pl.degree == 2) {
          // a degree-2 place over x = a (x rational, y quadratic)
          const Field& F2x = *pl.rep().fld;
          if (pl.rep().x == Embedding::get(F, F2x)(a)) zeros = zeros + divisor_of_place(pl, 1);
        }
      }
      EXPECT_EQ(static_cast<int>(zeros.degree()), 2) << "x=" << a;
      EXPECT_EQ(divisor_class(m, zeros), mumford_zero(m)) << m.label << " x=" << a;
    }
    // div(y): the ramified points, each once
    Divisor dy;
    for (const auto& [pi, mult] : m.f.factor()) {
      (void)mult;
      int d = pi.deg();
      for (const auto& pl : places_of_degree(m, d)) {
        if (pl.rep().inf || pl.degree != d) continue;
        const Field& Fd = *pl.rep().fld;
        FPoly pid = pi.map_coeffs(Fd, [&](i64 c) { return Embedding::get(F, Fd)(c); });
        if (pl.rep().y == 0 && pid.eval(pl.rep().x) == 0) dy = dy + divisor_of_place(pl, 1);
      }
    }
    EXPECT_EQ(dy.degree(), 2 * m.genus + 1);
    EXPECT_EQ(divisor_class(m, dy), mumford_zero(m)) << m.label;
  }
}

TEST(Cantor, DivisorRoundTrip) {
  const Field& F3 = Field::get(3, 1);
  for (const auto& m : {curve(F3, {}, {1, 2, 0, 0, 0, 1}), curve(F3, {}, {1, 1, 0, 0, 0, 0, 0, 1})}) {
    for (const auto& c : group_closure(m)) {
      Divisor E = mumford_to_divisor(m, c);
      EXPECT_TRUE(E.effective());
      EXPECT_EQ(E.degree(), c.u.deg());
      EXPECT_EQ(divisor_class(m, E), c);
    }
  }
}

TEST(Cantor, FrobeniusIsAdditive) {
  const Field& F3 = Field::get(3, 1);
  CurveModel m = base_change(curve(F3, {}, {1, 2, 0, 0, 0, 1}), 2);
  auto grp = group_closure(m);
  for (size_t i = 0; i < grp.size(); ++i) {
    Mumford fi = mumford_frobenius(m, grp[i], 3);
    EXPECT_TRUE(mumford_valid(m, fi));
    // squares to the identity automorphism at level two
    EXPECT_EQ(mumford_frobenius(m, fi, 3), grp[i]);
    for (size_t j = i; j < grp.size(); ++j) {
      EXPECT_EQ(mumford_frobenius(m, mumford_add(m, grp[i], grp[j]), 3),
                mumford_add(m, fi, mumford_frobenius(m, grp[j], 3)));
    }
  }
}

TEST(Cantor, RealModelRejected) {
  const Field& F3 = Field::get(3, 1);
  CurveModel m = curve(F3, {}, {2, 1, 0, 0, 0, 0, 1});  // degree 6: two infinite branches
  ASSERT_TRUE(m.real);
  EXPECT_THROW(require_odd_degree_model(m), FieldError);
}

}  // namespace
}  // namespace hclf
