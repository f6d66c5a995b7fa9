#include <gtest/gtest.h>

#include "hclf/jacobian.hpp"

namespace hclf {
namespace {

CurveModel curve(const Field& F, std::vector<i64> f) {
  return validate_curve(F, FPoly(F, {}), FPoly(F, std::move(f)), "t");
}

// independent canonicalization through the function-space engine
DivClass rr_canonicalize(const CurveModel& m, const Divisor& d1, const Divisor& D0) {
  for (int mm = 0; mm <= 2 * m.genus + 2; ++mm) {
    Divisor D = D0 + mm * d1;
    RRSpace L = rr_space(m, D);
    if (L.dim() == 0) continue;
    EXPECT_EQ(L.dim(), 1);  // degree-1 base divisor forces a unique section
    return DivClass{mm, divisor_of_function(m, L.basis[0].first, L.basis[0].second, L.w) + D};
  }
  throw FieldError("no representative");
}

TEST(Jacobian, CanonicalRepsWellFormed) {
  const Field& F3 = Field::get(3, 1);
  const Field& F5 = Field::get(5, 1);
  std::vector<CurveModel> models = {
      curve(F3, {1, 2, 0, 0, 0, 1}),
      curve(F5, {1, 1, 0, 0, 0, 1}),
      curve(F3, {1, 1, 0, 0, 0, 0, 0, 1}),
      curve(F3, {2, 1, 0, 0, 0, 0, 1}),  // even-degree model: function-space engine
  };
  for (const auto& m : models) {
    Jacobian J(m);
    auto cls = J.enumerate();  // internally checked against the zeta class number
    EXPECT_EQ(static_cast<i64>(cls.size()), jacobian_order(m, 1));
    for (const auto& c : cls) {
      EXPECT_GE(c.m, 0);
      EXPECT_LE(c.m, m.genus);
      EXPECT_TRUE(c.E.effective());
      EXPECT_EQ(c.E.degree(), static_cast<i64>(c.m) * J.d1().degree());
      // canonicalize is idempotent on its own representatives
      EXPECT_EQ(J.canonicalize(c.E + (-c.m) * J.d1()), c);
    }
    // group axioms on a sample
    for (size_t i = 0; i < cls.size(); i += std::max<size_t>(1, cls.size() / 8)) {
      for (size_t j = 0; j < cls.size(); j += std::max<size_t>(1, cls.size() / 8)) {
        EXPECT_EQ(J.add(cls[i], cls[j]), J.add(cls[j], cls[i]));
      }
      EXPECT_TRUE(J.is_zero(J.add(cls[i], J.neg(cls[i]))));
    }
  }
}

TEST(Jacobian, PairEngineAgreesWithFunctionSpaceEngine) {
  const Field& F3 = Field::get(3, 1);
  for (const auto& m : {curve(F3, {1, 2, 0, 0, 0, 1}), curve(F3, {1, 1, 0, 0, 0, 0, 0, 1})}) {
    Jacobian J(m);  // odd-degree model with infinite base place: pair arithmetic
    ASSERT_TRUE(J.d1().terms[0].first.rep().inf);
    for (const auto& c : J.enumerate()) {
      DivClass viaRR = rr_canonicalize(m, J.d1(), c.E + (-c.m) * J.d1());
      EXPECT_EQ(viaRR, c);
    }
  }
}

TEST(Jacobian, AffineBaseDivisorGivesSameGroup) {
  const Field& F3 = Field::get(3, 1);
  CurveModel m = curve(F3, {1, 2, 0, 0, 0, 1});
  auto pls = places_of_degree(m, 1);
  ASSERT_GE(pls.size(), 2u);
  Jacobian Jinf(m);
  Jacobian Jaff(m, divisor_of_place(pls.back(), 1));
  ASSERT_FALSE(pls.back().rep().inf);
  auto a = Jinf.enumerate(), b = Jaff.enumerate();
  EXPECT_EQ(a.size(), b.size());
  auto sa = group_structure(Jinf), sb = group_structure(Jaff);
  EXPECT_EQ(sa.invariants, sb.invariants);
}

TEST(Jacobian, TwoTorsionCountsMatchFactorization) {
  // For y^2 = f with deg f odd, the 2-torsion subgroup has order
  // 2^(r-1) where r is the number of irreducible factors of f.
  const Field& F3 = Field::get(3, 1);
  const Field& F5 = Field::get(5, 1);
  std::vector<CurveModel> models = {
      curve(F3, {1, 2, 0, 0, 0, 1}),
      curve(F3, {0, 2, 1, 0, 0, 1}),  // x(x^4 + x + 2): reducible f
      curve(F5, {0, 1, 0, 0, 0, 1}),  // x(x^4 + 1)
      curve(F3, {1, 1, 0, 0, 0, 0, 0, 1}),
  };
  for (const auto& m : models) {
    int r = static_cast<int>(m.f.factor().size());
    Jacobian J(m);
    i64 two = 0;
    for (const auto& c : J.enumerate())
      if (J.is_zero(J.smul(c, 2))) ++two;
    EXPECT_EQ(two, i64{1} << (r - 1)) << m.label;
  }
}

TEST(Jacobian, StructureInvariants) {
  const Field& F3 = Field::get(3, 1);
  for (const auto& m : {curve(F3, {1, 2, 0, 0, 0, 1}), curve(F3, {0, 2, 1, 0, 0, 1}),
                        curve(F3, {2, 1, 0, 0, 0, 0, 1})}) {
    Jacobian J(m);
    GroupStructure G = group_structure(J);
    i64 prod = 1;
    for (size_t i = 0; i < G.invariants.size(); ++i) {
      prod *= G.invariants[i];
      if (i + 1 < G.invariants.size()) EXPECT_EQ(G.invariants[i + 1] % G.invariants[i], 0);
      // generator order is exactly the invariant
      EXPECT_TRUE(J.is_zero(J.smul(G.generators[i], G.invariants[i])));
      for (i64 pr : detail::prime_factors(G.invariants[i]))
        EXPECT_FALSE(J.is_zero(J.smul(G.generators[i], G.invariants[i] / pr)));
    }
    EXPECT_EQ(prod, G.order);
    EXPECT_EQ(G.exponent, G.invariants.empty() ? 1 : G.invariants.back());
    EXPECT_EQ(static_cast<i64>(G.coords.size()), G.order);
    // coordinates really are a homomorphism on a sample
    for (size_t i = 0; i < G.elements.size(); i += std::max<size_t>(1, G.elements.size() / 6)) {
      for (size_t j = 0; j < G.elements.size(); j += std::max<size_t>(1, G.elements.size() / 6)) {
        auto ci = G.coords_of(G.elements[i]), cj = G.coords_of(G.elements[j]);
        auto cs = G.coords_of(J.add(G.elements[i], G.elements[j]));
        for (size_t t = 0; t < cs.size(); ++t)
          EXPECT_EQ(cs[t], (ci[t] + cj[t]) % G.invariants[t]);
      }
    }
  }
}

TEST(Jacobian, FrobeniusFixedClassesAreTheBaseGroup) {
  const Field& F3 = Field::get(3, 1);
  CurveModel m = curve(F3, {1, 2, 0, 0, 0, 1});
  CurveModel m2 = base_change(m, 2);
  Jacobian J2(m2);
  auto cls = J2.enumerate();
  EXPECT_EQ(static_cast<i64>(cls.size()), jacobian_order(m, 2));
  i64 fixed = 0;
  for (const auto& c : cls) {
    DivClass fc = J2.frobenius(c, 3);
    EXPECT_EQ(J2.frobenius(fc, 3), c);  // squares to the identity at level 2
    if (fc == c) ++fixed;
  }
  EXPECT_EQ(fixed, jacobian_order(m, 1));
}

TEST(Jacobian, IsPrincipalWitness) {
  const Field& F3 = Field::get(3, 1);
  CurveModel m = curve(F3, {2, 1, 0, 0, 0, 0, 1});
  Jacobian J(m);
  auto cls = J.enumerate();
  for (size_t i = 0; i < cls.size(); i += std::max<size_t>(1, cls.size() / 10)) {
    const auto& c = cls[i];
    Divisor D = c.E + (-c.m) * J.d1();
    auto [prin, wit] = is_principal(m, D);
    EXPECT_EQ(prin, J.is_zero(J.canonicalize(D)));
    if (prin) {
      ASSERT_TRUE(wit.has_value());
      EXPECT_TRUE((divisor_of_function(m, wit->u, wit->v, wit->w) + D).zero());
    }
  }
}

}  // namespace
}  // namespace hclf
