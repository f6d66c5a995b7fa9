#include <gtest/gtest.h>

#include "hclf/census.hpp"

namespace hclf {
namespace {

CurveModel curve(const Field& F, std::vector<i64> f) {
  return validate_curve(F, FPoly(F, {}), FPoly(F, std::move(f)), "t");
}

struct Setup {
  CurveModel m;
  Jacobian J;
  GroupStructure G;
};

Setup make(const Field& F, std::vector<i64> f) {
  CurveModel m = curve(F, std::move(f));
  Jacobian J(m);
  GroupStructure G = group_structure(J);
  return Setup{m, std::move(J), std::move(G)};
}

TEST(Characters, CountAndTrivialFirst) {
  auto s = make(Field::get(3, 1), {1, 2, 0, 0, 0, 1});
  auto chars = all_characters(s.G);
  EXPECT_EQ(static_cast<i64>(chars.size()), s.G.order);
  EXPECT_TRUE(chars.front().trivial());
  for (size_t i = 1; i < chars.size(); ++i) EXPECT_FALSE(chars[i].trivial());
  for (const auto& chi : chars)
    EXPECT_EQ(cyclo_as_integer(evaluate(chi, s.J.zero())), bigint(1));
}

TEST(Characters, Multiplicativity) {
  auto s = make(Field::get(5, 1), {0, 1, 0, 0, 0, 1});
  auto chars = all_characters(s.G);
  for (const auto& chi : chars) {
    for (size_t i = 0; i < s.G.elements.size(); i += 3) {
      for (size_t j = 0; j < s.G.elements.size(); j += 5) {
        const auto& x = s.G.elements[i];
        const auto& y = s.G.elements[j];
        CycloInt lhs = evaluate(chi, s.J.add(x, y));
        CycloInt rhs = cyclo_mul(evaluate(chi, x), evaluate(chi, y));
        EXPECT_EQ(lhs, rhs);
      }
    }
  }
}

TEST(Characters, OrthogonalityOverTheGroup) {
  for (auto s : {make(Field::get(3, 1), {1, 2, 0, 0, 0, 1}),
                 make(Field::get(3, 1), {0, 2, 1, 0, 0, 1})}) {
    auto chars = all_characters(s.G);
    for (const auto& chi : chars) {
      CycloInt sum = cyclo_int(s.G.exponent, 0);
      for (const auto& x : s.G.elements) sum = cyclo_add(sum, evaluate(chi, x));
      if (chi.trivial()) {
        EXPECT_EQ(cyclo_as_integer(sum), bigint(s.G.order));
      } else {
        EXPECT_TRUE(cyclo_is_zero(sum));
      }
    }
  }
}

TEST(Characters, InversionIdentityIsExactDelta) {
  auto s = make(Field::get(3, 1), {1, 2, 0, 0, 0, 1});
  auto chars = all_characters(s.G);
  for (size_t xi = 0; xi < s.G.elements.size(); ++xi) {
    for (size_t yi = 0; yi < s.G.elements.size(); ++yi) {
      const auto& x = s.G.coords_of(s.G.elements[xi]);
      const auto& y = s.G.coords_of(s.G.elements[yi]);
      CycloInt sum = cyclo_int(s.G.exponent, 0);
      for (const auto& chi : chars)
        sum = cyclo_add(sum, evaluate(chi, coords_add(s.G, coords_neg(s.G, x), y)));
      bigint expect = (xi == yi) ? bigint(s.G.order) : bigint(0);
      EXPECT_EQ(cyclo_as_integer(sum), expect);
    }
  }
}

TEST(Characters, ConjugateIsGroupNegation) {
  auto s = make(Field::get(5, 1), {0, 1, 0, 0, 0, 1});
  auto chars = all_characters(s.G);
  for (const auto& chi : chars) {
    Character bar = conjugate_character(chi);
    for (const auto& x : s.G.elements) {
      EXPECT_EQ(evaluate(bar, x), evaluate(chi, s.J.neg(x)));
      // chi * chi-bar = 1 on every element
      EXPECT_EQ(cyclo_mul(evaluate(chi, x), evaluate(bar, x)), cyclo_int(s.G.exponent, 1));
    }
  }
}

TEST(Characters, IndexRoundTrip) {
  auto s = make(Field::get(3, 1), {0, 2, 1, 0, 0, 1});
  for (i64 i = 0; i < s.G.order; ++i) {
    auto c = group_coords_of_index(s.G, i);
    EXPECT_EQ(group_index_of(s.G, c), i);
  }
  // every element's coordinates map to a distinct index
  std::set<i64> seen;
  for (const auto& x : s.G.elements) seen.insert(group_index_of(s.G, s.G.coords_of(x)));
  EXPECT_EQ(static_cast<i64>(seen.size()), s.G.order);
}

}  // namespace
}  // namespace hclf
