#include <gtest/gtest.h>

#include "hclf/riemann_roch.hpp"

namespace hclf {
namespace {

CurveModel curve(const Field& F, std::vector<i64> f) {
  return validate_curve(F, FPoly(F, {}), FPoly(F, std::move(f)), "t");
}

int dim_l(const CurveModel& m, const Divisor& D) { return rr_space(m, D).dim(); }

// check that every basis function phi of L(D) really satisfies div(phi)+D >= 0
void check_membership(const CurveModel& m, const Divisor& D) {
  RRSpace L = rr_space(m, D);
  for (const auto& [u, v] : L.basis) {
    Divisor dphi = divisor_of_function(m, u, v, L.w);
    EXPECT_TRUE((dphi + D).effective())
        << m.label << " deg D=" << D.degree() << " dim=" << L.dim();
  }
}

// gap structure of dim L(n P) for a degree-1 place P, n = 0..2g+3
void check_gap_structure(const CurveModel& m, const Place& P) {
  int g = m.genus;
  std::vector<int> dims;
  for (int n = 0; n <= 2 * g + 3; ++n) dims.push_back(dim_l(m, divisor_of_place(P, n)));
  EXPECT_EQ(dims[0], 1);
  int gaps = 0;
  for (int n = 1; n <= 2 * g + 3; ++n) {
    int step = dims[n] - dims[n - 1];
    EXPECT_TRUE(step == 0 || step == 1) << m.label << " n=" << n;
    if (n <= 2 * g && step == 0) ++gaps;
  }
  EXPECT_EQ(gaps, g) << m.label;
  for (int n = 2 * g - 1; n <= 2 * g + 3; ++n)
    EXPECT_EQ(dims[n], n + 1 - g) << m.label << " n=" << n;  // Riemann's theorem range
}

TEST(RR, ConstantsOnly) {
  const Field& F3 = Field::get(3, 1);
  for (const auto& m : {curve(F3, {1, 2, 0, 0, 0, 1}), curve(F3, {2, 1, 0, 0, 0, 0, 1})}) {
    RRSpace L = rr_space(m, Divisor{});
    ASSERT_EQ(L.dim(), 1);
    EXPECT_EQ(L.basis[0].first.deg(), 0);
    EXPECT_TRUE(L.basis[0].second.zero());
  }
}

TEST(RR, GapStructureAtRationalPlaces) {
  const Field& F3 = Field::get(3, 1);
  const Field& F5 = Field::get(5, 1);
  std::vector<CurveModel> models = {
      curve(F3, {1, 2, 0, 0, 0, 1}),        // genus 2, odd degree
      curve(F5, {1, 1, 0, 0, 0, 1}),        // genus 2 over F_5
      curve(F3, {1, 1, 0, 0, 0, 0, 0, 1}),  // genus 3, odd degree
      curve(F3, {2, 1, 0, 0, 0, 0, 1}),     // genus 2, even degree, split infinity
  };
  for (const auto& m : models) {
    auto pls = places_of_degree(m, 1);
    ASSERT_FALSE(pls.empty()) << m.label;
    check_gap_structure(m, pls.front());              // infinite place sorts first
    if (pls.size() > 1) check_gap_structure(m, pls.back());  // and an affine one
  }
}

TEST(RR, DimensionTheoremMixedDivisors) {
  const Field& F3 = Field::get(3, 1);
  std::vector<CurveModel> models = {
      curve(F3, {1, 2, 0, 0, 0, 1}),
      curve(F3, {2, 1, 0, 0, 0, 0, 1}),     // split infinity
      curve(F3, {1, 1, 0, 0, 0, 0, 2}),     // non-square leading coefficient: inert infinity
  };
  for (const auto& m : models) {
    int g = m.genus;
    std::vector<Place> pool;
    for (int d = 1; d <= 2; ++d)
      for (const auto& pl : places_of_degree(m, d)) pool.push_back(pl);
    ASSERT_GE(pool.size(), 3u) << m.label;
    // a spread of mixed-sign divisors with controlled degree
    for (size_t i = 0; i < pool.size(); ++i) {
      for (size_t j = 0; j < pool.size(); ++j) {
        if (i == j) continue;
        for (int a = 1; a <= 2; ++a) {
          Divisor D = divisor_of_place(pool[i], a * 2) + divisor_of_place(pool[j], -1);
          i64 deg = D.degree();
          int dim = dim_l(m, D);
          if (deg < 0) EXPECT_EQ(dim, 0);
          if (deg > 2 * g - 2) EXPECT_EQ(dim, static_cast<int>(deg) + 1 - g)
              << m.label << " i=" << i << " j=" << j << " a=" << a;
          EXPECT_GE(dim, std::max<i64>(0, deg + 1 - g));
          check_membership(m, D);
        }
      }
    }
  }
}

TEST(RR, DualityOnOddDegreeModel) {
  // K ~ (2g-2) * infinity on an odd-degree model; full duality statement
  const Field& F3 = Field::get(3, 1);
  for (const auto& m : {curve(F3, {1, 2, 0, 0, 0, 1}), curve(F3, {1, 1, 0, 0, 0, 0, 0, 1})}) {
    int g = m.genus;
    Place inf = places_of_degree(m, 1).front();
    ASSERT_TRUE(inf.rep().inf);
    std::vector<Place> pool;
    for (int d = 1; d <= 2; ++d)
      for (const auto& pl : places_of_degree(m, d)) pool.push_back(pl);
    Divisor K = divisor_of_place(inf, 2 * g - 2);
    for (size_t i = 0; i + 1 < pool.size(); i += 2) {
      Divisor D = divisor_of_place(pool[i], 1) + divisor_of_place(pool[i + 1], 1);
      EXPECT_EQ(dim_l(m, D) - dim_l(m, K - D), static_cast<int>(D.degree()) + 1 - g);
    }
  }
}

TEST(RR, PrincipalityAgreesWithPairArithmetic) {
  const Field& F3 = Field::get(3, 1);
  CurveModel m = curve(F3, {1, 2, 0, 0, 0, 1});
  Place inf = places_of_degree(m, 1).front();
  ASSERT_TRUE(inf.rep().inf);
  // representatives of every class via the independently tested group closure
  std::vector<Mumford> grp;
  {
    std::vector<Mumford> gens;
    for (int d = 1; d <= 2; ++d)
      for (const auto& pl : places_of_degree(m, d)) gens.push_back(place_class(m, pl));
    std::map<std::vector<i64>, Mumford> seen;
    auto key = [](const Mumford& c) {
      std::vector<i64> k = c.u.coeffs();
      k.push_back(-1);
      for (i64 x : c.v.coeffs()) k.push_back(x);
      return k;
    };
    std::vector<Mumford> todo{mumford_zero(m)};
    seen.emplace(key(todo[0]), todo[0]);
    while (!todo.empty()) {
      Mumford c = todo.back();
      todo.pop_back();
      for (const auto& gen : gens) {
        Mumford s = mumford_add(m, c, gen);
        if (seen.emplace(key(s), s).second) todo.push_back(s);
      }
    }
    for (auto& [k, c] : seen) grp.push_back(c);
  }
  for (const auto& c : grp) {
    Divisor E = mumford_to_divisor(m, c);
    Divisor D = E + divisor_of_place(inf, -static_cast<int>(E.degree()));
    int dim = dim_l(m, D);
    bool principal = (c == mumford_zero(m));
    EXPECT_EQ(dim >= 1, principal) << "weight " << c.u.deg();
    if (dim >= 1) {
      // the witness function must have divisor exactly -D
      RRSpace L = rr_space(m, D);
      Divisor dphi = divisor_of_function(m, L.basis[0].first, L.basis[0].second, L.w);
      EXPECT_TRUE((dphi + D).zero());
    }
  }
}

TEST(RR, FunctionDivisorExamples) {
  const Field& F3 = Field::get(3, 1);
  CurveModel m = curve(F3, {1, 2, 0, 0, 0, 1});
  const Field& F = *m.base;
  FPoly one = FPoly::constant(F, 1);
  // div(x - a) has degree-2 zero part over x = a and a double pole at infinity
  for (i64 a = 0; a < 3; ++a) {
    Divisor d = divisor_of_function(m, FPoly(F, {F.neg(a), 1}), FPoly(F, {}), one);
    i64 zdeg = 0;
    for (const auto& [pl, n] : d.terms) {
      if (pl.rep().inf) {
        EXPECT_EQ(n, -2);
      } else {
        EXPECT_GT(n, 0);
        zdeg += static_cast<i64>(n) * pl.degree;
      }
    }
    EXPECT_EQ(zdeg, 2);
  }
  // div(y): zeros at the five ramification points, pole of order 5 at infinity
  Divisor dy = divisor_of_function(m, FPoly(F, {}), one, one);
  for (const auto& [pl, n] : dy.terms) {
    if (pl.rep().inf) EXPECT_EQ(n, -5);
    else {
      EXPECT_EQ(n, 1);
      EXPECT_EQ(pl.rep().y, 0);
    }
  }
  // div(phi) + div(1/phi) = 0 for phi = (x^2 + y)/(x + 1)
  FPoly u = FPoly(F, {0, 0, 1});
  FPoly w = FPoly(F, {1, 1});
  Divisor d1 = divisor_of_function(m, u, one, w);
  // 1/phi = (x^2 - y) (x+1) / (x^4 - f)
  FPoly den = u * u - m.f;
  Divisor d2 = divisor_of_function(m, u * w, -w, den);
  EXPECT_TRUE((d1 + d2).zero());
}

TEST(RR, UnequalInfinitePolesOnEvenDegreeModel) {
  const Field& F3 = Field::get(3, 1);
  CurveModel m = curve(F3, {2, 1, 0, 0, 0, 0, 1});
  int g = m.genus;
  auto pls = places_of_degree(m, 1);
  std::vector<Place> infs;
  for (const auto& pl : pls)
    if (pl.rep().inf) infs.push_back(pl);
  ASSERT_EQ(infs.size(), 2u);
  for (int a = 0; a <= 4; ++a) {
    for (int b = 0; b <= 4; ++b) {
      Divisor D = divisor_of_place(infs[0], a) + divisor_of_place(infs[1], b);
      int dim = dim_l(m, D);
      if (a + b > 2 * g - 2) EXPECT_EQ(dim, a + b + 1 - g) << "a=" << a << " b=" << b;
      check_membership(m, D);
    }
  }
}

}  // namespace
}  // namespace hclf
