#include <gtest/gtest.h>

#include <random>

#include "hclf/cyclotomic.hpp"

namespace hclf {
namespace {

TEST(Cyclotomic, KnownPolynomials) {
  EXPECT_EQ(cyclotomic_polynomial(1), (std::vector<i64>{-1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(2), (std::vector<i64>{1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(4), (std::vector<i64>{1, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(5), (std::vector<i64>{1, 1, 1, 1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(6), (std::vector<i64>{1, -1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(12), (std::vector<i64>{1, 0, -1, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(9), (std::vector<i64>{1, 0, 0, 1, 0, 0, 1}));
  // first index with a coefficient outside {-1, 0, 1}
  EXPECT_EQ(cyclotomic_polynomial(105)[7], -2);
}

TEST(Cyclotomic, DivisorProductRecoversPowerMinusOne) {
  for (i64 n = 1; n <= 30; ++n) {
    std::vector<i64> prod{1};
    i64 deg_sum = 0;
    for (i64 d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      auto phi = cyclotomic_polynomial(d);
      EXPECT_EQ(static_cast<i64>(phi.size()) - 1, totient(d));
      deg_sum += totient(d);
      std::vector<i64> nxt(prod.size() + phi.size() - 1, 0);
      for (size_t i = 0; i < prod.size(); ++i)
        for (size_t j = 0; j < phi.size(); ++j) nxt[i + j] += prod[i] * phi[j];
      prod = nxt;
    }
    EXPECT_EQ(deg_sum, n);
    for (i64 k = 0; k <= n; ++k) {
      i64 expect = (k == n) ? 1 : (k == 0 ? -1 : 0);
      EXPECT_EQ(prod[static_cast<size_t>(k)], expect) << "n=" << n << " k=" << k;
    }
  }
}

// Independent oracle: multiplication by the companion matrix of Phi_N acting
// on the power basis of Z[zeta_N].
CycloInt companion_mul(const CycloInt& a, const CycloInt& b) {
  i64 N = a.order;
  auto phi = cyclotomic_polynomial(N);
  size_t n = phi.size() - 1;
  // column j of M^k holds zeta^k * zeta^j in the power basis
  std::vector<bigint> acc(n, 0);
  // compute sum_j b_j * (zeta^j * a) by repeated companion multiplication of a
  std::vector<bigint> cur(a.coeffs.begin(), a.coeffs.end());
  for (size_t j = 0; j < n; ++j) {
    for (size_t i = 0; i < n; ++i) acc[i] += b.coeffs[j] * cur[i];
    // cur <- zeta * cur: shift up, reduce the overflow with -phi's lower part
    bigint top = cur[n - 1];
    for (size_t i = n - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    for (size_t i = 0; i < n; ++i) cur[i] -= top * phi[i];
  }
  return CycloInt{N, acc};
}

TEST(Cyclotomic, ProductsMatchCompanionMatrixOracle) {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<i64> coeff(-9, 9);
  for (i64 N : {5, 8, 12, 15}) {
    i64 phi = totient(N);
    for (int trial = 0; trial < 50; ++trial) {
      CycloInt a{N, std::vector<bigint>(static_cast<size_t>(phi))};
      CycloInt b{N, std::vector<bigint>(static_cast<size_t>(phi))};
      for (auto& c : a.coeffs) c = coeff(rng);
      for (auto& c : b.coeffs) c = coeff(rng);
      EXPECT_EQ(cyclo_mul(a, b), companion_mul(a, b));
      EXPECT_EQ(cyclo_mul(a, b), cyclo_mul(b, a));
    }
  }
}

TEST(Cyclotomic, RootOfUnityIdentities) {
  // sum of all N-th roots of unity vanishes
  for (i64 N : {2, 5, 6, 12}) {
    CycloInt s = cyclo_int(N, 0);
    for (i64 e = 0; e < N; ++e) s = cyclo_add(s, zeta_power(N, e));
    EXPECT_TRUE(cyclo_is_zero(s)) << N;
  }
  // zeta^N = 1 and inverse powers fold correctly
  EXPECT_EQ(zeta_power(5, 5), cyclo_int(5, 1));
  EXPECT_EQ(zeta_power(5, -2), zeta_power(5, 3));
  // norm of 1 + zeta_5 equals Phi_5(-1) = 1
  CycloInt prod = cyclo_int(5, 1);
  for (i64 e = 1; e <= 4; ++e) prod = cyclo_mul(prod, cyclo_add(cyclo_int(5, 1), zeta_power(5, e)));
  EXPECT_EQ(prod, cyclo_int(5, 1));
}

TEST(Cyclotomic, MixedOrderArithmeticLiftsToLcm) {
  // zeta_6^2 = zeta_3
  EXPECT_EQ(cyclo_mul(zeta_power(6, 1), zeta_power(6, 1)), cyclo_lift(zeta_power(3, 1), 6));
  // zeta_2 = -1 inside Q(zeta_6)
  CycloInt z2 = zeta_power(2, 1);
  CycloInt sum = cyclo_add(z2, cyclo_int(2, 1));
  EXPECT_TRUE(cyclo_is_zero(sum));
  CycloInt mixed = cyclo_add(zeta_power(2, 1), zeta_power(3, 1));
  EXPECT_EQ(mixed.order, 6);
  EXPECT_EQ(mixed, cyclo_sub(zeta_power(6, 2), cyclo_int(6, 1)));  // zeta_3 - 1 = zeta_6^2 - 1
}

TEST(Cyclotomic, IntegerDetection) {
  EXPECT_TRUE(cyclo_is_integer(cyclo_int(12, -7)));
  EXPECT_EQ(cyclo_as_integer(cyclo_int(12, -7)), bigint(-7));
  EXPECT_FALSE(cyclo_is_integer(zeta_power(5, 2)));
  EXPECT_THROW(cyclo_as_integer(zeta_power(5, 2)), FieldError);
  // zeta_5 + zeta_5^2 + zeta_5^3 + zeta_5^4 = -1
  CycloInt s = cyclo_int(5, 0);
  for (i64 e = 1; e <= 4; ++e) s = cyclo_add(s, zeta_power(5, e));
  EXPECT_EQ(cyclo_as_integer(s), bigint(-1));
}

}  // namespace
}  // namespace hclf
