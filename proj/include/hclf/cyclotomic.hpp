// Exact arithmetic in Z[zeta_N]: cyclotomic polynomials, reduced integer
// coordinate vectors, and conversions from power-of-zeta bucket sums.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <vector>

#include "hclf/field.hpp"

namespace hclf {

using bigint = boost::multiprecision::cpp_int;

inline i64 totient(i64 n) {
  i64 r = n;
  for (i64 p : detail::prime_factors(n)) r -= r / p;
  return r;
}

/// Phi_N as exact integer coefficients, low degree first, monic.
inline std::vector<i64> cyclotomic_polynomial(i64 N) {
  static std::mutex mu;
  static std::map<i64, std::vector<i64>> cache;
  std::lock_guard<std::mutex> lk(mu);
  std::function<std::vector<i64>(i64)> phi = [&](i64 n) -> std::vector<i64> {
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    // x^n - 1 divided by the product of Phi_d over proper divisors d of n
    std::vector<i64> num(static_cast<size_t>(n) + 1, 0);
    num[0] = -1;
    num[static_cast<size_t>(n)] = 1;
    for (i64 d = 1; d < n; ++d) {
      if (n % d != 0) continue;
      std::vector<i64> den = phi(d);
      // exact division of num by den (both monic up to the final step)
      std::vector<i64> quo(num.size() - den.size() + 1, 0);
      std::vector<i64> rem = num;
      for (int i = static_cast<int>(quo.size()) - 1; i >= 0; --i) {
        i64 c = rem[static_cast<size_t>(i) + den.size() - 1];
        quo[static_cast<size_t>(i)] = c;
        if (c == 0) continue;
        for (size_t j = 0; j < den.size(); ++j)
          rem[static_cast<size_t>(i) + j] -= c * den[j];
      }
      for (i64 r : rem)
        if (r != 0) throw FieldError("internal: inexact cyclotomic division");
      num = quo;
    }
    cache.emplace(n, num);
    return num;
  };
  return phi(N);
}

namespace detail {

/// Interned reduction data for Z[x]/Phi_N.
class CycloRing {
 public:
  static const CycloRing& get(i64 N) {
    static std::mutex mu;
    static std::map<i64, std::unique_ptr<CycloRing>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(N);
    if (it == cache.end()) it = cache.emplace(N, std::unique_ptr<CycloRing>(new CycloRing(N))).first;
    return *it->second;
  }

  i64 N() const { return n_; }
  i64 phi() const { return phi_; }
  /// x^j mod Phi_N for phi <= j < N (length-phi row).
  const std::vector<i64>& row(i64 j) const { return rows_[static_cast<size_t>(j - phi_)]; }

 private:
  explicit CycloRing(i64 N) : n_(N) {
    auto p = cyclotomic_polynomial(N);
    phi_ = static_cast<i64>(p.size()) - 1;
    // x^phi = -(lower part), then x^{j+1} = x * x^j reduced
    std::vector<i64> cur(p.begin(), p.end() - 1);
    for (auto& c : cur) c = -c;
    for (i64 j = phi_; j < N; ++j) {
      rows_.push_back(cur);
      std::vector<i64> nxt(static_cast<size_t>(phi_), 0);
      for (i64 i = 0; i + 1 < phi_; ++i) nxt[static_cast<size_t>(i) + 1] = cur[static_cast<size_t>(i)];
      i64 top = cur[static_cast<size_t>(phi_) - 1];
      if (top != 0)
        for (i64 i = 0; i < phi_; ++i) nxt[static_cast<size_t>(i)] += top * rows_[0][static_cast<size_t>(i)];
      cur = nxt;
    }
  }
  i64 n_, phi_;
  std::vector<std::vector<i64>> rows_;
};

}  // namespace detail

/// An element of Z[zeta_N], reduced modulo Phi_N (coeffs has length phi(N)).
struct CycloInt {
  i64 order = 1;
  std::vector<bigint> coeffs;

  bool operator==(const CycloInt& o) const { return order == o.order && coeffs == o.coeffs; }
  bool operator!=(const CycloInt& o) const { return !(*this == o); }
};

/// Reduce power-of-zeta buckets b[0..N-1] (value sum b[j] zeta^j) mod Phi_N.
inline CycloInt cyclo_from_buckets(i64 N, const std::vector<bigint>& b) {
  const auto& R = detail::CycloRing::get(N);
  CycloInt out{N, std::vector<bigint>(static_cast<size_t>(R.phi()), 0)};
  for (i64 j = 0; j < static_cast<i64>(b.size()); ++j) {
    if (b[static_cast<size_t>(j)] == 0) continue;
    i64 e = j % N;
    if (e < R.phi()) {
      out.coeffs[static_cast<size_t>(e)] += b[static_cast<size_t>(j)];
    } else {
      const auto& r = R.row(e);
      for (i64 i = 0; i < R.phi(); ++i)
        out.coeffs[static_cast<size_t>(i)] += b[static_cast<size_t>(j)] * r[static_cast<size_t>(i)];
    }
  }
  return out;
}

inline CycloInt cyclo_int(i64 N, bigint k) {
  const auto& R = detail::CycloRing::get(N);
  CycloInt out{N, std::vector<bigint>(static_cast<size_t>(R.phi()), 0)};
  if (R.phi() > 0) out.coeffs[0] = std::move(k);
  return out;
}

inline CycloInt zeta_power(i64 N, i64 e) {
  std::vector<bigint> b(static_cast<size_t>(N), 0);
  b[static_cast<size_t>(((e % N) + N) % N)] = 1;
  return cyclo_from_buckets(N, b);
}

/// Lift to Z[zeta_M] for order | M.
inline CycloInt cyclo_lift(const CycloInt& a, i64 M) {
  if (a.order == M) return a;
  if (M % a.order != 0) throw FieldError("cyclotomic lift needs a divisible target order");
  i64 s = M / a.order;
  std::vector<bigint> b(static_cast<size_t>(M), 0);
  for (size_t j = 0; j < a.coeffs.size(); ++j) b[j * static_cast<size_t>(s)] = a.coeffs[j];
  return cyclo_from_buckets(M, b);
}

inline i64 lcm_i64(i64 a, i64 b) { return a / std::gcd(a, b) * b; }

inline CycloInt cyclo_add(CycloInt a, CycloInt b) {
  i64 M = lcm_i64(a.order, b.order);
  a = cyclo_lift(a, M);
  b = cyclo_lift(b, M);
  for (size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] += b.coeffs[i];
  return a;
}

inline CycloInt cyclo_neg(CycloInt a) {
  for (auto& c : a.coeffs) c = -c;
  return a;
}

inline CycloInt cyclo_sub(const CycloInt& a, const CycloInt& b) { return cyclo_add(a, cyclo_neg(b)); }

inline CycloInt cyclo_scalar_mul(CycloInt a, const bigint& s) {
  for (auto& c : a.coeffs) c *= s;
  return a;
}

inline CycloInt cyclo_mul(CycloInt a, CycloInt b) {
  i64 M = lcm_i64(a.order, b.order);
  a = cyclo_lift(a, M);
  b = cyclo_lift(b, M);
  std::vector<bigint> prod(a.coeffs.size() + b.coeffs.size(), 0);
  for (size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == 0) continue;
    for (size_t j = 0; j < b.coeffs.size(); ++j) {
      if (b.coeffs[j] == 0) continue;
      prod[i + j] += a.coeffs[i] * b.coeffs[j];
    }
  }
  return cyclo_from_buckets(M, prod);  // exponents >= N fold via zeta^N = 1
}

inline bool cyclo_is_zero(const CycloInt& a) {
  for (const auto& c : a.coeffs)
    if (c != 0) return false;
  return true;
}

/// True iff the value is a rational integer (pure constant in the power basis).
inline bool cyclo_is_integer(const CycloInt& a) {
  for (size_t i = 1; i < a.coeffs.size(); ++i)
    if (a.coeffs[i] != 0) return false;
  return true;
}

inline bigint cyclo_as_integer(const CycloInt& a) {
  if (!cyclo_is_integer(a)) throw FieldError("cyclotomic value is not a rational integer");
  return a.coeffs.empty() ? bigint(0) : a.coeffs[0];
}

}  // namespace hclf
