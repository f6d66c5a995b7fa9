// Exact arithmetic in F_{p^k}: canonical field descriptors, element
// enumeration, Frobenius.  Elements are indices into the power basis,
// idx = sum c_i p^i with coordinates c_i in [0,p).
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace hclf {

using i64 = std::int64_t;

class FieldError : public std::runtime_error {
 public:
  explicit FieldError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Arithmetic on polynomials over Z/p, coefficients low-degree first.
// Used only for modulus selection; general polynomial arithmetic over a
// field lives in fpoly.hpp.
struct ZpPoly {
  static std::vector<i64> trim(std::vector<i64> a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
  }
  static std::vector<i64> mulmod(const std::vector<i64>& a, const std::vector<i64>& b,
                                 const std::vector<i64>& f, i64 p) {
    std::vector<i64> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return rem(c, f, p);
  }
  static std::vector<i64> rem(std::vector<i64> c, const std::vector<i64>& f, i64 p) {
    // f monic
    int df = static_cast<int>(f.size()) - 1;
    for (int i = static_cast<int>(c.size()) - 1; i >= df; --i) {
      i64 t = c[i] % p;
      if (t == 0) continue;
      for (int j = 0; j <= df; ++j) {
        c[i - df + j] = ((c[i - df + j] - t * f[j]) % p + p) % p;
      }
    }
    c.resize(df);
    for (auto& x : c) x = ((x % p) + p) % p;
    return c;
  }
  static std::vector<i64> powmod_x(i64 e_base, int e_reps, const std::vector<i64>& f, i64 p) {
    // x^(e_base^e_reps) mod f by iterated powering
    std::vector<i64> r = rem({0, 1}, f, p);
    for (int i = 0; i < e_reps; ++i) r = powmod(r, e_base, f, p);
    return r;
  }
  static std::vector<i64> powmod(std::vector<i64> b, i64 e, const std::vector<i64>& f, i64 p) {
    std::vector<i64> r = rem({1}, f, p);
    while (e > 0) {
      if (e & 1) r = mulmod(r, b, f, p);
      b = mulmod(b, b, f, p);
      e >>= 1;
    }
    return r;
  }
  static std::vector<i64> gcd(std::vector<i64> a, std::vector<i64> b, i64 p) {
    a = trim(a);
    b = trim(b);
    while (!b.empty()) {
      // reduce a mod b after making b monic
      i64 lc = b.back();
      i64 lcinv = inv_mod(lc, p);
      std::vector<i64> bm = b;
      for (auto& x : bm) x = x * lcinv % p;
      a = trim(rem(a, bm, p));
      std::swap(a, b);
    }
    return a;
  }
  static i64 inv_mod(i64 a, i64 p) {
    i64 t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
    while (nr != 0) {
      i64 qq = r / nr;
      std::swap(t -= qq * nt, nt);
      std::swap(r -= qq * nr, nr);
    }
    return ((t % p) + p) % p;
  }
};

inline std::vector<i64> prime_factors(i64 n) {
  std::vector<i64> fs;
  for (i64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

// Monic f (low-first, f.back()==1) irreducible over F_p?
inline bool irreducible_mod_p(const std::vector<i64>& f, i64 p) {
  int k = static_cast<int>(f.size()) - 1;
  if (k < 1) return false;
  if (k == 1) return true;
  // x^(p^k) == x mod f
  std::vector<i64> xpk = ZpPoly::powmod_x(p, k, f, p);
  std::vector<i64> x = ZpPoly::rem({0, 1}, f, p);
  if (ZpPoly::trim(xpk) != ZpPoly::trim(x)) return false;
  for (i64 t : prime_factors(k)) {
    std::vector<i64> xe = ZpPoly::powmod_x(p, static_cast<int>(k / t), f, p);
    std::vector<i64> d = xe;
    d.resize(std::max(d.size(), x.size()), 0);
    for (size_t i = 0; i < x.size(); ++i) d[i] = ((d[i] - x[i]) % p + p) % p;
    auto g = ZpPoly::gcd(d, f, p);
    if (static_cast<int>(g.size()) - 1 > 0) return false;
  }
  return true;
}

}  // namespace detail

/// One finite field F_{p^k} with a fixed monic irreducible modulus.
/// Canonical fields (lexicographically least modulus) are interned per
/// (p,k) via Field::get and live for the whole process, so raw pointers
/// to them are safe to share between threads.
class Field {
 public:
  static constexpr i64 kTableLimit = 1 << 17;  // log/exp tables below this size

  i64 p() const { return p_; }
  int k() const { return k_; }
  i64 q() const { return q_; }
  const std::vector<i64>& modulus() const { return modulus_; }

  /// Canonical field for (p,k); modulus is the lexicographically least
  /// monic irreducible (coefficients compared low-degree first).
  static const Field& get(i64 p, int k);

  /// Non-interned field with a caller-supplied modulus (validated).
  static std::shared_ptr<const Field> make_custom(i64 p, std::vector<i64> modulus);

  // --- element arithmetic on indices -------------------------------------
  i64 add(i64 a, i64 b) const {
    if (k_ == 1) { i64 s = a + b; return s >= p_ ? s - p_ : s; }
    i64 r = 0;
    for (int i = 0; i < k_; ++i) {
      i64 da = a % p_, db = b % p_;
      a /= p_; b /= p_;
      i64 s = da + db;
      if (s >= p_) s -= p_;
      r += s * ppow_[i];
    }
    return r;
  }
  i64 neg(i64 a) const {
    if (k_ == 1) return a == 0 ? 0 : p_ - a;
    i64 r = 0;
    for (int i = 0; i < k_; ++i) {
      i64 da = a % p_;
      a /= p_;
      r += (da == 0 ? 0 : p_ - da) * ppow_[i];
    }
    return r;
  }
  i64 sub(i64 a, i64 b) const { return add(a, neg(b)); }
  i64 smul(i64 c, i64 a) const {  // scalar (prime-field) multiple
    c = ((c % p_) + p_) % p_;
    i64 r = 0;
    for (int i = 0; i < k_; ++i) {
      i64 da = a % p_;
      a /= p_;
      r += (da * c % p_) * ppow_[i];
    }
    return r;
  }
  i64 mul(i64 a, i64 b) const {
    if (a == 0 || b == 0) return 0;
    if (!exp_.empty()) {
      i64 e = log_[a] + log_[b];
      if (e >= q_ - 1) e -= q_ - 1;
      return exp_[e];
    }
    return mul_poly(a, b);
  }
  i64 inv(i64 a) const {
    if (a == 0) throw FieldError("inversion of zero");
    if (!exp_.empty()) {
      i64 e = log_[a];
      return e == 0 ? 1 : exp_[q_ - 1 - e];
    }
    return pow_raw(a, q_ - 2);
  }
  i64 div(i64 a, i64 b) const { return mul(a, inv(b)); }
  /// a^e for arbitrary e >= 0 (square and multiply; table shortcut when present).
  i64 pow(i64 a, i64 e) const {
    if (e < 0) throw FieldError("negative exponent");
    if (a == 0) return e == 0 ? 1 : 0;
    if (!exp_.empty()) {
      i64 r = log_[a] % (q_ - 1) * (e % (q_ - 1)) % (q_ - 1);
      return exp_[r];
    }
    return pow_raw(a, e % (q_ - 1));
  }

  /// e^(subq^m) where subq = p^j is the order of a subfield.
  i64 frobenius_power(i64 a, i64 subq, i64 m) const {
    int j = power_of_p(subq);
    if (j < 0) throw FieldError("frobenius base is not a power of p");
    if (m < 0) throw FieldError("negative frobenius iterate");
    if (a == 0 || a == 1) return a;
    // exponent subq^m mod (q-1)
    i64 e = 1, b = subq % (q_ - 1), mm = m;
    while (mm > 0) {
      if (mm & 1) e = mul_mod_i64(e, b, q_ - 1);
      b = mul_mod_i64(b, b, q_ - 1);
      mm >>= 1;
    }
    return pow(a, e);
  }

  // --- coordinates --------------------------------------------------------
  std::vector<i64> digits(i64 a) const {
    std::vector<i64> d(k_);
    for (int i = 0; i < k_; ++i) { d[i] = a % p_; a /= p_; }
    return d;
  }
  i64 from_digits(const std::vector<i64>& d) const {
    if (static_cast<int>(d.size()) > k_) throw FieldError("coordinate vector too long");
    i64 a = 0;
    for (size_t i = 0; i < d.size(); ++i) a += (((d[i] % p_) + p_) % p_) * ppow_[i];
    return a;
  }

  // --- squares (odd characteristic) ---------------------------------------
  bool is_square(i64 a) const {
    if (a == 0) return true;
    if (p_ == 2) return true;
    if (!exp_.empty()) return log_[a] % 2 == 0;
    return pow_raw(a, (q_ - 1) / 2) == 1;
  }
  /// Least-index square root; throws if a is not a square.
  i64 sqrt(i64 a) const;

  /// A fixed multiplicative generator (least index that generates).
  i64 generator() const;

  i64 mul_poly(i64 a, i64 b) const;  // table-free product

 private:
  Field(i64 p, int k, std::vector<i64> modulus, bool build_tables);
  int power_of_p(i64 s) const {
    for (int j = 0; j <= k_; ++j) {
      if (ppow_safe(j) == s) return j;
    }
    return -1;
  }
  i64 ppow_safe(int j) const { return j < static_cast<int>(ppow_.size()) ? ppow_[j] : q_; }
  static i64 mul_mod_i64(i64 a, i64 b, i64 m) {
    return static_cast<i64>(static_cast<__int128>(a) * b % m);
  }
  i64 pow_raw(i64 a, i64 e) const {
    i64 r = 1;
    while (e > 0) {
      if (e & 1) r = mul_poly_or_table(r, a);
      a = mul_poly_or_table(a, a);
      e >>= 1;
    }
    return r;
  }
  i64 mul_poly_or_table(i64 a, i64 b) const {
    if (a == 0 || b == 0) return 0;
    if (!exp_.empty()) {
      i64 e = log_[a] + log_[b];
      if (e >= q_ - 1) e -= q_ - 1;
      return exp_[e];
    }
    return mul_poly(a, b);
  }

  i64 p_;
  int k_;
  i64 q_;
  std::vector<i64> modulus_;          // length k+1, monic
  std::vector<i64> ppow_;             // p^0..p^k
  std::vector<std::vector<i64>> red_; // x^(k+i) mod modulus as digit rows, i=0..k-2
  std::vector<i64> exp_, log_;        // discrete log tables when q <= kTableLimit
  mutable i64 gen_ = -1;
  mutable std::mutex sqrt_mu_;
  mutable std::vector<i64> sqrt_tab_; // lazily built for table fields
};

inline Field::Field(i64 p, int k, std::vector<i64> modulus, bool build_tables)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
  if (!detail::is_prime(p_)) throw FieldError("p is not prime");
  if (k_ < 1) throw FieldError("extension degree must be >= 1");
  if (static_cast<int>(modulus_.size()) != k_ + 1 || modulus_.back() != 1)
    throw FieldError("modulus must be monic of degree k");
  for (i64 c : modulus_)
    if (c < 0 || c >= p_) throw FieldError("modulus coefficients must lie in [0,p)");
  if (k_ > 1 && !detail::irreducible_mod_p(modulus_, p_))
    throw FieldError("modulus is reducible");
  if (k_ == 1 && (modulus_[0] != 0)) throw FieldError("degree-1 modulus must be x");
  ppow_.resize(k_ + 1);
  ppow_[0] = 1;
  for (int i = 1; i <= k_; ++i) ppow_[i] = ppow_[i - 1] * p_;
  q_ = ppow_[k_];
  // reduction rows for x^(k)..x^(2k-2)
  if (k_ > 1) {
    std::vector<i64> cur(k_);  // x^k = -modulus tail
    for (int i = 0; i < k_; ++i) cur[i] = (p_ - modulus_[i]) % p_;
    red_.push_back(cur);
    for (int i = 1; i <= k_ - 2; ++i) {
      std::vector<i64> nxt(k_, 0);
      for (int j = k_ - 1; j >= 1; --j) nxt[j] = cur[j - 1];
      i64 top = cur[k_ - 1];
      if (top) {
        for (int j = 0; j < k_; ++j) nxt[j] = (nxt[j] + top * red_[0][j]) % p_;
      }
      red_.push_back(nxt);
      cur = nxt;
    }
  }
  if (build_tables && q_ <= kTableLimit) {
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, -1);
    for (i64 g = (q_ == 2 ? 1 : 2); g < q_; ++g) {  // F_2 has the trivial unit group
      i64 x = 1;
      i64 steps = 0;
      bool ok = true;
      std::fill(log_.begin(), log_.end(), -1);
      while (true) {
        exp_[steps] = x;
        log_[x] = steps;
        x = mul_poly(g, x);
        ++steps;
        if (x == 1) break;
        if (steps >= q_ - 1) { ok = false; break; }
      }
      if (ok && steps == q_ - 1) { gen_ = g; break; }
    }
    if (gen_ < 0) throw FieldError("no multiplicative generator found");
  }
}

inline i64 Field::mul_poly(i64 a, i64 b) const {
  if (k_ == 1) return a * b % p_;
  // schoolbook convolution of digit vectors, then reduce via red_ rows
  i64 da[32], db[32];
  i64 conv[64] = {0};
  i64 aa = a, bb = b;
  for (int i = 0; i < k_; ++i) { da[i] = aa % p_; aa /= p_; }
  for (int i = 0; i < k_; ++i) { db[i] = bb % p_; bb /= p_; }
  for (int i = 0; i < k_; ++i) {
    if (!da[i]) continue;
    for (int j = 0; j < k_; ++j) conv[i + j] += da[i] * db[j];
  }
  i64 out[32];
  for (int i = 0; i < k_; ++i) out[i] = conv[i] % p_;
  for (int i = k_; i <= 2 * k_ - 2; ++i) {
    i64 c = conv[i] % p_;
    if (!c) continue;
    const auto& row = red_[i - k_];
    for (int j = 0; j < k_; ++j) out[j] += c * row[j];
  }
  i64 r = 0;
  for (int i = k_ - 1; i >= 0; --i) r = r * p_ + out[i] % p_;
  return r;
}

inline i64 Field::generator() const {
  if (gen_ >= 0) return gen_;
  // table-free field: search by factoring q-1
  auto fac = detail::prime_factors(q_ - 1);
  for (i64 g = 2; g < q_; ++g) {
    bool ok = true;
    for (i64 f : fac) {
      if (pow_raw(g, (q_ - 1) / f) == 1) { ok = false; break; }
    }
    if (ok) { gen_ = g; return g; }
  }
  throw FieldError("no multiplicative generator found");
}

inline i64 Field::sqrt(i64 a) const {
  if (a == 0) return 0;
  if (p_ == 2) {
    // squaring is bijective
    i64 e = 1;
    for (int i = 0; i < k_ - 1; ++i) e *= 2;  // 2^(k-1)
    return pow(a, e);
  }
  if (!is_square(a)) throw FieldError("not a square");
  if (!exp_.empty()) {
    std::lock_guard<std::mutex> lk(sqrt_mu_);
    if (sqrt_tab_.empty()) {
      sqrt_tab_.assign(q_, -1);
      for (i64 x = 0; x < q_; ++x) {
        i64 s = mul(x, x);
        if (sqrt_tab_[s] < 0 || x < sqrt_tab_[s]) sqrt_tab_[s] = x;
      }
    }
    return sqrt_tab_[a];
  }
  // Tonelli-Shanks with deterministic non-residue scan
  i64 Q = q_ - 1;
  int S = 0;
  while (Q % 2 == 0) { Q /= 2; ++S; }
  i64 z = 2;
  while (is_square(z)) ++z;
  i64 M = S;
  i64 c = pow_raw(z, Q);
  i64 t = pow_raw(a, Q);
  i64 r = pow_raw(a, (Q + 1) / 2);
  while (t != 1) {
    i64 tt = t;
    i64 i = 0;
    while (tt != 1) { tt = mul(tt, tt); ++i; }
    i64 b = c;
    for (i64 j = 0; j < M - i - 1; ++j) b = mul(b, b);
    M = i;
    c = mul(b, b);
    t = mul(t, c);
    r = mul(r, b);
  }
  i64 nr = neg(r);
  return std::min(r, nr);
}

inline const Field& Field::get(i64 p, int k) {
  static std::mutex mu;
  static std::map<std::pair<i64, int>, std::unique_ptr<Field>> registry;
  std::lock_guard<std::mutex> lk(mu);
  auto it = registry.find({p, k});
  if (it != registry.end()) return *it->second;
  if (!detail::is_prime(p)) throw FieldError("p is not prime");
  if (k < 1) throw FieldError("extension degree must be >= 1");
  std::vector<i64> mod(k + 1, 0);
  mod[k] = 1;
  if (k > 1) {
    // lexicographically least irreducible, low-degree coefficients first
    i64 total = 1;
    for (int i = 0; i < k; ++i) total *= p;
    bool found = false;
    for (i64 n = 0; n < total && !found; ++n) {
      // n encodes (c_0,...,c_{k-1}) with c_0 most significant, so that
      // increasing n is lexicographic low-degree-first order
      i64 m = n;
      std::vector<i64> cand(k + 1);
      for (int i = k - 1; i >= 0; --i) { cand[i] = m % p; m /= p; }
      cand[k] = 1;
      if (detail::irreducible_mod_p(cand, p)) {
        mod = cand;
        found = true;
      }
    }
    if (!found) throw FieldError("no irreducible modulus found");
  }
  auto f = std::unique_ptr<Field>(new Field(p, k, mod, /*build_tables=*/true));
  const Field& ref = *f;
  registry.emplace(std::make_pair(p, k), std::move(f));
  return ref;
}

inline std::shared_ptr<const Field> Field::make_custom(i64 p, std::vector<i64> modulus) {
  int k = static_cast<int>(modulus.size()) - 1;
  return std::shared_ptr<const Field>(new Field(p, k, std::move(modulus), true));
}

/// All p^k elements in the fixed order 0, 1, ..., q-1 (index order).
inline std::vector<i64> enumerate_elements(const Field& F) {
  std::vector<i64> v(F.q());
  for (i64 i = 0; i < F.q(); ++i) v[i] = i;
  return v;
}

}  // namespace hclf
