// Fixed ring embeddings between fields of the same characteristic, and
// relative bases used to restrict linear conditions from a big residue
// field down to a subfield.  Embeddings are interned per field pair;
// composite-degree steps are composed along a fixed chain of prime-degree
// steps so towers stay consistent.
#pragma once

#include "hclf/fpoly.hpp"

namespace hclf {

class Embedding {
 public:
  const Field& src() const { return *src_; }
  const Field& dst() const { return *dst_; }

  i64 operator()(i64 a) const {
    if (src_ == dst_) return a;
    if (!tab_.empty()) return tab_[a];
    i64 r = 0;
    auto d = src_->digits(a);
    for (int i = src_->k() - 1; i >= 0; --i)
      r = dst_->add(dst_->mul(r, rho_), d[i]);
    return r;
  }

  i64 generator_image() const { return rho_; }

  /// Cached embedding for src -> dst (src degree must divide dst degree).
  static const Embedding& get(const Field& src, const Field& dst);

 private:
  Embedding(const Field& src, const Field& dst);
  const Field* src_;
  const Field* dst_;
  i64 rho_ = 0;            // image of the power-basis generator of src
  std::vector<i64> tab_;   // full map when src is small
};

inline Embedding::Embedding(const Field& src, const Field& dst) : src_(&src), dst_(&dst) {
  if (src.p() != dst.p()) throw FieldError("embedding across characteristics");
  if (dst.k() % src.k() != 0) throw FieldError("source degree does not divide target degree");
  if (&src == &dst) { rho_ = src.k() == 1 ? 1 : src.p(); return; }
  int ratio = dst.k() / src.k();
  i64 ell = ratio == 1 ? 1 : detail::prime_factors(ratio).front();
  if (ratio == 1 || ratio == ell) {  // single step, including custom->canonical at equal degree
    // atomic step: lexicographically least root of the source modulus in dst
    std::vector<i64> mc(src.modulus().begin(), src.modulus().end());
    FPoly m(dst, mc);  // prime-field coefficients are valid dst indices
    auto rs = m.roots();
    if (rs.empty()) throw FieldError("modulus has no root in target field");
    rho_ = rs.front();
  } else {
    const Field& mid = Field::get(src.p(), dst.k() / static_cast<int>(ell));
    const Embedding& lo = Embedding::get(src, mid);
    const Embedding& hi = Embedding::get(mid, dst);
    rho_ = hi(lo.generator_image());
  }
  if (src.q() <= Field::kTableLimit) {
    tab_.resize(src.q());
    for (i64 a = 0; a < src.q(); ++a) {
      i64 r = 0;
      auto d = src.digits(a);
      for (int i = src.k() - 1; i >= 0; --i) r = dst.add(dst.mul(r, rho_), d[i]);
      tab_[a] = r;
    }
  }
}

inline const Embedding& Embedding::get(const Field& src, const Field& dst) {
  // recursive: composite-degree embeddings are built from cached sub-steps
  static std::recursive_mutex mu;
  static std::map<std::pair<const Field*, const Field*>, std::unique_ptr<Embedding>> cache;
  std::lock_guard<std::recursive_mutex> lk(mu);
  auto key = std::make_pair(&src, &dst);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::unique_ptr<Embedding>(new Embedding(src, dst))).first;
  return *it->second;
}

inline i64 embed(const Field& src, const Field& dst, i64 a) {
  return Embedding::get(src, dst)(a);
}

namespace detail {

// Gaussian elimination mod p; returns inverse of a square matrix (row-major).
inline std::vector<std::vector<i64>> invert_mod_p(std::vector<std::vector<i64>> m, i64 p) {
  int n = static_cast<int>(m.size());
  std::vector<std::vector<i64>> inv(n, std::vector<i64>(n, 0));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (m[r][col] % p != 0) { piv = r; break; }
    if (piv < 0) throw FieldError("singular matrix in relative basis setup");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    i64 d = ZpPoly::inv_mod(m[col][col], p);
    for (int j = 0; j < n; ++j) {
      m[col][j] = m[col][j] * d % p;
      inv[col][j] = inv[col][j] * d % p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      i64 t = m[r][col] % p;
      if (!t) continue;
      for (int j = 0; j < n; ++j) {
        m[r][j] = ((m[r][j] - t * m[col][j]) % p + p) % p;
        inv[r][j] = ((inv[r][j] - t * inv[col][j]) % p + p) % p;
      }
    }
  }
  return inv;
}

}  // namespace detail

/// Basis of `big` as a vector space over an embedded subfield, with exact
/// coordinate maps in both directions.
class RelBasis {
 public:
  static const RelBasis& get(const Field& sub, const Field& big);

  int dim() const { return m_; }
  const std::vector<i64>& basis() const { return basis_; }

  /// Coordinates of a big-field element over the subfield (length dim()).
  std::vector<i64> coords(i64 e) const {
    const i64 p = big_->p();
    std::vector<i64> rhs = big_->digits(e);
    std::vector<i64> sol(n_, 0);
    for (int i = 0; i < n_; ++i) {
      i64 s = 0;
      for (int j = 0; j < n_; ++j) s += minv_[i][j] * rhs[j];
      sol[i] = ((s % p) + p) % p;
    }
    std::vector<i64> out(m_);
    for (int j = 0; j < m_; ++j) {
      std::vector<i64> d(sub_->k());
      for (int u = 0; u < sub_->k(); ++u) d[u] = sol[j * sub_->k() + u];
      out[j] = sub_->from_digits(d);
    }
    return out;
  }

  i64 from_coords(const std::vector<i64>& c) const {
    const Embedding& em = Embedding::get(*sub_, *big_);
    i64 r = 0;
    for (int j = 0; j < m_; ++j) r = big_->add(r, big_->mul(em(c[j]), basis_[j]));
    return r;
  }

 private:
  RelBasis(const Field& sub, const Field& big) : sub_(&sub), big_(&big) {
    const Embedding& em = Embedding::get(sub, big);
    n_ = big.k();
    m_ = big.k() / sub.k();
    // greedy basis over the embedded subfield, tracked as an F_p span
    std::vector<std::vector<i64>> echelon;  // reduced rows over F_p
    std::vector<int> pivot;
    auto reduce = [&](std::vector<i64> v) {
      const i64 p = big.p();
      for (size_t r = 0; r < echelon.size(); ++r) {
        i64 c = v[pivot[r]] % p;
        if (c)
          for (int j = 0; j < n_; ++j) v[j] = ((v[j] - c * echelon[r][j]) % p + p) % p;
      }
      return v;
    };
    auto insert_row = [&](std::vector<i64> v) {
      const i64 p = big.p();
      v = reduce(std::move(v));
      int pv = -1;
      for (int j = 0; j < n_; ++j)
        if (v[j] % p) { pv = j; break; }
      if (pv < 0) return false;
      i64 d = detail::ZpPoly::inv_mod(v[pv], p);
      for (int j = 0; j < n_; ++j) v[j] = v[j] * d % p;
      echelon.push_back(std::move(v));
      pivot.push_back(pv);
      return true;
    };
    for (i64 cand = 1; static_cast<int>(basis_.size()) < m_; ++cand) {
      std::vector<i64> v = big.digits(cand);
      auto red = reduce(v);
      bool in_span = true;
      for (i64 x : red)
        if (x % big.p()) { in_span = false; break; }
      if (in_span) continue;
      basis_.push_back(cand);
      for (int u = 0; u < sub.k(); ++u) {
        i64 col = big.mul(em(sub.from_digits(unit_vec(sub.k(), u))), cand);
        insert_row(big.digits(col));
      }
    }
    // column matrix M[(j,u)] = em(x^u) * b_j, then invert
    std::vector<std::vector<i64>> m(n_, std::vector<i64>(n_));
    for (int j = 0; j < m_; ++j)
      for (int u = 0; u < sub.k(); ++u) {
        i64 col = big.mul(em(sub.from_digits(unit_vec(sub.k(), u))), basis_[j]);
        auto d = big.digits(col);
        for (int i = 0; i < n_; ++i) m[i][j * sub.k() + u] = d[i];
      }
    minv_ = detail::invert_mod_p(std::move(m), big.p());
  }
  static std::vector<i64> unit_vec(int n, int u) {
    std::vector<i64> v(n, 0);
    v[u] = 1;
    return v;
  }
  const Field* sub_;
  const Field* big_;
  int n_, m_;
  std::vector<i64> basis_;
  std::vector<std::vector<i64>> minv_;
};

inline const RelBasis& RelBasis::get(const Field& sub, const Field& big) {
  static std::mutex mu;
  static std::map<std::pair<const Field*, const Field*>, std::unique_ptr<RelBasis>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_pair(&sub, &big);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::unique_ptr<RelBasis>(new RelBasis(sub, big))).first;
  return *it->second;
}

}  // namespace hclf
