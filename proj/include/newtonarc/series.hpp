#ifndef NEWTONARC_SERIES_HPP
#define NEWTONARC_SERIES_HPP

// Truncated power series A[t]/(t^T) and dense univariate polynomial helpers.
//
// A TruncSeries stores exactly T coefficients; arithmetic carries the min of
// the operand truncation orders and never silently extends precision.  The
// stored data is also usable as an honest polynomial of degree < T, which is
// what the modular reductions (mod q^r) rely on.

#include <algorithm>
#include <string>
#include <vector>

#include "newtonarc/scalar.hpp"

namespace newtonarc {

// Dense univariate polynomials, trimmed (no trailing zeros).
using UPoly = std::vector<Scalar>;

namespace upoly {

inline void trim(UPoly& v) {
  while (!v.empty() && v.back().is_zero()) v.pop_back();
}

inline bool is_zero(const UPoly& v) { return v.empty(); }

inline int deg(const UPoly& v) { return static_cast<int>(v.size()) - 1; }

inline UPoly zero() { return {}; }

inline UPoly constant(const Scalar& c) {
  UPoly v;
  if (!c.is_zero()) v.push_back(c);
  return v;
}

inline Scalar coeff(const UPoly& v, std::size_t i, const RingPtr& ring) {
  return i < v.size() ? v[i] : Scalar::zero(ring);
}

inline UPoly add(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()), Scalar());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size() && i < b.size())
      r[i] = a[i] + b[i];
    else if (i < a.size())
      r[i] = a[i];
    else
      r[i] = b[i];
  }
  trim(r);
  return r;
}

inline UPoly neg(const UPoly& a) {
  UPoly r = a;
  for (auto& c : r) c = -c;
  return r;
}

inline UPoly sub(const UPoly& a, const UPoly& b) { return add(a, neg(b)); }

inline UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  RingPtr ring = a[0].ring();
  UPoly r(a.size() + b.size() - 1, Scalar::zero(ring));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  trim(r);
  return r;
}

inline UPoly scale(const Scalar& c, const UPoly& a) {
  UPoly r;
  r.reserve(a.size());
  for (const auto& x : a) r.push_back(c * x);
  trim(r);
  return r;
}

// multiply by t^k
inline UPoly shift(const UPoly& a, std::size_t k) {
  if (a.empty()) return {};
  UPoly r(a.size() + k, Scalar::zero(a[0].ring()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i + k] = a[i];
  return r;
}

inline UPoly pow(const UPoly& a, unsigned e, const RingPtr& ring) {
  UPoly acc = constant(Scalar::one(ring));
  UPoly b = a;
  while (e) {
    if (e & 1) acc = mul(acc, b);
    b = mul(b, b);
    e >>= 1;
  }
  return acc;
}

inline bool is_monic(const UPoly& q) {
  return !q.empty() && q.back().is_one();
}

// Exact division with remainder by a monic divisor (valid over any
// commutative ring): g = q*h + rem with deg rem < deg q.
inline std::pair<UPoly, UPoly> divrem_monic(const UPoly& g, const UPoly& q) {
  if (!is_monic(q)) fail("invalid-input", "divisor must be monic");
  if (q.size() == 1) return {g, {}};  // q == 1
  std::size_t N = q.size() - 1;
  UPoly rem = g;
  if (rem.size() <= N) return {{}, rem};
  RingPtr ring = q[0].ring();
  UPoly quo(rem.size() - N, Scalar::zero(ring));
  for (std::size_t i = rem.size(); i-- > N;) {
    Scalar c = rem[i];
    if (c.is_zero()) continue;
    quo[i - N] = c;
    for (std::size_t j = 0; j <= N; ++j) rem[i - N + j] = rem[i - N + j] - c * q[j];
  }
  trim(quo);
  trim(rem);
  return {quo, rem};
}

inline UPoly rem_monic(const UPoly& g, const UPoly& q) {
  return divrem_monic(g, q).second;
}

// Exact quotient; throws "not-divisible" when the remainder is nonzero.
inline UPoly exact_div_monic(const UPoly& g, const UPoly& q) {
  auto [h, r] = divrem_monic(g, q);
  if (!is_zero(r)) fail("not-divisible", "univariate division left a remainder");
  return h;
}

inline Scalar eval(const UPoly& v, const Scalar& alpha) {
  Scalar acc = Scalar::zero(alpha.ring());
  for (std::size_t i = v.size(); i-- > 0;)
    acc = acc * alpha + Scalar::embed(alpha.ring(), v[i]);
  return acc;
}

inline UPoly residue(const UPoly& v) {
  UPoly r;
  r.reserve(v.size());
  for (const auto& c : v) r.push_back(c.residue());
  trim(r);
  return r;
}

inline UPoly embed(const UPoly& v, const RingPtr& target) {
  UPoly r;
  r.reserve(v.size());
  for (const auto& c : v) r.push_back(Scalar::embed(target, c));
  trim(r);
  return r;
}

inline bool eq(const UPoly& a, const UPoly& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

// Extended Euclid over a field: returns (g, s, t) with s*a + t*b = g, g monic
// (or zero).  Coefficients must be field scalars.
inline std::tuple<UPoly, UPoly, UPoly> xgcd(const UPoly& a, const UPoly& b,
                                            const RingPtr& ring) {
  UPoly r0 = a, r1 = b;
  UPoly s0 = constant(Scalar::one(ring)), s1 = zero();
  UPoly t0 = zero(), t1 = constant(Scalar::one(ring));
  while (!is_zero(r1)) {
    // divide r0 by r1 (general leading coefficient; field, so invertible)
    Scalar lc_inv = r1.back().inverse();
    UPoly q = zero();
    UPoly r = r0;
    while (static_cast<int>(r.size()) >= static_cast<int>(r1.size()) && !is_zero(r)) {
      std::size_t shift_by = r.size() - r1.size();
      Scalar c = r.back() * lc_inv;
      UPoly t = shift(scale(c, r1), shift_by);
      r = sub(r, t);
      UPoly qc(shift_by + 1, Scalar::zero(ring));
      qc[shift_by] = c;
      q = add(q, qc);
    }
    UPoly nr = r;
    UPoly ns = sub(s0, mul(q, s1));
    UPoly nt = sub(t0, mul(q, t1));
    r0 = r1; r1 = nr;
    s0 = s1; s1 = ns;
    t0 = t1; t1 = nt;
  }
  if (!is_zero(r0) && !r0.back().is_one()) {
    Scalar inv = r0.back().inverse();
    r0 = scale(inv, r0);
    s0 = scale(inv, s0);
    t0 = scale(inv, t0);
  }
  return {r0, s0, t0};
}

}  // namespace upoly

class TruncSeries {
public:
  TruncSeries() = default;

  static TruncSeries zero(const RingPtr& ring, unsigned T) {
    if (T == 0) fail("invalid-input", "truncation order must be positive");
    TruncSeries s;
    s.ring_ = ring;
    s.c_.assign(T, Scalar::zero(ring));
    return s;
  }

  static TruncSeries one(const RingPtr& ring, unsigned T) {
    TruncSeries s = zero(ring, T);
    s.c_[0] = Scalar::one(ring);
    return s;
  }

  static TruncSeries from_coeffs(const RingPtr& ring, std::vector<Scalar> coeffs) {
    if (coeffs.empty()) fail("invalid-input", "truncation order must be positive");
    TruncSeries s;
    s.ring_ = ring;
    s.c_ = std::move(coeffs);
    return s;
  }

  // Image of a polynomial in A[t]/(t^T).
  static TruncSeries from_poly(const RingPtr& ring, const UPoly& p, unsigned T) {
    TruncSeries s = zero(ring, T);
    for (std::size_t i = 0; i < p.size() && i < T; ++i)
      s.c_[i] = Scalar::embed(ring, p[i]);
    return s;
  }

  const RingPtr& ring() const { return ring_; }
  unsigned trunc() const { return static_cast<unsigned>(c_.size()); }
  const Scalar& coeff(std::size_t i) const { return c_[i]; }
  const std::vector<Scalar>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& c : c_)
      if (!c.is_zero()) return false;
    return true;
  }

  // smallest index with nonzero coefficient, or trunc() when none
  unsigned order() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return static_cast<unsigned>(i);
    return trunc();
  }

  bool is_unit() const { return c_[0].is_unit(); }

  TruncSeries truncate(unsigned T) const {
    if (T > trunc()) fail("insufficient-truncation", "cannot extend precision");
    TruncSeries s;
    s.ring_ = ring_;
    s.c_.assign(c_.begin(), c_.begin() + T);
    return s;
  }

  TruncSeries residue() const {
    TruncSeries s;
    s.ring_ = ring_->kind() == Ring::Kind::test_ring ? ring_->base() : ring_;
    s.c_.reserve(c_.size());
    for (const auto& c : c_) s.c_.push_back(c.residue());
    return s;
  }

  UPoly poly() const {
    UPoly p = c_;
    upoly::trim(p);
    return p;
  }

  friend TruncSeries operator-(const TruncSeries& a) {
    TruncSeries s = a;
    for (auto& c : s.c_) c = -c;
    return s;
  }

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    require_same_ring(a.ring_, b.ring_);
    unsigned T = std::min(a.trunc(), b.trunc());
    TruncSeries s = zero(a.ring_, T);
    for (unsigned i = 0; i < T; ++i) s.c_[i] = a.c_[i] + b.c_[i];
    return s;
  }

  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
    return a + (-b);
  }

  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    require_same_ring(a.ring_, b.ring_);
    unsigned T = std::min(a.trunc(), b.trunc());
    TruncSeries s = zero(a.ring_, T);
    for (unsigned i = 0; i < T; ++i) {
      if (a.c_[i].is_zero()) continue;
      for (unsigned j = 0; i + j < T; ++j)
        s.c_[i + j] = s.c_[i + j] + a.c_[i] * b.c_[j];
    }
    return s;
  }

  friend TruncSeries operator*(const Scalar& c, const TruncSeries& a) {
    TruncSeries s = a;
    Scalar cc = Scalar::embed(a.ring_, c);
    for (auto& x : s.c_) x = cc * x;
    return s;
  }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    if (!same_ring(a.ring_, b.ring_) || a.trunc() != b.trunc()) return false;
    for (unsigned i = 0; i < a.trunc(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }
  friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }

  // Multiplicative inverse in A[t]/(t^T); constant term must be a unit.
  TruncSeries inverse() const {
    if (!is_unit()) fail("not-a-unit", "series constant term is not a unit");
    Scalar inv0 = c_[0].inverse();
    TruncSeries r = zero(ring_, trunc());
    r.c_[0] = inv0;
    for (unsigned k = 1; k < trunc(); ++k) {
      Scalar acc = Scalar::zero(ring_);
      for (unsigned i = 1; i <= k; ++i) acc = acc + c_[i] * r.c_[k - i];
      r.c_[k] = -(inv0 * acc);
    }
    return r;
  }

  // Polynomial-data evaluation at a scalar (finite sum; exact).
  Scalar eval_at(const Scalar& alpha) const { return upoly::eval(poly(), alpha); }

  std::string to_string() const;  // defined in json_io.hpp via poly printing

private:
  RingPtr ring_;
  std::vector<Scalar> c_;
};

inline TruncSeries one_like(const TruncSeries& s) {
  return TruncSeries::one(s.ring(), s.trunc());
}

// Exact product of a polynomial and a series inside A[t]/(t^T).
inline TruncSeries poly_times_series(const UPoly& p, const TruncSeries& s) {
  unsigned T = s.trunc();
  std::vector<Scalar> acc(T, Scalar::zero(s.ring()));
  for (std::size_t i = 0; i < p.size() && i < T; ++i) {
    if (p[i].is_zero()) continue;
    Scalar c = Scalar::embed(s.ring(), p[i]);
    for (unsigned j = 0; i + j < T; ++j)
      if (!s.coeff(j).is_zero()) acc[i + j] = acc[i + j] + c * s.coeff(j);
  }
  return TruncSeries::from_coeffs(s.ring(), std::move(acc));
}

}  // namespace newtonarc

#endif
