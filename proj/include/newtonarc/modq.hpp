#ifndef NEWTONARC_MODQ_HPP
#define NEWTONARC_MODQ_HPP

// The quotient rings R[t]/(q^m) for a monic polynomial q of degree N >= 1.
// Elements are the canonical representatives of degree < N*m.  Inversion
// works over fields (extended Euclid) and over test rings (Euclid on the
// residue followed by a nilpotent geometric-series correction).

#include <memory>
#include <vector>

#include "newtonarc/series.hpp"

namespace newtonarc {

struct ModQCtx {
  RingPtr ring;
  UPoly q;       // monic, degree N >= 1
  unsigned power = 1;  // m
  UPoly qpow;    // q^m
  unsigned N = 0;

  std::size_t cap() const { return static_cast<std::size_t>(N) * power; }
};

using ModQCtxPtr = std::shared_ptr<const ModQCtx>;

inline ModQCtxPtr make_modq_ctx(const RingPtr& ring, const UPoly& q, unsigned power) {
  if (!upoly::is_monic(q) || upoly::deg(q) < 1)
    fail("invalid-input", "modulus base q must be monic of degree >= 1");
  if (power < 1) fail("invalid-input", "modulus power must be >= 1");
  auto ctx = std::make_shared<ModQCtx>();
  ctx->ring = ring;
  ctx->q = upoly::embed(q, ring);
  ctx->power = power;
  ctx->qpow = upoly::pow(ctx->q, power, ring);
  ctx->N = static_cast<unsigned>(upoly::deg(q));
  return ctx;
}

inline bool same_modq_ctx(const ModQCtxPtr& a, const ModQCtxPtr& b) {
  return a == b || (same_ring(a->ring, b->ring) && a->power == b->power &&
                    upoly::eq(a->q, b->q));
}

class ModQ {
public:
  ModQ() = default;

  static ModQ from_poly(const ModQCtxPtr& ctx, const UPoly& p) {
    ModQ x;
    x.ctx_ = ctx;
    x.rep_ = upoly::rem_monic(upoly::embed(p, ctx->ring), ctx->qpow);
    return x;
  }

  static ModQ zero(const ModQCtxPtr& ctx) {
    ModQ x;
    x.ctx_ = ctx;
    return x;
  }

  static ModQ one(const ModQCtxPtr& ctx) {
    return from_poly(ctx, upoly::constant(Scalar::one(ctx->ring)));
  }

  static ModQ constant(const ModQCtxPtr& ctx, const Scalar& c) {
    return from_poly(ctx, upoly::constant(Scalar::embed(ctx->ring, c)));
  }

  const ModQCtxPtr& ctx() const { return ctx_; }
  const UPoly& rep() const { return rep_; }
  bool is_zero() const { return rep_.empty(); }

  friend ModQ operator-(const ModQ& a) {
    ModQ x = a;
    x.rep_ = upoly::neg(x.rep_);
    return x;
  }

  friend ModQ operator+(const ModQ& a, const ModQ& b) {
    a.require_ctx(b);
    ModQ x;
    x.ctx_ = a.ctx_;
    x.rep_ = upoly::add(a.rep_, b.rep_);
    return x;
  }

  friend ModQ operator-(const ModQ& a, const ModQ& b) { return a + (-b); }

  friend ModQ operator*(const ModQ& a, const ModQ& b) {
    a.require_ctx(b);
    ModQ x;
    x.ctx_ = a.ctx_;
    x.rep_ = upoly::rem_monic(upoly::mul(a.rep_, b.rep_), a.ctx_->qpow);
    return x;
  }

  friend ModQ operator*(const Scalar& c, const ModQ& a) {
    ModQ x = a;
    x.rep_ = upoly::scale(Scalar::embed(a.ctx_->ring, c), x.rep_);
    return x;
  }

  friend bool operator==(const ModQ& a, const ModQ& b) {
    return same_modq_ctx(a.ctx_, b.ctx_) && upoly::eq(a.rep_, b.rep_);
  }
  friend bool operator!=(const ModQ& a, const ModQ& b) { return !(a == b); }

  // Reduce into R[t]/(q^m') for m' <= m (same ring and q).
  ModQ reduce_to(const ModQCtxPtr& target) const {
    if (!same_ring(target->ring, ctx_->ring) || !upoly::eq(target->q, ctx_->q) ||
        target->power > ctx_->power)
      fail("invalid-input", "reduction target is not a coarser modulus");
    return from_poly(target, rep_);
  }

  // Unit test: over a field, gcd(rep, q) must be 1; over a test ring the
  // residue modulo the nilpotent ideal must already certify invertibility.
  bool is_unit() const {
    RingPtr k = ctx_->ring->is_field() ? ctx_->ring : ctx_->ring->base();
    UPoly rbar = ctx_->ring->is_field() ? rep_ : upoly::residue(rep_);
    UPoly qbar = ctx_->ring->is_field() ? ctx_->q : upoly::residue(ctx_->q);
    if (upoly::is_zero(rbar)) return false;
    auto [g, s, t] = upoly::xgcd(rbar, qbar, k);
    return upoly::deg(g) == 0;
  }

  // x * invert(x) == 1 exactly; throws "not-a-unit" otherwise.
  ModQ invert() const {
    RingPtr ring = ctx_->ring;
    RingPtr k = ring->is_field() ? ring : ring->base();
    UPoly rbar = ring->is_field() ? rep_ : upoly::residue(rep_);
    UPoly qpow_bar = ring->is_field() ? ctx_->qpow : upoly::residue(ctx_->qpow);
    if (upoly::is_zero(rbar)) fail("not-a-unit", "residue is zero mod the nilpotent ideal");
    auto [g, s, t] = upoly::xgcd(rbar, qpow_bar, k);
    if (upoly::deg(g) != 0)
      fail("not-a-unit", "element shares a factor with the modulus");
    // s * rep == g mod qpow over k; normalize g to 1
    UPoly y0 = upoly::scale(g[0].inverse(), s);
    ModQ y = from_poly(ctx_, upoly::embed(y0, ring));
    // nilpotent correction: e := 1 - x*y0 has coefficients in m
    ModQ e = one(ctx_) - (*this) * y;
    ModQ acc = one(ctx_);
    ModQ pw = one(ctx_);
    for (unsigned j = 1; j < ring->nilpotency_order() && !e.is_zero(); ++j) {
      pw = pw * e;
      if (pw.is_zero()) break;
      acc = acc + pw;
    }
    ModQ inv = y * acc;
    if (!((*this) * inv == one(ctx_)))
      fail("not-a-unit", "inverse verification failed");
    return inv;
  }

private:
  void require_ctx(const ModQ& o) const {
    if (!same_modq_ctx(ctx_, o.ctx_))
      fail("mixed-carrier", "operands live in different quotient rings");
  }

  ModQCtxPtr ctx_;
  UPoly rep_;
};

inline ModQ one_like(const ModQ& x) { return ModQ::one(x.ctx()); }

struct ModQContext {
  ModQCtxPtr ctx;
  ModQ constant(const Scalar& c) const { return ModQ::constant(ctx, c); }
};

struct SeriesContext {
  RingPtr ring;
  unsigned T;
  TruncSeries constant(const Scalar& c) const {
    TruncSeries s = TruncSeries::zero(ring, T);
    return s + Scalar::embed(ring, c) * TruncSeries::one(ring, T);
  }
};

}  // namespace newtonarc

#endif
