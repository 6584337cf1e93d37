#ifndef NEWTONARC_ZR_HPP
#define NEWTONARC_ZR_HPP

// The finite-type approximations Z_r: an R-point is a triple (q, xbar, ybar)
// with q monic of degree N, xbar modulo q^r, ybar modulo q^{r-1}, subject to
//
//   (3)  f(xbar, ybar) == 0            mod q^{r-1}
//   (4)  Q(xbar, ybar) == 0            mod q
//   (5)  Chat * f(xbar, ytilde) == 0   mod q^r   (any lift ytilde of ybar)
//   (6)  q^{-1} Q(xbar, ybar) invertible in R[t]/(q^{r-2})   (only r >= 3)
//
// Levels are connected by the forgetful map and, for r >= 3, by the Newton
// lift ybar' = ytilde - h, h = (q^{-1}Q)^{-1} * q^{-1} * Chat f(xbar,ytilde),
// which inverts it exactly.  The arc <-> Z_r reductions and the tower-based
// solver live here too.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "newtonarc/modq.hpp"
#include "newtonarc/system.hpp"
#include "newtonarc/weierstrass.hpp"

namespace newtonarc {

struct ZrPoint {
  SystemPtr S;
  unsigned r = 2;  // level, >= 2
  RingPtr R;       // point ring
  UPoly q;         // monic of degree N >= 1 over R
  std::vector<ModQ> xbar;  // n entries mod q^r
  std::vector<ModQ> ybar;  // l entries mod q^{r-1}
};

// A point of Z_r x_{V_r} V_{r+1}: xbar carries one extra level of precision.
struct ZrExtPoint {
  SystemPtr S;
  unsigned r = 2;
  RingPtr R;
  UPoly q;
  std::vector<ModQ> xbar;  // n entries mod q^{r+1}
  std::vector<ModQ> ybar;  // l entries mod q^{r-1}
};

struct MembershipReport {
  bool pass = true;
  std::vector<int> failed;  // subset of {3,4,5,6}
  std::vector<std::string> details;

  void flag(int cond, std::string what) {
    pass = false;
    failed.push_back(cond);
    details.push_back(std::move(what));
  }
};

inline ZrPoint make_zr_point(const SystemPtr& S, unsigned r, const RingPtr& R,
                             const UPoly& q, const std::vector<UPoly>& xpolys,
                             const std::vector<UPoly>& ypolys) {
  if (r < 2) fail("precondition-violated", "Z_r needs r >= 2");
  if (xpolys.size() != S->n || ypolys.size() != S->l)
    fail("variable-mismatch", "coordinate count does not match the system");
  ZrPoint p;
  p.S = S;
  p.r = r;
  p.R = R;
  p.q = upoly::embed(q, R);
  auto ctx_r = make_modq_ctx(R, p.q, r);
  auto ctx_r1 = make_modq_ctx(R, p.q, r - 1);
  for (const auto& xp : xpolys) p.xbar.push_back(ModQ::from_poly(ctx_r, xp));
  for (const auto& yp : ypolys) p.ybar.push_back(ModQ::from_poly(ctx_r1, yp));
  return p;
}

inline ZrExtPoint make_zr_ext_point(const SystemPtr& S, unsigned r, const RingPtr& R,
                                    const UPoly& q, const std::vector<UPoly>& xpolys,
                                    const std::vector<UPoly>& ypolys) {
  if (r < 2) fail("precondition-violated", "Z_r needs r >= 2");
  ZrExtPoint p;
  p.S = S;
  p.r = r;
  p.R = R;
  p.q = upoly::embed(q, R);
  auto ctx_top = make_modq_ctx(R, p.q, r + 1);
  auto ctx_r1 = make_modq_ctx(R, p.q, r - 1);
  for (const auto& xp : xpolys) p.xbar.push_back(ModQ::from_poly(ctx_top, xp));
  for (const auto& yp : ypolys) p.ybar.push_back(ModQ::from_poly(ctx_r1, yp));
  return p;
}

inline bool zr_equal(const ZrPoint& a, const ZrPoint& b) {
  if (a.r != b.r || !same_ring(a.R, b.R) || !upoly::eq(a.q, b.q)) return false;
  for (std::size_t i = 0; i < a.xbar.size(); ++i)
    if (!upoly::eq(a.xbar[i].rep(), b.xbar[i].rep())) return false;
  for (std::size_t i = 0; i < a.ybar.size(); ++i)
    if (!upoly::eq(a.ybar[i].rep(), b.ybar[i].rep())) return false;
  return true;
}

inline bool zr_ext_equal(const ZrExtPoint& a, const ZrExtPoint& b) {
  if (a.r != b.r || !same_ring(a.R, b.R) || !upoly::eq(a.q, b.q)) return false;
  for (std::size_t i = 0; i < a.xbar.size(); ++i)
    if (!upoly::eq(a.xbar[i].rep(), b.xbar[i].rep())) return false;
  for (std::size_t i = 0; i < a.ybar.size(); ++i)
    if (!upoly::eq(a.ybar[i].rep(), b.ybar[i].rep())) return false;
  return true;
}

namespace detail {

// Shared membership machinery over raw coordinate polynomials.
inline MembershipReport check_conditions(const SystemPtr& S, unsigned r, const RingPtr& R,
                                         const UPoly& q, const std::vector<UPoly>& xps,
                                         const std::vector<UPoly>& yps) {
  MembershipReport rep;
  auto ctx_rm1 = make_modq_ctx(R, q, r - 1);
  auto ctx_r = make_modq_ctx(R, q, r);

  auto eval_modq = [&](const MPoly& p, const ModQCtxPtr& ctx) {
    std::map<std::string, ModQ> point;
    for (unsigned i = 0; i < S->n; ++i)
      point.emplace(S->xvars[i], ModQ::from_poly(ctx, xps[i]));
    for (unsigned j = 0; j < S->l; ++j)
      point.emplace(S->yvars[j], ModQ::from_poly(ctx, yps[j]));
    return eval_poly(p, point, ModQContext{ctx});
  };

  // (3) f == 0 mod q^{r-1}
  for (unsigned i = 0; i < S->l; ++i)
    if (!eval_modq(S->f[i], ctx_rm1).is_zero()) {
      rep.flag(3, "f_" + std::to_string(i + 1) + " != 0 mod q^{r-1}");
      break;
    }

  // (4) Q == 0 mod q
  ModQ Qval = eval_modq(S->Q, ctx_rm1);
  auto [qinvQ, rem4] = upoly::divrem_monic(Qval.rep(), q);
  if (r == 2) {
    auto ctx_1 = make_modq_ctx(R, q, 1);
    if (!eval_modq(S->Q, ctx_1).is_zero()) rep.flag(4, "Q != 0 mod q");
  } else if (!upoly::is_zero(rem4)) {
    rep.flag(4, "Q != 0 mod q");
  }

  // (5) Chat f == 0 mod q^r, computed with the canonical lift of ybar
  for (unsigned i = 0; i < S->l; ++i) {
    ModQ acc = ModQ::zero(ctx_r);
    for (unsigned j = 0; j < S->l; ++j)
      acc = acc + eval_modq(S->Chat.at(i, j), ctx_r) * eval_modq(S->f[j], ctx_r);
    if (!acc.is_zero()) {
      rep.flag(5, "(Chat f)_" + std::to_string(i + 1) + " != 0 mod q^r");
      break;
    }
  }

  // (6) q^{-1} Q invertible in R[t]/(q^{r-2}); vacuous for r = 2
  if (r >= 3) {
    if (!upoly::is_zero(rem4)) {
      rep.flag(6, "q^{-1} Q undefined because (4) fails");
    } else {
      auto ctx_rm2 = make_modq_ctx(R, q, r - 2);
      if (!ModQ::from_poly(ctx_rm2, qinvQ).is_unit())
        rep.flag(6, "q^{-1} Q is not invertible mod q^{r-2}");
    }
  }
  return rep;
}

inline std::vector<UPoly> reps(const std::vector<ModQ>& v) {
  std::vector<UPoly> out;
  out.reserve(v.size());
  for (const auto& m : v) out.push_back(m.rep());
  return out;
}

}  // namespace detail

inline MembershipReport check_membership(const ZrPoint& p) {
  return detail::check_conditions(p.S, p.r, p.R, p.q, detail::reps(p.xbar),
                                  detail::reps(p.ybar));
}

inline MembershipReport check_membership(const ZrExtPoint& p) {
  return detail::check_conditions(p.S, p.r, p.R, p.q, detail::reps(p.xbar),
                                  detail::reps(p.ybar));
}

// True iff Chat*f(xbar, ytilde) mod q^r agrees for two lifts of ybar; the
// well-definedness claim behind condition (5).
inline bool lift_independence_check(const ZrPoint& p, const std::vector<UPoly>& lift1,
                                    const std::vector<UPoly>& lift2) {
  auto ctx_rm1 = make_modq_ctx(p.R, p.q, p.r - 1);
  auto ctx_r = make_modq_ctx(p.R, p.q, p.r);
  for (unsigned j = 0; j < p.S->l; ++j) {
    if (!upoly::eq(ModQ::from_poly(ctx_rm1, lift1[j]).rep(), p.ybar[j].rep()) ||
        !upoly::eq(ModQ::from_poly(ctx_rm1, lift2[j]).rep(), p.ybar[j].rep()))
      fail("precondition-violated", "lifts do not reduce to ybar");
  }
  auto value = [&](const std::vector<UPoly>& lift) {
    std::map<std::string, ModQ> point;
    for (unsigned i = 0; i < p.S->n; ++i)
      point.emplace(p.S->xvars[i], p.xbar[i].reduce_to(ctx_r));
    for (unsigned j = 0; j < p.S->l; ++j)
      point.emplace(p.S->yvars[j], ModQ::from_poly(ctx_r, lift[j]));
    std::vector<ModQ> out;
    for (unsigned i = 0; i < p.S->l; ++i) {
      ModQ acc = ModQ::zero(ctx_r);
      for (unsigned j = 0; j < p.S->l; ++j)
        acc = acc + eval_poly(p.S->Chat.at(i, j), point, ModQContext{ctx_r}) *
                        eval_poly(p.S->f[j], point, ModQContext{ctx_r});
      out.push_back(acc);
    }
    return out;
  };
  auto v1 = value(lift1), v2 = value(lift2);
  for (unsigned i = 0; i < p.S->l; ++i)
    if (!(v1[i] == v2[i])) return false;
  return true;
}

// Forget one level: Z_{r+1} point -> point of Z_r x_{V_r} V_{r+1}.
inline ZrExtPoint forget(const ZrPoint& p) {
  if (p.r < 3) fail("precondition-violated", "forgetting below level 3 leaves no ext point");
  ZrExtPoint e;
  e.S = p.S;
  e.r = p.r - 1;
  e.R = p.R;
  e.q = p.q;
  e.xbar = p.xbar;  // ctx q^{p.r} = q^{(e.r)+1}
  auto ctx = make_modq_ctx(p.R, p.q, e.r - 1);
  for (const auto& y : p.ybar) e.ybar.push_back(y.reduce_to(ctx));
  return e;
}

// Newton's formula: the inverse of the forgetful map for r >= 3.
inline ZrPoint newton_inverse(const ZrExtPoint& e) {
  if (e.r < 3)
    fail("precondition-violated",
         "Newton's formula needs r >= 3 (the level-2 map is not invertible)");
  auto pre = check_membership(e);
  if (!pre.pass) fail("precondition-violated", "input fails membership: " + pre.details[0]);

  const SystemPtr& S = e.S;
  const RingPtr& R = e.R;
  unsigned r = e.r;
  auto ctx_top = make_modq_ctx(R, e.q, r + 1);
  auto ctx_r = make_modq_ctx(R, e.q, r);
  auto ctx_2 = make_modq_ctx(R, e.q, 2);
  auto ctx_1 = make_modq_ctx(R, e.q, 1);

  // A = Chat f(xbar, ytilde) mod q^{r+1}; well defined thanks to (3)-(5)
  std::map<std::string, ModQ> point;
  for (unsigned i = 0; i < S->n; ++i) point.emplace(S->xvars[i], e.xbar[i]);
  for (unsigned j = 0; j < S->l; ++j)
    point.emplace(S->yvars[j], ModQ::from_poly(ctx_top, e.ybar[j].rep()));

  UPoly qr = upoly::pow(e.q, r, R);
  std::vector<UPoly> s_vec;
  for (unsigned i = 0; i < S->l; ++i) {
    ModQ acc = ModQ::zero(ctx_top);
    for (unsigned j = 0; j < S->l; ++j)
      acc = acc + eval_poly(S->Chat.at(i, j), point, ModQContext{ctx_top}) *
                      eval_poly(S->f[j], point, ModQContext{ctx_top});
    auto [s, rem] = upoly::divrem_monic(acc.rep(), qr);
    if (!upoly::is_zero(rem))
      fail("precondition-violated", "Chat f not divisible by q^r");
    s_vec.push_back(std::move(s));
  }

  // w = q^{-1} Q mod q, inverted mod q
  std::map<std::string, ModQ> point2;
  for (unsigned i = 0; i < S->n; ++i) point2.emplace(S->xvars[i], e.xbar[i].reduce_to(ctx_2));
  for (unsigned j = 0; j < S->l; ++j)
    point2.emplace(S->yvars[j], ModQ::from_poly(ctx_2, e.ybar[j].rep()));
  ModQ Qval = eval_poly(S->Q, point2, ModQContext{ctx_2});
  auto [w, remq] = upoly::divrem_monic(Qval.rep(), e.q);
  if (!upoly::is_zero(remq)) fail("precondition-violated", "Q not divisible by q");
  ModQ winv = ModQ::from_poly(ctx_1, w);
  if (!winv.is_unit()) fail("non-invertible", "q^{-1} Q is not a unit mod q");
  winv = winv.invert();

  // h = q^{r-1} * (winv * s mod q); ybar' = ytilde - h mod q^r
  UPoly qr1 = upoly::pow(e.q, r - 1, R);
  ZrPoint out;
  out.S = S;
  out.r = r + 1;
  out.R = R;
  out.q = e.q;
  out.xbar = e.xbar;  // ctx q^{r+1}
  for (unsigned j = 0; j < S->l; ++j) {
    ModQ corr = winv * ModQ::from_poly(ctx_1, s_vec[j]);
    UPoly h = upoly::mul(qr1, corr.rep());
    out.ybar.push_back(ModQ::from_poly(ctx_r, upoly::sub(e.ybar[j].rep(), h)));
  }
  auto post = check_membership(out);
  if (!post.pass)
    fail("no-solution", "Newton lift failed membership: " + post.details[0]);
  return out;
}

// Reduce a passing point to a lower level (redundancy of the conditions).
inline ZrPoint reduce_level(const ZrPoint& p, unsigned r2) {
  if (r2 < 2 || r2 > p.r) fail("precondition-violated", "2 <= r' <= r required");
  return make_zr_point(p.S, r2, p.R, p.q, detail::reps(p.xbar), detail::reps(p.ybar));
}

// ---------------------------------------------------------------------------
// Arcs
// ---------------------------------------------------------------------------

struct Arc {
  std::vector<TruncSeries> x;  // n coordinates
  std::vector<TruncSeries> y;  // l coordinates
};

inline bool arc_equal(const Arc& a, const Arc& b) {
  if (a.x.size() != b.x.size() || a.y.size() != b.y.size()) return false;
  for (std::size_t i = 0; i < a.x.size(); ++i)
    if (!(a.x[i] == b.x[i])) return false;
  for (std::size_t i = 0; i < a.y.size(); ++i)
    if (!(a.y[i] == b.y[i])) return false;
  return true;
}

inline std::vector<TruncSeries> eval_system_at_arc(const SystemPtr& S, const Arc& arc) {
  const RingPtr& A = arc.x.at(0).ring();
  unsigned T = arc.x[0].trunc();
  for (const auto& s : arc.x) T = std::min(T, s.trunc());
  for (const auto& s : arc.y) T = std::min(T, s.trunc());
  std::map<std::string, TruncSeries> point;
  for (unsigned i = 0; i < S->n; ++i) point.emplace(S->xvars[i], arc.x[i].truncate(T));
  for (unsigned j = 0; j < S->l; ++j) point.emplace(S->yvars[j], arc.y[j].truncate(T));
  std::vector<TruncSeries> out;
  for (unsigned i = 0; i < S->l; ++i)
    out.push_back(eval_poly(S->f[i], point, SeriesContext{A, T}));
  return out;
}

inline bool arc_on_x(const SystemPtr& S, const Arc& arc) {
  for (const auto& v : eval_system_at_arc(S, arc))
    if (!v.is_zero()) return false;
  return true;
}

// Reduce an arc to a Z_r point: q is the Weierstrass divisor of Q(x(t),y(t)),
// xbar = x mod q^r, ybar = y mod q^{r-1}.
inline ZrPoint arc_to_zr(const SystemPtr& S, const Arc& arc, unsigned r) {
  if (arc.x.size() != S->n || arc.y.size() != S->l)
    fail("variable-mismatch", "arc coordinate count does not match the system");
  const RingPtr& A = arc.x[0].ring();
  unsigned T = arc.x[0].trunc();
  for (const auto& s : arc.x) T = std::min(T, s.trunc());
  for (const auto& s : arc.y) T = std::min(T, s.trunc());

  std::map<std::string, TruncSeries> point;
  for (unsigned i = 0; i < S->n; ++i) point.emplace(S->xvars[i], arc.x[i].truncate(T));
  for (unsigned j = 0; j < S->l; ++j) point.emplace(S->yvars[j], arc.y[j].truncate(T));
  TruncSeries Qs = eval_poly(S->Q, point, SeriesContext{A, T});
  auto w = weierstrass_divide(Qs);  // residue-is-zero propagates

  std::vector<UPoly> xps, yps;
  for (const auto& s : arc.x) xps.push_back(s.poly());
  for (const auto& s : arc.y) yps.push_back(s.poly());
  ZrPoint p = make_zr_point(S, r, A, w.q, xps, yps);
  auto rep = check_membership(p);
  if (!rep.pass) {
    if (!arc_on_x(S, arc)) fail("not-on-X", "arc does not satisfy f = 0 up to truncation");
    fail("insufficient-truncation",
         "arc truncation too small for level " + std::to_string(r) + ": " + rep.details[0]);
  }
  return p;
}

// Reconstruct the unique deformation arc from (zr, tail).  Exact modular
// arithmetic: the tower Z_r -> Z_{r+1} -> ... is climbed with Newton's
// formula until q^{level-1} covers t^T with nilpotency slack, then the
// canonical representative is truncated.  Over a field the only deformation
// of gamma0 is gamma0 itself.
inline Arc solve_z_system(const SystemPtr& S, const Arc& gamma0, const ZrPoint& zr,
                          std::vector<UPoly> tail, unsigned T) {
  const RingPtr& A = zr.R;
  unsigned N = static_cast<unsigned>(upoly::deg(zr.q));
  unsigned r = zr.r;
  if (tail.empty()) tail.assign(S->n, upoly::zero());
  if (tail.size() != S->n) fail("variable-mismatch", "tail needs n components");

  auto mem = check_membership(zr);
  if (!mem.pass) fail("no-solution", "point fails membership: " + mem.details[0]);

  // gamma0 residue checks: q == t^N mod m, coordinates reduce to gamma0
  UPoly qbar = upoly::residue(zr.q);
  for (unsigned i = 0; i + 1 < qbar.size(); ++i)
    if (!qbar[i].is_zero())
      fail("no-solution", "q does not reduce to t^N, so the point is no gamma0-deformation");

  std::vector<UPoly> xfull;
  UPoly qr = upoly::pow(zr.q, r, A);
  for (unsigned i = 0; i < S->n; ++i)
    xfull.push_back(upoly::add(zr.xbar[i].rep(), upoly::mul(qr, upoly::embed(tail[i], A))));

  auto to_series = [&](const UPoly& p) { return TruncSeries::from_poly(A, p, T); };

  RingPtr k = A->is_field() ? A : A->base();
  for (unsigned i = 0; i < S->n; ++i) {
    TruncSeries res = to_series(xfull[i]).residue();
    if (!(res == gamma0.x[i].truncate(T).residue()))
      fail("no-solution", "x-part does not reduce to gamma0");
  }
  {
    // ybar must reduce to gamma0's y modulo t^{N(r-1)}
    unsigned Ty = std::min(T, N * (r - 1));
    for (unsigned j = 0; j < S->l; ++j) {
      TruncSeries res = TruncSeries::from_poly(A, zr.ybar[j].rep(), Ty).residue();
      if (!(res == gamma0.y[j].truncate(Ty).residue()))
        fail("no-solution", "y-part does not reduce to gamma0");
    }
  }

  Arc out;
  for (const auto& xp : xfull) out.x.push_back(to_series(xp));

  if (A->is_field()) {
    // base case of the induction: the only deformation over k is gamma0
    for (unsigned j = 0; j < S->l; ++j) out.y.push_back(gamma0.y[j].truncate(T));
    if (!arc_on_x(S, out)) fail("no-solution", "gamma0 data is inconsistent");
    return out;
  }

  if (r < 3)
    fail("precondition-violated",
         "solving from level 2 over a test ring is not supported; lift the data to r >= 3");

  unsigned a = A->nilpotency_order();
  unsigned top = (T + N - 1) / N + a + 1;  // q^{top-1} covers t^T with m-slack
  ZrPoint cur = zr;
  while (cur.r < top) {
    ZrExtPoint ext;
    ext.S = S;
    ext.r = cur.r;
    ext.R = A;
    ext.q = cur.q;
    auto ctx_up = make_modq_ctx(A, cur.q, cur.r + 1);
    for (const auto& xp : xfull) ext.xbar.push_back(ModQ::from_poly(ctx_up, xp));
    ext.ybar = cur.ybar;
    cur = newton_inverse(ext);
  }
  for (unsigned j = 0; j < S->l; ++j) out.y.push_back(to_series(cur.ybar[j].rep()));
  if (!arc_on_x(S, out)) fail("insufficient-truncation", "solution did not close mod t^T");
  return out;
}

// ---------------------------------------------------------------------------
// The level-2 counterexample scan for f = y(y - P(x)), n = l = N = 1
// ---------------------------------------------------------------------------

struct R2Witness {
  UPoly q;     // monic degree 1
  UPoly xbar;  // deg < 3
  UPoly ybar;  // deg < 1
  unsigned fiber_size = 0;
};

struct R2ScanReport {
  bool degenerate = false;
  std::string degenerate_reason;
  std::uint64_t z3_points = 0;
  std::uint64_t ext_points = 0;
  std::vector<R2Witness> empty_fibers;
  std::vector<R2Witness> multi_fibers;
};

inline R2ScanReport r2_counterexample_scan(const MPoly& P, std::uint64_t p,
                                           std::uint64_t budget = 1000000) {
  R2ScanReport report;
  auto Fp = Ring::prime_field(p);
  if (p == 2) {
    report.degenerate = true;
    report.degenerate_reason = "characteristic 2: Q = 2y - P(x) = P(x) is constant in y";
    return report;
  }
  std::vector<std::string> vars = {"x", "y"};
  MPoly Pl = P.embed_ring(Fp).lift_vars(vars);
  if (Pl.is_zero()) {
    report.degenerate = true;
    report.degenerate_reason = "P = 0: f = y^2 and Q = 2y vanishes on all of X";
    return report;
  }
  MPoly y = MPoly::variable(Fp, vars, "y");
  SystemPtr S = build_system({y * (y - Pl)}, 1, 1);

  // q monic of degree 1, xbar deg < 3, ybar(level 3) deg < 2: p^6 candidates
  // but membership prunes; the ext side scans p^5.
  double work = static_cast<double>(p) * p * p * p * (p * p + p);
  if (work > static_cast<double>(budget))
    fail("search-space-too-large", "enumeration would exceed the configured budget");

  auto scalars = [&]() {
    std::vector<Scalar> out;
    for (std::uint64_t v = 0; v < p; ++v) out.push_back(Scalar::of_int(Fp, static_cast<long long>(v)));
    return out;
  }();

  struct Key {
    std::vector<std::uint64_t> v;
    bool operator<(const Key& o) const { return v < o.v; }
  };
  auto key_of = [&](const UPoly& q, const UPoly& xb, const UPoly& yb) {
    Key k;
    auto push = [&](const UPoly& u, std::size_t width) {
      for (std::size_t i = 0; i < width; ++i)
        k.v.push_back(i < u.size() ? u[i].fp() : 0);
    };
    push(q, 2);
    push(xb, 3);
    push(yb, 1);
    return k;
  };

  std::map<Key, R2Witness> ext;  // ext point -> witness skeleton
  for (const auto& c : scalars) {
    UPoly q = {c, Scalar::one(Fp)};
    for (const auto& x0 : scalars)
      for (const auto& x1 : scalars)
        for (const auto& x2 : scalars) {
          UPoly xb = {x0, x1, x2};
          upoly::trim(xb);
          for (const auto& y0 : scalars) {
            UPoly yb = {y0};
            upoly::trim(yb);
            auto rep = detail::check_conditions(S, 2, Fp, q, {xb}, {yb});
            if (!rep.pass) continue;
            R2Witness w;
            w.q = q;
            w.xbar = xb;
            w.ybar = yb;
            ext.emplace(key_of(q, xb, yb), std::move(w));
            ++report.ext_points;
          }
        }
  }

  for (const auto& c : scalars) {
    UPoly q = {c, Scalar::one(Fp)};
    for (const auto& x0 : scalars)
      for (const auto& x1 : scalars)
        for (const auto& x2 : scalars) {
          UPoly xb = {x0, x1, x2};
          upoly::trim(xb);
          for (const auto& y0 : scalars)
            for (const auto& y1 : scalars) {
              UPoly yb = {y0, y1};
              upoly::trim(yb);
              auto rep = detail::check_conditions(S, 3, Fp, q, {xb}, {yb});
              if (!rep.pass) continue;
              ++report.z3_points;
              // phi_2: reduce ybar mod q
              UPoly yred = upoly::rem_monic(yb, q);
              auto it = ext.find(key_of(q, xb, yred));
              if (it != ext.end()) ++it->second.fiber_size;
            }
        }
  }

  for (auto& [k, w] : ext) {
    if (w.fiber_size == 0)
      report.empty_fibers.push_back(w);
    else if (w.fiber_size >= 2)
      report.multi_fibers.push_back(w);
  }
  return report;
}

}  // namespace newtonarc

#endif
