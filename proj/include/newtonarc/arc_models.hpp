#ifndef NEWTONARC_ARC_MODELS_HPP
#define NEWTONARC_ARC_MODELS_HPP

// Desk-scale deformation-space factorizations.
//
// The xy+g family: on the hypersurface y*x_{n+1} + g(x_1..x_n) = 0 with base
// arc gamma0 = (0,..,0,t,0), every A-deformation factors through the data
// (alpha, u, xi_1..xi_n, xtilde_1..xtilde_n) subject only to g(xi) = 0:
//
//   x_{n+1}(t) = (t - alpha) u(t),   x_i(t) = xi_i + (t - alpha) xtilde_i(t),
//
// and y(t) = -g(x(t)) / ((t - alpha) u(t)) is determined (it exists iff
// g(xi) = 0, since the remainder of g(x(t)) at t = alpha is g(xi)).
//
// gk_split is the general split of a deformation arc into its finite-type
// Z_r data plus the free tail of x beyond q^r.

#include "newtonarc/zr.hpp"

namespace newtonarc {

struct XYExampleInstance {
  unsigned n = 1;   // number of constrained x-coordinates (x_{n+1} is free)
  MPoly g;          // in x_1..x_n over the base field, g(0) = 0
  RingPtr ring;     // the test ring A of the deformations
  unsigned T = 8;   // working truncation of arcs
  std::vector<std::string> gvars;
};

inline XYExampleInstance make_xy_instance(const MPoly& g, const RingPtr& A, unsigned T) {
  XYExampleInstance inst;
  inst.n = static_cast<unsigned>(g.vars().size());
  if (inst.n < 1) fail("invalid-input", "g needs at least one variable");
  if (!g.constant_coeff().is_zero()) fail("invalid-input", "g must vanish at 0");
  if (A->is_field()) fail("invalid-ring", "deformations live over a test ring");
  if (T < A->nilpotency_order() + 1)
    fail("insufficient-truncation", "need T >= a + 1 for the arc factorization");
  inst.g = g;
  inst.ring = A;
  inst.T = T;
  inst.gvars = g.vars();
  return inst;
}

// An arc on the hypersurface: x_1..x_n, the distinguished x_{n+1}, and y.
struct XYArc {
  std::vector<TruncSeries> x;  // n entries
  TruncSeries xlast;           // x_{n+1}
  TruncSeries y;
};

struct FactorizedDeformation {
  Scalar alpha;                     // in m
  TruncSeries u;                    // in 1 + m[[t]], truncation T-1
  std::vector<Scalar> xi;           // n entries in m with g(xi) = 0
  std::vector<TruncSeries> xtilde;  // n entries in m[[t]], truncation T-1
};

namespace detail {

// g evaluated exactly on polynomial coordinates (no truncation).
inline UPoly eval_g_exact(const XYExampleInstance& inst, const std::vector<UPoly>& xparts) {
  const RingPtr& A = inst.ring;
  std::vector<std::string> tv = {"t"};
  std::map<std::string, MPoly> point;
  for (unsigned i = 0; i < inst.n; ++i) {
    MPoly xp = MPoly::zero(A, tv);
    for (std::size_t k = 0; k < xparts[i].size(); ++k)
      xp.add_term(ExpVec{static_cast<unsigned>(k)}, xparts[i][k]);
    point.emplace(inst.gvars[i], xp);
  }
  MPoly val = eval_poly(inst.g.embed_ring(A), point, MPolyContext{A, tv});
  UPoly out;
  for (const auto& [e, c] : val.terms()) {
    if (e[0] >= out.size()) out.resize(e[0] + 1, Scalar::zero(A));
    out[e[0]] = c;
  }
  upoly::trim(out);
  return out;
}

// The determined y: -g(x)/((t-alpha) u), canonical modulo t^T.  Throws
// constraint-violated when g(xi) != 0 (no y exists).
inline TruncSeries recover_y(const XYExampleInstance& inst, const std::vector<UPoly>& xparts,
                             const Scalar& alpha, const TruncSeries& u) {
  const RingPtr& A = inst.ring;
  UPoly gval = eval_g_exact(inst, xparts);
  UPoly lin = {-alpha, Scalar::one(A)};  // t - alpha
  auto [quot, rem] = upoly::divrem_monic(gval, lin);
  if (!upoly::is_zero(rem))
    fail("constraint-violated", "g(xi) != 0 in A, so no y(t) exists");
  TruncSeries uinv = TruncSeries::from_poly(A, u.poly(), inst.T).inverse();
  return -(TruncSeries::from_poly(A, quot, inst.T) * uinv);
}

}  // namespace detail

inline FactorizedDeformation factorize(const XYExampleInstance& inst, const XYArc& arc) {
  const RingPtr& A = inst.ring;
  if (arc.x.size() != inst.n) fail("variable-mismatch", "arc needs n constrained coordinates");
  for (const auto& s : arc.x)
    if (s.trunc() < inst.T) fail("insufficient-truncation", "arc coordinates need T coefficients");
  if (arc.xlast.trunc() < inst.T || arc.y.trunc() + 1 < inst.T)
    fail("insufficient-truncation", "arc coordinates need T coefficients");

  // gamma0 reduction: x_i, y in m[[t]] and x_{n+1} == t mod m
  for (const auto& s : arc.x)
    if (!s.residue().is_zero()) fail("wrong-residue", "x_i must vanish mod m");
  if (!arc.y.residue().is_zero()) fail("wrong-residue", "y must vanish mod m");

  auto fa = factor_arc(arc.xlast.truncate(inst.T));  // validates residue t

  FactorizedDeformation F;
  F.alpha = fa.alpha;
  F.u = fa.u;
  std::vector<UPoly> xparts;
  for (unsigned i = 0; i < inst.n; ++i) {
    const TruncSeries& xs = arc.x[i];
    Scalar xi_i = xs.truncate(inst.T).eval_at(F.alpha);
    F.xi.push_back(xi_i);
    UPoly shifted = upoly::sub(xs.truncate(inst.T).poly(), upoly::constant(xi_i));
    UPoly lin = {-F.alpha, Scalar::one(A)};
    auto [quot, rem] = upoly::divrem_monic(shifted, lin);
    if (!upoly::is_zero(rem))
      fail("insufficient-truncation", "x_i - xi_i not divisible by t - alpha");
    F.xtilde.push_back(TruncSeries::from_poly(A, quot, inst.T - 1));
    xparts.push_back(xs.truncate(inst.T).poly());
  }

  // the constraint g(xi) = 0; surfaces as constraint-violated
  detail::recover_y(inst, xparts, F.alpha, F.u);

  // the arc itself must lie on the hypersurface
  TruncSeries lhs = arc.y.truncate(inst.T) * arc.xlast.truncate(inst.T);
  std::vector<std::string> tv = {"t"};
  TruncSeries gs = TruncSeries::from_poly(A, detail::eval_g_exact(inst, xparts), inst.T);
  if (!(lhs + gs).is_zero())
    fail("not-on-X", "arc does not satisfy y x_{n+1} + g(x) = 0 up to truncation");
  return F;
}

inline XYArc unfactorize(const XYExampleInstance& inst, const FactorizedDeformation& F) {
  const RingPtr& A = inst.ring;
  if (F.xi.size() != inst.n || F.xtilde.size() != inst.n)
    fail("variable-mismatch", "collection needs n entries");
  if (!(F.alpha.residue().is_zero())) fail("wrong-residue", "alpha must lie in m");
  if (!(F.u.residue() == TruncSeries::one(A->base(), F.u.trunc())))
    fail("wrong-residue", "u must lie in 1 + m[[t]]");
  UPoly lin = {-F.alpha, Scalar::one(A)};
  XYArc arc;
  std::vector<UPoly> xparts;
  for (unsigned i = 0; i < inst.n; ++i) {
    if (!F.xi[i].residue().is_zero() || !F.xtilde[i].residue().is_zero())
      fail("wrong-residue", "xi and xtilde must vanish mod m");
    UPoly xp = upoly::add(upoly::constant(F.xi[i]), upoly::mul(lin, F.xtilde[i].poly()));
    xparts.push_back(xp);
    arc.x.push_back(TruncSeries::from_poly(A, xp, inst.T));
  }
  arc.xlast = TruncSeries::from_poly(A, upoly::mul(lin, F.u.poly()), inst.T);
  arc.y = detail::recover_y(inst, xparts, F.alpha, F.u);  // constraint-violated if g(xi) != 0
  return arc;
}

// ---------------------------------------------------------------------------
// The general finite-type split: arc <-> (Z_r data, free tail of x)
// ---------------------------------------------------------------------------

struct GkSplit {
  ZrPoint zr;
  std::vector<UPoly> tail;  // x(t) = rep(xbar) + q^r * tail
};

inline GkSplit gk_split(const SystemPtr& S, const Arc& gamma0, const Arc& arc, unsigned r) {
  // the arc must be a deformation of gamma0
  for (unsigned i = 0; i < S->n; ++i) {
    unsigned T = std::min(arc.x[i].trunc(), gamma0.x[i].trunc());
    if (!(arc.x[i].residue().truncate(T) == gamma0.x[i].residue().truncate(T)))
      fail("wrong-residue", "arc does not reduce to gamma0");
  }
  for (unsigned j = 0; j < S->l; ++j) {
    unsigned T = std::min(arc.y[j].trunc(), gamma0.y[j].trunc());
    if (!(arc.y[j].residue().truncate(T) == gamma0.y[j].residue().truncate(T)))
      fail("wrong-residue", "arc does not reduce to gamma0");
  }
  GkSplit out;
  out.zr = arc_to_zr(S, arc, r);
  UPoly qr = upoly::pow(out.zr.q, r, out.zr.R);
  for (unsigned i = 0; i < S->n; ++i) {
    UPoly diff = upoly::sub(arc.x[i].poly(), out.zr.xbar[i].rep());
    out.tail.push_back(upoly::exact_div_monic(diff, qr));
  }
  return out;
}

}  // namespace newtonarc

#endif
