#ifndef NEWTONARC_GROUPOID_HPP
#define NEWTONARC_GROUPOID_HPP

// The groupoid in its explicit chart.  An arrow based at (x,y) on X is a pair
// (xi, eta) with
//
//   eta + Chat(x,y) * u(x,y,xi,eta) = 0   and   v(x,y,xi,eta) a unit,
//
// i.e. a point whose target (x + Q^r xi, y + Q^{r-1} eta) again lies on X.
// Composition is (xi1 + v1^r xi2, eta1 + v1^{r-1} eta2); v is multiplicative
// and equals Q(target)/Q(base).  Arrows are stored in source-chart
// coordinates; target-chart coordinates are derived on demand.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "newtonarc/system.hpp"

namespace newtonarc {

struct XPoint {
  std::vector<Scalar> x;  // n entries
  std::vector<Scalar> y;  // l entries
};

inline bool point_equal(const XPoint& a, const XPoint& b) {
  if (a.x.size() != b.x.size() || a.y.size() != b.y.size()) return false;
  for (std::size_t i = 0; i < a.x.size(); ++i)
    if (!(a.x[i] == b.x[i])) return false;
  for (std::size_t i = 0; i < a.y.size(); ++i)
    if (!(a.y[i] == b.y[i])) return false;
  return true;
}

namespace detail {

inline std::map<std::string, Scalar> point_map(const SystemPtr& S, const XPoint& p) {
  std::map<std::string, Scalar> m;
  for (unsigned i = 0; i < S->n; ++i) m.emplace(S->xvars[i], p.x[i]);
  for (unsigned j = 0; j < S->l; ++j) m.emplace(S->yvars[j], p.y[j]);
  return m;
}

}  // namespace detail

inline bool point_on_x(const SystemPtr& S, const XPoint& p, const RingPtr& R) {
  auto m = detail::point_map(S, p);
  for (const auto& fi : S->f)
    if (!eval_at_scalars(fi, m, R).is_zero()) return false;
  return true;
}

inline Scalar q_at(const SystemPtr& S, const XPoint& p, const RingPtr& R) {
  return eval_at_scalars(S->Q, detail::point_map(S, p), R);
}

struct Arrow {
  SystemPtr S;
  unsigned r = 2;
  RingPtr R;
  XPoint base;
  std::vector<Scalar> xi;   // n entries
  std::vector<Scalar> eta;  // l entries
  Scalar v;                 // unit, = v(x,y,xi,eta) = Q(target)/Q(base)
};

// Validating constructor: checks the base is on X, the defining equation
// holds, and v is a unit.
inline Arrow make_arrow(const SystemPtr& S, unsigned r, const RingPtr& R,
                        const XPoint& base, std::vector<Scalar> xi,
                        std::vector<Scalar> eta) {
  if (xi.size() != S->n || eta.size() != S->l)
    fail("variable-mismatch", "arrow coordinate count does not match the system");
  if (!point_on_x(S, base, R)) fail("not-on-X", "arrow base does not satisfy f = 0");
  auto cp = chart_polys(S, r);
  std::map<std::string, Scalar> m = detail::point_map(S, base);
  for (unsigned i = 0; i < S->n; ++i) m.emplace(cp->xi_names[i], xi[i]);
  for (unsigned j = 0; j < S->l; ++j) m.emplace(cp->eta_names[j], eta[j]);

  std::vector<Scalar> uval;
  for (unsigned j = 0; j < S->l; ++j) uval.push_back(eval_at_scalars(cp->u[j], m, R));
  for (unsigned i = 0; i < S->l; ++i) {
    Scalar acc = eta[i];
    for (unsigned j = 0; j < S->l; ++j)
      acc = acc + eval_at_scalars(S->Chat.at(i, j), m, R) * uval[j];
    if (!acc.is_zero())
      fail("invalid-arrow", "defining equation eta + Chat u = 0 fails");
  }
  Scalar v = eval_at_scalars(cp->v, m, R);
  if (!v.is_unit()) fail("invalid-arrow", "v(x,y,xi,eta) is not a unit");
  Arrow a;
  a.S = S;
  a.r = r;
  a.R = R;
  a.base = base;
  a.xi = std::move(xi);
  a.eta = std::move(eta);
  a.v = std::move(v);
  return a;
}

inline Arrow unit_arrow(const SystemPtr& S, unsigned r, const RingPtr& R,
                        const XPoint& base) {
  return make_arrow(S, r, R, base,
                    std::vector<Scalar>(S->n, Scalar::zero(R)),
                    std::vector<Scalar>(S->l, Scalar::zero(R)));
}

inline XPoint target(const Arrow& a) {
  Scalar Qb = q_at(a.S, a.base, a.R);
  Scalar Qr = Qb.pow(a.r);
  Scalar Qr1 = Qb.pow(a.r - 1);
  XPoint t = a.base;
  for (unsigned i = 0; i < a.S->n; ++i) t.x[i] = t.x[i] + Qr * a.xi[i];
  for (unsigned j = 0; j < a.S->l; ++j) t.y[j] = t.y[j] + Qr1 * a.eta[j];
  return t;
}

// The unique arrow between two points off the different.
inline Arrow arrow_from_endpoints(const SystemPtr& S, unsigned r, const RingPtr& R,
                                  const XPoint& p, const XPoint& pt) {
  if (!point_on_x(S, p, R) || !point_on_x(S, pt, R))
    fail("not-on-X", "endpoints must satisfy f = 0");
  Scalar Qp = q_at(S, p, R);
  Scalar Qpt = q_at(S, pt, R);
  if (!Qp.is_unit() || !Qpt.is_unit())
    fail("on-the-different", "endpoints must lie off the different (Q a unit)");
  Scalar qr_inv = Qp.pow(-(static_cast<long long>(r)));
  Scalar qr1_inv = Qp.pow(-(static_cast<long long>(r) - 1));
  std::vector<Scalar> xi, eta;
  for (unsigned i = 0; i < S->n; ++i) xi.push_back((pt.x[i] - p.x[i]) * qr_inv);
  for (unsigned j = 0; j < S->l; ++j) eta.push_back((pt.y[j] - p.y[j]) * qr1_inv);
  Arrow a = make_arrow(S, r, R, p, std::move(xi), std::move(eta));
  if (!(a.v * Qp == Qpt)) fail("internal-error", "v != Q(target)/Q(base)");
  return a;
}

inline Arrow compose(const Arrow& a1, const Arrow& a2) {
  if (a1.S.get() != a2.S.get() || a1.r != a2.r || !same_ring(a1.R, a2.R))
    fail("endpoint-mismatch", "arrows belong to different groupoids");
  if (!point_equal(a2.base, target(a1)))
    fail("endpoint-mismatch", "second arrow is not based at the target of the first");
  Scalar vr = a1.v.pow(a1.r);
  Scalar vr1 = a1.v.pow(a1.r - 1);
  std::vector<Scalar> xi, eta;
  for (unsigned i = 0; i < a1.S->n; ++i) xi.push_back(a1.xi[i] + vr * a2.xi[i]);
  for (unsigned j = 0; j < a1.S->l; ++j) eta.push_back(a1.eta[j] + vr1 * a2.eta[j]);
  return make_arrow(a1.S, a1.r, a1.R, a1.base, std::move(xi), std::move(eta));
}

// Based at target(a): xi' = -v^{-r} xi, eta' = -v^{1-r} eta, v' = v^{-1};
// the coordinate form of the lift of the swap of X x X.
inline Arrow inverse(const Arrow& a) {
  long long r = a.r;
  Scalar vr_inv = a.v.pow(-r);
  Scalar vr1_inv = a.v.pow(1 - r);
  std::vector<Scalar> xi, eta;
  for (unsigned i = 0; i < a.S->n; ++i) xi.push_back(-(vr_inv * a.xi[i]));
  for (unsigned j = 0; j < a.S->l; ++j) eta.push_back(-(vr1_inv * a.eta[j]));
  return make_arrow(a.S, a.r, a.R, target(a), std::move(xi), std::move(eta));
}

// Target-chart coordinates of an arrow (xi~ = v^{-r} xi, eta~ = v^{1-r} eta).
inline std::pair<std::vector<Scalar>, std::vector<Scalar>> target_chart(const Arrow& a) {
  long long r = a.r;
  Scalar vr_inv = a.v.pow(-r);
  Scalar vr1_inv = a.v.pow(1 - r);
  std::vector<Scalar> xi, eta;
  for (const auto& c : a.xi) xi.push_back(vr_inv * c);
  for (const auto& c : a.eta) eta.push_back(vr1_inv * c);
  return {xi, eta};
}

// Level map: same base, (xi, eta) -> (Q(base) xi, Q(base) eta); sends level
// r+1 arrows to level r arrows with the same endpoints.
inline Arrow level_map(const Arrow& a) {
  if (a.r < 3) fail("precondition-violated", "level map needs source level r+1 >= 3");
  Scalar Qb = q_at(a.S, a.base, a.R);
  std::vector<Scalar> xi, eta;
  for (const auto& c : a.xi) xi.push_back(Qb * c);
  for (const auto& c : a.eta) eta.push_back(Qb * c);
  return make_arrow(a.S, a.r - 1, a.R, a.base, std::move(xi), std::move(eta));
}

// ---------------------------------------------------------------------------
// Fiber group schemes over the different
// ---------------------------------------------------------------------------

enum class FiberKind {
  additive,                    // G_a^n
  multiplicative_semidirect,   // G_m x| G_a^{n-1}
  two_torsion_times_additive,  // (Z/2Z) x G_a^n
};

inline std::string fiber_kind_name(FiberKind k) {
  switch (k) {
    case FiberKind::additive: return "additive";
    case FiberKind::multiplicative_semidirect: return "multiplicative-semidirect";
    case FiberKind::two_torsion_times_additive: return "two-torsion-times-additive";
  }
  return "?";
}

struct FiberGroupReport {
  SystemPtr S;
  unsigned r = 2;
  RingPtr R;
  XPoint z;
  FiberKind kind = FiberKind::additive;
  unsigned n = 0;
  // witness data
  std::optional<unsigned> multiplicity;  // exact when known (l = 1)
  bool multiplicity_at_least_3 = false;  // l > 1 normal form
  Scalar a_coeff;                        // eta^2 coefficient of f(x_z, y_z + eta), l = 1
  std::vector<Scalar> dfdx;              // (df/dx_i)(z), l = 1
  std::uint64_t characteristic = 0;
  bool z_singular = false;
};

// Classification of (Gamma_r)_z for z on the different.  Requires the normal
// form C(z) = 0 (l equal to the tangent-space dimension of the fiber); the
// coordinate change that achieves it is out of scope and its absence is
// reported as not-in-normal-form.
inline FiberGroupReport fiber_group(const SystemPtr& S, unsigned r, const RingPtr& R,
                                    const XPoint& z,
                                    std::optional<unsigned> multiplicity_hint = {}) {
  if (!point_on_x(S, z, R)) fail("not-on-X", "z must lie on X");
  auto pm = detail::point_map(S, z);
  if (q_at(S, z, R).is_unit())
    fail("not-on-different", "Q(z) must vanish (or be a non-unit) on the different");
  for (unsigned i = 0; i < S->l; ++i)
    for (unsigned j = 0; j < S->l; ++j)
      if (!eval_at_scalars(S->C.at(i, j), pm, R).is_zero())
        fail("not-in-normal-form", "C(z) != 0; apply the tangent-space normal form first");

  FiberGroupReport rep;
  rep.S = S;
  rep.r = r;
  rep.R = R;
  rep.z = z;
  rep.n = S->n;
  rep.characteristic = R->characteristic();

  if (S->l == 1) {
    // f(x_z, y_z + eta) as a univariate polynomial in eta
    std::vector<std::string> ev = {"eta"};
    std::map<std::string, MPoly> sub;
    for (unsigned i = 0; i < S->n; ++i)
      sub.emplace(S->xvars[i], MPoly::constant(R, ev, z.x[i]));
    sub.emplace(S->yvars[0], MPoly::constant(R, ev, z.y[0]) + MPoly::variable(R, ev, "eta"));
    MPoly fz = eval_poly(S->f[0].embed_ring(R), sub, MPolyContext{R, ev});
    unsigned m = 0;
    bool found = false;
    for (const auto& [e, c] : fz.terms()) {
      if (!found || e[0] < m) m = e[0];
      found = true;
    }
    if (found) {
      rep.multiplicity = m;
    } else {
      rep.multiplicity_at_least_3 = true;  // fiber equation vanishes identically
    }
    rep.a_coeff = Scalar::zero(R);
    auto it = fz.terms().find(ExpVec{2});
    if (it != fz.terms().end()) rep.a_coeff = it->second;
    for (unsigned i = 0; i < S->n; ++i)
      rep.dfdx.push_back(eval_at_scalars(partial_derivative(S->f[0], S->xvars[i]), pm, R));
    bool dfdx_zero = true;
    for (const auto& c : rep.dfdx)
      if (!c.is_zero()) dfdx_zero = false;
    rep.z_singular = dfdx_zero;  // C(z) = 0 already
  } else {
    // l > 1 in normal form: tangent dimension > 1, so multiplicity >= 3
    rep.multiplicity_at_least_3 = true;
    rep.a_coeff = Scalar::zero(R);
    if (multiplicity_hint) rep.multiplicity = multiplicity_hint;
  }
  if (multiplicity_hint) rep.multiplicity = multiplicity_hint;

  unsigned m_eff = rep.multiplicity ? *rep.multiplicity
                                    : (rep.multiplicity_at_least_3 ? 3u : 2u);
  if (r >= 3 || m_eff >= 3) {
    rep.kind = FiberKind::additive;
  } else if (rep.z_singular) {
    rep.kind = FiberKind::two_torsion_times_additive;
  } else if (rep.characteristic == 2) {
    rep.kind = FiberKind::additive;
  } else {
    rep.kind = FiberKind::multiplicative_semidirect;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Point enumeration and the fiber-group law fuzz
// ---------------------------------------------------------------------------

inline std::vector<Scalar> all_field_elements(const RingPtr& Fp) {
  std::vector<Scalar> out;
  for (std::uint64_t v = 0; v < Fp->prime(); ++v)
    out.push_back(Scalar::of_int(Fp, static_cast<long long>(v)));
  return out;
}

// Brute-force X(F_p); guarded enumeration over F_p^{n+l}.
inline std::vector<XPoint> enumerate_x_points(const SystemPtr& S, const RingPtr& Fp,
                                              bool only_off_different,
                                              std::uint64_t budget = 1000000) {
  double total = 1;
  for (unsigned i = 0; i < S->n + S->l; ++i) total *= static_cast<double>(Fp->prime());
  if (total > static_cast<double>(budget))
    fail("search-space-too-large", "point enumeration exceeds the budget");
  auto elems = all_field_elements(Fp);
  std::vector<XPoint> out;
  std::vector<std::size_t> idx(S->n + S->l, 0);
  for (;;) {
    XPoint p;
    for (unsigned i = 0; i < S->n; ++i) p.x.push_back(elems[idx[i]]);
    for (unsigned j = 0; j < S->l; ++j) p.y.push_back(elems[idx[S->n + j]]);
    if (point_on_x(S, p, Fp) && (!only_off_different || q_at(S, p, Fp).is_unit()))
      out.push_back(p);
    std::size_t i = 0;
    for (; i < idx.size(); ++i) {
      if (++idx[i] < elems.size()) break;
      idx[i] = 0;
    }
    if (i == idx.size()) break;
  }
  return out;
}

// All arrows based at z (enumerated over F_p^{n+l} chart coordinates).
inline std::vector<Arrow> enumerate_arrows_at(const SystemPtr& S, unsigned r,
                                              const RingPtr& Fp, const XPoint& z,
                                              std::uint64_t budget = 1000000) {
  double total = 1;
  for (unsigned i = 0; i < S->n + S->l; ++i) total *= static_cast<double>(Fp->prime());
  if (total > static_cast<double>(budget))
    fail("search-space-too-large", "arrow enumeration exceeds the budget");
  auto elems = all_field_elements(Fp);
  std::vector<Arrow> out;
  std::vector<std::size_t> idx(S->n + S->l, 0);
  for (;;) {
    std::vector<Scalar> xi, eta;
    for (unsigned i = 0; i < S->n; ++i) xi.push_back(elems[idx[i]]);
    for (unsigned j = 0; j < S->l; ++j) eta.push_back(elems[idx[S->n + j]]);
    try {
      out.push_back(make_arrow(S, r, Fp, z, xi, eta));
    } catch (const Error&) {
      // not a solution of the chart equations; skip
    }
    std::size_t i = 0;
    for (; i < idx.size(); ++i) {
      if (++idx[i] < elems.size()) break;
      idx[i] = 0;
    }
    if (i == idx.size()) break;
  }
  return out;
}

struct GroupFuzzResult {
  bool pass = true;
  std::uint64_t elements = 0;
  std::uint64_t checks = 0;
  std::vector<std::string> failures;

  void flag(std::string what) {
    pass = false;
    if (failures.size() < 16) failures.push_back(std::move(what));
  }
};

// Exhaustive group-law verification on the fiber over z: associativity,
// identity, inverses, multiplicativity of v, and for the two-torsion kind a
// branch homomorphism onto {0,1}.
inline GroupFuzzResult group_axiom_fuzz(const FiberGroupReport& rep) {
  GroupFuzzResult res;
  if (!rep.R->is_field() || rep.R->prime() == 0)
    fail("precondition-violated", "group fuzz enumerates over a prime field");
  auto arrows = enumerate_arrows_at(rep.S, rep.r, rep.R, rep.z);
  res.elements = arrows.size();
  auto find_index = [&](const Arrow& a) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < arrows.size(); ++i) {
      bool eq = true;
      for (unsigned k = 0; k < rep.S->n && eq; ++k)
        if (!(arrows[i].xi[k] == a.xi[k])) eq = false;
      for (unsigned k = 0; k < rep.S->l && eq; ++k)
        if (!(arrows[i].eta[k] == a.eta[k])) eq = false;
      if (eq) return i;
    }
    return std::nullopt;
  };

  Arrow e = unit_arrow(rep.S, rep.r, rep.R, rep.z);
  if (!find_index(e)) res.flag("identity (0,0) is not a fiber point");

  // branch sign for the two-torsion case: eta = 0 vs eta = -1/a
  auto branch = [&](const Arrow& a) -> int { return a.eta[0].is_zero() ? 0 : 1; };

  for (const auto& a : arrows) {
    Arrow l = compose(e, a);
    Arrow rr = compose(a, e);
    if (!find_index(l) || !(l.v == a.v)) res.flag("unit not left-neutral");
    if (!find_index(rr) || !(rr.v == a.v)) res.flag("unit not right-neutral");
    Arrow inv = inverse(a);  // fiber arrows have target z, so inverse is fiber too
    if (!find_index(inv)) res.flag("inverse escapes the fiber");
    Arrow prod = compose(a, inv);
    bool is_unit_arrow = true;
    for (const auto& c : prod.xi)
      if (!c.is_zero()) is_unit_arrow = false;
    for (const auto& c : prod.eta)
      if (!c.is_zero()) is_unit_arrow = false;
    if (!is_unit_arrow) res.flag("a * a^{-1} != unit");
    ++res.checks;
  }

  for (const auto& a : arrows)
    for (const auto& b : arrows) {
      Arrow ab = compose(a, b);
      if (!find_index(ab)) {
        res.flag("fiber not closed under composition");
        continue;
      }
      if (!(ab.v == a.v * b.v)) res.flag("v is not multiplicative");
      if (rep.kind == FiberKind::two_torsion_times_additive &&
          branch(ab) != (branch(a) + branch(b)) % 2)
        res.flag("branch map is not a homomorphism");
      ++res.checks;
    }

  for (const auto& a : arrows)
    for (const auto& b : arrows)
      for (const auto& c : arrows) {
        Arrow lhs = compose(compose(a, b), c);
        Arrow rhs = compose(a, compose(b, c));
        bool eq = true;
        for (unsigned k = 0; k < rep.S->n && eq; ++k)
          if (!(lhs.xi[k] == rhs.xi[k])) eq = false;
        for (unsigned k = 0; k < rep.S->l && eq; ++k)
          if (!(lhs.eta[k] == rhs.eta[k])) eq = false;
        if (!eq) res.flag("associativity fails");
        ++res.checks;
      }
  return res;
}

// ---------------------------------------------------------------------------
// Lie algebroid, to first order
// ---------------------------------------------------------------------------

// The n basis vectors w_i = (Q^r e_i, -Q^{r-1} Chat (df/dx_i)) at p, i.e. the
// dual-number solutions of the arrow equation at the unit.  Each is tangent
// to X; over Q(p) != 0 it is Q^r times the horizontal lift of d/dx_i.
inline std::vector<std::vector<Scalar>> lie_algebroid_basis(const SystemPtr& S, unsigned r,
                                                            const RingPtr& R,
                                                            const XPoint& p) {
  if (!point_on_x(S, p, R)) fail("not-on-X", "p must lie on X");
  auto pm = detail::point_map(S, p);
  Scalar Qp = q_at(S, p, R);
  Scalar Qr = Qp.pow(r);
  Scalar Qr1 = Qp.pow(r - 1);
  std::vector<std::vector<Scalar>> out;
  for (unsigned i = 0; i < S->n; ++i) {
    std::vector<Scalar> w(S->n + S->l, Scalar::zero(R));
    w[i] = Qr;
    // dfdx_i = (df_j/dx_i)_j
    std::vector<Scalar> dfdx;
    for (unsigned j = 0; j < S->l; ++j)
      dfdx.push_back(eval_at_scalars(partial_derivative(S->f[j], S->xvars[i]), pm, R));
    for (unsigned j = 0; j < S->l; ++j) {
      Scalar acc = Scalar::zero(R);
      for (unsigned k = 0; k < S->l; ++k)
        acc = acc + eval_at_scalars(S->Chat.at(j, k), pm, R) * dfdx[k];
      w[S->n + j] = -(Qr1 * acc);
    }
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace newtonarc

#endif
