#ifndef NEWTONARC_WEIERSTRASS_HPP
#define NEWTONARC_WEIERSTRASS_HPP

// Weierstrass division over test rings: a truncated series F whose residue
// has vanishing order d factors uniquely as F = q*u with q monic of degree d
// congruent to t^d modulo the maximal ideal and u a unit.
//
// The algorithm runs an induction along the nilpotency filtration
// m ) m^2 ) ... ) m^a = 0: at each stage the residual error E = F - q*u lies
// one ideal power deeper, and the correction (dq, du) is read off from the
// division of E/u by the current q.  It terminates after at most a-1 stages.
// Precision demand: T >= a*d + 1 (conservative; the fuzz suite exercises
// T = a*d + 2).

#include "newtonarc/series.hpp"

namespace newtonarc {

struct WeierstrassFactorization {
  UPoly q;        // monic of degree d; q == t^d mod m
  TruncSeries u;  // unit with q*u == F up to F's truncation
  unsigned d = 0;
};

inline WeierstrassFactorization weierstrass_divide(const TruncSeries& F) {
  const RingPtr& ring = F.ring();
  unsigned T = F.trunc();
  unsigned a = ring->nilpotency_order();

  TruncSeries Fbar = F.residue();
  unsigned d = Fbar.order();
  if (d == Fbar.trunc())
    fail("residue-is-zero", "series vanishes modulo the maximal ideal");
  if (T < a * d + 1)
    fail("insufficient-truncation",
         "need T >= a*d+1 = " + std::to_string(a * d + 1) + ", have " + std::to_string(T));

  // stage 1: q = t^d, u = lift of Fbar / t^d
  UPoly q(d + 1, Scalar::zero(ring));
  q[d] = Scalar::one(ring);
  std::vector<Scalar> uc(T, Scalar::zero(ring));
  for (unsigned i = d; i < T; ++i) uc[i - d] = Scalar::embed(ring, Fbar.coeff(i));
  TruncSeries u = TruncSeries::from_coeffs(ring, std::move(uc));

  for (unsigned stage = 1; stage < std::max(a, 2u); ++stage) {
    TruncSeries E = F - poly_times_series(q, u);
    if (E.is_zero()) break;
    TruncSeries G = E * u.inverse();
    auto [H, rho] = upoly::divrem_monic(G.poly(), q);
    q = upoly::add(q, rho);
    q.resize(d + 1, Scalar::zero(ring));  // monic shape preserved (deg rho < d)
    u = u + poly_times_series(H, u);
  }

  if (!(F - poly_times_series(q, u)).is_zero())
    fail("insufficient-truncation", "reconstruction did not close at this precision");
  if (!u.is_unit()) fail("not-a-unit", "computed u is not a unit");
  return {std::move(q), std::move(u), d};
}

// Division with remainder by a monic polynomial, on the polynomial data of a
// truncated series: g = q*h + rem exactly, deg rem < deg q.  The quotient is
// reliable to order T - deg q and is returned at that truncation.
struct SeriesDivision {
  TruncSeries h;
  UPoly rem;
};

inline SeriesDivision divide_with_remainder(const TruncSeries& g, const UPoly& q) {
  if (!upoly::is_monic(q)) fail("invalid-input", "divisor must be monic");
  unsigned dq = static_cast<unsigned>(upoly::deg(q));
  if (g.trunc() <= dq)
    fail("insufficient-truncation", "series is shorter than the divisor");
  auto [h, rem] = upoly::divrem_monic(g.poly(), upoly::embed(q, g.ring()));
  return {TruncSeries::from_poly(g.ring(), h, g.trunc() - dq), rem};
}

// Degree-1 arc factorization x = (t - alpha) * u with alpha in m and
// u in 1 + m[[t]].  Requires the residue of x to be exactly t.
struct ArcFactor {
  Scalar alpha;
  TruncSeries u;  // truncation T - 1
};

inline ArcFactor factor_arc(const TruncSeries& x) {
  const RingPtr& ring = x.ring();
  TruncSeries xbar = x.residue();
  bool residue_is_t = xbar.trunc() >= 2 && xbar.coeff(1).is_one();
  for (unsigned i = 0; residue_is_t && i < xbar.trunc(); ++i)
    if (i != 1 && !xbar.coeff(i).is_zero()) residue_is_t = false;
  if (!residue_is_t)
    fail("wrong-residue", "arc coordinate must reduce to t modulo the maximal ideal");

  WeierstrassFactorization w = weierstrass_divide(x);
  Scalar alpha = -w.q[0];
  // exact quotient by (t - alpha); remainder x(alpha) vanishes because
  // alpha^T = 0 at the required precision
  auto [h, rem] = upoly::divrem_monic(x.poly(), w.q);
  if (!upoly::is_zero(rem))
    fail("insufficient-truncation", "arc factor left a remainder");
  TruncSeries u = TruncSeries::from_poly(ring, h, x.trunc() - 1);
  if (!(u.residue() == TruncSeries::one(ring->is_field() ? ring : ring->base(), u.trunc())))
    fail("wrong-residue", "unit part does not lie in 1 + m[[t]]");
  return {std::move(alpha), std::move(u)};
}

}  // namespace newtonarc

#endif
