#ifndef NEWTONARC_FUZZ_HPP
#define NEWTONARC_FUZZ_HPP

// Seeded fuzz campaigns.  Identical (campaign, seed, bounds) inputs produce
// identical reports; all randomness flows through the splitmix generator and
// every loop has a fixed iteration order.

#include <string>
#include <vector>

#include "newtonarc/arc_models.hpp"
#include "newtonarc/groupoid.hpp"
#include "newtonarc/rng.hpp"
#include "newtonarc/zr.hpp"

namespace newtonarc {

struct FuzzBounds {
  std::uint64_t p_max = 11;
  unsigned n_max = 2;
  unsigned l_max = 2;
  unsigned degree_max = 3;
  unsigned a_max = 4;
  std::uint64_t samples = 0;  // 0 = campaign default
};

struct FuzzReport {
  std::string campaign;
  std::uint64_t seed = 0;
  FuzzBounds bounds;
  bool pass = true;
  std::uint64_t cases = 0;
  std::uint64_t checks = 0;
  std::vector<std::string> failures;

  void flag(std::string what) {
    pass = false;
    if (failures.size() < 32) failures.push_back(std::move(what));
  }
};

namespace fuzzers {

inline std::vector<RingPtr> small_test_rings(unsigned a_max) {
  std::vector<RingPtr> rings;
  for (unsigned a = 2; a <= a_max; ++a)
    rings.push_back(Ring::test_ring(Ring::rationals(), {"e"}, {}, a));
  rings.push_back(Ring::test_ring(Ring::rationals(), {"e1", "e2"}, {}, 3));
  rings.push_back(Ring::test_ring(Ring::prime_field(5), {"e1", "e2", "e3"}, {{1, 1, 0}},
                                  std::min(3u, a_max)));
  rings.push_back(Ring::test_ring(Ring::prime_field(7), {"e"}, {}, a_max));
  return rings;
}

// q*w construction of membership-passing parabola points at level r.
inline std::optional<ZrPoint> parabola_point(Rng& rng, const SystemPtr& S,
                                             const RingPtr& R, unsigned r, unsigned N) {
  UPoly q(N + 1, Scalar::zero(R));
  q[N] = Scalar::one(R);
  for (unsigned i = 0; i < N; ++i) q[i] = random_scalar(rng, R);
  UPoly w;
  for (unsigned i = 0; i < N * (r - 1); ++i) w.push_back(random_scalar(rng, R));
  upoly::trim(w);
  auto ctx = make_modq_ctx(R, q, std::max(1u, r - 2));
  if (!ModQ::from_poly(ctx, w).is_unit()) return std::nullopt;
  UPoly ytilde = upoly::mul(q, w);
  ZrPoint p = make_zr_point(S, r, R, q, {upoly::mul(ytilde, ytilde)}, {ytilde});
  if (!check_membership(p).pass) return std::nullopt;
  return p;
}

}  // namespace fuzzers

// Criterion 1: random (q, u) over test rings with a <= 4, s <= 3, d <= 3 and
// T = a*d + 2; weierstrass_divide must recover q exactly and reconstruct F.
inline FuzzReport fuzz_weierstrass_roundtrip(std::uint64_t seed, FuzzBounds bounds) {
  FuzzReport rep;
  rep.campaign = "weierstrass-roundtrip";
  rep.seed = seed;
  rep.bounds = bounds;
  std::uint64_t want = bounds.samples ? bounds.samples : 1000;
  Rng rng(seed);
  auto rings = fuzzers::small_test_rings(bounds.a_max);
  while (rep.cases < want) {
    const RingPtr& ring = rings[rng.below(rings.size())];
    unsigned a = ring->nilpotency_order();
    unsigned d = 1 + static_cast<unsigned>(rng.below(3));
    unsigned T = a * d + 2;
    UPoly q(d + 1, Scalar::zero(ring));
    q[d] = Scalar::one(ring);
    for (unsigned i = 0; i < d; ++i) q[i] = random_nilpotent(rng, ring);
    std::vector<Scalar> uc = {random_unit(rng, ring)};
    for (unsigned i = 1; i < T; ++i) uc.push_back(random_scalar(rng, ring));
    TruncSeries u = TruncSeries::from_coeffs(ring, uc);
    TruncSeries F = poly_times_series(q, u);
    ++rep.cases;
    try {
      auto w = weierstrass_divide(F);
      if (w.d != d) rep.flag("degree mismatch");
      if (!upoly::eq(w.q, q)) rep.flag("q not recovered over " + ring->describe());
      if (!(poly_times_series(w.q, w.u) == F)) rep.flag("reconstruction q*u != F");
      if (!w.u.is_unit()) rep.flag("u not a unit");
      // q == t^d mod m
      for (unsigned i = 0; i < d; ++i)
        if (!w.q[i].residue().is_zero()) rep.flag("q residue is not t^d");
      rep.checks += 4;
    } catch (const Error& e) {
      rep.flag(std::string("unexpected error: ") + e.code());
    }
  }
  return rep;
}

// Criterion 2: groupoid laws for the three test curves over F_5, F_7, F_11 at
// r in {2,3}; exhaustive composable triples when |U| <= 30, else sampled.
inline FuzzReport fuzz_groupoid_axioms(std::uint64_t seed, FuzzBounds bounds) {
  FuzzReport rep;
  rep.campaign = "groupoid-axioms";
  rep.seed = seed;
  rep.bounds = bounds;
  Rng rng(seed);
  std::uint64_t sample_cap = bounds.samples ? bounds.samples : 10000;
  for (std::uint64_t p : {5ull, 7ull, 11ull}) {
    if (p > bounds.p_max) continue;
    auto Fp = Ring::prime_field(p);
    for (const std::string ftext : {"y^2 - x", "y^2 - x^3", "y*(y - x)"}) {
      auto S = build_system({ftext}, 1, 1, Fp);
      for (unsigned r : {2u, 3u}) {
        auto U = enumerate_x_points(S, Fp, true);
        if (U.empty()) continue;
        auto run_triple = [&](const XPoint& p1, const XPoint& p2, const XPoint& p3,
                              const XPoint& p4) {
          try {
            Arrow a = arrow_from_endpoints(S, r, Fp, p1, p2);
            Arrow b = arrow_from_endpoints(S, r, Fp, p2, p3);
            Arrow c = arrow_from_endpoints(S, r, Fp, p3, p4);
            Arrow ab = compose(a, b);
            if (!point_equal(target(ab), p3)) rep.flag("target(compose) wrong");
            if (!(ab.v == a.v * b.v)) rep.flag("v-cocycle fails");
            Arrow lhs = compose(ab, c);
            Arrow rhs = compose(a, compose(b, c));
            for (unsigned k = 0; k < S->n; ++k)
              if (!(lhs.xi[k] == rhs.xi[k])) rep.flag("associativity (xi)");
            for (unsigned k = 0; k < S->l; ++k)
              if (!(lhs.eta[k] == rhs.eta[k])) rep.flag("associativity (eta)");
            // unit and inverse laws at a
            Arrow e = unit_arrow(S, r, Fp, p1);
            Arrow ea = compose(e, a);
            if (!(ea.xi[0] == a.xi[0] && ea.eta[0] == a.eta[0])) rep.flag("left unit");
            Arrow ae = compose(a, unit_arrow(S, r, Fp, p2));
            if (!(ae.xi[0] == a.xi[0] && ae.eta[0] == a.eta[0])) rep.flag("right unit");
            Arrow inv = inverse(a);
            Arrow prod = compose(a, inv);
            if (!prod.xi[0].is_zero() || !prod.eta[0].is_zero()) rep.flag("a a^-1 != e");
            Arrow prod2 = compose(inv, a);
            if (!prod2.xi[0].is_zero() || !prod2.eta[0].is_zero()) rep.flag("a^-1 a != e");
            rep.checks += 8;
            ++rep.cases;
          } catch (const Error& e2) {
            rep.flag(std::string("unexpected error: ") + e2.code() + ": " + e2.what());
          }
        };
        if (U.size() <= 30) {
          for (const auto& p1 : U)
            for (const auto& p2 : U)
              for (const auto& p3 : U) run_triple(p1, p2, p3, U[(rep.cases + 1) % U.size()]);
        } else {
          for (std::uint64_t s = 0; s < sample_cap; ++s)
            run_triple(U[rng.below(U.size())], U[rng.below(U.size())],
                       U[rng.below(U.size())], U[rng.below(U.size())]);
        }
      }
    }
  }
  return rep;
}

// Criterion 3: forget and Newton's formula are mutually inverse on fuzzed
// membership-passing points, r in {3,4}, N in {1,2}, over F_p and Q[e]/(e^2).
inline FuzzReport fuzz_zr_bijection(std::uint64_t seed, FuzzBounds bounds) {
  FuzzReport rep;
  rep.campaign = "zr-bijection";
  rep.seed = seed;
  rep.bounds = bounds;
  std::uint64_t want = bounds.samples ? bounds.samples : 500;
  Rng rng(seed);
  std::vector<RingPtr> rings = {Ring::prime_field(5), Ring::prime_field(7),
                                Ring::test_ring(Ring::rationals(), {"e"}, {}, 2)};
  if (bounds.p_max >= 11) rings.push_back(Ring::prime_field(11));
  while (rep.cases < want) {
    const RingPtr& R = rings[rng.below(rings.size())];
    auto S = build_system({"y^2 - x"}, 1, 1, R);
    unsigned r = 3 + static_cast<unsigned>(rng.below(2));
    unsigned N = 1 + static_cast<unsigned>(rng.below(2));
    auto p = fuzzers::parabola_point(rng, S, R, r + 1, N);
    if (!p) continue;
    try {
      ZrExtPoint e = forget(*p);
      ZrPoint back = newton_inverse(e);
      if (!zr_equal(back, *p)) rep.flag("newton_inverse(forget(p)) != p");
      // other direction from the reduced ext point
      ZrExtPoint e2 = e;
      ZrPoint lifted = newton_inverse(e2);
      if (!zr_ext_equal(forget(lifted), e2)) rep.flag("forget(newton_inverse(e)) != e");
      rep.checks += 2;
      ++rep.cases;
    } catch (const Error& err) {
      rep.flag(std::string("unexpected error: ") + err.code());
    }
  }
  return rep;
}

inline UPoly upoly_t(const RingPtr& R) { return {Scalar::zero(R), Scalar::one(R)}; }
inline UPoly upoly_shift_t2(const RingPtr& R) {
  return {Scalar::zero(R), Scalar::zero(R), Scalar::one(R)};
}

// Criterion 8: gk_split / solve_z_system round trips for the parabola over
// Q[e]/(e^a), a in {2,3}, r = 3, T = 8, plus the xy+g factorization fuzz with
// its constraint-violated negative case.
inline FuzzReport fuzz_arc_roundtrip(std::uint64_t seed, FuzzBounds bounds) {
  FuzzReport rep;
  rep.campaign = "arc-roundtrip";
  rep.seed = seed;
  rep.bounds = bounds;
  std::uint64_t want = bounds.samples ? bounds.samples : 200;
  Rng rng(seed);
  const unsigned T = 8, r = 3;
  for (unsigned a : {2u, 3u}) {
    auto A = Ring::test_ring(Ring::rationals(), {"e"}, {}, a);
    auto S = build_system({"y^2 - x"}, 1, 1, A);
    Arc g0{{TruncSeries::from_poly(A, upoly_shift_t2(A), T)},
           {TruncSeries::from_poly(A, upoly_t(A), T)}};
    for (std::uint64_t iter = 0; iter < (want + 1) / 2; ++iter) {
      UPoly y = upoly_t(A);
      for (unsigned i = 0; i <= 3; ++i) {
        Scalar c = random_nilpotent(rng, A);
        if (!c.is_zero()) y = upoly::add(y, upoly::shift(upoly::constant(c), i));
      }
      Arc arc{{TruncSeries::from_poly(A, upoly::mul(y, y), T)},
              {TruncSeries::from_poly(A, y, T)}};
      ++rep.cases;
      try {
        GkSplit split = gk_split(S, g0, arc, r);
        Arc back = solve_z_system(S, g0, split.zr, split.tail, T);
        if (!arc_equal(back, arc)) rep.flag("solve(split(arc)) != arc");
        GkSplit split2 = gk_split(S, g0, back, r);
        if (!zr_equal(split2.zr, split.zr)) rep.flag("split(solve(z)) point mismatch");
        for (unsigned i = 0; i < S->n; ++i)
          if (!upoly::eq(split2.tail[i], split.tail[i])) rep.flag("tail mismatch");
        rep.checks += 3;
      } catch (const Error& e) {
        rep.flag(std::string("unexpected error: ") + e.code());
      }
    }
  }
  // Example-2.3 factorization round trips over small test rings
  std::vector<RingPtr> rings = {Ring::test_ring(Ring::rationals(), {"e"}, {}, 2),
                                Ring::test_ring(Ring::rationals(), {"e1", "e2"}, {}, 2),
                                Ring::test_ring(Ring::rationals(), {"e"}, {}, 3)};
  MPoly g = parse_poly("x1^2", {"x1"}, Ring::rationals());
  for (const auto& A : rings) {
    auto inst = make_xy_instance(g, A, 7);
    for (int iter = 0; iter < 40; ++iter) {
      FactorizedDeformation F;
      F.alpha = random_nilpotent(rng, A);
      std::vector<Scalar> uc = {Scalar::one(A)};
      for (unsigned i = 1; i + 1 < inst.T; ++i) uc.push_back(random_nilpotent(rng, A));
      F.u = TruncSeries::from_coeffs(A, uc);
      Scalar xi = random_nilpotent(rng, A);
      F.xi = {xi};
      std::vector<Scalar> xt;
      for (unsigned k = 0; k + 1 < inst.T; ++k) xt.push_back(random_nilpotent(rng, A));
      F.xtilde = {TruncSeries::from_coeffs(A, xt)};
      ++rep.cases;
      bool constraint_ok = (xi * xi).is_zero();
      try {
        XYArc arc = unfactorize(inst, F);
        if (!constraint_ok) {
          rep.flag("constraint violation not detected");
          continue;
        }
        auto F2 = factorize(inst, arc);
        bool same = (F2.alpha == F.alpha) && (F2.u == F.u) && (F2.xi[0] == F.xi[0]) &&
                    (F2.xtilde[0] == F.xtilde[0]);
        if (!same) rep.flag("factorize(unfactorize(F)) != F");
        ++rep.checks;
      } catch (const Error& e) {
        if (std::string(e.code()) == "constraint-violated" && !constraint_ok)
          ++rep.checks;  // expected negative case
        else
          rep.flag(std::string("unexpected error: ") + e.code());
      }
    }
  }
  return rep;
}

// Criterion 5/6: the four fiber classifications, their group laws, and the
// triviality of arrows based over the different.
inline FuzzReport fuzz_fiber_classify(std::uint64_t seed, FuzzBounds bounds) {
  FuzzReport rep;
  rep.campaign = "fiber-classify";
  rep.seed = seed;
  rep.bounds = bounds;
  auto F7 = Ring::prime_field(7);
  auto F2 = Ring::prime_field(2);
  auto QQ = Ring::rationals();
  auto expect_kind = [&](const SystemPtr& S, unsigned r, const RingPtr& R, FiberKind want,
                         const std::string& label) {
    XPoint z{std::vector<Scalar>(S->n, Scalar::zero(R)),
             std::vector<Scalar>(S->l, Scalar::zero(R))};
    try {
      auto fr = fiber_group(S, r, R, z);
      ++rep.cases;
      if (fr.kind != want) {
        rep.flag(label + ": classified as " + fiber_kind_name(fr.kind));
        return;
      }
      if (R->kind() == Ring::Kind::prime_field) {
        auto gr = group_axiom_fuzz(fr);
        rep.checks += gr.checks;
        if (!gr.pass) rep.flag(label + ": group law fails: " + gr.failures[0]);
      }
    } catch (const Error& e) {
      rep.flag(label + ": unexpected error " + e.code());
    }
  };
  // the four worked instances, over QQ for the classification and F_7 / F_2
  // for the exhaustive group fuzz
  expect_kind(build_system({"y^2 - x"}, 1, 1, QQ), 2, QQ,
              FiberKind::multiplicative_semidirect, "parabola r=2 char 0");
  expect_kind(build_system({"y^2 - x"}, 1, 1, F7), 2, F7,
              FiberKind::multiplicative_semidirect, "parabola r=2 F7");
  expect_kind(build_system({"y^2 - x^3"}, 1, 1, F7), 2, F7,
              FiberKind::two_torsion_times_additive, "cusp r=2 F7");
  expect_kind(build_system({"y^2 - x"}, 1, 1, F7), 3, F7, FiberKind::additive,
              "parabola r=3 F7");
  expect_kind(build_system({"y^2 + x*y - x"}, 1, 1, F2), 2, F2, FiberKind::additive,
              "char-2 nonsingular r=2");
  // restriction to the different: target == base for every Delta-based arrow
  for (const std::string ftext : {"y^2 - x", "y^2 - x^3", "y*(y - x)"}) {
    for (std::uint64_t p : {5ull, 7ull, 11ull}) {
      auto Fp = Ring::prime_field(p);
      auto S = build_system({ftext}, 1, 1, Fp);
      for (const auto& z : enumerate_x_points(S, Fp, false)) {
        if (q_at(S, z, Fp).is_unit()) continue;
        for (unsigned r : {2u, 3u})
          for (const auto& a : enumerate_arrows_at(S, r, Fp, z)) {
            if (!point_equal(target(a), z)) rep.flag("Delta-based arrow moves its base");
            ++rep.checks;
          }
      }
    }
  }
  return rep;
}

inline FuzzReport run_campaign(const std::string& name, std::uint64_t seed, FuzzBounds bounds) {
  if (name == "weierstrass-roundtrip") return fuzz_weierstrass_roundtrip(seed, bounds);
  if (name == "groupoid-axioms") return fuzz_groupoid_axioms(seed, bounds);
  if (name == "zr-bijection") return fuzz_zr_bijection(seed, bounds);
  if (name == "arc-roundtrip") return fuzz_arc_roundtrip(seed, bounds);
  if (name == "fiber-classify") return fuzz_fiber_classify(seed, bounds);
  fail("invalid-input", "unknown campaign '" + name + "'");
}

}  // namespace newtonarc

#endif
