#include <gtest/gtest.h>

#include "newtonarc/rng.hpp"
#include "newtonarc/system.hpp"

using namespace newtonarc;

namespace {

// Re-multiplication oracle for the defining chart identities, independent of
// the division path inside chart_polys.
void verify_chart_identities(const SystemPtr& S, const ChartPolys& cp) {
  const RingPtr& ring = S->ring;
  auto lift = [&](const MPoly& p) { return p.lift_vars(cp.vars); };
  MPoly Qb = lift(S->Q);
  MPoly Qr = Qb.pow(cp.r);
  MPoly Qr1 = Qb.pow(cp.r - 1);
  std::map<std::string, MPoly> shift;
  for (unsigned i = 0; i < S->n; ++i)
    shift.emplace(S->xvars[i], MPoly::variable(ring, cp.vars, S->xvars[i]) +
                                   Qr * MPoly::variable(ring, cp.vars, cp.xi_names[i]));
  for (unsigned j = 0; j < S->l; ++j)
    shift.emplace(S->yvars[j], MPoly::variable(ring, cp.vars, S->yvars[j]) +
                                   Qr1 * MPoly::variable(ring, cp.vars, cp.eta_names[j]));
  MPolyContext ctx{ring, cp.vars};
  for (unsigned i = 0; i < S->l; ++i) {
    MPoly shifted = eval_poly(lift(S->f[i]), shift, ctx);
    MPoly c_eta = MPoly::zero(ring, cp.vars);
    for (unsigned j = 0; j < S->l; ++j)
      c_eta = c_eta + lift(S->C.at(i, j)) * MPoly::variable(ring, cp.vars, cp.eta_names[j]);
    EXPECT_EQ(Qr * cp.u[i], shifted - lift(S->f[i]) - Qr1 * c_eta);
  }
  EXPECT_EQ(Qb * cp.v, eval_poly(Qb, shift, ctx));
}

TEST(SystemTest, BuildExamples) {
  auto Q = Ring::rationals();
  auto S1 = build_system({"y^2 - x"}, 1, 1, Q);
  EXPECT_EQ(S1->Q, parse_poly("2*y", S1->vars, Q));
  EXPECT_EQ(S1->Chat.at(0, 0), MPoly::one(Q, S1->vars));

  auto S2 = build_system({"y^2 - x^3"}, 1, 1, Q);
  EXPECT_EQ(S2->Q, parse_poly("2*y", S2->vars, Q));

  auto S3 = build_system({"y1 + y2^2", "y2 + x"}, 1, 2, Q);
  EXPECT_EQ(S3->C.at(0, 0), MPoly::one(Q, S3->vars));
  EXPECT_EQ(S3->C.at(0, 1), parse_poly("2*y2", S3->vars, Q));
  EXPECT_TRUE(S3->C.at(1, 0).is_zero());
  EXPECT_EQ(S3->C.at(1, 1), MPoly::one(Q, S3->vars));
  EXPECT_EQ(S3->Q, MPoly::one(Q, S3->vars));
}

TEST(SystemTest, BuildErrors) {
  auto Q = Ring::rationals();
  EXPECT_THROW(build_system({"y^2 - x", "y^2"}, 1, 1, Q), Error);  // l mismatch
  try {
    build_system({"z^2 - x"}, 1, 1, Q);
    FAIL() << "expected unknown identifier";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "unknown-identifier");
  }
}

TEST(SystemTest, AdjugateIdentityOnBuiltSystems) {
  auto Q = Ring::rationals();
  for (const auto& S : {build_system({"y^2 - x"}, 1, 1, Q),
                        build_system({"y1 + y2^2", "y2 + x"}, 1, 2, Q),
                        build_system({"y1^2 + x1*y2", "y2^3 - x2"}, 2, 2, Q)}) {
    SquareMatrix<MPoly> P = S->Chat * S->C;
    SquareMatrix<MPoly> P2 = S->C * S->Chat;
    for (unsigned i = 0; i < S->l; ++i)
      for (unsigned j = 0; j < S->l; ++j) {
        MPoly want = i == j ? S->Q : MPoly::zero(S->ring, S->vars);
        EXPECT_EQ(P.at(i, j), want);
        EXPECT_EQ(P2.at(i, j), want);
      }
  }
}

TEST(ChartTest, ParabolaR2) {
  auto Q = Ring::rationals();
  auto S = build_system({"y^2 - x"}, 1, 1, Q);
  auto cp = chart_polys(S, 2);
  EXPECT_EQ(cp->u[0], parse_poly("eta^2 - xi", cp->vars, Q));
  EXPECT_EQ(cp->v, parse_poly("1 + 2*eta", cp->vars, Q));
  verify_chart_identities(S, *cp);
}

TEST(ChartTest, CuspR2) {
  auto Q = Ring::rationals();
  auto S = build_system({"y^2 - x^3"}, 1, 1, Q);
  auto cp = chart_polys(S, 2);
  // u = eta^2 - 3x^2 xi - 3x Q^2 xi^2 - Q^4 xi^3 with Q = 2y
  MPoly expected = parse_poly(
      "eta^2 - 3*x^2*xi - 3*x*(2*y)^2*xi^2 - (2*y)^4*xi^3", cp->vars, Q);
  EXPECT_EQ(cp->u[0], expected);
  EXPECT_EQ(cp->v, parse_poly("1 + 2*eta", cp->vars, Q));
  verify_chart_identities(S, *cp);
}

TEST(ChartTest, CacheReturnsSameObject) {
  auto Q = Ring::rationals();
  auto S = build_system({"y^2 - x"}, 1, 1, Q);
  EXPECT_EQ(chart_polys(S, 3).get(), chart_polys(S, 3).get());
}

TEST(ChartTest, DegenerateSystemRejected) {
  auto Q = Ring::rationals();
  auto S = build_system({"x^2"}, 1, 1, Q);  // no y dependence: Q = 0
  try {
    chart_polys(S, 2);
    FAIL() << "expected degenerate";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "degenerate");
  }
}

TEST(ChartTest, FuzzedSmallSystems) {
  Rng rng(555);
  auto F5 = Ring::prime_field(5);
  auto QQ = Ring::rationals();
  int checked = 0;
  for (int iter = 0; iter < 60 && checked < 30; ++iter) {
    const RingPtr& ring = (iter % 3 == 0) ? QQ : F5;
    unsigned n = 1 + static_cast<unsigned>(rng.below(2));
    unsigned l = 1 + static_cast<unsigned>(rng.below(2));
    std::vector<std::string> vars = coord_names("x", n);
    auto yv = coord_names("y", l);
    vars.insert(vars.end(), yv.begin(), yv.end());
    std::vector<MPoly> polys;
    for (unsigned i = 0; i < l; ++i) {
      MPoly p = MPoly::zero(ring, vars);
      for (int t = 0; t < 3; ++t) {
        ExpVec e(vars.size(), 0);
        unsigned budget = 3;
        for (auto& x : e) {
          x = static_cast<unsigned>(rng.below(budget + 1));
          budget -= x;
        }
        p.add_term(e, random_scalar(rng, ring));
      }
      polys.push_back(p);
    }
    SystemPtr S;
    try {
      S = build_system(polys, n, l);
    } catch (const Error&) {
      continue;
    }
    if (S->Q.is_zero()) continue;
    for (unsigned r : {2u, 3u}) {
      auto cp = chart_polys(S, r);
      verify_chart_identities(S, *cp);
    }
    ++checked;
  }
  EXPECT_GE(checked, 20);
}

TEST(ChartTest, LargerSparseSystemR4) {
  // one n = l = 3, degree-4, r = 4 spot check
  auto F7 = Ring::prime_field(7);
  auto S = build_system({"y1^2 - x1", "y2 + x2^4", "y3^2 - x3*y1"}, 3, 3, F7);
  ASSERT_FALSE(S->Q.is_zero());
  auto cp = chart_polys(S, 4);
  verify_chart_identities(S, *cp);
}

}  // namespace
