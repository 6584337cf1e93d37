#include <gtest/gtest.h>

#include "newtonarc/matrix.hpp"
#include "newtonarc/modq.hpp"
#include "newtonarc/mpoly.hpp"
#include "newtonarc/parse.hpp"
#include "newtonarc/rng.hpp"

using namespace newtonarc;

namespace {

const std::vector<std::string> XY = {"x", "y"};

MPoly parse_xy(const std::string& s, const RingPtr& ring) {
  return parse_poly(s, XY, ring);
}

TEST(ParseTest, BasicForms) {
  auto Q = Ring::rationals();
  MPoly p = parse_xy("y^2 - x^3", Q);
  EXPECT_EQ(p.to_string(), "-x^3 + y^2");
  MPoly q = parse_xy("y*(y - x)", Q);
  EXPECT_EQ(q, parse_xy("y^2 - x*y", Q));
}

TEST(ParseTest, FractionOverPrimeField) {
  auto F7 = Ring::prime_field(7);
  MPoly p = parse_xy("3/2*x + 1", F7);
  EXPECT_EQ(p, parse_xy("5*x + 1", F7));  // 3*2^-1 = 5 mod 7
}

TEST(ParseTest, Errors) {
  auto Q = Ring::rationals();
  try {
    parse_xy("x + ", Q);
    FAIL() << "expected syntax error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "syntax-error");
    EXPECT_FALSE(e.location().empty());
  }
  try {
    parse_xy("x + z", Q);
    FAIL() << "expected unknown identifier";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "unknown-identifier");
  }
}

TEST(ParseTest, GeneratorsAreScalars) {
  auto D = Ring::test_ring(Ring::rationals(), {"e"}, {}, 2);
  MPoly p = parse_xy("e*x + 1", D);
  Scalar e = Scalar::generator(D, 0);
  MPoly expected = e * MPoly::variable(D, XY, "x") + MPoly::one(D, XY);
  EXPECT_EQ(p, expected);
}

TEST(ParseTest, PrintParseRoundTripFuzz) {
  Rng rng(77);
  std::vector<RingPtr> rings = {Ring::rationals(), Ring::prime_field(11),
                                Ring::test_ring(Ring::rationals(), {"e"}, {}, 3)};
  for (const auto& ring : rings) {
    for (int iter = 0; iter < 200; ++iter) {
      MPoly p = MPoly::zero(ring, XY);
      int nterms = static_cast<int>(rng.below(6));
      for (int i = 0; i < nterms; ++i) {
        ExpVec e = {static_cast<unsigned>(rng.below(4)), static_cast<unsigned>(rng.below(4))};
        p.add_term(e, random_scalar(rng, ring));
      }
      EXPECT_EQ(parse_poly(p.to_string(), XY, ring), p) << p.to_string();
    }
  }
}

TEST(EvalTest, SpecExamples) {
  auto Q = Ring::rationals();
  MPoly p = parse_xy("y^2 - x", Q);
  // point on the parabola
  std::map<std::string, Scalar> pt1 = {{"x", Scalar::of_int(Q, 4)}, {"y", Scalar::of_int(Q, 2)}};
  EXPECT_TRUE(eval_at_scalars(p, pt1, Q).is_zero());
  // direct modular arithmetic: 9 - 1 = 8 = 1 mod 7
  auto F7 = Ring::prime_field(7);
  MPoly p7 = parse_xy("y^2 - x", F7);
  std::map<std::string, Scalar> pt2 = {{"x", Scalar::of_int(F7, 1)}, {"y", Scalar::of_int(F7, 3)}};
  EXPECT_EQ(eval_at_scalars(p7, pt2, F7), Scalar::of_int(F7, 1));
  EXPECT_THROW(eval_at_scalars(p, {{"x", Scalar::of_int(Q, 1)}}, Q), Error);
}

TEST(EvalTest, SeriesCarrierIdentitySubstitution) {
  // eval(x, {x: t+e}) over Q[e]/(e^2), T=4 -> the series t+e
  auto D = Ring::test_ring(Ring::rationals(), {"e"}, {}, 2);
  MPoly p = parse_xy("x", D);
  Scalar e = Scalar::generator(D, 0);
  TruncSeries te = TruncSeries::from_coeffs(
      D, {e, Scalar::one(D), Scalar::zero(D), Scalar::zero(D)});
  std::map<std::string, TruncSeries> pt = {{"x", te}, {"y", TruncSeries::zero(D, 4)}};
  EXPECT_EQ(eval_poly(p, pt, SeriesContext{D, 4}), te);
}

TEST(DerivativeTest, SpecExamples) {
  auto Q = Ring::rationals();
  MPoly p = parse_xy("y^2 - x^3", Q);
  EXPECT_EQ(partial_derivative(p, "y"), parse_xy("2*y", Q));
  EXPECT_EQ(partial_derivative(p, "x"), parse_xy("-3*x^2", Q));
  auto F2 = Ring::prime_field(2);
  MPoly g = parse_xy("y^2 + x*y - x", F2);
  EXPECT_EQ(partial_derivative(g, "y"), parse_xy("x", F2));  // 2y+x mod 2
  EXPECT_THROW(partial_derivative(p, "zz"), Error);
}

TEST(ExactDivideTest, SpecExamples) {
  auto Q = Ring::rationals();
  MPoly num = parse_xy("x^2 - 1", Q);
  MPoly den = parse_xy("x - 1", Q);
  EXPECT_EQ(exact_divide(num, den), parse_xy("x + 1", Q));
  try {
    exact_divide(parse_xy("x^2 + 1", Q), den);
    FAIL() << "expected not-divisible";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "not-divisible");
  }
  // Q-degree matching: (Q^2 * h^2) / Q^2 with Q = 2y
  std::vector<std::string> vars = {"x", "y", "h"};
  MPoly Qp = parse_poly("2*y", vars, Q);
  MPoly h = parse_poly("h", vars, Q);
  MPoly lhs = Qp * Qp * h * h;
  EXPECT_EQ(exact_divide(lhs, Qp * Qp), h * h);
}

TEST(ExactDivideTest, FuzzProductsDivideBack) {
  Rng rng(991);
  auto F5 = Ring::prime_field(5);
  for (int iter = 0; iter < 300; ++iter) {
    MPoly a = MPoly::zero(F5, XY), b = MPoly::zero(F5, XY);
    for (int i = 0; i < 3; ++i) {
      a.add_term({static_cast<unsigned>(rng.below(3)), static_cast<unsigned>(rng.below(3))},
                 random_scalar(rng, F5));
      b.add_term({static_cast<unsigned>(rng.below(3)), static_cast<unsigned>(rng.below(3))},
                 random_scalar(rng, F5));
    }
    if (a.is_zero() || b.is_zero()) continue;
    EXPECT_EQ(exact_divide(a * b, b), a);
  }
}

TEST(MPolyTest, RingAxiomsFuzz) {
  Rng rng(606);
  std::vector<RingPtr> rings = {Ring::rationals(), Ring::prime_field(5),
                                Ring::test_ring(Ring::rationals(), {"e"}, {}, 2)};
  for (const auto& ring : rings) {
    for (int iter = 0; iter < 120; ++iter) {
      auto rand_poly = [&] {
        MPoly p = MPoly::zero(ring, XY);
        for (int i = 0; i < 3; ++i)
          p.add_term({static_cast<unsigned>(rng.below(3)), static_cast<unsigned>(rng.below(3))},
                     random_scalar(rng, ring));
        return p;
      };
      MPoly a = rand_poly(), b = rand_poly(), c = rand_poly();
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a - a, MPoly::zero(ring, XY));
    }
  }
}

TEST(MatrixTest, AdjugateConventionAndIdentity) {
  auto Q = Ring::rationals();
  // size 1: adj = [1]
  SquareMatrix<MPoly> m1(1, parse_xy("2*y", Q));
  auto [d1, adj1] = det_and_adjugate(m1);
  EXPECT_EQ(d1, parse_xy("2*y", Q));
  EXPECT_EQ(adj1.at(0, 0), MPoly::one(Q, XY));

  // size 2 textbook identity
  std::vector<std::string> vars = {"a", "b", "c", "d"};
  auto v = [&](const std::string& n) { return MPoly::variable(Q, vars, n); };
  SquareMatrix<MPoly> m2 = SquareMatrix<MPoly>::from_rows(
      {{v("a"), v("b")}, {v("c"), v("d")}});
  auto [d2, adj2] = det_and_adjugate(m2);
  EXPECT_EQ(d2, v("a") * v("d") - v("b") * v("c"));
  EXPECT_EQ(adj2.at(0, 0), v("d"));
  EXPECT_EQ(adj2.at(0, 1), -v("b"));
  EXPECT_EQ(adj2.at(1, 0), -v("c"));
  EXPECT_EQ(adj2.at(1, 1), v("a"));
}

TEST(MatrixTest, AdjugateTimesMatrixIsDetFuzz) {
  Rng rng(4242);
  std::vector<RingPtr> rings = {Ring::prime_field(7), Ring::rationals()};
  for (const auto& ring : rings) {
    for (std::size_t n = 1; n <= 4; ++n) {
      for (int iter = 0; iter < 40; ++iter) {
        SquareMatrix<Scalar> m(n, Scalar::zero(ring));
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) m.at(i, j) = random_scalar(rng, ring);
        auto [d, adj] = det_and_adjugate(m);
        SquareMatrix<Scalar> prod = adj * m;
        SquareMatrix<Scalar> prod2 = m * adj;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            Scalar want = i == j ? d : Scalar::zero(ring);
            EXPECT_EQ(prod.at(i, j), want);
            EXPECT_EQ(prod2.at(i, j), want);
          }
      }
    }
  }
}

}  // namespace
