#include <gtest/gtest.h>

#include "newtonarc/arc_models.hpp"
#include "newtonarc/rng.hpp"
#include "test_util.hpp"

using namespace newtonarc;
using testutil::dual;

namespace {

bool factorization_equal(const FactorizedDeformation& a, const FactorizedDeformation& b) {
  if (!(a.alpha == b.alpha) || !(a.u == b.u)) return false;
  for (std::size_t i = 0; i < a.xi.size(); ++i)
    if (!(a.xi[i] == b.xi[i])) return false;
  for (std::size_t i = 0; i < a.xtilde.size(); ++i)
    if (!(a.xtilde[i] == b.xtilde[i])) return false;
  return true;
}

bool xyarc_equal(const XYArc& a, const XYArc& b) {
  if (!(a.xlast == b.xlast) || !(a.y == b.y)) return false;
  for (std::size_t i = 0; i < a.x.size(); ++i)
    if (!(a.x[i] == b.x[i])) return false;
  return true;
}

XYExampleInstance square_instance(const RingPtr& A, unsigned T) {
  // n = 1, g = x1^2
  MPoly g = parse_poly("x1^2", {"x1"}, A->base());
  return make_xy_instance(g, A, T);
}

TEST(FactorizeTest, SpecDualNumberExample) {
  // n = 1, g = x1^2, A = Q[e]/(e^2): arc x2 = t+e, x1 = e, y = 0
  auto D = dual();
  auto inst = square_instance(D, 6);
  Scalar e = Scalar::generator(D, 0);
  XYArc arc;
  arc.x = {TruncSeries::from_poly(D, {e}, 6)};
  arc.xlast = TruncSeries::from_poly(D, {e, Scalar::one(D)}, 6);
  arc.y = TruncSeries::zero(D, 6);
  auto F = factorize(inst, arc);
  EXPECT_EQ(F.alpha, -e);
  EXPECT_EQ(F.u, TruncSeries::one(D, 5));
  EXPECT_EQ(F.xi[0], e);  // g(xi) = e^2 = 0 in A
  EXPECT_TRUE(F.xtilde[0].is_zero());
}

TEST(FactorizeTest, Gamma0IsTrivialData) {
  auto D = dual();
  auto inst = square_instance(D, 6);
  XYArc arc;
  arc.x = {TruncSeries::zero(D, 6)};
  arc.xlast = TruncSeries::from_poly(D, {Scalar::zero(D), Scalar::one(D)}, 6);
  arc.y = TruncSeries::zero(D, 6);
  auto F = factorize(inst, arc);
  EXPECT_TRUE(F.alpha.is_zero());
  EXPECT_EQ(F.u, TruncSeries::one(D, 5));
  EXPECT_TRUE(F.xi[0].is_zero());
  EXPECT_TRUE(F.xtilde[0].is_zero());
}

TEST(FactorizeTest, ConstraintViolatedOverEps3) {
  // over Q[e]/(e^3) the same x1 = e has g(xi) = e^2 != 0: no y exists
  auto E3 = dual(3);
  auto inst = square_instance(E3, 6);
  Scalar e = Scalar::generator(E3, 0);
  XYArc arc;
  arc.x = {TruncSeries::from_poly(E3, {e}, 6)};
  arc.xlast = TruncSeries::from_poly(E3, {Scalar::zero(E3), Scalar::one(E3)}, 6);
  arc.y = TruncSeries::zero(E3, 6);
  try {
    factorize(inst, arc);
    FAIL() << "expected constraint-violated";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), "constraint-violated");
  }
  // unfactorize rejects the same bad collection
  FactorizedDeformation F;
  F.alpha = Scalar::zero(E3);
  F.u = TruncSeries::one(E3, 5);
  F.xi = {e};
  F.xtilde = {TruncSeries::zero(E3, 5)};
  try {
    unfactorize(inst, F);
    FAIL() << "expected constraint-violated";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), "constraint-violated");
  }
}

TEST(FactorizeTest, RoundTripOnSpecExample) {
  auto D = dual();
  auto inst = square_instance(D, 6);
  Scalar e = Scalar::generator(D, 0);
  XYArc arc;
  arc.x = {TruncSeries::from_poly(D, {e}, 6)};
  arc.xlast = TruncSeries::from_poly(D, {e, Scalar::one(D)}, 6);
  arc.y = TruncSeries::zero(D, 6);
  auto F = factorize(inst, arc);
  XYArc back = unfactorize(inst, F);
  EXPECT_TRUE(xyarc_equal(back, arc));  // y = 0 is already canonical here
  auto F2 = factorize(inst, back);
  EXPECT_TRUE(factorization_equal(F2, F));
}

FactorizedDeformation random_collection(Rng& rng, const XYExampleInstance& inst,
                                        bool force_constraint) {
  const RingPtr& A = inst.ring;
  FactorizedDeformation F;
  F.alpha = random_nilpotent(rng, A);
  std::vector<Scalar> uc = {Scalar::one(A)};
  for (unsigned i = 1; i + 1 < inst.T; ++i) uc.push_back(random_nilpotent(rng, A));
  F.u = TruncSeries::from_coeffs(A, uc);
  for (unsigned i = 0; i < inst.n; ++i) {
    Scalar xi = random_nilpotent(rng, A);
    if (force_constraint) {
      // for g = x1^2 ... xn^2-type sums we retry until g(xi) = 0
      F.xi.push_back(xi);
    } else {
      F.xi.push_back(xi);
    }
    std::vector<Scalar> xt;
    for (unsigned k = 0; k + 1 < inst.T; ++k) xt.push_back(random_nilpotent(rng, A));
    F.xtilde.push_back(TruncSeries::from_coeffs(A, xt));
  }
  return F;
}

TEST(FactorizeTest, RoundTripFuzzOverSmallTestRings) {
  // bijection between collections with g(xi) = 0 and deformations, fuzzed
  // over test rings with a <= 3, s <= 2
  Rng rng(60660);
  std::vector<RingPtr> rings = {
      dual(2), dual(3),
      Ring::test_ring(Ring::rationals(), {"e1", "e2"}, {}, 2),
      Ring::test_ring(Ring::rationals(), {"e1", "e2"}, {{1, 1}}, 3),
      Ring::test_ring(Ring::prime_field(5), {"e1", "e2"}, {}, 3)};
  int accepted = 0;
  for (int iter = 0; iter < 400; ++iter) {
    const RingPtr& A = rings[rng.below(rings.size())];
    auto inst = square_instance(A, 7);
    FactorizedDeformation F = random_collection(rng, inst, true);
    // keep only collections satisfying the constraint g(xi) = xi^2 = 0
    if (!(F.xi[0] * F.xi[0]).is_zero()) continue;
    XYArc arc = unfactorize(inst, F);
    // the reconstructed arc lies on the hypersurface
    TruncSeries lhs = arc.y * arc.xlast;
    TruncSeries g_at = TruncSeries::from_poly(
        A, detail::eval_g_exact(inst, {arc.x[0].poly()}), inst.T);
    ASSERT_TRUE((lhs + g_at).is_zero());
    auto F2 = factorize(inst, arc);
    ASSERT_TRUE(factorization_equal(F2, F)) << "iter " << iter;
    XYArc arc2 = unfactorize(inst, F2);
    ASSERT_TRUE(xyarc_equal(arc2, arc));
    ++accepted;
  }
  EXPECT_GE(accepted, 150);
}

TEST(FactorizeTest, TwoVariableInstanceWithMixedIdeal) {
  // g = x1^2 + x2^2 over Q[e1,e2]/(e1^2, e2^2, e1 e2): m^2 = 0 makes the
  // constraint automatic
  auto A = Ring::test_ring(Ring::rationals(), {"e1", "e2"}, {}, 2);
  MPoly g = parse_poly("x1^2 + x2^2", {"x1", "x2"}, Ring::rationals());
  auto inst = make_xy_instance(g, A, 6);
  Rng rng(171);
  for (int iter = 0; iter < 60; ++iter) {
    FactorizedDeformation F = random_collection(rng, inst, false);
    XYArc arc = unfactorize(inst, F);
    auto F2 = factorize(inst, arc);
    ASSERT_TRUE(factorization_equal(F2, F));
  }
}

TEST(FactorizeTest, UniquenessOfRecoveredY) {
  // two reconstructions from equal collections agree coefficientwise
  auto D = dual(3);
  auto inst = square_instance(D, 8);
  Rng rng(2718);
  for (int iter = 0; iter < 40; ++iter) {
    FactorizedDeformation F = random_collection(rng, inst, true);
    if (!(F.xi[0] * F.xi[0]).is_zero()) continue;
    XYArc a1 = unfactorize(inst, F);
    XYArc a2 = unfactorize(inst, F);
    ASSERT_TRUE(xyarc_equal(a1, a2));
  }
}

}  // namespace
