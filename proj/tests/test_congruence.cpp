#include <elimat/acceptance.hpp>

#include <gtest/gtest.h>

using namespace elimat;

namespace {

using Q = Rational;
const Field<Q> FQ;

RingPtr p2() { return PolyRing::make({{"x1", "x2", "x3"}}, FieldSpec::rationals()); }

Parameterization<Q> sphere() {
  return Parameterization<Q>::parse(p2(), {"x1^2+x2^2+x3^2", "2*x1*x3", "2*x1*x2", "x1^2-x2^2-x3^2"});
}

struct Reps {
  NormalCongruence<Q> C;
  MatrixRep<Q> M, M2;
};

Reps reps(const Parameterization<Q>& S) {
  auto C = build_normal_congruence(S);
  const auto nu = C.certificate.default_degree();
  auto M = build_rep(C.psi, nu, {}, C.certificate);
  auto M2 = build_rep(C.psi, check_degree(nu), {}, C.certificate);
  return {std::move(C), std::move(M), std::move(M2)};
}

std::vector<Q> q3(const std::string& a, const std::string& b, const std::string& c) {
  return {FQ.parse(a), FQ.parse(b), FQ.parse(c)};
}

}  // namespace

TEST(Congruence, SphereShape) {
  const auto C = build_normal_congruence(sphere());
  EXPECT_EQ(C.psi.degree, (MultiDegree{2, 1}));
  EXPECT_EQ(C.e(), 1);
  EXPECT_EQ(C.certificate.region.corners, (std::vector<MultiDegree>{{4, 0}, {2, 2}}));
  EXPECT_FALSE(C.certificate.warnings.empty());
  EXPECT_EQ(C.psi.ring->nblocks(), 2u);
}

TEST(Congruence, NormalIsOrthogonalToTangents) {
  const auto S = sphere();
  const auto C = build_normal_congruence(S);
  // the normal of a sphere is parallel to the position vector
  Rng rng(3);
  for (int s = 0; s < 5; ++s) {
    const auto x = acceptance::random_point(FQ, rng, 3, 9);
    const auto w = S.maps[0].evaluate(x);
    if (w.is_zero()) continue;
    std::vector<Q> pos, n;
    for (int k = 1; k <= 3; ++k) pos.push_back(S.maps[k].evaluate(x) / w);
    for (const auto& c : C.normal) n.push_back(c.evaluate(x));
    EXPECT_TRUE((pos[1] * n[2] - pos[2] * n[1]).is_zero());
    EXPECT_TRUE((pos[2] * n[0] - pos[0] * n[2]).is_zero());
    EXPECT_TRUE((pos[0] * n[1] - pos[1] * n[0]).is_zero());
  }
}

TEST(Projection, SphereFeet) {
  const auto R = reps(sphere());
  const auto rep = project_point(R.C, R.M, R.M2, std::span<const Q>(q3("2", "0", "0")));
  EXPECT_EQ(rep.fiber_degree, 2u);
  EXPECT_TRUE(rep.certified);
  std::vector<std::string> xs;
  for (const auto& f : rep.feet) {
    EXPECT_TRUE(f.foot[1].is_zero() && f.foot[2].is_zero());
    xs.push_back(f.foot[0].to_string());
  }
  std::sort(xs.begin(), xs.end());
  EXPECT_EQ(xs, (std::vector<std::string>{"-1", "1"}));
}

TEST(Projection, SphereCenterIsDegenerate) {
  const auto R = reps(sphere());
  EXPECT_THROW(project_point(R.C, R.M, R.M2, std::span<const Q>(q3("0", "0", "0"))), DegenerateQuery);
}

TEST(Projection, PlaneFoot) {
  const auto R = reps(Parameterization<Q>::parse(p2(), {"x1", "x2", "x3", "0"}));
  const auto rep = project_point(R.C, R.M, R.M2, std::span<const Q>(q3("3", "-5/7", "2")));
  ASSERT_EQ(rep.feet.size(), 1u);
  EXPECT_EQ(rep.feet[0].foot, q3("3", "-5/7", "0"));
}

TEST(Projection, PlaneRandomQueries) {
  const auto R = reps(Parameterization<Q>::parse(p2(), {"x1", "x2", "x3", "0"}));
  Rng rng(8);
  for (int s = 0; s < 5; ++s) {
    const auto q = acceptance::random_point(FQ, rng, 3, 20);
    const auto rep = project_point(R.C, R.M, R.M2, std::span<const Q>(q));
    ASSERT_EQ(rep.feet.size(), 1u);
    EXPECT_EQ(rep.feet[0].foot, (std::vector<Q>{q[0], q[1], Q(0)}));
  }
}

TEST(Congruence, RejectsNonSurfaces) {
  const auto R = PolyRing::make({{"s", "t"}}, FieldSpec::rationals());
  EXPECT_THROW(build_normal_congruence(Parameterization<Q>::parse(R, {"s^2", "s*t", "t^2", "s^2+t^2"})),
               std::invalid_argument);
  EXPECT_THROW(build_normal_congruence(Parameterization<Q>::parse(p2(), {"x1", "x2", "x3"})), std::invalid_argument);
}

TEST(Congruence, CheckDegree) { EXPECT_EQ(check_degree({4, 0}), (MultiDegree{5, 0})); }
