#include <elimat/acceptance.hpp>

#include <gtest/gtest.h>

using namespace elimat;

namespace {

using Q = Rational;

RingPtr p1() { return PolyRing::make({{"s", "t"}}, FieldSpec::rationals()); }
RingPtr p2(FieldSpec f = FieldSpec::rationals()) { return PolyRing::make({{"x1", "x2", "x3"}}, f); }

Polynomial<Q> target(const Parameterization<Q>& P, const std::string& s) { return parse_polynomial<Q>(s, P.target); }

}  // namespace

TEST(PlaneCurve, Circle) {
  const auto P = Parameterization<Q>::parse(p1(), {"s^2-t^2", "2*s*t", "s^2+t^2"});
  const auto r = plane_curve_implicit(P);
  EXPECT_EQ(r.e, 1);
  EXPECT_EQ(r.F.monic(), target(P, "T1^2 + T2^2 - T3^2").monic());
  EXPECT_TRUE(implicit_identity_check(P, r.F));
}

TEST(PlaneCurve, DoubleConic) {
  const auto P = Parameterization<Q>::parse(p1(), {"s^4", "s^2*t^2", "t^4"});
  const auto r = plane_curve_implicit(P);
  EXPECT_EQ(r.e, 2);
  EXPECT_EQ(r.F.monic(), target(P, "T1*T3 - T2^2").monic());
  EXPECT_EQ(degree_of_map_curve(P), 2);
}

TEST(PlaneCurve, RandomCurvesSatisfyDegreeFormula) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    InstanceSpec spec;
    spec.r = 3;
    spec.d = 2 + static_cast<int>(seed % 4);
    spec.seed = seed;
    const auto P = random_instance<Q>(spec).P;
    const auto r = plane_curve_implicit(P);
    EXPECT_TRUE(implicit_identity_check(P, r.F));
    EXPECT_EQ(r.e * r.F.total_degree(), spec.d);
  }
}

TEST(PlaneCurve, Composite) {
  InstanceSpec spec;
  spec.kind = InstanceSpec::Kind::CompositeCurve;
  spec.r = 3;
  spec.k = 2;
  spec.d = 4;
  spec.seed = 7;
  const auto P = random_instance<Q>(spec).P;
  const auto r = plane_curve_implicit(P);
  EXPECT_EQ(r.e, 2);
  EXPECT_EQ(r.F.total_degree(), 2);
}

TEST(PlaneCurve, NeedsThreeMaps) {
  const auto P = Parameterization<Q>::parse(p1(), {"s^3", "s^2*t", "s*t^2", "t^3"});
  EXPECT_THROW(plane_curve_implicit(P), std::invalid_argument);
}

TEST(MapDegree, SpaceCurves) {
  EXPECT_EQ(degree_of_map_curve(Parameterization<Q>::parse(p1(), {"s^3", "s^2*t", "s*t^2", "t^3"})), 1);
  EXPECT_EQ(degree_of_map_curve(Parameterization<Q>::parse(p1(), {"s^6", "s^4*t^2", "s^2*t^4", "t^6"})), 2);
}

TEST(Hypersurface, SphereGcd) {
  const auto P = Parameterization<Q>::parse(p2(), {"x1^2+x2^2+x3^2", "2*x1*x3", "2*x1*x2", "x1^2-x2^2-x3^2"});
  const auto M = build_rep(P, {1}, {}, threshold_surface(2, 1));
  const auto r = hypersurface_implicit_gcd(M);
  EXPECT_EQ(r.e, 1);
  EXPECT_EQ(r.F.monic(), target(P, "T1^2 - T2^2 - T3^2 - T4^2").monic());
  EXPECT_TRUE(r.extraneous.empty());
}

TEST(Hypersurface, MorphismOverFp) {
  InstanceSpec spec;
  spec.kind = InstanceSpec::Kind::Morphism;
  spec.d = 2;
  spec.field = FieldSpec::prime_field(101);
  spec.seed = 33;
  const auto P = random_instance<ModP>(spec).P;
  BuildOptions bo;
  bo.lmax = 3;
  const auto M = build_rep(P, {2}, bo, threshold_morphism(3, 2, std::nullopt));
  const auto r = hypersurface_implicit_gcd(M);
  EXPECT_TRUE(implicit_identity_check(P, r.F));
  // deg psi * deg image = d^2 = 4 for a base-point-free quadratic map
  EXPECT_EQ(r.e * r.F.total_degree(), 4);
}

TEST(RegularityBound, Curves) {
  const auto b = regularity_bound_curve({1, 1, 1}, 3, true);
  EXPECT_EQ(b.bound, 2);
  EXPECT_TRUE(b.all_mu_positive);
  EXPECT_TRUE(b.second_inequality);
  const auto c = regularity_bound_curve({0, 2}, 2, false);
  EXPECT_FALSE(c.applicable);
  EXPECT_FALSE(c.all_mu_positive);
}
