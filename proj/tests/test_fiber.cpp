#include <elimat/acceptance.hpp>

#include <gtest/gtest.h>

#include <algorithm>

using namespace elimat;

namespace {

using Q = Rational;
const Field<Q> FQ;
const Field<ModP> F101(FieldSpec::prime_field(101));

RingPtr p1() { return PolyRing::make({{"s", "t"}}, FieldSpec::rationals()); }
RingPtr p2(FieldSpec f = FieldSpec::rationals()) { return PolyRing::make({{"x", "y", "z"}}, f); }

std::vector<Q> ints(std::initializer_list<long> v) {
  std::vector<Q> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

UPoly<Q> ascending(std::initializer_list<long> ascending) { return ints(ascending); }

template <class K>
MatrixRep<K> certified(const Parameterization<K>& P, BuildOptions bo = {}) {
  std::optional<BaseLocus> locus;
  const auto cert = infer_certificate(P, bo, &locus);
  return build_rep(P, cert->default_degree(), bo, cert);
}

template <class K>
bool same_point(std::vector<K> a, std::vector<K> b, const PolyRing& R) {
  normalize_blocks(R, a);
  normalize_blocks(R, b);
  return a == b;
}

}  // namespace

TEST(Roots, RationalWithMultiplicity) {
  // (x - 1)(x + 2)^2 (x^2 + 1)
  const auto a = ascending({-4, 0, -1, 1, 3, 1});
  ASSERT_EQ(upoly::eval(a, Q(1), FQ), Q(0));
  const auto r = univariate_roots(a, FQ);
  ASSERT_EQ(r.roots.size(), 2u);
  std::map<std::string, int> got;
  for (const auto& x : r.roots) got[x.value.to_string()] = x.multiplicity;
  EXPECT_EQ(got["1"], 1);
  EXPECT_EQ(got["-2"], 2);
  EXPECT_EQ(upoly::degree(r.leftover), 2);
}

TEST(Roots, FractionsAndQuadratics) {
  // (3x - 2)(x^2 - 2) keeps the irrational pair as leftover
  const auto r = univariate_roots(ascending({4, -6, -2, 3}), FQ);
  ASSERT_EQ(r.roots.size(), 1u);
  EXPECT_EQ(r.roots[0].value, FQ.parse("2/3"));
  EXPECT_EQ(upoly::degree(r.leftover), 2);
}

TEST(Roots, PrimeFieldScan) {
  // x^2 + 1 splits mod 101 since 101 = 1 mod 4
  UPoly<ModP> a{F101.one(), F101.zero(), F101.one()};
  const auto r = univariate_roots(a, F101);
  ASSERT_EQ(r.roots.size(), 2u);
  for (const auto& x : r.roots) EXPECT_TRUE(upoly::eval(a, x.value, F101).is_zero());
}

TEST(Roots, BinaryFormAtInfinity) {
  // x^2 y (x - y): roots (0:1) with multiplicity 2, (1:0), (1:1)
  const auto R = p1();
  const auto h = parse_polynomial<Q>("s^3*t - s^2*t^2", R);
  const auto c = binary_form_coeffs(h, 0, 1);
  const auto br = binary_form_roots(c, FQ);
  EXPECT_EQ(br.degree, 4);
  int total = 0;
  for (const auto& r : br.roots) total += r.multiplicity;
  EXPECT_EQ(total, 4);
}

TEST(Roots, Interpolation) {
  const auto a = ascending({5, 0, -3, 1});
  std::vector<Q> vals;
  for (long t = 0; t <= 3; ++t) vals.push_back(upoly::eval(a, Q(t), FQ));
  EXPECT_EQ(upoly::interpolate(vals, FQ), a);
}

TEST(FiberDegree, TwistedCubic) {
  const auto P = Parameterization<Q>::parse(p1(), {"s^3", "s^2*t", "s*t^2", "t^3"});
  const auto M = certified(P);
  const auto on = fiber_degree(M, std::span<const Q>(ints({1, 2, 4, 8})));
  EXPECT_EQ(on.corank, 1u);
  EXPECT_TRUE(on.certified);
  EXPECT_EQ(on.interpretation, "finite fiber of degree 1");
  EXPECT_EQ(fiber_degree(M, std::span<const Q>(ints({1, 0, 0, 1}))).interpretation, "not in the image");
}

TEST(FiberDegree, RejectsBadPoints) {
  const auto P = Parameterization<Q>::parse(p1(), {"s^3", "s^2*t", "s*t^2", "t^3"});
  EXPECT_THROW(check_target_point(P, std::span<const Q>(ints({0, 0, 0, 0}))), std::invalid_argument);
  EXPECT_THROW(check_target_point(P, std::span<const Q>(ints({1, 2}))), std::invalid_argument);
}

TEST(FiberDegree, ExactOracleOnCurves) {
  Rng rng(17);
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    InstanceSpec spec;
    spec.r = 3;
    spec.d = 3 + static_cast<int>(seed % 3);
    spec.seed = seed;
    const auto P = random_instance<Q>(spec).P;
    const auto M = certified(P);
    for (int s = 0; s < 4; ++s) {
      const auto x = acceptance::random_point(FQ, rng, 2, 9);
      const auto p = P.evaluate(x);
      if (all_zero(p)) continue;
      EXPECT_EQ(M.corank(p), fiber_degree_exact_P1(P, std::span<const Q>(p)));
    }
  }
}

TEST(FittingIdeal, SphereGenerators) {
  const auto P = Parameterization<Q>::parse(p2(), {"x^2+y^2+z^2", "2*x*z", "2*x*y", "x^2-y^2-z^2"});
  const auto M = build_rep(P, {1}, {}, threshold_surface(2, 1));
  const auto fitt0 = fitting_generators(M, 0);
  ASSERT_FALSE(fitt0.empty());
  const auto sphere = parse_polynomial<Q>("T1^2 - T2^2 - T3^2 - T4^2", P.target);
  for (const auto& g : fitt0) EXPECT_TRUE(g.divide_exact(sphere).has_value());
}

TEST(FiberPoints, DoubleConicOverP1) {
  const auto P = Parameterization<Q>::parse(p1(), {"s^4", "s^2*t^2", "t^4"});
  const auto fp = fiber_points_P1(P, std::span<const Q>(ints({1, 4, 16})));
  EXPECT_EQ(fp.degree, 2u);
  ASSERT_EQ(fp.points.size(), 2u);
  std::vector<std::string> ts;
  for (const auto& x : fp.points) {
    auto c = x.coords;
    normalize_blocks(*P.ring, c);
    ts.push_back(c[1].to_string());
  }
  std::sort(ts.begin(), ts.end());
  EXPECT_EQ(ts, (std::vector<std::string>{"-2", "2"}));
}

TEST(FiberPoints, TwistedCubicFromKernel) {
  const auto P = Parameterization<Q>::parse(p1(), {"s^3", "s^2*t", "s*t^2", "t^3"});
  const auto M = certified(P);
  const auto fp = fiber_points_from_kernel(M, std::span<const Q>(ints({8, 12, 18, 27})));
  ASSERT_EQ(fp.points.size(), 1u);
  EXPECT_TRUE(same_point(fp.points[0].coords, ints({2, 3}), *P.ring));
}

TEST(FiberPoints, MorphismRecoversSource) {
  InstanceSpec spec;
  spec.kind = InstanceSpec::Kind::Morphism;
  spec.d = 2;
  spec.field = FieldSpec::prime_field(101);
  spec.seed = 21;
  const auto P = random_instance<ModP>(spec).P;
  BuildOptions bo;
  bo.lmax = 3;
  const auto M = certified(P, bo);
  Rng rng(5);
  int recovered = 0;
  for (int s = 0; s < 5; ++s) {
    const auto x = acceptance::random_point(F101, rng, 3, 0);
    const auto p = P.evaluate(x);
    if (all_zero(p)) continue;
    const auto fp = fiber_points_from_kernel(M, std::span<const ModP>(p));
    EXPECT_EQ(fp.degree, M.corank(p));
    for (const auto& q : fp.points) {
      EXPECT_TRUE(maps_into(P, std::span<const ModP>(q.coords), std::span<const ModP>(p)));
      if (same_point(q.coords, x, *P.ring)) ++recovered;
    }
  }
  EXPECT_GT(recovered, 0);
}

TEST(Jacobian, PlantedLine) {
  const auto P = Parameterization<Q>::parse(p2(), {"x*y^2", "x*y*z", "x*z^2", "y^3"});
  const auto J = jacobian_minor_gcd(P);
  EXPECT_EQ(J.F.to_string(), "x*y^3");
  EXPECT_EQ(J.degree, 4);
  EXPECT_EQ(J.bound, 5);
  EXPECT_LE(J.degree, J.bound);
}

TEST(Jacobian, OneDimensionalFiber) {
  const auto P = Parameterization<Q>::parse(p2(), {"x*y^2", "x*y*z", "x*z^2", "y^3"});
  const auto p = ints({0, 0, 0, 1});
  const auto D = one_dim_fiber_decomposition(P, std::span<const Q>(p));
  EXPECT_EQ(D.h.to_string(), "x");
  for (std::size_t i = 0; i < P.r(); ++i)
    EXPECT_EQ(P.maps[i], D.lp_of_f * Polynomial<Q>::constant(P.ring, p[i]) + D.h * D.g[i]);
  EXPECT_THROW(one_dim_fiber_decomposition(P, std::span<const Q>(ints({1, 2, 3, 4}))), std::invalid_argument);
}

TEST(Jacobian, ContractedLocus) {
  const auto P = Parameterization<Q>::parse(p2(), {"x*y^2", "x*y*z", "x*z^2", "y^3"});
  const auto gens = contracted_locus_generators(P, 1);
  ASSERT_FALSE(gens.empty());
  const auto F = jacobian_minor_gcd(P).F;
  for (const auto& g : gens) EXPECT_TRUE(g.divide_exact(F).has_value());
}

TEST(FiberPoints, ScalingInvariance) {
  InstanceSpec spec;
  spec.kind = InstanceSpec::Kind::Morphism;
  spec.d = 2;
  spec.field = FieldSpec::prime_field(101);
  spec.seed = 12;
  const auto P = random_instance<ModP>(spec).P;
  BuildOptions bo;
  bo.lmax = 3;
  const auto M = certified(P, bo);
  Rng rng(44);
  for (int s = 0; s < 4; ++s) {
    const auto p = P.evaluate(acceptance::random_point(F101, rng, 3, 0));
    if (all_zero(p)) continue;
    auto q = p;
    for (auto& c : q) c = c * F101.from_int(7);
    const auto a = fiber_points_from_kernel(M, std::span<const ModP>(p));
    const auto b = fiber_points_from_kernel(M, std::span<const ModP>(q));
    EXPECT_EQ(a.degree, b.degree);
    ASSERT_EQ(a.points.size(), b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      EXPECT_EQ(a.points[i].coords, b.points[i].coords);
      EXPECT_EQ(a.points[i].multiplicity, b.points[i].multiplicity);
    }
  }
}
