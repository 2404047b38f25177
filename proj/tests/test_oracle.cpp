#include <elimat/acceptance.hpp>

#include <gtest/gtest.h>

#include <set>

using namespace elimat;

namespace {

using Q = Rational;
const FieldSpec F7 = FieldSpec::prime_field(7);

std::vector<ModP> mod(const Field<ModP>& F, std::initializer_list<long> v) {
  std::vector<ModP> out;
  for (long x : v) out.push_back(F.from_int(x));
  return out;
}

}  // namespace

TEST(SourcePoints, CountsProjectiveSpace) {
  EXPECT_EQ(source_points_Fq(*PolyRing::make({{"x", "y", "z"}}, F7)).size(), 57u);  // 49 + 7 + 1
  EXPECT_EQ(source_points_Fq(*PolyRing::make({{"x", "y"}, {"u", "v"}}, F7)).size(), 64u);
}

TEST(SourcePoints, Normalized) {
  std::set<std::string> seen;
  for (const auto& p : source_points_Fq(*PolyRing::make({{"x", "y", "z"}}, F7))) {
    std::string key;
    for (const auto& c : p) key += c.to_string() + ",";
    EXPECT_TRUE(seen.insert(key).second);
    auto q = p;
    normalize_blocks(*PolyRing::make({{"x", "y", "z"}}, F7), q);
    EXPECT_EQ(q, p);
  }
}

TEST(Enumerate, VeroneseFiber) {
  // (x^2, y^2, z^2, xy + yz + xz): the fiber over an image point has 1 to 4 points
  const auto R = PolyRing::make({{"x", "y", "z"}}, F7);
  const Field<ModP> F(F7);
  const auto P = Parameterization<ModP>::parse(R, {"x^2", "y^2", "z^2", "x*y+y*z+x*z"});
  const auto x = mod(F, {1, 2, 3});
  const auto p = P.evaluate(x);
  const auto fib = enumerate_fiber_Fq(P, std::span<const ModP>(p));
  bool found = false;
  for (const auto& q : fib) found = found || q == x;
  EXPECT_TRUE(found);
  for (const auto& q : fib) EXPECT_TRUE(maps_into(P, std::span<const ModP>(q), std::span<const ModP>(p)));
  EXPECT_TRUE(enumerate_fiber_Fq(P, std::span<const ModP>(mod(F, {1, 1, 1, 6}))).size() <= 4u);
}

TEST(Enumerate, RejectsLargePrimes) {
  const auto R = PolyRing::make({{"x", "y", "z"}}, FieldSpec::prime_field(1009));
  const auto P = Parameterization<ModP>::parse(R, {"x^2", "y^2", "z^2", "x*y"});
  const Field<ModP> F(R->field());
  EXPECT_ANY_THROW(enumerate_fiber_Fq(P, std::span<const ModP>(mod(F, {1, 1, 1, 1}))));
}

TEST(Reducedness, SimpleAndDoublePoints) {
  const auto R = PolyRing::make({{"s", "t"}}, FieldSpec::rationals());
  const auto P = Parameterization<Q>::parse(R, {"s^3", "s^2*t", "s*t^2", "t^3"});
  const ReducednessCheck<Q> check(P);
  const std::vector<Q> x{Q(1), Q(2)};
  const auto p = P.evaluate(x);
  EXPECT_TRUE(check(std::span<const Q>(x), std::span<const Q>(p)));
  // s^2 = 0 ramifies at (0:1)
  const auto D = Parameterization<Q>::parse(R, {"s^2", "t^2"});
  const ReducednessCheck<Q> dc(D);
  const std::vector<Q> z{Q(0), Q(1)};
  const auto pz = D.evaluate(z);
  EXPECT_FALSE(dc(std::span<const Q>(z), std::span<const Q>(pz)));
}

TEST(HilbertValue, MatchesFiberSize) {
  const auto R = PolyRing::make({{"x", "y", "z"}}, FieldSpec::prime_field(101));
  const Field<ModP> F(R->field());
  const auto P = Parameterization<ModP>::parse(R, {"x^2", "y^2", "z^2", "x*y+y*z+x*z"});
  const auto p = P.evaluate(mod(F, {1, 2, 3}));
  const auto fib = enumerate_fiber_Fq(P, std::span<const ModP>(p));
  EXPECT_EQ(fiber_hilbert_value(P, std::span<const ModP>(p), 6), static_cast<long>(fib.size()));
  EXPECT_EQ(fiber_hilbert_value(P, std::span<const ModP>(mod(F, {1, 0, 0, 50})), 4), 0);
}

TEST(RandomInstance, Reproducible) {
  InstanceSpec spec;
  spec.r = 4;
  spec.d = 5;
  spec.seed = 77;
  const auto a = random_instance<Q>(spec);
  const auto b = random_instance<Q>(spec);
  ASSERT_EQ(a.P.r(), b.P.r());
  for (std::size_t i = 0; i < a.P.r(); ++i) EXPECT_EQ(a.P.maps[i], b.P.maps[i]);
  spec.seed = 78;
  EXPECT_NE(random_instance<Q>(spec).P.maps[0], a.P.maps[0]);
}

TEST(RandomInstance, Kinds) {
  InstanceSpec m;
  m.kind = InstanceSpec::Kind::Morphism;
  m.d = 3;
  m.field = FieldSpec::prime_field(101);
  m.seed = 4;
  EXPECT_EQ(dim_base_locus(random_instance<ModP>(m).P).kind, BaseLocus::Kind::Empty);

  InstanceSpec pl;
  pl.kind = InstanceSpec::Kind::PlantedLine;
  pl.d = 3;
  pl.seed = 4;
  const auto P = random_instance<Q>(pl).P;
  EXPECT_EQ(P.degree, MultiDegree{3});
  EXPECT_GE(jacobian_minor_gcd(P).degree, 1);

  InstanceSpec c;
  c.kind = InstanceSpec::Kind::CompositeCurve;
  c.r = 4;
  c.k = 2;
  c.d = 4;
  c.seed = 4;
  EXPECT_EQ(degree_of_map_curve(random_instance<Q>(c).P), 2);
}

TEST(ExactP1, Oracle) {
  const auto R = PolyRing::make({{"s", "t"}}, FieldSpec::rationals());
  const auto P = Parameterization<Q>::parse(R, {"s^4", "s^2*t^2", "t^4"});
  const std::vector<Q> p{Q(1), Q(4), Q(16)};
  EXPECT_EQ(fiber_degree_exact_P1(P, std::span<const Q>(p)), 2u);
  const std::vector<Q> off{Q(1), Q(5), Q(16)};
  EXPECT_EQ(fiber_degree_exact_P1(P, std::span<const Q>(off)), 0u);
}
