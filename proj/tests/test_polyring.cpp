#include <elimat/gcd.hpp>
#include <elimat/parse.hpp>

#include <gtest/gtest.h>

using namespace elimat;

namespace {

RingPtr p1() { return PolyRing::make({{"x", "y"}}, FieldSpec::rationals()); }
RingPtr p2(FieldSpec f = FieldSpec::rationals()) { return PolyRing::make({{"x", "y", "z"}}, f); }

using PQ = Polynomial<Rational>;
using PP = Polynomial<ModP>;

PQ q(const std::string& s, const RingPtr& r) { return parse_polynomial<Rational>(s, r); }

}  // namespace

TEST(Parse, HomogeneousAndNot) {
  auto R = p1();
  auto a = q("x^2 - y^2", R);
  ASSERT_TRUE(a.multidegree());
  EXPECT_EQ(*a.multidegree(), MultiDegree{2});
  EXPECT_FALSE(q("x*y + 1", R).is_homogeneous());
}

TEST(Parse, Bigraded) {
  auto R = PolyRing::make({{"u", "v"}, {"t", "s"}}, FieldSpec::rationals());
  auto a = q("2*u*t - 3*v*t", R);
  EXPECT_EQ(*a.multidegree(), (MultiDegree{1, 1}));
}

TEST(Parse, Errors) {
  auto R = p1();
  EXPECT_THROW(q("x +", R), ParseError);
  EXPECT_THROW(q("x w", R), ParseError);
  try {
    q("x + w", R);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4U);
    EXPECT_NE(std::string(e.what()).find("unknown variable"), std::string::npos);
  }
  auto Rp = PolyRing::make({{"x", "y"}}, FieldSpec::prime_field(7));
  EXPECT_THROW(parse_polynomial<ModP>("x/7", Rp), ParseError);
  EXPECT_EQ(parse_polynomial<ModP>("x/2", Rp).to_string(), "4*x");
}

TEST(Parse, CanonicalRoundTrip) {
  auto R = p2();
  for (const char* s : {"x^2 - y^2", "3/7*x*y - z^2", "-x", "x^3 + 2*x*y*z - 5", "0", "1"}) {
    auto a = q(s, R);
    EXPECT_EQ(q(a.to_string(), R), a) << s;
    EXPECT_EQ(q(a.to_string(), R).to_string(), a.to_string());
  }
  EXPECT_EQ(q("(x - y)*(x + y)", R).to_string(), "x^2 - y^2");
  EXPECT_EQ(q("-(x)^2*3", R).to_string(), "-3*x^2");
}

TEST(GradedBasis, Examples) {
  auto R2 = p2();
  auto b = graded_basis(*R2, {1});
  ASSERT_EQ(b.size(), 3U);
  EXPECT_EQ(R2->monomial_string(b[0]), "x");
  EXPECT_EQ(R2->monomial_string(b[2]), "z");
  auto R1 = p1();
  auto c = graded_basis(*R1, {3});
  std::vector<std::string> names;
  for (auto& m : c) names.push_back(R1->monomial_string(m));
  EXPECT_EQ(names, (std::vector<std::string>{"x^3", "x^2*y", "x*y^2", "y^3"}));
  auto R3 = PolyRing::make({{"a", "b"}, {"c", "d"}, {"e", "f"}}, FieldSpec::rationals());
  EXPECT_EQ(graded_basis(*R3, {1, 1, 0}).size(), 4U);
  EXPECT_TRUE(graded_basis(*R3, {1, -1, 0}).empty());
}

TEST(GradedBasis, CountsMatchBinomials) {
  auto R = PolyRing::make({{"a", "b", "c", "d"}, {"s", "t"}}, FieldSpec::rationals());
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 4; ++j) {
      EXPECT_EQ(graded_basis(*R, {i, j}).size(), binomial(i + 3, 3) * binomial(j + 1, 1));
      EXPECT_EQ(graded_dimension(*R, {i, j}), binomial(i + 3, 3) * binomial(j + 1, 1));
    }
}

TEST(Ring, Validation) {
  EXPECT_THROW(PolyRing::make({{"x"}}, FieldSpec::rationals()), std::invalid_argument);
  EXPECT_THROW(PolyRing::make({{"x", "y"}, {"x", "z"}}, FieldSpec::rationals()), std::invalid_argument);
  EXPECT_THROW(FieldSpec::prime_field(100), std::invalid_argument);
}

TEST(Gcd, Examples) {
  auto R = p1();
  EXPECT_EQ(gcd(q("x^2 - y^2", R), q("x^2 - x*y", R)), q("x - y", R));
  EXPECT_EQ(gcd(q("3*x^2 - 3*y^2", R), PQ(R)), q("x^2 - y^2", R));
  EXPECT_EQ(gcd(q("x + y", R), q("x - y", R)), q("1", R));
}

TEST(Gcd, PlantedFactorMultivariate) {
  auto R = p2();
  Rng rng(7);
  Field<Rational> F;
  auto rand_form = [&](int deg) {
    PQ p(R);
    for (auto& m : graded_basis(*R, {deg})) p += PQ::monomial(R, m, F.random(rng, 5));
    return p;
  };
  for (int trial = 0; trial < 8; ++trial) {
    const PQ h = rand_form(2), a = rand_form(2), b = rand_form(3);
    const PQ g = gcd(h * a, h * b);
    ASSERT_TRUE((h * a).divide_exact(g));
    ASSERT_TRUE((h * b).divide_exact(g));
    EXPECT_TRUE(g.divide_exact(h.monic()).has_value());
    const PQ qa = *(h * a).divide_exact(g), qb = *(h * b).divide_exact(g);
    EXPECT_TRUE(gcd(qa, qb).is_constant());
  }
}

TEST(Gcd, PrimeField) {
  auto R = p2(FieldSpec::prime_field(101));
  auto a = parse_polynomial<ModP>("(x + 3*y)*(x*z - y^2)", R);
  auto b = parse_polynomial<ModP>("(x + 3*y)^2*(z + x)", R);
  EXPECT_EQ(gcd(a, b), parse_polynomial<ModP>("x + 3*y", R));
}

TEST(Squarefree, Decomposition) {
  auto R = p2();
  const PQ a = q("x - y", R), b = q("x*z + y^2", R);
  const PQ f = q("5", R) * a * b.pow(3);
  auto sq = squarefree_decomposition(f);
  ASSERT_EQ(sq.size(), 2U);
  EXPECT_EQ(sq.at(1), a.monic());
  EXPECT_EQ(sq.at(3), b.monic());
}

TEST(Evaluate, Basics) {
  auto R = p1();
  Field<Rational> F;
  std::vector<Rational> pt{F.one(), F.one()};
  EXPECT_EQ(q("x^2 + y^2", R).evaluate(pt), F.from_int(2));
  std::vector<Rational> zero{F.zero(), F.zero()};
  EXPECT_EQ(q("x^2 + 7", R).evaluate(zero), F.from_int(7));
}

TEST(Evaluate, SphereBasePointOverF101) {
  auto R = p2(FieldSpec::prime_field(101));
  Field<ModP> F(R->field());
  const ModP i = F.from_int(10);  // 10^2 = -1 mod 101
  ASSERT_EQ(i * i, -F.one());
  std::vector<ModP> pt{F.zero(), F.one(), i};
  for (const char* s : {"x^2 + y^2 + z^2", "2*x*z", "2*x*y", "x^2 - y^2 - z^2"})
    EXPECT_TRUE(parse_polynomial<ModP>(s, R).evaluate(pt).is_zero()) << s;
}

TEST(Arithmetic, RingAxiomsRandomized) {
  auto R = p2();
  Rng rng(11);
  Field<Rational> F;
  auto rand_poly = [&]() {
    PQ p(R);
    for (int k = 0; k < 5; ++k) {
      Monomial m;
      for (int v = 0; v < 3; ++v) m[v] = static_cast<std::uint16_t>(uniform_int(rng, 0, 2));
      p += PQ::monomial(R, m, F.random(rng));
    }
    return p;
  };
  for (int t = 0; t < 25; ++t) {
    const PQ a = rand_poly(), b = rand_poly(), c = rand_poly();
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a - a, PQ(R));
    if (!b.is_zero()) {
      EXPECT_EQ(*(a * b).divide_exact(b), a);
    }
  }
}

TEST(Arithmetic, ComposeAndDerivative) {
  auto R = p1();
  auto T = PolyRing::target(3, FieldSpec::rationals());
  auto F = parse_polynomial<Rational>("T1^2 + T2^2 - T3^2", T);
  std::vector<PQ> circle{q("x^2 - y^2", R), q("2*x*y", R), q("x^2 + y^2", R)};
  EXPECT_TRUE(F.compose(circle).is_zero());
  EXPECT_EQ(q("x^3*y + y^2", R).derivative(0), q("3*x^2*y", R));
}
