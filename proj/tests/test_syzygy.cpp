#include <elimat/oracle.hpp>
#include <elimat/syzygy.hpp>

#include <gtest/gtest.h>

using namespace elimat;

namespace {

using Q = Rational;

RingPtr p1(FieldSpec f = FieldSpec::rationals()) { return PolyRing::make({{"x", "y"}}, f); }
RingPtr p2(FieldSpec f = FieldSpec::rationals()) { return PolyRing::make({{"x1", "x2", "x3"}}, f); }

Parameterization<Q> twisted_cubic() { return Parameterization<Q>::parse(p1(), {"x^3", "x^2*y", "x*y^2", "y^3"}); }
Parameterization<Q> conic() { return Parameterization<Q>::parse(p1(), {"x^2", "x*y", "y^2"}); }
Parameterization<Q> sphere() {
  return Parameterization<Q>::parse(p2(), {"x1^2+x2^2+x3^2", "2*x1*x3", "2*x1*x2", "x1^2-x2^2-x3^2"});
}

template <class K>
bool annihilates(const Parameterization<K>& P, const Tuple<K>& s) {
  Polynomial<K> acc(P.ring);
  for (std::size_t i = 0; i < P.r(); ++i) acc += s[i] * P.maps[i];
  return acc.is_zero();
}

}  // namespace

TEST(MuBasis, TwistedCubic) {
  const auto B = mu_basis(twisted_cubic());
  EXPECT_EQ(B.mu, (std::vector<int>{1, 1, 1}));
  EXPECT_TRUE(hilbert_burch_holds(twisted_cubic(), B.columns));
}

TEST(MuBasis, Conic) {
  const auto P = conic();
  const auto B = mu_basis(P);
  EXPECT_EQ(B.mu, (std::vector<int>{1, 1}));
  for (const auto& c : B.columns) EXPECT_TRUE(annihilates(P, c));
}

TEST(MuBasis, RandomCurvesSumToDegree) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    InstanceSpec spec;
    spec.r = 3 + seed % 3;
    spec.d = 2 + static_cast<int>(seed % 5);
    spec.seed = seed;
    const auto P = random_instance<Q>(spec).P;
    const auto B = mu_basis(P);
    ASSERT_EQ(B.mu.size(), P.r() - 1);
    int sum = 0;
    for (int m : B.mu) sum += m;
    EXPECT_EQ(sum, spec.d) << "seed " << seed;
    EXPECT_TRUE(std::is_sorted(B.mu.begin(), B.mu.end()));
    EXPECT_TRUE(hilbert_burch_holds(P, B.columns)) << "seed " << seed;
    for (const auto& c : B.columns) EXPECT_TRUE(annihilates(P, c));
  }
}

TEST(MuBasis, NeedsCurve) { EXPECT_THROW(mu_basis(sphere()), std::invalid_argument); }

TEST(Syzygies, DimensionMatchesRankCount) {
  const auto P = sphere();
  for (int nu = 0; nu <= 3; ++nu) {
    const auto S = syzygies_in_degree(P, {nu});
    const auto A = multiplication_matrix(P.ring, P.maps, P.degree, {nu});
    EXPECT_EQ(S.basis.size(), P.r() * graded_basis(*P.ring, {nu}).size() - rank(A)) << "nu " << nu;
    for (const auto& s : S.basis) EXPECT_TRUE(annihilates(P, s));
  }
}

TEST(Syzygies, SphereHasLinearSyzygies) {
  // the two base points force syzygies of degree 1
  EXPECT_EQ(syzygies_in_degree(sphere(), {0}).basis.size(), 0u);
  EXPECT_EQ(syzygies_in_degree(sphere(), {1}).basis.size(), 4u);
}

TEST(Syzygies, MinimalGeneratorsUpTo) {
  const auto gens = minimal_generators_up_to(twisted_cubic(), {2});
  ASSERT_EQ(gens.size(), 3u);
  for (const auto& g : gens) EXPECT_EQ(g.degree, MultiDegree{1});
}

TEST(Koszul, RegularSequenceIsAcyclic) {
  const auto P = Parameterization<Q>::parse(p1(), {"x^2", "y^2"});
  for (int delta = 0; delta <= 8; ++delta) EXPECT_EQ(koszul_H1(P, {delta}).dim(), 0u) << "delta " << delta;
}

TEST(Koszul, Z2MatchesNullspace) {
  const auto P = conic();
  for (int nu = 0; nu <= 2; ++nu) {
    const auto Z = koszul_cycles(P, 2, {nu});
    EXPECT_EQ(Z.basis.size(), nullspace_basis(koszul_matrix(P, 2, {nu}), P.field()).size());
  }
}

TEST(Koszul, DifferentialSquaresToZero) {
  const auto P = sphere();
  for (int nu = 0; nu <= 1; ++nu) {
    const auto d1 = koszul_matrix(P, 1, {nu + 2});
    const auto d2 = koszul_matrix(P, 2, {nu});
    EXPECT_TRUE(rank(d1 * d2) == 0);
  }
}

TEST(Koszul, H1DimensionBookkeeping) {
  const auto P = conic();
  const auto H = koszul_H1(P, {4});
  EXPECT_EQ(H.dim(), H.dim_z - H.dim_b);
  EXPECT_EQ(H.dim(), 1u);
}

TEST(Upgrade, ConicQuadric) {
  const auto P = conic();
  const Tuple<Q> h{P.maps[2], -P.maps[1], Polynomial<Q>(P.ring)};
  const auto E = upgrade_syzygy(P, h, 2);
  EXPECT_EQ(E.nu, MultiDegree{0});
  EXPECT_EQ(E.coeffs[0], parse_polynomial<Q>("T1*T3 - T2^2", P.target));
  EXPECT_TRUE(substitute_maps(P, E).is_zero());
  const auto back = downgrade(P, E);
  const auto basis = graded_basis(*P.ring, {2});
  EXPECT_EQ(tuple_coordinates(back, basis), tuple_coordinates(h, basis));
}

TEST(Upgrade, KoszulCycleUpgradesToZero) {
  const auto P = conic();
  const Tuple<Q> h{P.maps[1], -P.maps[0], Polynomial<Q>(P.ring)};
  const auto E = upgrade_syzygy(P, h, 2);
  for (const auto& c : E.coeffs) EXPECT_TRUE(c.is_zero());
}

TEST(Upgrade, SphereQuadric) {
  const auto P = sphere();
  const Tuple<Q> h{P.maps[0], -P.maps[1], -P.maps[2], -P.maps[3]};
  const auto E = upgrade_syzygy(P, h, 2);
  EXPECT_EQ(E.coeffs[0], parse_polynomial<Q>("T1^2 - T2^2 - T3^2 - T4^2", P.target));
  EXPECT_TRUE(substitute_maps(P, E).is_zero());
}

TEST(Upgrade, InfeasibleBelowRange) {
  // x2 times a linear syzygy of the sphere leaves the span of the f_i
  const auto P = sphere();
  const auto S = syzygies_in_degree(P, {1});
  ASSERT_FALSE(S.basis.empty());
  const auto x2 = Polynomial<Q>::variable(P.ring, 1);
  int infeasible = 0;
  for (auto h : S.basis) {
    for (auto& c : h) c = c * x2;
    try {
      upgrade_syzygy(P, h, 2);
    } catch (const UpgradeInfeasible&) {
      ++infeasible;
    }
  }
  EXPECT_GT(infeasible, 0);
  EXPECT_THROW(rees_layer(P, {0}, 2), UpgradeInfeasible);
}

TEST(ReesLayer, RegularSequenceEmpty) {
  const auto P = Parameterization<Q>::parse(p1(), {"x^3", "y^3"});
  for (int l = 2; l <= 3; ++l) EXPECT_TRUE(rees_layer(P, {1}, l).basis.empty());
}

TEST(ReesLayer, MorphismLayersMatchH1) {
  for (std::uint64_t seed = 1; seed <= 2; ++seed) {
    InstanceSpec spec;
    spec.kind = InstanceSpec::Kind::Morphism;
    spec.d = 2;
    spec.field = FieldSpec::prime_field(101);
    spec.seed = seed;
    const auto P = random_instance<ModP>(spec).P;
    for (int nu = 1; nu <= 2; ++nu)
      for (int l = 2; l <= 3; ++l) {
        const auto L = rees_layer(P, {nu}, l);
        const auto H = koszul_H1(P, MultiDegree{nu} + l * P.degree);
        EXPECT_EQ(L.basis.size(), H.dim());
        for (std::size_t i = 0; i < L.basis.size(); ++i) {
          EXPECT_TRUE(substitute_maps(P, L.basis[i]).is_zero());
          const auto c = H.coordinates(tuple_coordinates(downgrade(P, L.basis[i]), H.coeff_basis));
          for (std::size_t k = 0; k < c.size(); ++k) EXPECT_EQ(c[k].is_one(), k == i);
        }
      }
  }
}
