#include <elimat/linalg.hpp>

#include <gtest/gtest.h>

#include <numeric>

using namespace elimat;

namespace {

using MQ = DenseMatrix<Rational>;
using MP = DenseMatrix<ModP>;
const Field<Rational> FQ;
const Field<ModP> F101(FieldSpec::prime_field(101));

MQ from_ints(std::size_t r, std::size_t c, std::vector<long> v) {
  std::vector<Rational> d;
  for (long x : v) d.push_back(FQ.from_int(x));
  return MQ(r, c, d);
}

MQ random_q(Rng& rng, std::size_t r, std::size_t c) {
  MQ m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = FQ.random(rng);
  return m;
}

MP random_p(Rng& rng, std::size_t r, std::size_t c) {
  MP m(r, c, F101.zero());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = F101.random(rng);
  return m;
}

template <class K>
void check_kernel(const DenseMatrix<K>& m, const Field<K>& F) {
  const auto ker = nullspace_basis(m, F);
  EXPECT_EQ(rank(m) + ker.size(), m.cols());
  for (const auto& v : ker)
    for (const auto& x : m * v) EXPECT_TRUE(x.is_zero());
}

}  // namespace

TEST(Rank, Examples) {
  EXPECT_EQ(rank(MQ::identity(3, FQ)), 3U);
  EXPECT_EQ(rank(MQ(3, 4)), 0U);
  // twisted cubic M1 at T = (1,0,0,0)
  EXPECT_EQ(rank(from_ints(2, 3, {0, 0, 0, 1, 0, 0})), 1U);
}

TEST(Nullspace, Examples) {
  EXPECT_TRUE(nullspace_basis(MQ::identity(4, FQ), FQ).empty());
  auto k = nullspace_basis(from_ints(1, 2, {1, -1}), FQ);
  ASSERT_EQ(k.size(), 1U);
  EXPECT_EQ(k[0], (std::vector<Rational>{FQ.one(), FQ.one()}));
  // multiplication map (a1,a2,a3) -> a1 x^2 + a2 xy + a3 y^2, a_i linear;
  // rows x^3, x^2y, xy^2, y^3; columns x*e1, y*e1, x*e2, y*e2, x*e3, y*e3
  auto sylv = from_ints(4, 6, {1, 0, 0, 0, 0, 0,  //
                               0, 1, 1, 0, 0, 0,  //
                               0, 0, 0, 1, 1, 0,  //
                               0, 0, 0, 0, 0, 1});
  EXPECT_EQ(nullspace_basis(sylv, FQ).size(), 2U);
  check_kernel(sylv, FQ);
}

TEST(Determinant, Examples) {
  EXPECT_EQ(determinant(MQ::identity(5, FQ), FQ), FQ.one());
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    MQ m = random_q(rng, 2, 2);
    EXPECT_EQ(determinant(m, FQ), m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
  }
  EXPECT_TRUE(determinant(from_ints(3, 3, {1, 2, 3, 2, 4, 6, 0, 1, 1}), FQ).is_zero());
  EXPECT_THROW(determinant(MQ(2, 3), FQ), std::invalid_argument);
}

TEST(Determinant, RowPermutationParity) {
  Rng rng(5);
  for (int t = 0; t < 15; ++t) {
    const std::size_t n = 2 + t % 4;
    MQ m = random_q(rng, n, n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    int parity = 1;
    std::vector<std::size_t> p = perm;
    for (std::size_t i = 0; i < n; ++i)
      while (p[i] != i) {
        std::swap(p[i], p[p[i]]);
        parity = -parity;
      }
    MQ pm(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) pm(i, j) = m(perm[i], j);
    EXPECT_EQ(determinant(pm, FQ), FQ.from_int(parity) * determinant(m, FQ));
    MP mp = random_p(rng, n, n), pp(n, n, F101.zero());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) pp(i, j) = mp(perm[i], j);
    EXPECT_EQ(determinant(pp, F101), F101.from_int(parity) * determinant(mp, F101));
  }
}

TEST(Determinant, MultiplicativeOverQ) {
  Rng rng(9);
  for (int t = 0; t < 10; ++t) {
    MQ a = random_q(rng, 4, 4), b = random_q(rng, 4, 4);
    EXPECT_EQ(determinant(a * b, FQ), determinant(a, FQ) * determinant(b, FQ));
  }
}

TEST(Rank, InvariantUnderInvertibleOperations) {
  Rng rng(21);
  for (int t = 0; t < 15; ++t) {
    // low-rank product
    const std::size_t k = 1 + t % 3;
    MQ m = random_q(rng, 5, k) * random_q(rng, k, 6);
    MQ u = random_q(rng, 5, 5), v = random_q(rng, 6, 6);
    if (determinant(u, FQ).is_zero() || determinant(v, FQ).is_zero()) continue;
    EXPECT_EQ(rank(u * m * v), rank(m));
    EXPECT_LE(rank(m), k);
    check_kernel(m, FQ);
    MP mp = random_p(rng, 4, k) * random_p(rng, k, 7);
    check_kernel(mp, F101);
    EXPECT_EQ(rank(mp), rref(mp).rank());
  }
}

TEST(Solve, ParticularSolution) {
  auto a = from_ints(2, 3, {1, 2, 0, 0, 0, 1});
  auto x = solve(a, {FQ.from_int(3), FQ.from_int(4)}, FQ);
  ASSERT_TRUE(x);
  EXPECT_EQ(a * *x, (std::vector<Rational>{FQ.from_int(3), FQ.from_int(4)}));
  EXPECT_TRUE((*x)[1].is_zero());
  auto b = from_ints(2, 1, {1, 1});
  EXPECT_FALSE(solve(b, {FQ.one(), FQ.zero()}, FQ));
}

TEST(Rref, RationalEntries) {
  MQ m(2, 2);
  m(0, 0) = FQ.parse("1/3");
  m(0, 1) = FQ.parse("2/5");
  m(1, 0) = FQ.parse("2/3");
  m(1, 1) = FQ.parse("4/5");
  auto e = rref(m);
  EXPECT_EQ(e.rank(), 1U);
  EXPECT_EQ(e.reduced(0, 1), FQ.parse("6/5"));
  EXPECT_EQ(determinant(m, FQ), FQ.zero());
  m(1, 1) = FQ.one();
  EXPECT_EQ(determinant(m, FQ), FQ.parse("1/3") - FQ.parse("4/15"));
}
