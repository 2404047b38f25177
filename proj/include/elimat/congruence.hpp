#pragma once

// Normal-line congruence of a surface (W : F1 : F2 : F3) over X = P^2 or
// P^1 x P^1, as a map X x P^1 -> P^3, and orthogonal projection of points
// through its elimination matrices.

#include <elimat/fiber.hpp>

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace elimat {

class DegenerateQuery : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class K>
using Vec3 = std::array<Polynomial<K>, 3>;

template <class K>
Vec3<K> cross(const Vec3<K>& a, const Vec3<K>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class K>
struct NormalCongruence {
  Parameterization<K> surface;
  Parameterization<K> psi;  ///< on X x P^1, last block (t0 : t1)
  Vec3<K> normal;           ///< primitive normal field on X
  MultigradedSource source;
  ThresholdCertificate certificate;
  std::string hypothesis;

  int e() const { return psi.degree.back(); }
};

namespace detail {

inline std::string fresh_name(const PolyRing& R, std::string name) {
  while (R.find(name)) name += "_";
  return name;
}

}  // namespace detail

/// Psi = (t0 W A, t0 F A + t1 n B): the line sigma + t n in the chart W != 0
/// with sigma = F / W and n the primitive normal; A, B are powers of the
/// first variable of each block balancing the degrees.
template <class K>
NormalCongruence<K> build_normal_congruence(const Parameterization<K>& S) {
  if (S.r() != 4) throw std::invalid_argument("a surface in P^3 needs 4 maps");
  MultigradedSource X;
  if (S.source_is({3}))
    X = MultigradedSource::P2;
  else if (S.source_is({2, 2}))
    X = MultigradedSource::P1xP1;
  else
    throw std::invalid_argument("surface source must be P^2 or P^1 x P^1");
  const RingPtr& R = S.ring;
  const auto& W = S.maps[0];
  if (W.is_zero()) throw std::invalid_argument("first map vanishes: surface lies at infinity");
  const Vec3<K> F3{S.maps[1], S.maps[2], S.maps[3]};
  auto G = [&](std::size_t v) {
    const auto dW = W.derivative(v);
    Vec3<K> g;
    for (int i = 0; i < 3; ++i) g[i] = W * F3[i].derivative(v) - F3[i] * dW;
    return g;
  };
  // chart variables: the first of each block; the tangent directions are the seconds
  Polynomial<K> divisor = W;
  Vec3<K> N;
  if (X == MultigradedSource::P2) {
    N = cross(G(1), G(2));
    divisor *= Polynomial<K>::variable(R, 0);
  } else {
    N = cross(G(1), G(3));
    divisor *= Polynomial<K>::variable(R, 0) * Polynomial<K>::variable(R, 2);
  }
  if (N[0].is_zero() && N[1].is_zero() && N[2].is_zero())
    throw std::invalid_argument("normal vanishes identically: the surface is degenerate");
  for (auto& c : N) {
    if (c.is_zero()) continue;
    auto q = c.divide_exact(divisor);
    if (!q) throw std::logic_error("normal numerator not divisible by W times the chart variables");
    c = *q;
  }
  const auto g = gcd_all(std::vector<Polynomial<K>>(N.begin(), N.end()));
  for (auto& c : N)
    if (!c.is_zero()) c = *c.divide_exact(g);
  MultiDegree ndeg;
  for (const auto& c : N)
    if (!c.is_zero()) ndeg = *c.multidegree();

  std::vector<std::vector<std::string>> blocks = R->blocks();
  blocks.push_back({detail::fresh_name(*R, "t0"), detail::fresh_name(*R, "t1")});
  const RingPtr Y = PolyRing::make(blocks, R->field());
  std::vector<std::size_t> embed_map(R->nvars());
  for (std::size_t i = 0; i < R->nvars(); ++i) embed_map[i] = i;
  const std::size_t t0 = R->nvars(), t1 = R->nvars() + 1;
  const Field<K> Fld = S.field();
  Monomial A, B;
  for (std::size_t b = 0; b < R->nblocks(); ++b) {
    const std::size_t chart = R->block_range(b).first;
    const int diff = S.degree[b] - ndeg[b];
    if (diff >= 0)
      B[chart] = static_cast<std::uint16_t>(diff);
    else
      A[chart] = static_cast<std::uint16_t>(-diff);
  }
  Monomial mt0, mt1;
  mt0[t0] = 1;
  mt1[t1] = 1;
  mt0 = mt0 * A;
  mt1 = mt1 * B;
  std::vector<Polynomial<K>> psi{W.embed(Y, embed_map).mul_monomial(mt0, Fld.one())};
  for (int i = 0; i < 3; ++i)
    psi.push_back(F3[i].embed(Y, embed_map).mul_monomial(mt0, Fld.one()) +
                  N[i].embed(Y, embed_map).mul_monomial(mt1, Fld.one()));
  NormalCongruence<K> C{S, Parameterization<K>::make(Y, psi), N, X, {}, ""};
  const auto& deg = C.psi.degree;
  if (X == MultigradedSource::P2)
    C.certificate = threshold_multigraded(X, {deg[0]}, deg[1]);
  else
    C.certificate = threshold_multigraded(X, {deg[0], deg[1]}, deg[2]);
  C.hypothesis =
      "asserted: base locus finite, or no section of the base curve in degree < (0,e) with I locally "
      "generated by at most 3 forms";
  C.certificate.warnings.push_back("regularity hypothesis on the base locus is assumed, not verified");
  return C;
}

template <class K>
struct FootPoint {
  std::vector<K> source;  ///< point of X x P^1
  std::vector<K> foot;    ///< affine point on the surface
};

template <class K>
struct ProjectionReport {
  std::vector<K> query;
  MultiDegree nu;
  std::size_t fiber_degree = 0;
  std::size_t corank_check = 0;  ///< corank at the second region point
  MultiDegree nu_check;
  bool certified = false;
  std::vector<FootPoint<K>> feet;
  std::vector<std::vector<std::complex<double>>> approximate;
  std::vector<std::string> diagnostics;
};

/// Second region point used for the finiteness test: nu + e_1.
inline MultiDegree check_degree(const MultiDegree& nu) {
  MultiDegree n2 = nu;
  n2[0] += 1;
  return n2;
}

/// (query - sigma(x)) parallel to n(x), with W(x) != 0 and n(x) != 0.
template <class K>
std::optional<std::vector<K>> foot_of(const NormalCongruence<K>& C, std::span<const K> x_source,
                                      std::span<const K> query) {
  const auto& S = C.surface;
  const std::vector<K> x(x_source.begin(), x_source.begin() + static_cast<std::ptrdiff_t>(S.ring->nvars()));
  const K w = S.maps[0].evaluate(x);
  if (w.is_zero()) return std::nullopt;
  std::vector<K> q, n, diff;
  for (int i = 0; i < 3; ++i) {
    q.push_back(S.maps[i + 1].evaluate(x) / w);
    n.push_back(C.normal[i].evaluate(x));
    diff.push_back(query[i] - q[i]);
  }
  if (all_zero(n)) return std::nullopt;
  for (int i = 0; i < 3; ++i) {
    const int a = (i + 1) % 3, b = (i + 2) % 3;
    if (!(diff[a] * n[b] - diff[b] * n[a]).is_zero()) return std::nullopt;
  }
  return q;
}

/// Orthogonal projections of an affine query point. Throws DegenerateQuery
/// when the corank grows between nu and nu + e_1.
template <class K>
ProjectionReport<K> project_point(const NormalCongruence<K>& C, const MatrixRep<K>& M, const MatrixRep<K>& M2,
                                  std::span<const K> query) {
  if (query.size() != 3) throw std::invalid_argument("query point needs 3 affine coordinates");
  const Field<K> F = C.surface.field();
  ProjectionReport<K> rep;
  rep.query.assign(query.begin(), query.end());
  rep.nu = M.nu;
  rep.nu_check = M2.nu;
  rep.certified = M.valid && M2.valid;
  std::vector<K> p{F.one(), query[0], query[1], query[2]};
  rep.fiber_degree = M.corank(p);
  rep.corank_check = M2.corank(p);
  if (rep.corank_check != rep.fiber_degree)
    throw DegenerateQuery("corank " + std::to_string(rep.fiber_degree) + " at " + to_string(M.nu) + " but " +
                          std::to_string(rep.corank_check) + " at " + to_string(M2.nu) +
                          ": the query lies on infinitely many normal lines");
  if (!rep.certified) rep.diagnostics.push_back("degree outside the certified region");
  auto pts = fiber_points_from_kernel(M, std::span<const K>(p));
  rep.diagnostics.insert(rep.diagnostics.end(), pts.diagnostics.begin(), pts.diagnostics.end());
  for (const auto& pt : pts.points) {
    const auto foot = foot_of(C, std::span<const K>(pt.coords), query);
    if (!foot) {
      rep.diagnostics.push_back("candidate discarded: foot-point predicate fails");
      continue;
    }
    rep.feet.push_back({pt.coords, *foot});
  }
  rep.approximate = std::move(pts.approximate);
  return rep;
}

}  // namespace elimat
