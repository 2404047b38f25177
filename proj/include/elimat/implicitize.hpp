#pragma once

// Implicit equations: determinant of M_{d-1} for plane curves, gcd of
// maximal minors for hypersurfaces, and the curve regularity bound.

#include <elimat/fiber.hpp>

#include <numeric>
#include <string>
#include <vector>

namespace elimat {

template <class K>
struct ImplicitResult {
  Polynomial<K> F;  ///< monic
  int e = 1;        ///< power (degree of the map for plane curves)
  std::string method;
  std::vector<std::pair<int, Polynomial<K>>> extraneous;  ///< (multiplicity, factor) not vanishing on the image
  std::vector<std::string> caveats;
};

/// F(f_1, ..., f_r) == 0.
template <class K>
bool implicit_identity_check(const Parameterization<K>& P, const Polynomial<K>& F) {
  return F.compose(P.maps).is_zero();
}

/// det M_{d-1} = c F^e for P^1 -> P^2.
template <class K>
ImplicitResult<K> plane_curve_implicit(const Parameterization<K>& P) {
  if (!P.is_curve() || P.r() != 3) throw std::invalid_argument("plane curve implicitization needs P^1 -> P^2");
  const int d = P.degree[0];
  const auto M = build_rep(P, {d - 1}, {}, std::nullopt);
  if (M.nrows() != M.ncols())
    throw std::logic_error("M_{d-1} is " + std::to_string(M.nrows()) + "x" + std::to_string(M.ncols()));
  const auto D = determinant(M.matrix());
  if (D.is_zero()) throw std::runtime_error("det M_{d-1} vanishes: the maps share a factor");
  const auto parts = squarefree_decomposition(D);
  int e = 0;
  for (const auto& [i, f] : parts) e = std::gcd(e, i);
  auto F = Polynomial<K>::one(P.target);
  for (const auto& [i, f] : parts) F *= f.pow(static_cast<unsigned>(i / e));
  F = F.monic();
  const auto c = D.divide_exact(F.pow(static_cast<unsigned>(e)));
  if (!c || !c->is_constant()) throw std::logic_error("determinant is not a power of its radical part");
  if (e * F.total_degree() != d) throw std::logic_error("e * deg F differs from d");
  return {F, e, "det M_{d-1}", {}, {}};
}

/// gcd of the maximal minors of a certified M, split into the factor
/// vanishing on the image and extraneous ones.
template <class K>
ImplicitResult<K> hypersurface_implicit_gcd(const MatrixRep<K>& M, std::uint64_t seed = 1) {
  std::vector<std::size_t> keep;
  const auto full = M.matrix();
  for (std::size_t j = 0; j < full.cols(); ++j)
    if (!full.column_is_zero(j)) keep.push_back(j);
  const auto m = full.select_columns(keep);
  if (m.rows() > m.cols())
    throw std::invalid_argument("fewer columns than rows after pruning zero columns");
  ImplicitResult<K> out;
  Polynomial<K> G(M.param.target);
  const std::size_t total = binomial(m.cols(), m.rows());
  if (total <= 200) {
    for (const auto& minor : maximal_minors(m)) G = gcd(G, minor);
    out.method = "gcd of all " + std::to_string(total) + " maximal minors";
  } else {
    Rng rng(seed);
    int stable = 0, used = 0;
    std::vector<std::size_t> cols(m.cols());
    std::iota(cols.begin(), cols.end(), 0);
    while (used < 200 && stable < 2) {
      for (std::size_t i = 0; i < m.rows(); ++i)
        std::swap(cols[i], cols[i + static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(m.cols() - i - 1)))]);
      std::vector<std::size_t> pick(cols.begin(), cols.begin() + static_cast<std::ptrdiff_t>(m.rows()));
      std::sort(pick.begin(), pick.end());
      const auto minor = determinant(m.select_columns(pick));
      ++used;
      if (minor.is_zero()) continue;
      const auto next = gcd(G, minor);
      stable = (!G.is_zero() && next == G) ? stable + 1 : 0;
      G = next;
    }
    out.method = "gcd of " + std::to_string(used) + " sampled maximal minors";
  }
  if (G.is_zero()) throw std::runtime_error("all maximal minors vanish");
  if (G.is_constant()) throw std::runtime_error("maximal minors are coprime: image is not a hypersurface");
  out.F = Polynomial<K>();
  bool found = false;
  for (const auto& [i, f] : squarefree_decomposition(G)) {
    if (!found && implicit_identity_check(M.param, f)) {
      out.F = f.monic();
      out.e = i;
      found = true;
    } else {
      out.extraneous.push_back({i, f.monic()});
    }
  }
  if (!found) throw std::runtime_error("no factor of the minor gcd vanishes on the image");
  if (!out.extraneous.empty())
    out.caveats.push_back("extraneous factors present (contracted fibers or non-lci base points)");
  return out;
}

/// deg psi for a curve: from the plane-curve determinant when r = 3, else
/// the corank of a certified M_nu at the images of random points.
template <class K>
int degree_of_map_curve(const Parameterization<K>& P, std::uint64_t seed = 1) {
  if (!P.is_curve()) throw std::invalid_argument("degree_of_map_curve needs a P^1 source");
  if (P.r() == 3) return plane_curve_implicit(P).e;
  const auto cert = threshold_curve(mu_basis(P).mu);
  const auto M = build_rep(P, cert.default_degree(), {}, cert);
  const Field<K> F = P.field();
  Rng rng(seed);
  std::optional<std::size_t> seen;
  for (int s = 0; s < 3;) {
    const std::vector<K> x{F.random(rng, 30), F.random(rng, 30)};
    const auto p = P.evaluate(x);
    if (all_zero(p)) continue;
    const auto c = M.corank(p);
    if (seen && *seen != c)
      throw std::runtime_error("inconsistent generic fiber degrees " + std::to_string(*seen) + " and " +
                               std::to_string(c));
    seen = c;
    ++s;
  }
  return static_cast<int>(*seen);
}

struct RegularityBound {
  int bound = 0;
  bool applicable = true;     ///< map birational onto its image
  bool all_mu_positive = false;
  bool second_inequality = false;  ///< bound - 1 <= d - (r - 2), meaningful when all_mu_positive
};

inline RegularityBound regularity_bound_curve(const std::vector<int>& mu, int d, bool birational) {
  RegularityBound b;
  b.bound = threshold_curve(mu).default_degree()[0];
  b.applicable = birational;
  b.all_mu_positive = std::all_of(mu.begin(), mu.end(), [](int m) { return m >= 1; });
  const int r = static_cast<int>(mu.size()) + 1;
  b.second_inequality = b.bound - 1 <= d - (r - 2);
  return b;
}

}  // namespace elimat
