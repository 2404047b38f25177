#pragma once

// Parameterizations psi = (f_1 : ... : f_r) by forms of a common multidegree.

#include <elimat/gcd.hpp>
#include <elimat/parse.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace elimat {

template <class K>
struct Parameterization {
  RingPtr ring;      ///< source
  RingPtr target;    ///< T1..Tr
  std::vector<Polynomial<K>> maps;
  MultiDegree degree;
  Polynomial<K> removed_factor;  ///< common factor divided out at construction

  std::size_t r() const { return maps.size(); }
  const Field<K> field() const { return Field<K>(ring->field()); }

  /// Validates homogeneity and removes the gcd of the maps.
  static Parameterization make(const RingPtr& ring, std::vector<Polynomial<K>> maps) {
    if (maps.size() < 2) throw std::invalid_argument("a parameterization needs at least 2 maps");
    std::optional<MultiDegree> deg;
    bool nonzero = false;
    for (std::size_t i = 0; i < maps.size(); ++i) {
      if (!same_ring(maps[i].ring(), ring)) throw std::invalid_argument("map in a different ring");
      if (maps[i].is_zero()) continue;
      nonzero = true;
      auto md = maps[i].multidegree();
      if (!md) throw std::invalid_argument("map " + std::to_string(i + 1) + " is not homogeneous");
      if (deg && *deg != *md)
        throw std::invalid_argument("maps have different multidegrees " + to_string(*deg) + " and " +
                                    to_string(*md));
      deg = md;
    }
    if (!nonzero) throw std::invalid_argument("all maps are zero");
    Parameterization P;
    P.ring = ring;
    P.target = PolyRing::target(maps.size(), ring->field());
    P.removed_factor = gcd_all(maps);
    const MultiDegree gdeg = *P.removed_factor.multidegree();
    for (auto& f : maps) {
      if (!f.is_zero()) f = *f.divide_exact(P.removed_factor);
      else f = Polynomial<K>(ring);
    }
    P.maps = std::move(maps);
    P.degree = *deg - gdeg;
    if (!nonnegative(P.degree) || std::all_of(P.degree.begin(), P.degree.end(), [](int v) { return v == 0; }))
      throw std::invalid_argument("maps are constant after removing their common factor");
    return P;
  }

  static Parameterization parse(const RingPtr& ring, const std::vector<std::string>& texts) {
    std::vector<Polynomial<K>> maps;
    for (const auto& t : texts) maps.push_back(parse_polynomial<K>(t, ring));
    return make(ring, std::move(maps));
  }

  std::vector<K> evaluate(std::span<const K> x) const {
    std::vector<K> v;
    for (const auto& f : maps) v.push_back(f.evaluate(x));
    return v;
  }

  /// Single-block source with two variables.
  bool is_curve() const { return ring->nblocks() == 1 && ring->nvars() == 2; }
  bool source_is(std::vector<std::size_t> block_sizes) const {
    if (block_sizes.size() != ring->nblocks()) return false;
    for (std::size_t b = 0; b < block_sizes.size(); ++b)
      if (ring->blocks()[b].size() != block_sizes[b]) return false;
    return true;
  }
  int total_d() const {
    int s = 0;
    for (int v : degree) s += v;
    return s;
  }
};

/// Monomials T^alpha with |alpha| = l in the target ring (descending order).
inline std::vector<Monomial> target_monomials(const PolyRing& target, int l) {
  return graded_basis(target, {l});
}

/// Product f^alpha.
template <class K>
Polynomial<K> power_product(const Parameterization<K>& P, const Monomial& alpha) {
  Polynomial<K> acc = Polynomial<K>::one(P.ring);
  for (std::size_t i = 0; i < P.r(); ++i)
    if (alpha[i]) acc *= P.maps[i].pow(alpha[i]);
  return acc;
}

/// Whether every coordinate is zero.
template <class K>
bool all_zero(const std::vector<K>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace elimat
