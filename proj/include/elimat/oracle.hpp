#pragma once

// Brute-force references: exact P^1 fiber degrees, exhaustive fibers over
// small prime fields, and seeded random instances.

#include <elimat/implicitize.hpp>

#include <string>
#include <vector>

namespace elimat {

/// deg gcd_{i<j}(p_i f_j - p_j f_i): scheme degree of a P^1 fiber.
template <class K>
std::size_t fiber_degree_exact_P1(const Parameterization<K>& P, std::span<const K> p) {
  if (!P.is_curve()) throw std::invalid_argument("exact P^1 fiber degree needs a curve");
  check_target_point(P, p);
  const auto forms = proportionality_forms(P.maps, p);
  if (forms.empty()) throw std::invalid_argument("maps are proportional to p identically");
  return static_cast<std::size_t>(gcd_all(forms).total_degree());
}

inline constexpr std::uint32_t kMaxEnumerationPrime = 257;
inline constexpr std::size_t kMaxEnumerationPoints = 70000;

/// All points of the source over F_q, first nonzero coordinate of each block 1.
inline std::vector<std::vector<ModP>> source_points_Fq(const PolyRing& R) {
  const std::uint32_t q = static_cast<std::uint32_t>(R.field().prime);
  if (R.field().is_rational() || q > kMaxEnumerationPrime)
    throw std::invalid_argument("enumeration needs F_q with q <= 257");
  const Field<ModP> F(R.field());
  std::size_t count = 1;
  std::vector<std::vector<std::vector<ModP>>> per_block;
  for (std::size_t b = 0; b < R.nblocks(); ++b) {
    const std::size_t n = R.blocks()[b].size();
    std::vector<std::vector<ModP>> pts;
    for (std::size_t lead = 0; lead < n; ++lead) {
      const std::size_t free = n - lead - 1;
      std::size_t total = 1;
      for (std::size_t i = 0; i < free; ++i) total *= q;
      for (std::size_t code = 0; code < total; ++code) {
        std::vector<ModP> x(n, F.zero());
        x[lead] = F.one();
        std::size_t c = code;
        for (std::size_t i = lead + 1; i < n; ++i, c /= q) x[i] = F.from_int(static_cast<std::int64_t>(c % q));
        pts.push_back(std::move(x));
      }
    }
    count *= pts.size();
    if (count > kMaxEnumerationPoints) throw std::invalid_argument("source has too many F_q points to enumerate");
    per_block.push_back(std::move(pts));
  }
  std::vector<std::vector<ModP>> out{{}};
  for (const auto& pts : per_block) {
    std::vector<std::vector<ModP>> next;
    for (const auto& head : out)
      for (const auto& tail : pts) {
        auto x = head;
        x.insert(x.end(), tail.begin(), tail.end());
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  return out;
}

inline std::vector<std::vector<ModP>> enumerate_fiber_Fq(const Parameterization<ModP>& P, std::span<const ModP> p) {
  check_target_point(P, p);
  std::vector<std::vector<ModP>> out;
  for (auto& x : source_points_Fq(*P.ring))
    if (maps_into(P, std::span<const ModP>(x), p)) out.push_back(std::move(x));
  return out;
}

/// Full-rank Jacobian of the affine proportionality system at a fiber point
/// x (blocks normalized): the point is isolated and reduced.
template <class K>
class ReducednessCheck {
 public:
  explicit ReducednessCheck(const Parameterization<K>& P) : P_(P) {
    for (std::size_t v = 0; v < P.ring->nvars(); ++v) {
      std::vector<Polynomial<K>> row;
      for (const auto& f : P.maps) row.push_back(f.derivative(v));
      df_.push_back(std::move(row));
    }
  }

  bool operator()(std::span<const K> x, std::span<const K> p) const {
    const PolyRing& R = *P_.ring;
    const Field<K> F = P_.field();
    std::vector<std::size_t> free;
    for (std::size_t b = 0; b < R.nblocks(); ++b) {
      const auto [lo, hi] = R.block_range(b);
      std::size_t c = lo;
      while (c < hi && x[c].is_zero()) ++c;
      for (std::size_t v = lo; v < hi; ++v)
        if (v != c) free.push_back(v);
    }
    std::size_t j = 0;
    while (p[j].is_zero()) ++j;
    DenseMatrix<K> J(P_.r() - 1, free.size(), F.zero());
    for (std::size_t c = 0; c < free.size(); ++c) {
      std::vector<K> d;
      for (const auto& g : df_[free[c]]) d.push_back(g.evaluate(x));
      std::size_t row = 0;
      for (std::size_t i = 0; i < P_.r(); ++i) {
        if (i == j) continue;
        J(row++, c) = p[j] * d[i] - p[i] * d[j];
      }
    }
    return rank(J) == free.size();
  }

 private:
  Parameterization<K> P_;
  std::vector<std::vector<Polynomial<K>>> df_;
};

/// dim (R / J_p)_N with J_p = (p_i f_j - p_j f_i); single-block source.
template <class K>
long fiber_hilbert_value(const Parameterization<K>& P, std::span<const K> p, int N) {
  const auto forms = proportionality_forms(P.maps, p);
  const long total = static_cast<long>(graded_dimension(*P.ring, {N}));
  if (forms.empty() || N < P.degree[0]) return total;
  return total - static_cast<long>(rank(multiplication_matrix(P.ring, forms, P.degree, {N - P.degree[0]})));
}

// ------------------------------------------------------------ instances

struct InstanceSpec {
  enum class Kind { Curve, CompositeCurve, Morphism, PlantedLine };
  Kind kind = Kind::Curve;
  std::size_t r = 3;
  int d = 2;
  int k = 1;  ///< inner degree for composite curves
  FieldSpec field = FieldSpec::rationals();
  std::uint64_t seed = 1;
  int coeff_bound = 9;
};

template <class K>
struct Instance {
  Parameterization<K> P;
  int retries = 0;
};

namespace detail {

template <class K>
Polynomial<K> random_form(const RingPtr& R, const MultiDegree& deg, Rng& rng, int bound) {
  const Field<K> F(R->field());
  Polynomial<K> p(R);
  for (const auto& m : graded_basis(*R, deg)) p += Polynomial<K>::monomial(R, m, F.random(rng, bound));
  return p;
}

template <class K>
bool independent(const Parameterization<K>& P, std::size_t span_dim) {
  const auto basis = graded_basis(*P.ring, P.degree);
  const MonomialIndex idx(basis);
  DenseMatrix<K> m(0, basis.size());
  for (const auto& f : P.maps) m.append_row(to_coordinates(f, idx, basis.size()));
  return rank(m) == std::min({P.r(), basis.size(), span_dim});
}

}  // namespace detail

/// Reproducible instance; degenerate draws are retried with the next subseed.
template <class K>
Instance<K> random_instance(const InstanceSpec& spec) {
  using Kind = InstanceSpec::Kind;
  const bool plane = spec.kind == Kind::Morphism || spec.kind == Kind::PlantedLine;
  const RingPtr R = plane ? PolyRing::make({{"x", "y", "z"}}, spec.field) : PolyRing::make({{"x", "y"}}, spec.field);
  const std::size_t r = plane ? 4 : spec.r;
  for (int attempt = 0; attempt < 100; ++attempt) {
    Rng rng(spec.seed * 1000003ULL + static_cast<std::uint64_t>(attempt));
    std::vector<Polynomial<K>> maps;
    const int b = spec.coeff_bound;
    switch (spec.kind) {
      case Kind::Curve:
      case Kind::Morphism:
        for (std::size_t i = 0; i < r; ++i) maps.push_back(detail::random_form<K>(R, {spec.d}, rng, b));
        break;
      case Kind::CompositeCurve: {
        if (spec.k < 1 || spec.d % spec.k) throw std::invalid_argument("composite degree must divide d");
        // inner map (g1, y^k) is totally ramified over (1:0)
        auto g1 = detail::random_form<K>(R, {spec.k}, rng, b) +
                  Polynomial<K>::monomial(R, [&] { Monomial m; m[0] = static_cast<std::uint16_t>(spec.k); return m; }(),
                                          Field<K>(spec.field).one());
        auto g2 = Polynomial<K>::variable(R, 1).pow(static_cast<unsigned>(spec.k));
        for (std::size_t i = 0; i < r; ++i)
          maps.push_back(detail::random_form<K>(R, {spec.d / spec.k}, rng, b).compose({g1, g2}));
        break;
      }
      case Kind::PlantedLine: {
        const auto h = detail::random_form<K>(R, {1}, rng, b);
        for (std::size_t i = 0; i < 3; ++i) maps.push_back(h * detail::random_form<K>(R, {spec.d - 1}, rng, b));
        maps.push_back(detail::random_form<K>(R, {spec.d}, rng, b));
        break;
      }
    }
    try {
      auto P = Parameterization<K>::make(R, maps);
      // a composite only reaches forms in g1, g2 of degree d/k
      const std::size_t span = spec.kind == Kind::CompositeCurve ? static_cast<std::size_t>(spec.d / spec.k + 1)
                                                                 : static_cast<std::size_t>(-1);
      if (P.degree != MultiDegree{spec.d} || !detail::independent(P, span)) continue;
      if (spec.kind == Kind::Morphism && dim_base_locus(P).kind != BaseLocus::Kind::Empty) continue;
      return {P, attempt};
    } catch (const std::invalid_argument&) {
    }
  }
  throw std::runtime_error("no nondegenerate instance after 100 draws");
}

}  // namespace elimat
