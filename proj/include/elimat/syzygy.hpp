#pragma once

// Graded syzygies, mu-bases, Koszul cycles and first homology, and the
// upgrading/downgrading maps between H1 and the Rees equations of higher
// T-degree.

#include <elimat/param.hpp>
#include <elimat/polymatrix.hpp>

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace elimat {

template <class K>
using Tuple = std::vector<Polynomial<K>>;

/// Coordinates of a tuple of forms of degree nu: entry i*|R_nu| + k is the
/// coefficient of the k-th basis monomial in component i.
template <class K>
std::vector<K> tuple_coordinates(const Tuple<K>& t, const std::vector<Monomial>& basis) {
  const MonomialIndex idx(basis);
  const Field<K> F(t.at(0).ring()->field());
  std::vector<K> v(t.size() * basis.size(), F.zero());
  for (std::size_t i = 0; i < t.size(); ++i)
    for (const auto& term : t[i].terms()) v[i * basis.size() + idx.at(term.mono)] = term.coeff;
  return v;
}

template <class K>
Tuple<K> tuple_from_coordinates(const RingPtr& ring, std::size_t parts, const std::vector<Monomial>& basis,
                                const std::vector<K>& v) {
  Tuple<K> t;
  for (std::size_t i = 0; i < parts; ++i)
    t.push_back(from_coordinates<K>(ring, basis, std::span<const K>(v.data() + i * basis.size(), basis.size())));
  return t;
}

/// Matrix of u -> sum_j u_j * g_j, u_j in R_nu, g_j fixed forms of degree e.
/// Rows: basis of R_{nu+e}; columns (j, k) -> j*|R_nu| + k.
template <class K>
DenseMatrix<K> multiplication_matrix(const RingPtr& ring, const std::vector<Polynomial<K>>& g, const MultiDegree& e,
                                     const MultiDegree& nu) {
  const Field<K> F(ring->field());
  const auto in = graded_basis(*ring, nu);
  const auto out = graded_basis(*ring, nu + e);
  const MonomialIndex oidx(out);
  DenseMatrix<K> m(out.size(), g.size() * in.size(), F.zero());
  for (std::size_t j = 0; j < g.size(); ++j)
    for (std::size_t k = 0; k < in.size(); ++k)
      for (const auto& t : g[j].terms()) m(oidx.at(in[k] * t.mono), j * in.size() + k) = t.coeff;
  return m;
}

template <class K>
struct SyzygyPiece {
  MultiDegree degree;
  std::vector<Tuple<K>> basis;
};

/// Degree-nu syzygies: kernel of (a_i) -> sum a_i f_i from R_nu^r to R_{nu+d}.
template <class K>
SyzygyPiece<K> syzygies_in_degree(const Parameterization<K>& P, const MultiDegree& nu) {
  SyzygyPiece<K> S{nu, {}};
  if (!nonnegative(nu)) return S;
  const auto basis = graded_basis(*P.ring, nu);
  const auto M = multiplication_matrix(P.ring, P.maps, P.degree, nu);
  for (const auto& v : nullspace_basis(M, P.field()))
    S.basis.push_back(tuple_from_coordinates(P.ring, P.r(), basis, v));
  return S;
}

template <class K>
struct SyzygyGenerator {
  MultiDegree degree;
  Tuple<K> syz;
};

/// Adds the minimal generators of degree nu: a reduced-echelon basis of the
/// degree-nu syzygies modulo monomial multiples of the earlier generators.
/// Generators must already be complete in every degree below nu.
template <class K>
void extend_generators(const Parameterization<K>& P, const MultiDegree& nu, std::vector<SyzygyGenerator<K>>& gens) {
  const Field<K> F = P.field();
  const auto basis = graded_basis(*P.ring, nu);
  const auto M = multiplication_matrix(P.ring, P.maps, P.degree, nu);
  const auto kernel = nullspace_basis(M, F);
  if (kernel.empty()) return;
  DenseMatrix<K> span(0, P.r() * basis.size());
  for (const auto& g : gens) {
    if (g.degree == nu || !leq(g.degree, nu)) continue;
    for (const auto& u : graded_basis(*P.ring, nu - g.degree)) {
      Tuple<K> t;
      for (const auto& a : g.syz) t.push_back(a.mul_monomial(u, F.one()));
      span.append_row(tuple_coordinates(t, basis));
    }
  }
  const Echelon<K> old = rref(span);
  if (old.rank() == kernel.size()) return;
  DenseMatrix<K> fresh(0, P.r() * basis.size());
  for (const auto& v : kernel) fresh.append_row(reduce_against(v, old));
  const Echelon<K> e = rref(fresh);
  for (std::size_t i = 0; i < e.rank(); ++i)
    gens.push_back({nu, tuple_from_coordinates(P.ring, P.r(), basis, e.reduced.row(i))});
}

template <class K>
std::vector<SyzygyGenerator<K>> minimal_generators_up_to(const Parameterization<K>& P, const MultiDegree& nu_max) {
  std::vector<SyzygyGenerator<K>> gens;
  for (const auto& nu : degrees_below(nu_max)) extend_generators(P, nu, gens);
  return gens;
}

template <class K>
struct MuBasis {
  std::vector<Tuple<K>> columns;
  std::vector<int> mu;
};

/// Maximal minors of the r x (r-1) matrix of columns, minor i deleting row i.
template <class K>
std::vector<Polynomial<K>> hilbert_burch_minors(const Parameterization<K>& P, const std::vector<Tuple<K>>& cols) {
  std::vector<Polynomial<K>> out;
  for (std::size_t del = 0; del < P.r(); ++del) {
    PolyMatrix<K> m(P.ring, P.r() - 1, cols.size());
    for (std::size_t i = 0, row = 0; i < P.r(); ++i) {
      if (i == del) continue;
      for (std::size_t j = 0; j < cols.size(); ++j) m(row, j) = cols[j][i];
      ++row;
    }
    out.push_back(determinant(m));
  }
  return out;
}

/// Whether the minors equal (-1)^i * lambda * f_i for one nonzero scalar lambda.
template <class K>
bool hilbert_burch_holds(const Parameterization<K>& P, const std::vector<Tuple<K>>& cols) {
  if (cols.size() + 1 != P.r()) return false;
  const auto minors = hilbert_burch_minors(P, cols);
  std::optional<K> lambda;
  for (std::size_t i = 0; i < P.r(); ++i) {
    if (P.maps[i].is_zero()) {
      if (!minors[i].is_zero()) return false;
      continue;
    }
    if (minors[i].is_zero()) return false;
    K l = minors[i].leading_coeff() / P.maps[i].leading_coeff();
    if (i % 2) l = -l;
    if (!lambda) lambda = l;
    if (!(*lambda == l)) return false;
    const K s = i % 2 ? -*lambda : *lambda;
    if (!(minors[i] == s * P.maps[i])) return false;
  }
  return lambda && !lambda->is_zero();
}

/// Degree sweep on a P^1 source until r-1 generators are found.
template <class K>
MuBasis<K> mu_basis(const Parameterization<K>& P) {
  if (!P.is_curve()) throw std::invalid_argument("mu-basis requires a P^1 source");
  const int d = P.degree[0];
  std::vector<SyzygyGenerator<K>> gens;
  for (int nu = 0; nu <= d && gens.size() < P.r() - 1; ++nu) extend_generators(P, {nu}, gens);
  MuBasis<K> B;
  int sum = 0;
  for (const auto& g : gens) {
    B.columns.push_back(g.syz);
    B.mu.push_back(g.degree[0]);
    sum += g.degree[0];
  }
  if (gens.size() != P.r() - 1 || sum != d)
    throw std::logic_error("mu-basis degree sweep failed (common factor in the maps?)");
  return B;
}

// ---------------------------------------------------------------- Koszul

/// Matrix of the Koszul differential d_p on coefficients of degree nu.
/// Domain basis (I, k) over p-subsets I (lexicographic) and R_nu; codomain
/// ((p-1)-subsets, R_{nu+d}). d(e_I) = sum_k (-1)^k f_{i_k} e_{I - i_k}.
template <class K>
DenseMatrix<K> koszul_matrix(const Parameterization<K>& P, std::size_t p, const MultiDegree& nu) {
  const Field<K> F = P.field();
  const auto dom = combinations(P.r(), p);
  const auto cod = combinations(P.r(), p - 1);
  const auto in = graded_basis(*P.ring, nu);
  const auto out = graded_basis(*P.ring, nu + P.degree);
  const MonomialIndex oidx(out);
  DenseMatrix<K> m(cod.size() * out.size(), dom.size() * in.size(), F.zero());
  for (std::size_t a = 0; a < dom.size(); ++a) {
    for (std::size_t pos = 0; pos < p; ++pos) {
      std::vector<std::size_t> J = dom[a];
      const std::size_t i = J[pos];
      J.erase(J.begin() + static_cast<std::ptrdiff_t>(pos));
      const std::size_t b = static_cast<std::size_t>(std::find(cod.begin(), cod.end(), J) - cod.begin());
      const K sign = pos % 2 ? -F.one() : F.one();
      for (std::size_t k = 0; k < in.size(); ++k)
        for (const auto& t : P.maps[i].terms())
          m(b * out.size() + oidx.at(in[k] * t.mono), a * in.size() + k) += sign * t.coeff;
    }
  }
  return m;
}

template <class K>
struct KoszulPiece {
  std::size_t p;
  MultiDegree coeff_degree;
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<std::vector<K>> basis;  ///< coordinates, layout of koszul_matrix
};

/// Cycles Z_p whose coefficients have degree nu (total degree nu + p*d).
template <class K>
KoszulPiece<K> koszul_cycles(const Parameterization<K>& P, std::size_t p, const MultiDegree& nu) {
  if (p < 1 || p > P.r()) throw std::invalid_argument("Koszul index out of range");
  KoszulPiece<K> Z{p, nu, combinations(P.r(), p), {}};
  if (!nonnegative(nu)) return Z;
  Z.basis = nullspace_basis(koszul_matrix(P, p, nu), P.field());
  return Z;
}

/// H1 = Z1/B1 in total degree delta: cycles have coefficients in R_{delta-d},
/// boundaries come from d2 on coefficients in R_{delta-2d}.
template <class K>
struct H1Piece {
  MultiDegree delta;
  std::vector<Monomial> coeff_basis;
  std::size_t dim_z = 0, dim_b = 0;
  Echelon<K> boundaries;
  Echelon<K> reps;  ///< reduced-echelon coset representatives, one per row

  std::size_t dim() const { return reps.rank(); }

  /// Coordinates of a cycle in the representative basis.
  std::vector<K> coordinates(const std::vector<K>& cycle) const {
    const auto red = reduce_against(cycle, boundaries);
    std::vector<K> c;
    for (auto piv : reps.pivots) c.push_back(red[piv]);
    // the reduced cycle must lie in the span of the representatives
    auto rest = reduce_against(red, reps);
    if (!all_zero(rest)) throw std::logic_error("vector is not a cycle");
    return c;
  }
};

template <class K>
H1Piece<K> koszul_H1(const Parameterization<K>& P, const MultiDegree& delta) {
  const Field<K> F = P.field();
  H1Piece<K> H;
  H.delta = delta;
  const MultiDegree zdeg = delta - P.degree, bdeg = delta - 2 * P.degree;
  H.coeff_basis = graded_basis(*P.ring, zdeg);
  const std::size_t n = P.r() * H.coeff_basis.size();
  H.boundaries = {DenseMatrix<K>(0, n), {}};
  H.reps = {DenseMatrix<K>(0, n), {}};
  if (!nonnegative(zdeg)) return H;
  const auto Z = nullspace_basis(koszul_matrix(P, 1, zdeg), F);
  H.dim_z = Z.size();
  if (nonnegative(bdeg) && P.r() >= 2) {
    const auto d2 = koszul_matrix(P, 2, bdeg).transpose();  // rows = images
    H.boundaries = rref(d2);
  }
  H.dim_b = H.boundaries.rank();
  DenseMatrix<K> red(0, n);
  for (const auto& z : Z) red.append_row(reduce_against(z, H.boundaries));
  H.reps = rref(red);
  if (H.reps.rank() == 0) H.reps.reduced = DenseMatrix<K>(0, n);
  return H;
}

// ------------------------------------------------------- Rees equations

/// Element of R_nu tensor k[T]_l, stored as one T-form per monomial of R_nu.
template <class K>
struct BiForm {
  MultiDegree nu;
  int tdeg = 1;
  std::vector<Polynomial<K>> coeffs;
};

/// sum_m m * coeff_m(f), a form on the source.
template <class K>
Polynomial<K> substitute_maps(const Parameterization<K>& P, const BiForm<K>& E) {
  const auto basis = graded_basis(*P.ring, E.nu);
  Polynomial<K> acc(P.ring);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (E.coeffs[k].is_zero()) continue;
    acc += E.coeffs[k].compose(P.maps).mul_monomial(basis[k], P.field().one());
  }
  return acc;
}

class UpgradeInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lift a cycle h (components of degree nu + (l-1)d) to sum c_{i,a} T_i T^a
/// with h_i = sum_a c_{i,a} f^a, taking the particular solution whose free
/// unknowns vanish. With boundaries given, h may first be shifted by an element
/// of B1, so any representative of an upgradeable class works.
template <class K>
BiForm<K> upgrade_syzygy(const Parameterization<K>& P, const Tuple<K>& h, int l,
                         const Echelon<K>* boundaries = nullptr) {
  if (l < 2) throw std::invalid_argument("upgrade needs l >= 2");
  const Field<K> F = P.field();
  std::optional<MultiDegree> hdeg;
  for (const auto& c : h)
    if (!c.is_zero()) hdeg = c.multidegree();
  if (!hdeg) throw std::invalid_argument("zero cycle");
  const MultiDegree nu = *hdeg - (l - 1) * P.degree;
  if (!nonnegative(nu)) throw UpgradeInfeasible("cycle degree below (l-1)*d");
  const auto alphas = target_monomials(*P.target, l - 1);
  std::vector<Polynomial<K>> powers;
  for (const auto& a : alphas) powers.push_back(power_product(P, a));
  const auto A = multiplication_matrix(P.ring, powers, (l - 1) * P.degree, nu);
  const auto rows = graded_basis(*P.ring, *hdeg);
  const auto basis = graded_basis(*P.ring, nu);
  const MonomialIndex ridx(rows);
  const std::size_t nr = rows.size(), nc = A.cols(), r = P.r();
  BiForm<K> E{nu, l, std::vector<Polynomial<K>>(basis.size(), Polynomial<K>(P.target))};

  auto emit = [&](std::size_t i, std::span<const K> c) {
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      Monomial ta = alphas[a];
      ta[i] += 1;
      for (std::size_t k = 0; k < basis.size(); ++k) {
        const K& v = c[a * basis.size() + k];
        if (!v.is_zero()) E.coeffs[k] += Polynomial<K>::monomial(P.target, ta, v);
      }
    }
  };

  if (!boundaries || boundaries->rank() == 0) {
    for (std::size_t i = 0; i < r; ++i) {
      if (h[i].is_zero()) continue;
      const auto c = solve(A, to_coordinates(h[i], ridx, nr), F);
      if (!c) throw UpgradeInfeasible("component " + std::to_string(i + 1) + " is not in the span of f^alpha");
      emit(i, *c);
    }
    return E;
  }

  // joint system: A c_i - sum_k beta_k b_{k,i} = h_i for all i
  const std::size_t m = boundaries->rank();
  DenseMatrix<K> S(r * nr, r * nc + m, F.zero());
  std::vector<K> rhs(r * nr, F.zero());
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t row = 0; row < nr; ++row)
      for (std::size_t col = 0; col < nc; ++col) S(i * nr + row, i * nc + col) = A(row, col);
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t row = 0; row < nr; ++row) S(i * nr + row, r * nc + k) = -boundaries->reduced(k, i * nr + row);
    if (!h[i].is_zero()) {
      const auto hc = to_coordinates(h[i], ridx, nr);
      std::copy(hc.begin(), hc.end(), rhs.begin() + static_cast<std::ptrdiff_t>(i * nr));
    }
  }
  const auto c = solve(S, rhs, F);
  if (!c) throw UpgradeInfeasible("no representative of the H1 class is in the span of f^alpha");
  for (std::size_t i = 0; i < r; ++i) emit(i, std::span<const K>(c->data() + i * nc, nc));
  return E;
}

/// Replace T^beta by T_i f^(beta - e_i), i the first index with beta_i > 0.
template <class K>
Tuple<K> downgrade(const Parameterization<K>& P, const BiForm<K>& E) {
  const auto basis = graded_basis(*P.ring, E.nu);
  Tuple<K> h(P.r(), Polynomial<K>(P.ring));
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (const auto& t : E.coeffs[k].terms()) {
      std::size_t i = 0;
      while (t.mono[i] == 0) ++i;
      Monomial rest = t.mono;
      rest[i] -= 1;
      h[i] += power_product(P, rest).mul_monomial(basis[k], t.coeff);
    }
  return h;
}

template <class K>
struct ReesLayer {
  MultiDegree nu;
  int l;
  std::size_t h1_dim;
  std::vector<BiForm<K>> basis;
};

template <class K>
ReesLayer<K> rees_layer(const Parameterization<K>& P, const MultiDegree& nu, int l) {
  const H1Piece<K> H = koszul_H1(P, nu + l * P.degree);
  ReesLayer<K> L{nu, l, H.dim(), {}};
  for (std::size_t i = 0; i < H.dim(); ++i) {
    const auto h = tuple_from_coordinates(P.ring, P.r(), H.coeff_basis, H.reps.reduced.row(i));
    L.basis.push_back(upgrade_syzygy(P, h, l, &H.boundaries));
  }
  return L;
}

}  // namespace elimat
