#pragma once

// Fibers of psi: degree from the corank of M_nu(p), points from the left
// kernel (eigenvalues of multiplication operators), P^1 fibers from a gcd of
// binary forms, and Jacobian tools for one-dimensional fibers.

#include <elimat/matrixrep.hpp>
#include <elimat/roots.hpp>

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace elimat {

template <class K>
void check_target_point(const Parameterization<K>& P, std::span<const K> p) {
  if (p.size() != P.r())
    throw std::invalid_argument("point has " + std::to_string(p.size()) + " coordinates, expected " +
                                std::to_string(P.r()));
  for (const auto& c : p)
    if (!c.is_zero()) return;
  throw std::invalid_argument("the zero vector is not a projective point");
}

template <class K>
struct FiberReport {
  std::vector<K> point;
  MultiDegree nu;
  std::size_t corank = 0;
  bool certified = false;
  std::string interpretation;
};

template <class K>
FiberReport<K> fiber_degree(const MatrixRep<K>& M, std::span<const K> p) {
  check_target_point(M.param, p);
  FiberReport<K> r{{p.begin(), p.end()}, M.nu, M.corank(p), M.valid, ""};
  if (!r.certified)
    r.interpretation = "uncertified degree: corank need not equal the fiber degree";
  else if (r.corank == 0)
    r.interpretation = "not in the image";
  else
    r.interpretation = "finite fiber of degree " + std::to_string(r.corank);
  return r;
}

/// Fitting generators of the cokernel: minors of size rows - k. p lies in
/// V(Fitt_k) exactly when corank(M(p)) > k.
template <class K>
std::vector<Polynomial<K>> fitting_generators(const MatrixRep<K>& M, std::size_t k) {
  if (k >= M.nrows()) return {};
  std::vector<Polynomial<K>> out;
  for (auto& m : minors_of_size(M.matrix(), M.nrows() - k))
    if (!m.is_zero()) out.push_back(std::move(m));
  return out;
}

// ------------------------------------------------------------ fiber points

template <class K>
struct FiberPoint {
  std::vector<K> coords;  ///< all source variables
  int multiplicity = 1;
};

template <class K>
struct FiberPoints {
  std::size_t degree = 0;  ///< corank or gcd degree
  std::vector<FiberPoint<K>> points;
  std::vector<std::vector<std::complex<double>>> approximate;
  std::vector<std::string> diagnostics;

  std::size_t resolved() const {
    std::size_t s = approximate.size();
    for (const auto& q : points) s += static_cast<std::size_t>(q.multiplicity);
    return s;
  }
};

/// (p_i f_j - p_j f_i) over all pairs i < j.
template <class K>
std::vector<Polynomial<K>> proportionality_forms(const std::vector<Polynomial<K>>& f, std::span<const K> p) {
  std::vector<Polynomial<K>> out;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      auto g = p[i] * f[j] - p[j] * f[i];
      if (!g.is_zero()) out.push_back(std::move(g));
    }
  return out;
}

/// f(x) nonzero and proportional to p.
template <class K>
bool maps_into(const Parameterization<K>& P, std::span<const K> x, std::span<const K> p) {
  const auto v = P.evaluate(x);
  if (all_zero(v)) return false;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (!(p[i] * v[j] - p[j] * v[i]).is_zero()) return false;
  return true;
}

/// Scale each block so its first nonzero coordinate is 1.
template <class K>
void normalize_blocks(const PolyRing& R, std::vector<K>& x) {
  for (std::size_t b = 0; b < R.nblocks(); ++b) {
    const auto [lo, hi] = R.block_range(b);
    std::size_t k = lo;
    while (k < hi && x[k].is_zero()) ++k;
    if (k == hi) continue;
    const K inv = x[k].inverse();
    for (std::size_t i = lo; i < hi; ++i) x[i] *= inv;
  }
}

/// Points of a P^1 source over p: roots of gcd(p_i f_j - p_j f_i).
template <class K>
FiberPoints<K> fiber_points_P1(const Parameterization<K>& P, std::span<const K> p) {
  if (!P.is_curve()) throw std::invalid_argument("P^1 fiber needs a curve parameterization");
  check_target_point(P, p);
  const Field<K> F = P.field();
  FiberPoints<K> out;
  const auto forms = proportionality_forms(P.maps, p);
  if (forms.empty()) throw std::invalid_argument("maps are proportional to p identically");
  const auto h = gcd_all(forms);
  out.degree = static_cast<std::size_t>(h.total_degree());
  if (out.degree == 0) return out;
  const auto br = binary_form_roots(binary_form_coeffs(h, 0, 1), F);
  for (const auto& r : br.roots) {
    std::vector<K> x{r.x, r.y};
    normalize_blocks(*P.ring, x);
    out.points.push_back({x, r.multiplicity});
  }
  if (br.leftover.size() > 1)
    out.diagnostics.push_back(std::to_string(br.leftover.size() - 1) +
                              " fiber points are not defined over the coefficient field");
  return out;
}

namespace detail {

/// Row index of m in the row basis, or nullopt.
inline std::optional<std::size_t> row_of(const MonomialIndex& idx, const Monomial& m) { return idx.find(m); }

/// Source coordinates read from an evaluation vector v ~ (m(x))_m. Blocks of
/// degree 0 are left unset.
template <class V>
std::vector<std::optional<V>> coords_from_evaluation(const PolyRing& R, const MultiDegree& nu,
                                                     const std::vector<Monomial>& rows, const std::vector<V>& v,
                                                     auto is_zero) {
  const MonomialIndex idx(rows);
  std::vector<std::optional<V>> x(R.nvars());
  for (std::size_t b = 0; b < R.nblocks(); ++b) {
    if (nu[b] == 0) continue;
    const auto [lo, hi] = R.block_range(b);
    // pick the row of largest magnitude / first nonzero and divide out one variable of block b
    std::optional<Monomial> s;
    for (std::size_t i = 0; i < rows.size() && !s; ++i) {
      if (is_zero(v[i])) continue;
      for (std::size_t a = lo; a < hi; ++a)
        if (rows[i][a] > 0) {
          Monomial q = rows[i];
          q[a] -= 1;
          s = q;
          break;
        }
    }
    if (!s) continue;
    for (std::size_t j = lo; j < hi; ++j) {
      Monomial m = *s;
      m[j] += 1;
      x[j] = v[idx.at(m)];
    }
  }
  return x;
}

}  // namespace detail

/// Completes blocks that the evaluation vector does not see (degree 0 in
/// nu): substitutes the known coordinates and solves the proportionality
/// conditions on a remaining P^1 block.
template <class K>
std::vector<std::vector<K>> complete_point(const Parameterization<K>& P, const std::vector<std::optional<K>>& partial,
                                           std::span<const K> p, std::vector<std::string>& diag) {
  const PolyRing& R = *P.ring;
  const Field<K> F = P.field();
  std::vector<std::size_t> missing;
  for (std::size_t b = 0; b < R.nblocks(); ++b) {
    const auto [lo, hi] = R.block_range(b);
    bool known = true;
    for (std::size_t i = lo; i < hi; ++i) known = known && partial[i].has_value();
    if (!known) missing.push_back(b);
  }
  std::vector<K> base(R.nvars(), F.zero());
  for (std::size_t i = 0; i < R.nvars(); ++i)
    if (partial[i]) base[i] = *partial[i];
  if (missing.empty()) return {base};
  if (missing.size() > 1 || R.blocks()[missing[0]].size() != 2) {
    diag.push_back("cannot recover coordinates of blocks that have degree 0 in nu");
    return {};
  }
  std::vector<Polynomial<K>> g;
  for (const auto& f : P.maps) g.push_back(f.substitute(partial));
  const auto forms = proportionality_forms(g, p);
  if (forms.empty()) {
    diag.push_back("fiber is not finite over a recovered point");
    return {};
  }
  const auto h = gcd_all(forms);
  if (h.is_constant()) return {};
  const auto [lo, hi] = R.block_range(missing[0]);
  const auto br = binary_form_roots(binary_form_coeffs(h, lo, lo + 1), F);
  std::vector<std::vector<K>> out;
  for (const auto& r : br.roots) {
    auto x = base;
    x[lo] = r.x;
    x[lo + 1] = r.y;
    out.push_back(std::move(x));
  }
  if (br.leftover.size() > 1) diag.push_back("some fiber coordinates lie outside the coefficient field");
  return out;
}

namespace detail {

/// Solve A X = B for invertible A (k x k).
template <class K>
DenseMatrix<K> solve_square(const DenseMatrix<K>& A, const DenseMatrix<K>& B, const Field<K>& F) {
  const std::size_t k = A.rows();
  DenseMatrix<K> aug(k, k + B.cols(), F.zero());
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug(i, j) = A(i, j);
    for (std::size_t j = 0; j < B.cols(); ++j) aug(i, k + j) = B(i, j);
  }
  const auto e = rref(aug);
  DenseMatrix<K> X(k, B.cols(), F.zero());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < B.cols(); ++j) X(i, j) = e.reduced(i, k + j);
  return X;
}

template <class K>
DenseMatrix<K> char_matrix(const DenseMatrix<K>& A, const K& lambda) {
  DenseMatrix<K> m = A;
  for (std::size_t i = 0; i < A.rows(); ++i) m(i, i) = m(i, i) - lambda;
  return m;
}

/// det(t I - A) by interpolation at t = 0..k.
template <class K>
UPoly<K> char_poly(const DenseMatrix<K>& A, const Field<K>& F) {
  std::vector<K> vals;
  for (std::size_t t = 0; t <= A.rows(); ++t) {
    DenseMatrix<K> m(A.rows(), A.cols(), F.zero());
    for (std::size_t i = 0; i < A.rows(); ++i)
      for (std::size_t j = 0; j < A.cols(); ++j) m(i, j) = (i == j ? F.from_int(static_cast<std::int64_t>(t)) : F.zero()) - A(i, j);
    vals.push_back(determinant(m, F));
  }
  return upoly::interpolate(vals, F);
}

/// Commuting operators A with eigenvalues x_j / x_a at the fiber points, one
/// per non-chart variable of every block with positive degree.
template <class K>
struct KernelOperators {
  std::vector<DenseMatrix<K>> ops;
  bool ok = false;
};

template <class K>
KernelOperators<K> kernel_operators(const MatrixRep<K>& M, const DenseMatrix<K>& W, const Field<K>& F) {
  const PolyRing& R = *M.param.ring;
  const std::size_t k = W.cols();
  const MonomialIndex idx(M.rows);
  KernelOperators<K> out;
  for (std::size_t b = 0; b < R.nblocks(); ++b) {
    if (M.nu[b] == 0) continue;
    MultiDegree lower = M.nu;
    lower[b] -= 1;
    const auto S = graded_basis(R, lower);
    const auto [lo, hi] = R.block_range(b);
    bool found = false;
    for (std::size_t a = lo; a < hi && !found; ++a) {
      auto shifted = [&](std::size_t var) {
        DenseMatrix<K> m(S.size(), k, F.zero());
        for (std::size_t s = 0; s < S.size(); ++s) {
          Monomial mono = S[s];
          mono[var] += 1;
          const std::size_t row = idx.at(mono);
          for (std::size_t c = 0; c < k; ++c) m(s, c) = W(row, c);
        }
        return m;
      };
      const auto Wa = shifted(a);
      const auto e = rref(Wa.transpose());
      if (e.rank() < k) continue;
      auto pick = [&](const DenseMatrix<K>& m) {
        DenseMatrix<K> sub(k, k, F.zero());
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t c = 0; c < k; ++c) sub(i, c) = m(e.pivots[i], c);
        return sub;
      };
      const auto A0 = pick(Wa);
      for (std::size_t j = lo; j < hi; ++j)
        if (j != a) out.ops.push_back(solve_square(A0, pick(shifted(j)), F));
      found = true;
    }
    if (!found) return out;
  }
  out.ok = !out.ops.empty();
  return out;
}

}  // namespace detail

/// Fiber points read off the left kernel of M_nu(p). Reliable inside the
/// certified region; elsewhere the kernel need not consist of evaluations.
template <class K>
FiberPoints<K> fiber_points_from_kernel(const MatrixRep<K>& M, std::span<const K> p, std::uint64_t seed = 1) {
  const auto& P = M.param;
  check_target_point(P, p);
  const Field<K> F = P.field();
  const PolyRing& R = *P.ring;
  FiberPoints<K> out;
  const auto kernel = left_kernel(M.specialize(p), F);
  out.degree = kernel.size();
  if (kernel.empty()) return out;
  if (!M.valid) out.diagnostics.push_back("nu is outside the certified region");

  const std::size_t k = kernel.size();
  DenseMatrix<K> W(M.nrows(), k, F.zero());
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t i = 0; i < M.nrows(); ++i) W(i, c) = kernel[c][i];

  auto accept = [&](const std::vector<K>& v, int mult) {
    const auto partial = detail::coords_from_evaluation(R, M.nu, M.rows, v, [](const K& z) { return z.is_zero(); });
    for (auto x : complete_point(P, partial, p, out.diagnostics)) {
      normalize_blocks(R, x);
      if (!maps_into(P, std::span<const K>(x), p)) {
        out.diagnostics.push_back("kernel vector does not come from a fiber point");
        continue;
      }
      out.points.push_back({x, mult});
    }
  };

  if (k == 1) {
    accept(kernel[0], 1);
    return out;
  }

  const auto K_ops = detail::kernel_operators(M, W, F);
  if (!K_ops.ok) {
    out.diagnostics.push_back("no multiplication operators on the kernel (degree too small)");
    return out;
  }
  Rng rng(seed);
  for (int attempt = 0; attempt < 4; ++attempt) {
    DenseMatrix<K> A(k, k, F.zero());
    for (const auto& op : K_ops.ops) {
      const K c = F.random(rng, 50);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) A(i, j) += c * op(i, j);
    }
    const auto chi = detail::char_poly(A, F);
    const auto roots = univariate_roots(chi, F);
    bool split_ok = true;
    std::vector<std::pair<std::vector<K>, int>> found;
    for (const auto& r : roots.roots) {
      const auto E = nullspace_basis(detail::char_matrix(A, r.value), F);
      if (E.size() != 1) {
        split_ok = false;
        break;
      }
      found.push_back({W * E[0], r.multiplicity});
    }
    if (!split_ok) continue;
    for (const auto& [v, m] : found) accept(v, m);
    if (roots.leftover.size() > 1) {
      const std::size_t rest = roots.leftover.size() - 1;
      if constexpr (is_rational_field<K>) {
        // approximate the remaining points from the floating eigenvectors
        Eigen::MatrixXd Ad(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) Ad(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = A(i, j).to_double();
        const auto ce = complex_eigen(Ad);
        for (std::size_t e = 0; e < ce.values.size(); ++e) {
          bool rational = false;
          for (const auto& r : roots.roots)
            if (std::abs(ce.values[e] - std::complex<double>(r.value.to_double())) < 1e-7 * (1 + std::abs(ce.values[e])))
              rational = true;
          if (rational) continue;
          std::vector<std::complex<double>> v(M.nrows());
          for (std::size_t i = 0; i < M.nrows(); ++i)
            for (std::size_t c = 0; c < k; ++c) v[i] += W(i, c).to_double() * ce.vectors[e][c];
          const auto partial = detail::coords_from_evaluation(
              R, M.nu, M.rows, v, [](const std::complex<double>& z) { return std::abs(z) < 1e-12; });
          std::vector<std::complex<double>> x;
          for (const auto& c : partial) x.push_back(c.value_or(std::complex<double>(NAN, NAN)));
          for (std::size_t b = 0; b < R.nblocks(); ++b) {
            const auto [lo, hi] = R.block_range(b);
            std::size_t big = lo;
            for (std::size_t i = lo; i < hi; ++i)
              if (std::abs(x[i]) > std::abs(x[big])) big = i;
            const auto s = x[big];
            if (std::abs(s) > 0)
              for (std::size_t i = lo; i < hi; ++i) x[i] /= s;
          }
          out.approximate.push_back(std::move(x));
        }
        out.diagnostics.push_back(std::to_string(rest) + " fiber points are irrational; reported approximately");
      } else {
        out.diagnostics.push_back(std::to_string(rest) + " fiber points lie in an extension of the field");
      }
    }
    return out;
  }
  out.diagnostics.push_back("eigenvalues did not separate the fiber points; degree only");
  return out;
}

// ------------------------------------------------------- Jacobian tools

/// n x r matrix of partial derivatives d f_i / d x_k.
template <class K>
PolyMatrix<K> jacobian(const Parameterization<K>& P) {
  PolyMatrix<K> J(P.ring, P.ring->nvars(), P.r());
  for (std::size_t k = 0; k < P.ring->nvars(); ++k)
    for (std::size_t i = 0; i < P.r(); ++i) J(k, i) = P.maps[i].derivative(k);
  return J;
}

/// Smallest nu with a nonzero syzygy (single-block source).
template <class K>
int syzygy_initial_degree(const Parameterization<K>& P) {
  for (int nu = 0;; ++nu)
    if (!syzygies_in_degree(P, {nu}).basis.empty()) return nu;
}

template <class K>
struct JacobianReport {
  Polynomial<K> F;
  int degree = 0;
  int indeg_syz = 0;
  int bound = 0;
};

/// gcd of the maximal minors of the Jacobian. Its zero set contains every
/// curve contracted by psi.
template <class K>
JacobianReport<K> jacobian_minor_gcd(const Parameterization<K>& P) {
  if (P.ring->nblocks() != 1) throw std::invalid_argument("Jacobian tools need a single-block source");
  const int n = static_cast<int>(P.ring->nvars());
  if (P.r() < P.ring->nvars()) throw std::invalid_argument("need at least as many maps as source variables");
  std::vector<Polynomial<K>> minors;
  for (auto& m : maximal_minors(jacobian(P)))
    if (!m.is_zero()) minors.push_back(std::move(m));
  if (minors.empty())
    throw std::runtime_error("all maximal Jacobian minors vanish (map not generically finite, or the "
                             "characteristic divides a degree)");
  JacobianReport<K> rep{gcd_all(minors), 0, syzygy_initial_degree(P), 0};
  rep.degree = rep.F.total_degree();
  rep.bound = n * (P.degree[0] - 1) - rep.indeg_syz;
  return rep;
}

template <class K>
struct OneDimFiber {
  std::vector<K> lp;          ///< linear form l_p with l_p(p) = 1
  Polynomial<K> lp_of_f;      ///< l_p(f)
  Polynomial<K> h;            ///< the fiber curve
  std::vector<Polynomial<K>> g;
};

/// f_i = p_i l_p(f) + h g_i with h = gcd_i (f_i - p_i l_p(f)). A constant h
/// means the fiber is not one-dimensional.
template <class K>
OneDimFiber<K> one_dim_fiber_decomposition(const Parameterization<K>& P, std::span<const K> p,
                                           std::optional<std::vector<K>> lp = std::nullopt) {
  check_target_point(P, p);
  const Field<K> F = P.field();
  OneDimFiber<K> out;
  if (lp) {
    if (lp->size() != P.r()) throw std::invalid_argument("l_p needs one coefficient per target variable");
    K val = F.zero();
    for (std::size_t i = 0; i < P.r(); ++i) val += (*lp)[i] * p[i];
    if (val.is_zero()) throw std::invalid_argument("l_p vanishes at p");
    const K inv = val.inverse();
    out.lp = *lp;
    for (auto& c : out.lp) c *= inv;
  } else {
    std::size_t j = 0;
    while (p[j].is_zero()) ++j;
    out.lp.assign(P.r(), F.zero());
    out.lp[j] = p[j].inverse();
  }
  out.lp_of_f = Polynomial<K>(P.ring);
  for (std::size_t i = 0; i < P.r(); ++i) out.lp_of_f += out.lp[i] * P.maps[i];
  std::vector<Polynomial<K>> ell;
  for (std::size_t i = 0; i < P.r(); ++i) ell.push_back(P.maps[i] - p[i] * out.lp_of_f);
  bool all = true;
  for (const auto& e : ell) all = all && e.is_zero();
  if (all) throw std::invalid_argument("psi is constant");
  out.h = gcd_all(ell);
  if (out.h.is_constant()) throw std::invalid_argument("fiber over p is not one-dimensional");
  for (const auto& e : ell) out.g.push_back(e.is_zero() ? Polynomial<K>(P.ring) : *e.divide_exact(out.h));
  return out;
}

/// Minors of size (n - 1) - rdrop + 2 of the Jacobian: their common zeros
/// contain the locus where the rank of d psi drops by rdrop.
template <class K>
std::vector<Polynomial<K>> contracted_locus_generators(const Parameterization<K>& P, int rdrop) {
  const int n = static_cast<int>(P.ring->nvars());
  const int size = n - rdrop + 1;
  if (rdrop < 1 || size < 1 || size > std::min<int>(n, static_cast<int>(P.r())))
    throw std::invalid_argument("rank drop out of range");
  std::vector<Polynomial<K>> out;
  for (auto& m : minors_of_size(jacobian(P), static_cast<std::size_t>(size)))
    if (!m.is_zero()) out.push_back(std::move(m));
  return out;
}

}  // namespace elimat
