#pragma once

// Dense exact linear algebra. Over Q the forward sweep is fraction-free
// (Bareiss on integer-scaled rows); over F_p it is plain Gaussian
// elimination. Pivots are always the first nonzero entry in column order.

#include <elimat/field.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace elimat {

template <class K>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, const K& zero = K())
      : rows_(rows), cols_(cols), data_(rows * cols, zero) {}
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<K> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw std::invalid_argument("entry count mismatch");
  }
  static DenseMatrix identity(std::size_t n, const Field<K>& F) {
    DenseMatrix m(n, n, F.zero());
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F.one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  K& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<K>& data() const { return data_; }

  std::vector<K> row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<K> operator*(const std::vector<K>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("dimension mismatch");
    std::vector<K> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      K acc{};
      for (std::size_t j = 0; j < cols_; ++j)
        if (!v[j].is_zero()) acc += (*this)(i, j) * v[j];
      out[i] = acc;
    }
    return out;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("dimension mismatch");
    DenseMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  /// Vertical concatenation.
  static DenseMatrix stack(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows_ == 0) return b;
    if (a.cols_ != b.cols_) throw std::invalid_argument("dimension mismatch");
    DenseMatrix c = a;
    c.rows_ += b.rows_;
    c.data_.insert(c.data_.end(), b.data_.begin(), b.data_.end());
    return c;
  }

  void append_row(const std::vector<K>& r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw std::invalid_argument("row length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<K> data_;
};

template <class K>
struct Echelon {
  DenseMatrix<K> reduced;            ///< reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;   ///< pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

namespace detail {

/// Row-scaled integer copy of a rational matrix plus the per-row scale.
inline std::vector<std::vector<mpz_class>> integer_rows(const DenseMatrix<Rational>& m,
                                                        std::vector<mpz_class>* scale = nullptr) {
  std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols()));
  if (scale) scale->assign(m.rows(), 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const mpz_class& d = m(i, j).value().get_den();
      if (d != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const mpq_class& v = m(i, j).value();
      a[i][j] = v.get_num() * (l / v.get_den());
    }
    if (scale) (*scale)[i] = l;
  }
  return a;
}

/// Fraction-free forward elimination in place. Returns pivot columns and
/// the permutation parity; the last pivot of a full-rank square matrix is
/// its determinant.
inline std::vector<std::size_t> bareiss_forward(std::vector<std::vector<mpz_class>>& a,
                                                std::size_t cols, int* parity = nullptr) {
  const std::size_t rows = a.size();
  std::vector<std::size_t> pivots;
  mpz_class prev = 1;
  int sign = 1;
  std::size_t r = 0;
  mpz_class t;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      sign = -sign;
    }
    const mpz_class& piv = a[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const mpz_class lead = a[i][c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        // a[i][j] = (piv*a[i][j] - lead*a[r][j]) / prev
        t = piv * a[i][j];
        if (lead != 0) t -= lead * a[r][j];
        if (prev != 1) mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[i][j].swap(t);
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    pivots.push_back(c);
    ++r;
  }
  if (parity) *parity = sign;
  return pivots;
}

inline Echelon<Rational> echelon_q(const DenseMatrix<Rational>& m) {
  auto a = integer_rows(m);
  const auto pivots = bareiss_forward(a, m.cols());
  const std::size_t r = pivots.size();
  std::vector<std::vector<mpq_class>> q(r, std::vector<mpq_class>(m.cols()));
  for (std::size_t i = 0; i < r; ++i) {
    const mpz_class& piv = a[i][pivots[i]];
    for (std::size_t j = pivots[i]; j < m.cols(); ++j) {
      q[i][j] = mpq_class(a[i][j], piv);
      q[i][j].canonicalize();
    }
  }
  for (std::size_t k = r; k-- > 0;) {
    const std::size_t pc = pivots[k];
    for (std::size_t i = 0; i < k; ++i) {
      if (sgn(q[i][pc]) == 0) continue;
      const mpq_class f = q[i][pc];
      for (std::size_t j = pc; j < m.cols(); ++j)
        if (sgn(q[k][j]) != 0) q[i][j] -= f * q[k][j];
    }
  }
  Echelon<Rational> e;
  e.pivots = pivots;
  e.reduced = DenseMatrix<Rational>(r, m.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e.reduced(i, j) = Rational(q[i][j]);
  return e;
}

inline Echelon<ModP> echelon_p(const DenseMatrix<ModP>& m, std::uint32_t p) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m(i, j).value();
  const Field<ModP> F(FieldSpec::prime_field(p));
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const std::uint64_t inv = ModP(static_cast<std::uint32_t>(a[r][c]), p).inverse().value();
    for (std::size_t j = c; j < cols; ++j) a[r][j] = a[r][j] * inv % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const std::uint64_t f = p - a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (a[r][j]) a[i][j] = (a[i][j] + f * a[r][j]) % p;
    }
    pivots.push_back(c);
    ++r;
  }
  Echelon<ModP> e;
  e.pivots = pivots;
  e.reduced = DenseMatrix<ModP>(r, cols, F.zero());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) e.reduced(i, j) = ModP(static_cast<std::uint32_t>(a[i][j]), p);
  return e;
}

inline constexpr std::uint32_t kCheckPrime = 2147483647U;

/// Rank of an integer matrix modulo kCheckPrime.
inline std::size_t modular_rank(const std::vector<std::vector<mpz_class>>& a, std::size_t cols) {
  const Field<ModP> F(FieldSpec::prime_field(kCheckPrime));
  std::vector<ModP> d;
  d.reserve(a.size() * cols);
  for (const auto& row : a)
    for (const auto& x : row) d.push_back(F.from_mpz(x));
  return echelon_p(DenseMatrix<ModP>(a.size(), cols, std::move(d)), kCheckPrime).rank();
}

template <class K>
std::uint32_t modulus_of(const DenseMatrix<K>& m) {
  for (const auto& x : m.data())
    if (x.modulus()) return x.modulus();
  return 0;
}

}  // namespace detail

/// Reduced row echelon form. Over F_p the modulus is read from the entries
/// (an all-zero matrix has rank 0 regardless).
template <class K>
Echelon<K> rref(const DenseMatrix<K>& m) {
  if constexpr (is_rational_field<K>) {
    return detail::echelon_q(m);
  } else {
    const auto p = detail::modulus_of(m);
    if (p == 0) return {DenseMatrix<K>(0, m.cols()), {}};
    return detail::echelon_p(m, p);
  }
}

template <class K>
std::size_t rank(const DenseMatrix<K>& m) {
  if constexpr (is_rational_field<K>) {
    auto a = detail::integer_rows(m);
    // rank mod p never exceeds the rank over Q, so a full modular rank is exact
    const std::size_t full = std::min(m.rows(), m.cols());
    if (full > 8 && detail::modular_rank(a, m.cols()) == full) return full;
    return detail::bareiss_forward(a, m.cols()).size();
  } else {
    return rref(m).rank();
  }
}

template <class K>
std::size_t corank_rows(const DenseMatrix<K>& m) {
  return m.rows() - rank(m);
}

/// Right kernel basis. Vector k has a 1 in the k-th free column and zeros
/// in the other free columns (reduced-echelon normalization).
template <class K>
std::vector<std::vector<K>> nullspace_basis(const DenseMatrix<K>& m, const Field<K>& F) {
  const Echelon<K> e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::vector<K>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<K> v(m.cols(), F.zero());
    v[f] = F.one();
    for (std::size_t i = 0; i < e.rank(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class K>
std::vector<std::vector<K>> left_kernel(const DenseMatrix<K>& m, const Field<K>& F) {
  return nullspace_basis(m.transpose(), F);
}

template <class K>
K determinant(const DenseMatrix<K>& m, const Field<K>& F) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return F.one();
  if constexpr (is_rational_field<K>) {
    std::vector<mpz_class> scale;
    auto a = detail::integer_rows(m, &scale);
    int parity = 1;
    const auto piv = detail::bareiss_forward(a, n, &parity);
    if (piv.size() < n) return F.zero();
    mpz_class den = 1;
    for (const auto& s : scale) den *= s;
    mpq_class d(a[n - 1][n - 1] * parity, den);
    d.canonicalize();
    return Rational(d);
  } else {
    // Gaussian elimination tracking the product of pivots.
    DenseMatrix<K> a = m;
    K det = F.one();
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (p < n && a(p, c).is_zero()) ++p;
      if (p == n) return F.zero();
      if (p != c) {
        for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
        det = -det;
      }
      det = det * a(c, c);
      const K inv = a(c, c).inverse();
      for (std::size_t i = c + 1; i < n; ++i) {
        if (a(i, c).is_zero()) continue;
        const K f = a(i, c) * inv;
        for (std::size_t j = c; j < n; ++j) a(i, j) = a(i, j) - f * a(c, j);
      }
    }
    return det;
  }
}

/// A solution of m x = b with free variables set to zero, or nullopt.
template <class K>
std::optional<std::vector<K>> solve(const DenseMatrix<K>& m, const std::vector<K>& b, const Field<K>& F) {
  if (b.size() != m.rows()) throw std::invalid_argument("right-hand side length mismatch");
  DenseMatrix<K> aug(m.rows(), m.cols() + 1, F.zero());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const Echelon<K> e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  std::vector<K> x(m.cols(), F.zero());
  for (std::size_t i = 0; i < e.rank(); ++i) x[e.pivots[i]] = e.reduced(i, m.cols());
  return x;
}

/// Rows of `m` reduced against an echelon basis; returns the reduced row.
template <class K>
std::vector<K> reduce_against(std::vector<K> v, const Echelon<K>& e) {
  for (std::size_t i = 0; i < e.rank(); ++i) {
    const K c = v[e.pivots[i]];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!e.reduced(i, j).is_zero()) v[j] = v[j] - c * e.reduced(i, j);
  }
  return v;
}

}  // namespace elimat
