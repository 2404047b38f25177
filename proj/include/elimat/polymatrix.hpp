#pragma once

// Matrices with polynomial entries: specialization, determinants and
// maximal minors.

#include <elimat/linalg.hpp>
#include <elimat/polynomial.hpp>

#include <bit>
#include <unordered_map>
#include <vector>

namespace elimat {

template <class K>
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, Polynomial<K>(ring_)) {}

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Polynomial<K>& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Polynomial<K>& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  PolyMatrix transpose() const {
    PolyMatrix t(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  PolyMatrix select_columns(const std::vector<std::size_t>& cs) const {
    PolyMatrix s(ring_, rows_, cs.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cs.size(); ++k) s(i, k) = (*this)(i, cs[k]);
    return s;
  }

  DenseMatrix<K> evaluate(std::span<const K> point) const {
    const Field<K> F(ring_->field());
    DenseMatrix<K> m(rows_, cols_, F.zero());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).evaluate(point);
    return m;
  }

  bool column_is_zero(std::size_t j) const {
    for (std::size_t i = 0; i < rows_; ++i)
      if (!(*this)(i, j).is_zero()) return false;
    return true;
  }

 private:
  RingPtr ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Polynomial<K>> data_;
};

namespace detail {

/// Laplace expansion along rows with sub-minors memoized by column subset
/// (the subset size fixes the starting row). Shared across all minors of
/// one matrix.
template <class K>
class MinorCache {
 public:
  explicit MinorCache(const PolyMatrix<K>& m) : m_(m) {
    if (m.cols() > 62) throw std::invalid_argument("too many columns for minor cache");
  }

  /// Determinant of the bottom |cols| rows restricted to `cols` (bitmask).
  const Polynomial<K>& bottom_minor(std::uint64_t cols) {
    auto it = memo_.find(cols);
    if (it != memo_.end()) return it->second;
    const int k = std::popcount(cols);
    Polynomial<K> acc(m_.ring());
    if (k == 0) {
      acc = Polynomial<K>::one(m_.ring());
    } else {
      const std::size_t row = m_.rows() - static_cast<std::size_t>(k);
      int sign = 1;
      for (std::size_t j = 0; j < m_.cols(); ++j) {
        if (!(cols >> j & 1U)) continue;
        const auto& a = m_(row, j);
        if (!a.is_zero()) {
          const Polynomial<K> sub = bottom_minor(cols & ~(std::uint64_t{1} << j));
          if (!sub.is_zero()) acc = sign > 0 ? acc + a * sub : acc - a * sub;
        }
        sign = -sign;
      }
    }
    return memo_.emplace(cols, std::move(acc)).first->second;
  }

 private:
  const PolyMatrix<K>& m_;
  std::unordered_map<std::uint64_t, Polynomial<K>> memo_;
};

}  // namespace detail

/// Determinant by fraction-free elimination with exact polynomial division.
template <class K>
Polynomial<K> determinant_bareiss(PolyMatrix<K> a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const RingPtr ring = a.ring();
  Polynomial<K> prev = Polynomial<K>::one(ring);
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k).is_zero()) ++p;
    if (p == n) return Polynomial<K>(ring);
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial<K> t = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        auto q = t.divide_exact(prev);
        if (!q) throw std::logic_error("inexact division in Bareiss");
        a(i, j) = std::move(*q);
      }
      a(i, k) = Polynomial<K>(ring);
    }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

template <class K>
Polynomial<K> determinant(const PolyMatrix<K>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  if (m.rows() == 0) return Polynomial<K>::one(m.ring());
  if (m.rows() <= 8) {
    detail::MinorCache<K> cache(m);
    return cache.bottom_minor((std::uint64_t{1} << m.cols()) - 1);
  }
  return determinant_bareiss(m);
}

/// Column subsets of size k from n, in lexicographic order.
inline std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  for (;;) {
    out.push_back(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return out;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

/// All maximal minors (rows <= cols), columns subsets in lexicographic order.
template <class K>
std::vector<Polynomial<K>> maximal_minors(const PolyMatrix<K>& m) {
  if (m.rows() > m.cols()) return maximal_minors(m.transpose());
  std::vector<Polynomial<K>> out;
  const auto subsets = combinations(m.cols(), m.rows());
  if (m.cols() <= 24) {
    detail::MinorCache<K> cache(m);
    for (const auto& s : subsets) {
      std::uint64_t mask = 0;
      for (auto j : s) mask |= std::uint64_t{1} << j;
      out.push_back(cache.bottom_minor(mask));
    }
  } else {
    for (const auto& s : subsets) out.push_back(determinant(m.select_columns(s)));
  }
  return out;
}

/// Minors of a given size: all row subsets times all column subsets, rows
/// outer, both lexicographic.
template <class K>
std::vector<Polynomial<K>> minors_of_size(const PolyMatrix<K>& m, std::size_t k) {
  std::vector<Polynomial<K>> out;
  for (const auto& rs : combinations(m.rows(), k)) {
    PolyMatrix<K> sub(m.ring(), k, m.cols());
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) sub(i, j) = m(rs[i], j);
    detail::MinorCache<K> cache(sub);
    for (const auto& cs : combinations(m.cols(), k)) {
      std::uint64_t mask = 0;
      for (auto j : cs) mask |= std::uint64_t{1} << j;
      out.push_back(cache.bottom_minor(mask));
    }
  }
  return out;
}

}  // namespace elimat
