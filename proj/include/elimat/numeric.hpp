#pragma once

// Floating-point fallbacks: numeric corank by singular values, polynomial
// roots by companion eigenvalues, complex eigen-decomposition. Everything
// produced here is tagged approximate by its callers.

#include <elimat/polymatrix.hpp>

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace elimat {

inline constexpr double kNumericRelTol = 1e-8;

/// Evaluate a rational-coefficient polynomial at a floating point.
inline double evaluate_double(const Polynomial<Rational>& p, const std::vector<double>& x) {
  double acc = 0;
  for (const auto& t : p.terms()) {
    double v = t.coeff.to_double();
    for (std::size_t i = 0; i < x.size(); ++i)
      for (int k = 0; k < t.mono[i]; ++k) v *= x[i];
    acc += v;
  }
  return acc;
}

inline Eigen::MatrixXd specialize_double(const PolyMatrix<Rational>& m, const std::vector<double>& p) {
  Eigen::MatrixXd a(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = evaluate_double(m(i, j), p);
  return a;
}

/// rows - numeric rank, singular values below tol * sigma_max dropped.
inline std::size_t numeric_corank(const Eigen::MatrixXd& a, double rel_tol = kNumericRelTol) {
  if (a.cols() == 0 || a.rows() == 0) return static_cast<std::size_t>(a.rows());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * smax && s(i) > 0) ++r;
  return static_cast<std::size_t>(a.rows()) - r;
}

/// Roots of c[0] + c[1] t + ... + c[n] t^n (c[n] != 0) via the companion matrix.
inline std::vector<std::complex<double>> numeric_roots(const std::vector<double>& c) {
  std::size_t n = c.size();
  while (n > 0 && c[n - 1] == 0) --n;
  if (n <= 1) return {};
  const Eigen::Index deg = static_cast<Eigen::Index>(n - 1);
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
  for (Eigen::Index i = 1; i < deg; ++i) comp(i, i - 1) = 1;
  for (Eigen::Index i = 0; i < deg; ++i) comp(i, deg - 1) = -c[static_cast<std::size_t>(i)] / c[n - 1];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < deg; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

struct ComplexEigen {
  std::vector<std::complex<double>> values;
  std::vector<std::vector<std::complex<double>>> vectors;
};

inline ComplexEigen complex_eigen(const Eigen::MatrixXd& a) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a.cast<std::complex<double>>());
  ComplexEigen out;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    out.values.push_back(es.eigenvalues()(i));
    std::vector<std::complex<double>> v;
    for (Eigen::Index k = 0; k < a.rows(); ++k) v.push_back(es.eigenvectors()(k, i));
    out.vectors.push_back(std::move(v));
  }
  return out;
}

}  // namespace elimat
