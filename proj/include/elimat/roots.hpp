#pragma once

// Roots of univariate polynomials and binary forms in the coefficient field.
// Over Q candidates come from companion-matrix eigenvalues and small divisor
// lists and are confirmed exactly; over F_p every element is tried.

#include <elimat/numeric.hpp>

#include <cmath>
#include <vector>

namespace elimat {

/// Dense univariate polynomial, ascending coefficients.
template <class K>
using UPoly = std::vector<K>;

namespace upoly {

template <class K>
void trim(UPoly<K>& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

template <class K>
int degree(const UPoly<K>& a) {
  return static_cast<int>(a.size()) - 1;
}

template <class K>
K eval(const UPoly<K>& a, const K& t, const Field<K>& F) {
  K acc = F.zero();
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * t + a[i];
  return acc;
}

/// Quotient by (t - r); the remainder is dropped.
template <class K>
UPoly<K> deflate(const UPoly<K>& a, const K& r, const Field<K>& F) {
  if (a.size() <= 1) return {};
  UPoly<K> q(a.size() - 1, F.zero());
  K carry = F.zero();
  for (std::size_t i = a.size(); i-- > 1;) {
    carry = carry * r + a[i];
    q[i - 1] = carry;
  }
  return q;
}

template <class K>
UPoly<K> derivative(const UPoly<K>& a, const Field<K>& F) {
  UPoly<K> d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(F.from_int(static_cast<std::int64_t>(i)) * a[i]);
  trim(d);
  return d;
}

template <class K>
UPoly<K> remainder(UPoly<K> a, const UPoly<K>& b) {
  trim(a);
  const K lb = b.back();
  while (a.size() >= b.size() && !a.empty()) {
    const K q = a.back() / lb;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

template <class K>
UPoly<K> quotient(UPoly<K> a, const UPoly<K>& b, const Field<K>& F) {
  trim(a);
  if (a.size() < b.size()) return {};
  UPoly<K> q(a.size() - b.size() + 1, F.zero());
  while (a.size() >= b.size() && !a.empty()) {
    const K c = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    a.pop_back();
    trim(a);
  }
  return q;
}

template <class K>
UPoly<K> monic(UPoly<K> a) {
  trim(a);
  if (a.empty()) return a;
  const K inv = a.back().inverse();
  for (auto& c : a) c *= inv;
  return a;
}

template <class K>
UPoly<K> gcd(UPoly<K> a, UPoly<K> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly<K> r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// Coefficients from values at 0, 1, ..., n (Newton divided differences).
template <class K>
UPoly<K> interpolate(const std::vector<K>& values, const Field<K>& F) {
  const std::size_t n = values.size();
  std::vector<K> dd = values;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i)
      dd[i] = (dd[i] - dd[i - 1]) / F.from_int(static_cast<std::int64_t>(j));
  UPoly<K> out{dd[n - 1]};
  for (std::size_t k = n - 1; k-- > 0;) {
    // out = out * (t - k) + dd[k]
    UPoly<K> next(out.size() + 1, F.zero());
    const K xk = F.from_int(static_cast<std::int64_t>(k));
    for (std::size_t i = 0; i < out.size(); ++i) {
      next[i + 1] += out[i];
      next[i] -= xk * out[i];
    }
    next[0] += dd[k];
    out = std::move(next);
  }
  trim(out);
  return out;
}

}  // namespace upoly

template <class K>
struct RootMult {
  K value;
  int multiplicity;
};

template <class K>
struct UnivariateRoots {
  std::vector<RootMult<K>> roots;
  UPoly<K> leftover;  ///< cofactor without roots in the field (possibly unproven)
};

namespace detail {

inline std::vector<mpz_class> small_divisors(mpz_class n) {
  std::vector<mpz_class> out;
  n = abs(n);
  if (n == 0 || n > 1000000) return out;
  const long v = n.get_si();
  for (long k = 1; k * k <= v; ++k)
    if (v % k == 0) {
      out.push_back(k);
      if (k != v / k) out.push_back(v / k);
    }
  return out;
}

/// Candidate rational roots of a squarefree polynomial.
inline std::vector<Rational> rational_candidates(const UPoly<Rational>& s) {
  std::vector<Rational> out;
  if (s.size() == 2) {
    out.push_back(-s[0] / s[1]);
    return out;
  }
  mpz_class den = 1;
  for (const auto& c : s) den = lcm(den, c.value().get_den());
  std::vector<mpz_class> z;
  for (const auto& c : s) z.push_back(mpz_class(c.value() * den));
  const mpz_class lc = z.back();
  if (s.size() == 3) {
    const mpz_class disc = z[1] * z[1] - 4 * z[2] * z[0];
    if (disc >= 0) {
      const mpz_class root = sqrt(disc);
      if (root * root == disc)
        for (int sg : {1, -1}) out.push_back(Rational(mpq_class(-z[1] + sg * root, 2 * z[2])));
    }
    return out;
  }
  std::vector<double> c;
  for (const auto& x : s) c.push_back(x.to_double());
  for (const auto& r : numeric_roots(c)) {
    if (std::abs(r.imag()) > 1e-6 * (1 + std::abs(r.real()))) continue;
    const double scaled = r.real() * lc.get_d();
    if (!std::isfinite(scaled) || std::abs(scaled) > 1e15) continue;
    out.push_back(Rational(mpq_class(mpz_class(static_cast<long>(std::llround(scaled))), lc)));
  }
  for (const auto& q : small_divisors(lc))
    for (const auto& p : small_divisors(z[0]))
      for (int sg : {1, -1}) out.push_back(Rational(mpq_class(sg * p, q)));
  return out;
}

}  // namespace detail

/// Roots in K with multiplicities. a must be nonzero.
template <class K>
UnivariateRoots<K> univariate_roots(UPoly<K> a, const Field<K>& F) {
  upoly::trim(a);
  if (a.empty()) throw std::invalid_argument("roots of the zero polynomial");
  UnivariateRoots<K> out;
  auto strip = [&](const K& r) {
    int m = 0;
    while (a.size() > 1 && upoly::eval(a, r, F).is_zero()) {
      a = upoly::deflate(a, r, F);
      ++m;
    }
    if (m) out.roots.push_back({r, m});
  };
  if constexpr (is_rational_field<K>) {
    strip(F.zero());
    while (a.size() > 1) {
      const UPoly<K> sqf = upoly::quotient(a, upoly::gcd(a, upoly::derivative(a, F)), F);
      const std::size_t before = out.roots.size();
      for (const auto& cand : detail::rational_candidates(sqf)) strip(cand);
      if (out.roots.size() == before) break;
    }
  } else {
    const std::uint32_t p = F.modulus();
    if (p > (1u << 22)) throw std::invalid_argument("root search over F_p needs p <= 2^22");
    for (std::uint32_t t = 0; t < p && a.size() > 1; ++t) strip(F.from_int(t));
  }
  out.leftover = a;
  return out;
}

/// Point of P^1 with multiplicity.
template <class K>
struct P1Root {
  K x, y;
  int multiplicity;
};

template <class K>
struct BinaryRoots {
  int degree = 0;
  std::vector<P1Root<K>> roots;
  UPoly<K> leftover;
};

/// Coefficients c[k] of x^k y^(deg-k) for a form in variables x, y only.
template <class K>
UPoly<K> binary_form_coeffs(const Polynomial<K>& h, std::size_t x, std::size_t y) {
  const Field<K> F = h.field();
  const int deg = h.total_degree();
  UPoly<K> c(static_cast<std::size_t>(deg + 1), F.zero());
  for (const auto& t : h.terms()) {
    if (t.mono[x] + t.mono[y] != t.mono.total_degree())
      throw std::invalid_argument("binary form involves other variables");
    c[t.mono[x]] = t.coeff;
  }
  return c;
}

/// Roots (x : y) of a nonzero binary form given by its coefficients.
template <class K>
BinaryRoots<K> binary_form_roots(UPoly<K> c, const Field<K>& F) {
  BinaryRoots<K> out;
  out.degree = upoly::degree(c);
  int at_inf = 0;
  while (c.size() > 1 && c.back().is_zero()) {
    c.pop_back();
    ++at_inf;
  }
  if (c.back().is_zero()) throw std::invalid_argument("roots of the zero form");
  if (at_inf) out.roots.push_back({F.one(), F.zero(), at_inf});
  const auto u = univariate_roots(c, F);
  for (const auto& r : u.roots) out.roots.push_back({r.value, F.one(), r.multiplicity});
  out.leftover = u.leftover;
  return out;
}

}  // namespace elimat
