#pragma once

// Multivariate gcd by content/primitive-part recursion with a subresultant
// PRS in the highest-index variable present, plus square-free decomposition.

#include <elimat/polynomial.hpp>

#include <map>
#include <optional>
#include <vector>

namespace elimat {

namespace detail {

template <class K>
std::optional<std::size_t> main_variable(const Polynomial<K>& a, const Polynomial<K>& b) {
  for (std::size_t v = a.ring()->nvars(); v-- > 0;)
    if (a.involves(v) || b.involves(v)) return v;
  return std::nullopt;
}

template <class K>
Polynomial<K> lc_in(const Polynomial<K>& a, std::size_t v) {
  return a.coefficients_in(v).back();
}

template <class K>
Polynomial<K> var_power(const RingPtr& ring, std::size_t v, int k) {
  Monomial m;
  m[v] = static_cast<std::uint16_t>(k);
  return Polynomial<K>::monomial(ring, m, Field<K>(ring->field()).one());
}

template <class K>
Polynomial<K> exact(const Polynomial<K>& a, const Polynomial<K>& b) {
  auto q = a.divide_exact(b);
  if (!q) throw std::logic_error("inexact division in gcd");
  return *q;
}

/// lc(b)^(deg a - deg b + 1) * a  mod  b, both viewed in variable v.
template <class K>
Polynomial<K> pseudo_remainder(Polynomial<K> a, const Polynomial<K>& b, std::size_t v) {
  const int db = b.degree_in(v);
  const Polynomial<K> lb = lc_in(b, v);
  int k = a.degree_in(v) - db + 1;
  while (!a.is_zero() && a.degree_in(v) >= db) {
    const int da = a.degree_in(v);
    const Polynomial<K> la = lc_in(a, v);
    a = lb * a - la * var_power<K>(a.ring(), v, da - db) * b;
    --k;
  }
  if (k > 0) a = lb.pow(static_cast<unsigned>(k)) * a;
  return a;
}

}  // namespace detail

template <class K>
Polynomial<K> gcd(const Polynomial<K>& a, const Polynomial<K>& b);

/// gcd of the coefficients of a with respect to variable v.
template <class K>
Polynomial<K> content_in(const Polynomial<K>& a, std::size_t v) {
  Polynomial<K> g(a.ring());
  for (const auto& c : a.coefficients_in(v)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

/// Normalized gcd: monic on the leading term; gcd(p, 0) = monic(p); 1 for
/// coprime inputs.
template <class K>
Polynomial<K> gcd(const Polynomial<K>& a, const Polynomial<K>& b) {
  const RingPtr& ring = a.ring() ? a.ring() : b.ring();
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  const auto vo = detail::main_variable(a, b);
  if (!vo) return Polynomial<K>::one(ring);
  const std::size_t v = *vo;
  if (!a.involves(v)) return gcd(a, content_in(b, v));
  if (!b.involves(v)) return gcd(content_in(a, v), b);

  const Polynomial<K> ca = content_in(a, v), cb = content_in(b, v);
  const Polynomial<K> g0 = gcd(ca, cb);
  Polynomial<K> p = detail::exact(a, ca), q = detail::exact(b, cb);
  if (p.degree_in(v) < q.degree_in(v)) std::swap(p, q);

  // subresultant PRS
  Polynomial<K> g = Polynomial<K>::one(ring), h = Polynomial<K>::one(ring);
  for (;;) {
    const int delta = p.degree_in(v) - q.degree_in(v);
    Polynomial<K> r = detail::pseudo_remainder(p, q, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) <= 0) {
      q = Polynomial<K>::one(ring);
      break;
    }
    p = q;
    q = detail::exact(r, g * h.pow(static_cast<unsigned>(delta)));
    g = detail::lc_in(p, v);
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = detail::exact(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
    }
  }
  const Polynomial<K> pp = detail::exact(q, content_in(q, v));
  return (g0 * pp).monic();
}

template <class K>
Polynomial<K> gcd_all(const std::vector<Polynomial<K>>& ps) {
  if (ps.empty()) throw std::invalid_argument("gcd of empty list");
  Polynomial<K> g(ps.front().ring());
  for (const auto& p : ps) {
    g = gcd(g, p);
    if (!g.is_zero() && g.is_constant()) break;
  }
  return g;
}

/// Square-free decomposition: a = c * prod P_i^i with the P_i square-free and
/// pairwise coprime. Returned as multiplicity -> factor (constants omitted).
/// Valid in characteristic 0 and whenever the characteristic exceeds all
/// degrees involved.
template <class K>
std::map<int, Polynomial<K>> squarefree_decomposition(const Polynomial<K>& a) {
  std::map<int, Polynomial<K>> out;
  if (a.is_zero() || a.is_constant()) return out;
  std::size_t v = 0;
  while (!a.involves(v)) ++v;
  auto merge = [&](int i, const Polynomial<K>& f) {
    if (f.is_constant()) return;
    auto it = out.find(i);
    if (it == out.end()) out.emplace(i, f.monic());
    else it->second = (it->second * f).monic();
  };
  const Polynomial<K> c = content_in(a, v);
  for (const auto& [i, f] : squarefree_decomposition(c)) merge(i, f);
  const Polynomial<K> p = detail::exact(a, c);

  // Yun
  const Polynomial<K> dp = p.derivative(v);
  const Polynomial<K> a0 = gcd(p, dp);
  Polynomial<K> b = detail::exact(p, a0);
  Polynomial<K> cc = detail::exact(dp, a0);
  Polynomial<K> d = cc - b.derivative(v);
  for (int i = 1; !b.is_constant(); ++i) {
    const Polynomial<K> ai = gcd(b, d);
    merge(i, ai);
    b = detail::exact(b, ai);
    cc = detail::exact(d, ai);
    d = cc - b.derivative(v);
  }
  return out;
}

}  // namespace elimat
