#pragma once

// Sparse multivariate polynomials over an exact field.

#include <elimat/ring.hpp>

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace elimat {

template <class K>
class Polynomial {
 public:
  struct Term {
    Monomial mono;
    K coeff;
  };

  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr ring, const K& c) {
    Polynomial p(std::move(ring));
    if (!c.is_zero()) p.terms_.push_back({Monomial{}, c});
    return p;
  }
  static Polynomial one(RingPtr ring) { return constant(ring, Field<K>(ring->field()).one()); }
  static Polynomial variable(RingPtr ring, std::size_t var) {
    Monomial m;
    m[var] = 1;
    return monomial(ring, m, Field<K>(ring->field()).one());
  }
  static Polynomial monomial(RingPtr ring, const Monomial& m, const K& c) {
    Polynomial p(std::move(ring));
    if (!c.is_zero()) p.terms_.push_back({m, c});
    return p;
  }
  /// Terms in any order, possibly with repeats and zeros.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms) {
    Polynomial p(std::move(ring));
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  Field<K> field() const { return Field<K>(ring_->field()); }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

  const Term& leading_term() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return terms_.front();
  }
  const K& leading_coeff() const { return leading_term().coeff; }

  K coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.mono == m) return t.coeff;
    return field().zero();
  }

  int total_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
    return d;
  }
  int degree_in(std::size_t var) const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono[var]));
    return d;
  }
  bool involves(std::size_t var) const { return degree_in(var) > 0; }

  /// Common multidegree of all terms, or nullopt when inhomogeneous or zero.
  std::optional<MultiDegree> multidegree() const {
    if (terms_.empty()) return std::nullopt;
    const MultiDegree d = ring_->degree(terms_[0].mono);
    for (const auto& t : terms_)
      if (ring_->degree(t.mono) != d) return std::nullopt;
    return d;
  }
  bool is_homogeneous() const { return terms_.empty() || multidegree().has_value(); }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return combine(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return combine(a, b, true); }
  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    const RingPtr& ring = a.ring_ ? a.ring_ : b.ring_;
    if (a.is_zero() || b.is_zero()) return Polynomial(ring);
    std::vector<Term> out;
    out.reserve(a.size() * b.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) out.push_back({s.mono * t.mono, s.coeff * t.coeff});
    return from_terms(ring, std::move(out));
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend Polynomial operator*(const K& c, const Polynomial& p) {
    if (c.is_zero()) return Polynomial(p.ring_);
    Polynomial r = p;
    for (auto& t : r.terms_) t.coeff = c * t.coeff;
    return r;
  }

  Polynomial mul_monomial(const Monomial& m, const K& c) const {
    if (c.is_zero()) return Polynomial(ring_);
    Polynomial r = *this;
    for (auto& t : r.terms_) {
      t.mono = t.mono * m;
      t.coeff = c * t.coeff;
    }
    return r;
  }

  Polynomial pow(unsigned k) const {
    Polynomial result = one(ring_), base = *this;
    while (k) {
      if (k & 1U) result = result * base;
      k >>= 1U;
      if (k) base = base * base;
    }
    return result;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || !(a.terms_[i].coeff == b.terms_[i].coeff))
        return false;
    return true;
  }

  /// Scale so the leading coefficient is one.
  Polynomial monic() const {
    if (is_zero()) return *this;
    return leading_coeff().inverse() * *this;
  }

  K evaluate(std::span<const K> point) const {
    if (point.size() != ring_->nvars()) throw std::invalid_argument("point has wrong length");
    const Field<K> F = field();
    std::vector<std::vector<K>> powers(point.size());
    K acc = F.zero();
    for (const auto& t : terms_) {
      K v = t.coeff;
      for (std::size_t i = 0; i < point.size(); ++i) {
        const auto e = t.mono[i];
        if (e == 0) continue;
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(F.one());
        while (pw.size() <= e) pw.push_back(pw.back() * point[i]);
        v = v * pw[e];
      }
      acc += v;
    }
    return acc;
  }

  /// Substitute images[i] (polynomials in another ring) for variable i.
  Polynomial compose(const std::vector<Polynomial>& images) const {
    if (images.size() != ring_->nvars()) throw std::invalid_argument("compose: arity mismatch");
    const RingPtr& target = images.at(0).ring();
    std::vector<std::vector<Polynomial>> powers(images.size());
    Polynomial acc(target);
    for (const auto& t : terms_) {
      Polynomial v = constant(target, t.coeff);
      for (std::size_t i = 0; i < images.size(); ++i) {
        const auto e = t.mono[i];
        if (e == 0) continue;
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(one(target));
        while (pw.size() <= e) pw.push_back(pw.back() * images[i]);
        v = v * pw[e];
      }
      acc += v;
    }
    return acc;
  }

  /// Substitute field values for some variables, keeping the ring.
  Polynomial substitute(const std::vector<std::optional<K>>& values) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      Term nt{t.mono, t.coeff};
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (!values[i] || t.mono[i] == 0) continue;
        K pw = field().one();
        for (int k = 0; k < t.mono[i]; ++k) pw = pw * *values[i];
        nt.coeff = nt.coeff * pw;
        nt.mono[i] = 0;
      }
      out.push_back(nt);
    }
    return from_terms(ring_, std::move(out));
  }

  Polynomial derivative(std::size_t var) const {
    const Field<K> F = field();
    std::vector<Term> out;
    for (const auto& t : terms_) {
      if (t.mono[var] == 0) continue;
      Term nt{t.mono, t.coeff * F.from_int(t.mono[var])};
      nt.mono[var] -= 1;
      out.push_back(nt);
    }
    return from_terms(ring_, std::move(out));
  }

  /// Exact quotient this / d, or nullopt when d does not divide.
  std::optional<Polynomial> divide_exact(const Polynomial& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    if (is_zero()) return Polynomial(ring_);
    const Term& lt = d.leading_term();
    const K inv = lt.coeff.inverse();
    Polynomial rem = *this;
    std::vector<Term> quot;
    while (!rem.is_zero()) {
      const Term& r = rem.leading_term();
      if (!lt.mono.divides(r.mono)) return std::nullopt;
      Term q{lt.mono.quotient_of(r.mono), r.coeff * inv};
      rem = rem - d.mul_monomial(q.mono, q.coeff);
      quot.push_back(q);
    }
    return from_terms(ring_, std::move(quot));
  }

  /// Coefficients with respect to one variable: result[k] multiplies var^k.
  std::vector<Polynomial> coefficients_in(std::size_t var) const {
    std::vector<std::vector<Term>> parts(static_cast<std::size_t>(std::max(degree_in(var), 0)) + 1);
    for (const auto& t : terms_) {
      Term nt = t;
      nt.mono[var] = 0;
      parts[t.mono[var]].push_back(nt);
    }
    std::vector<Polynomial> out;
    for (auto& p : parts) out.push_back(from_terms(ring_, std::move(p)));
    return out;
  }

  /// Move into another ring via a variable map (old index -> new index).
  Polynomial embed(const RingPtr& target, const std::vector<std::size_t>& var_map) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      Term nt{Monomial{}, t.coeff};
      for (std::size_t i = 0; i < ring_->nvars(); ++i)
        if (t.mono[i]) nt.mono[var_map.at(i)] = t.mono[i];
      out.push_back(nt);
    }
    return from_terms(target, std::move(out));
  }

  /// Canonical text: terms in ring order, "c*m" with unit coefficients elided.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto& t = terms_[i];
      std::string c = t.coeff.to_string();
      bool neg = false;
      if (c[0] == '-') {
        neg = true;
        c.erase(0, 1);
      }
      if (i == 0) {
        if (neg) s += '-';
      } else {
        s += neg ? " - " : " + ";
      }
      if (t.mono.is_one()) {
        s += c;
      } else {
        if (c != "1") s += c + '*';
        s += ring_->monomial_string(t.mono);
      }
    }
    return s;
  }

 private:
  void normalize() {
    const PolyRing& R = *ring_;
    std::sort(terms_.begin(), terms_.end(),
              [&](const Term& a, const Term& b) { return R.compare(a.mono, b.mono) > 0; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().mono == t.mono) {
        out.back().coeff += t.coeff;
      } else {
        out.push_back(std::move(t));
      }
    }
    std::erase_if(out, [](const Term& t) { return t.coeff.is_zero(); });
    terms_ = std::move(out);
  }

  static Polynomial combine(const Polynomial& a, const Polynomial& b, bool subtract) {
    const RingPtr& ring = a.ring_ ? a.ring_ : b.ring_;
    Polynomial r(ring);
    r.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      int c;
      if (i == a.size()) c = -1;
      else if (j == b.size()) c = 1;
      else c = ring->compare(a.terms_[i].mono, b.terms_[j].mono);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        Term t = b.terms_[j++];
        if (subtract) t.coeff = -t.coeff;
        r.terms_.push_back(std::move(t));
      } else {
        K v = subtract ? a.terms_[i].coeff - b.terms_[j].coeff : a.terms_[i].coeff + b.terms_[j].coeff;
        if (!v.is_zero()) r.terms_.push_back({a.terms_[i].mono, std::move(v)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Homogeneous polynomial built from coefficients on a monomial list.
template <class K>
Polynomial<K> from_coordinates(const RingPtr& ring, const std::vector<Monomial>& basis,
                               std::span<const K> coords) {
  std::vector<typename Polynomial<K>::Term> terms;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!coords[i].is_zero()) terms.push_back({basis[i], coords[i]});
  return Polynomial<K>::from_terms(ring, std::move(terms));
}

/// Coordinates of p on a monomial list; throws when p has other monomials.
template <class K>
std::vector<K> to_coordinates(const Polynomial<K>& p, const MonomialIndex& index, std::size_t n) {
  std::vector<K> v(n, p.field().zero());
  for (const auto& t : p.terms()) v[index.at(t.mono)] = t.coeff;
  return v;
}

}  // namespace elimat
