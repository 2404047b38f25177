#pragma once

// Exact coefficient fields: the rationals (GMP-backed) and prime fields F_p.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace elimat {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi]. Plain modulo keeps draws identical across
/// standard library implementations.
inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

struct FieldSpec {
  enum class Kind { Rationals, PrimeField };
  Kind kind = Kind::Rationals;
  std::uint32_t prime = 0;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime_field(std::uint64_t p) {
    if (!is_prime(p) || p >= (1ULL << 31))
      throw std::invalid_argument("field modulus must be a prime below 2^31, got " +
                                  std::to_string(p));
    return {Kind::PrimeField, static_cast<std::uint32_t>(p)};
  }
  bool is_rational() const { return kind == Kind::Rationals; }
  std::string to_string() const {
    return is_rational() ? std::string("Q") : "F" + std::to_string(prime);
  }
  bool operator==(const FieldSpec&) const = default;
};

class Rational {
 public:
  Rational() = default;
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
  explicit Rational(long n) : v_(n) {}

  const mpq_class& value() const { return v_; }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }
  std::string to_string() const { return v_.get_str(); }
  double to_double() const { return v_.get_d(); }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    return Rational(mpq_class(a.v_ / b.v_));
  }
  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  Rational inverse() const { return Rational(1) / *this; }

 private:
  mpq_class v_;
};

/// Element of F_p. The modulus travels with the value; a default-constructed
/// element is zero with modulus 0 and adopts the modulus of the other operand.
class ModP {
 public:
  ModP() = default;
  ModP(std::uint32_t v, std::uint32_t p) : v_(v), p_(p) {}

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  std::string to_string() const { return std::to_string(v_); }

  friend ModP operator+(const ModP& a, const ModP& b) {
    const std::uint32_t p = a.p_ > b.p_ ? a.p_ : b.p_;
    std::uint32_t s = a.v_ + b.v_;
    if (p != 0 && s >= p) s -= p;
    return {s, p};
  }
  friend ModP operator-(const ModP& a, const ModP& b) {
    const std::uint32_t p = a.p_ > b.p_ ? a.p_ : b.p_;
    return {a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + p - b.v_, p};
  }
  friend ModP operator*(const ModP& a, const ModP& b) {
    const std::uint32_t p = a.p_ > b.p_ ? a.p_ : b.p_;
    if (p == 0) return {0, 0};
    return {static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.v_) * b.v_ % p), p};
  }
  ModP inverse() const {
    if (v_ == 0) throw std::domain_error("division by zero");
    // extended Euclid on (v, p)
    std::int64_t t = 0, new_t = 1, r = p_, new_r = v_;
    while (new_r != 0) {
      const std::int64_t q = r / new_r;
      t -= q * new_t;
      std::swap(t, new_t);
      r -= q * new_r;
      std::swap(r, new_r);
    }
    if (t < 0) t += p_;
    return {static_cast<std::uint32_t>(t), p_};
  }
  friend ModP operator/(const ModP& a, const ModP& b) { return a * b.inverse(); }
  ModP operator-() const { return {v_ == 0 ? 0 : p_ - v_, p_}; }
  ModP& operator+=(const ModP& o) { return *this = *this + o; }
  ModP& operator-=(const ModP& o) { return *this = *this - o; }
  ModP& operator*=(const ModP& o) { return *this = *this * o; }
  friend bool operator==(const ModP& a, const ModP& b) { return a.v_ == b.v_; }

 private:
  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

template <class K>
inline constexpr bool is_rational_field = std::is_same_v<K, Rational>;

template <class K>
class Field;

template <>
class Field<Rational> {
 public:
  explicit Field(const FieldSpec& = FieldSpec::rationals()) {}
  Rational zero() const { return {}; }
  Rational one() const { return Rational(1); }
  Rational from_int(std::int64_t n) const { return Rational(static_cast<long>(n)); }
  Rational from_mpz(const mpz_class& n) const { return Rational(mpq_class(n)); }
  /// Accepts "12", "-3", "3/7".
  Rational parse(std::string_view text) const {
    std::string s(text);
    const auto slash = s.find('/');
    try {
      mpz_class num(strip(s.substr(0, slash)), 10);
      mpz_class den(1);
      if (slash != std::string::npos) den = mpz_class(strip(s.substr(slash + 1)), 10);
      if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
      return Rational(mpq_class(num, den));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("malformed field element '" + s + "'");
    }
  }
  /// Small random integers, occasionally with a small denominator.
  Rational random(Rng& rng, int bound = 9) const {
    const auto num = uniform_int(rng, -bound, bound);
    const auto den = uniform_int(rng, 0, 3) == 0 ? uniform_int(rng, 1, 5) : 1;
    return Rational(mpq_class(num, den));
  }
  Rational random_nonzero(Rng& rng, int bound = 9) const {
    for (;;) {
      auto v = random(rng, bound);
      if (!v.is_zero()) return v;
    }
  }
  std::uint64_t characteristic() const { return 0; }
  FieldSpec spec() const { return FieldSpec::rationals(); }

 private:
  static std::string strip(std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty");
    s = s.substr(b, e - b + 1);
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    return s;
  }
};

template <>
class Field<ModP> {
 public:
  explicit Field(const FieldSpec& spec) : p_(spec.prime) {
    if (spec.is_rational()) throw std::invalid_argument("prime field expected");
  }
  ModP zero() const { return {0, p_}; }
  ModP one() const { return {1, p_}; }
  ModP from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return {static_cast<std::uint32_t>(r), p_};
  }
  ModP from_mpz(const mpz_class& n) const {
    mpz_class r = n % p_;
    if (r < 0) r += p_;
    return {static_cast<std::uint32_t>(r.get_ui()), p_};
  }
  ModP parse(std::string_view text) const {
    const Field<Rational> q;
    const Rational v = q.parse(text);
    const ModP den = from_mpz(v.value().get_den());
    if (den.is_zero())
      throw std::invalid_argument("coefficient '" + std::string(text) + "' is not in F" +
                                  std::to_string(p_));
    return from_mpz(v.value().get_num()) / den;
  }
  ModP random(Rng& rng, int = 0) const {
    return {static_cast<std::uint32_t>(rng() % p_), p_};
  }
  ModP random_nonzero(Rng& rng, int = 0) const {
    return {static_cast<std::uint32_t>(1 + rng() % (p_ - 1)), p_};
  }
  std::uint64_t characteristic() const { return p_; }
  FieldSpec spec() const { return FieldSpec::prime_field(p_); }
  std::uint32_t modulus() const { return p_; }

 private:
  std::uint32_t p_;
};

}  // namespace elimat
