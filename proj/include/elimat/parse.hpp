#pragma once

// Recursive-descent polynomial parser.
//
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' unary) | ('/' INT))*
//   unary := '-' unary | '+' unary | power
//   power := atom ('^' INT)?
//   atom  := INT | IDENT | '(' expr ')'

#include <elimat/polynomial.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace elimat {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::invalid_argument(what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

namespace detail {

template <class K>
class Parser {
 public:
  Parser(std::string_view text, const RingPtr& ring) : s_(text), ring_(ring), F_(ring->field()) {}

  Polynomial<K> run() {
    auto p = expr();
    skip();
    if (i_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[i_]) + "'", i_);
    return p;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool accept(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  std::string integer() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) throw ParseError("integer expected", start);
    return std::string(s_.substr(start, i_ - start));
  }

  Polynomial<K> expr() {
    auto acc = term();
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  Polynomial<K> term() {
    auto acc = unary();
    for (;;) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        const std::size_t at = i_;
        const std::string den = integer();
        K d;
        try {
          d = F_.parse("1/" + den);
        } catch (const std::invalid_argument& e) {
          throw ParseError(e.what(), at);
        }
        acc = d * acc;
      } else {
        return acc;
      }
    }
  }

  Polynomial<K> unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial<K> power() {
    auto base = atom();
    if (accept('^')) {
      const std::size_t at = i_;
      const std::string e = integer();
      if (e.size() > 4) throw ParseError("exponent too large", at);
      base = base.pow(static_cast<unsigned>(std::stoul(e)));
    }
    return base;
  }

  Polynomial<K> atom() {
    skip();
    if (i_ >= s_.size()) throw ParseError("unexpected end of input", i_);
    const char c = s_[i_];
    if (c == '(') {
      ++i_;
      auto p = expr();
      if (!accept(')')) throw ParseError("')' expected", i_);
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t at = i_;
      const std::string n = integer();
      try {
        return Polynomial<K>::constant(ring_, F_.parse(n));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), at);
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = i_;
      while (i_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
        ++i_;
      const std::string name(s_.substr(start, i_ - start));
      const auto var = ring_->find(name);
      if (!var) throw ParseError("unknown variable '" + name + "'", start);
      return Polynomial<K>::variable(ring_, *var);
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", i_);
  }

  std::string_view s_;
  std::size_t i_ = 0;
  RingPtr ring_;
  Field<K> F_;
};

}  // namespace detail

template <class K>
Polynomial<K> parse_polynomial(std::string_view text, const RingPtr& ring) {
  return detail::Parser<K>(text, ring).run();
}

}  // namespace elimat
