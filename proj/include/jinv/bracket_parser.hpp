#pragma once

// Text form of bracket polynomials.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' INT)?
//   atom   := INT | '(' expr ')' | '[' vec ',' vec ',' vec ']' | 'dot' '(' vec ',' vec ')'
//   vec    := letter | 'cross' '(' vec ',' vec ')'
//   letter := NAME '@' SLOT        e.g. a@x, b@x, a1@y, a''@z
//
// Distinct names on the same slot become distinct instances, numbered in order of
// first appearance.

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "jinv/umbral.hpp"

namespace jinv {

class BracketParseError : public std::invalid_argument {
 public:
  BracketParseError(const std::string& msg, std::size_t pos)
      : std::invalid_argument(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

struct ParsedBracket {
  BracketPolynomial poly;
  std::map<std::string, UmbralLetter> letters;  // "a@x" -> (slot, instance)
};

namespace detail {

class BracketParser {
 public:
  explicit BracketParser(std::string s) : s_(std::move(s)) {}

  ParsedBracket run() {
    ParsedBracket out;
    out.poly = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    out.letters = letters_;
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw BracketParseError(msg, i_); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool keyword(const std::string& kw) {
    skip();
    if (s_.compare(i_, kw.size(), kw) != 0) return false;
    const std::size_t j = i_ + kw.size();
    if (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '@')) return false;
    i_ = j;
    return true;
  }
  long long integer() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected integer");
    try {
      return std::stoll(s_.substr(start, i_ - start));
    } catch (const std::out_of_range&) {
      i_ = start;
      fail("integer too large");
    }
  }

  BracketPolynomial expr() {
    BracketPolynomial acc = term();
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }
  BracketPolynomial term() {
    BracketPolynomial acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }
  BracketPolynomial unary() {
    if (accept('-')) return -unary();
    return power();
  }
  BracketPolynomial power() {
    BracketPolynomial base = atom();
    if (!accept('^')) return base;
    const long long n = integer();
    if (n > 64) fail("exponent too large");
    BracketPolynomial r(Rational(1));
    for (long long k = 0; k < n; ++k) r = r * base;
    return r;
  }
  BracketPolynomial atom() {
    skip();
    if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) return BracketPolynomial(Rational(std::to_string(integer())));
    if (accept('(')) {
      auto e = expr();
      expect(')');
      return e;
    }
    if (accept('[')) {
      const auto u = vec();
      expect(',');
      const auto v = vec();
      expect(',');
      const auto w = vec();
      expect(']');
      return bracket(u, v, w);
    }
    if (keyword("dot")) {
      expect('(');
      const auto u = vec();
      expect(',');
      const auto v = vec();
      expect(')');
      return dot(u, v);
    }
    fail("expected a scalar expression");
  }
  SymbolicVector vec() {
    if (keyword("cross")) {
      expect('(');
      const auto u = vec();
      expect(',');
      const auto v = vec();
      expect(')');
      return cross(u, v);
    }
    return letter();
  }
  UmbralLetter letter() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '\'' || s_[i_] == '_'))
      ++i_;
    if (start == i_ || !std::isalpha(static_cast<unsigned char>(s_[start]))) {
      i_ = start;
      fail("expected a letter like a@x");
    }
    const std::string name = s_.substr(start, i_ - start);
    if (i_ >= s_.size() || s_[i_] != '@') fail("letter '" + name + "' needs a slot, as in " + name + "@x");
    ++i_;
    const std::size_t slot_start = i_;
    while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
    const std::string sn = s_.substr(slot_start, i_ - slot_start);
    int slot = -1;
    try {
      slot = slot_from_name(sn);
    } catch (const std::exception&) {
    }
    if (slot < 0) {
      i_ = slot_start;
      fail("unknown slot '" + sn + "'");
    }
    const std::string key = name + "@" + slot_name(slot);
    auto it = letters_.find(key);
    if (it != letters_.end()) return it->second;
    const int inst = next_instance_[slot]++;
    if (inst >= kMaxInstances) fail("too many letters on slot " + sn);
    return letters_[key] = UmbralLetter{slot, inst};
  }

  std::string s_;
  std::size_t i_ = 0;
  std::map<std::string, UmbralLetter> letters_;
  std::map<int, int> next_instance_;
};

}  // namespace detail

inline ParsedBracket parse_bracket(const std::string& text) { return detail::BracketParser(text).run(); }

}  // namespace jinv
