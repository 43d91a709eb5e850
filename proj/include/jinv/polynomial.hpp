#pragma once

// Sparse multivariate polynomials with canonical graded-lex term order.
// A monomial is the sorted multiset of its variable ids.

#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jinv/scalar.hpp"

namespace jinv {

using VarId = std::uint16_t;
using Monomial = std::vector<VarId>;

/// Degree first, then lexicographic on the sorted variable list.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

inline Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) r.push_back(a[i] <= b[j] ? a[i++] : b[j++]);
  while (i < a.size()) r.push_back(a[i++]);
  while (j < b.size()) r.push_back(b[j++]);
  return r;
}

template <class C>
class Polynomial {
 public:
  using Terms = std::map<Monomial, C, GradedLex>;

  Polynomial() = default;
  Polynomial(int c) : Polynomial(C(c)) {}  // NOLINT(google-explicit-constructor)
  explicit Polynomial(const C& c) {
    if (!(c == C(0))) terms_.emplace(Monomial{}, c);
  }

  static Polynomial variable(VarId v) {
    Polynomial p;
    p.terms_.emplace(Monomial{v}, C(1));
    return p;
  }
  static Polynomial term(Monomial m, const C& c) {
    Polynomial p;
    if (!(c == C(0))) p.terms_.emplace(std::move(m), c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Monomial& m, const C& c) {
    if (c == C(0)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == C(0)) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, C(0) - c);
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) {
    Polynomial r;
    for (const auto& [m, c] : a.terms_) r.terms_.emplace_hint(r.terms_.end(), m, C(0) - c);
    return r;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(monomial_product(ma, mb), ca * cb);
    return r;
  }
  /// Division by a nonzero constant polynomial only.
  friend Polynomial operator/(const Polynomial& a, const Polynomial& b) {
    if (b.terms_.size() != 1 || !b.terms_.begin()->first.empty())
      throw std::domain_error("Polynomial: division only by nonzero constants");
    const C inv = C(1) / b.terms_.begin()->second;
    Polynomial r;
    for (const auto& [m, c] : a.terms_) r.terms_.emplace_hint(r.terms_.end(), m, c * inv);
    return r;
  }
  Polynomial& operator/=(const Polynomial& o) { return *this = *this / o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial scaled(const C& s) const {
    Polynomial r;
    if (s == C(0)) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, c * s);
    return r;
  }

  /// Total degree of the leading (largest) term; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.size()); }

  /// Evaluates with values[v] substituted for variable v; coefficients lifted by `lift_coeff`.
  template <class T, class Lift>
  T evaluate(const std::vector<T>& values, Lift&& lift_coeff) const {
    T acc(0);
    for (const auto& [m, c] : terms_) {
      T t = lift_coeff(c);
      for (VarId v : m) t *= values.at(v);
      acc += t;
    }
    return acc;
  }

  /// Applies `map` (monomial -> coefficient-scaled output) termwise and sums.
  template <class Out, class Fn>
  Out map_terms(Fn&& fn) const {
    Out acc(0);
    for (const auto& [m, c] : terms_) acc += fn(m, c);
    return acc;
  }

  void print(std::ostream& os, const std::function<std::string(VarId)>& name) const {
    if (terms_.empty()) {
      os << "0";
      return;
    }
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      os << "(" << it->second << ")";
      for (VarId v : it->first) os << "*" << name(v);
    }
  }

 private:
  Terms terms_;
};

template <class C>
struct ScalarCast<Polynomial<C>> {
  static Polynomial<C> from(const Rational& q) { return Polynomial<C>(lift<C>(q)); }
};

}  // namespace jinv
