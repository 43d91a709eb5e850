#pragma once

// Exact scalar carriers: GMP rationals and residues modulo a word-sized prime.

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace jinv {

using Rational = mpq_class;
using Integer = mpz_class;

/// Default primes, all just below 2^61.  kPrimeB is 1 mod 4 (has a square root of -1).
inline constexpr std::uint64_t kPrimeA = 2305843009213693951ULL;  // 2^61 - 1
inline constexpr std::uint64_t kPrimeB = 2305843009213693921ULL;
inline constexpr std::uint64_t kPrimeC = 2305843009213693907ULL;

namespace detail {
inline thread_local std::uint64_t current_modulus = kPrimeA;
}

/// Residue modulo the prime of the enclosing ModulusScope (kPrimeA by default).
/// Values are always reduced to [0, p).
class Fp {
 public:
  Fp() = default;
  Fp(long long v) {  // NOLINT(google-explicit-constructor)
    const auto p = static_cast<long long>(modulus());
    long long r = v % p;
    if (r < 0) r += p;
    v_ = static_cast<std::uint64_t>(r);
  }
  Fp(int v) : Fp(static_cast<long long>(v)) {}  // NOLINT(google-explicit-constructor)

  static Fp from_raw(std::uint64_t r) {
    Fp x;
    x.v_ = r % modulus();
    return x;
  }

  static std::uint64_t modulus() { return detail::current_modulus; }
  std::uint64_t value() const { return v_; }

  Fp& operator+=(Fp o) {
    const std::uint64_t p = modulus();
    v_ += o.v_;
    if (v_ >= p) v_ -= p;
    return *this;
  }
  Fp& operator-=(Fp o) {
    const std::uint64_t p = modulus();
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p - o.v_;
    return *this;
  }
  Fp& operator*=(Fp o) {
    v_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(v_) * o.v_) % modulus());
    return *this;
  }
  Fp& operator/=(Fp o) { return *this *= o.inverse(); }

  friend Fp operator+(Fp a, Fp b) { return a += b; }
  friend Fp operator-(Fp a, Fp b) { return a -= b; }
  friend Fp operator*(Fp a, Fp b) { return a *= b; }
  friend Fp operator/(Fp a, Fp b) { return a /= b; }
  Fp operator-() const { return Fp{} - *this; }
  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }
  friend bool operator!=(Fp a, Fp b) { return a.v_ != b.v_; }

  Fp pow(std::uint64_t e) const {
    Fp base = *this, r = Fp::from_raw(1);
    while (e) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }

  Fp inverse() const {
    if (v_ == 0) throw std::domain_error("Fp: inverse of zero");
    return pow(modulus() - 2);
  }

 private:
  std::uint64_t v_ = 0;
};

/// Sets the modulus used by Fp on this thread for the lifetime of the scope.
class ModulusScope {
 public:
  explicit ModulusScope(std::uint64_t p) : saved_(detail::current_modulus) {
    if (p <= 3) throw std::invalid_argument("modular mode requires a prime p > 3 (2 and 6 must be invertible)");
    if (p >= (1ULL << 63)) throw std::invalid_argument("modulus must fit in 63 bits");
    detail::current_modulus = p;
  }
  ~ModulusScope() { detail::current_modulus = saved_; }
  ModulusScope(const ModulusScope&) = delete;
  ModulusScope& operator=(const ModulusScope&) = delete;

 private:
  std::uint64_t saved_;
};

inline std::ostream& operator<<(std::ostream& os, Fp x) {
  return os << x.value();
}

/// Canonical rational from "num/den" or a plain integer.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s.front() == '+') s.erase(0, 1);
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw std::invalid_argument("bad rational literal: " + s);
    return Rational(Integer(s));
  }
  const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw std::invalid_argument("bad rational literal: " + s);
  Integer d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: " + s);
  Rational q(Integer(num), d);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(Fp x) { return std::to_string(x.value()); }

/// Image of a rational in the current prime field.
inline Fp to_fp(const Rational& q) {
  const Integer p(std::to_string(Fp::modulus()));
  Integer n = q.get_num() % p, d = q.get_den() % p;
  if (n < 0) n += p;
  if (d == 0) throw std::domain_error("denominator divisible by the modulus");
  return Fp::from_raw(std::stoull(n.get_str())) / Fp::from_raw(std::stoull(d.get_str()));
}

/// Conversion used by generic code that lifts rational constants into T.
template <class T>
struct ScalarCast {
  static T from(const Rational& q) { return T(q); }
};
template <>
struct ScalarCast<Fp> {
  static Fp from(const Rational& q) { return to_fp(q); }
};

/// Lifts an exact rational into T (rationals, residues, polynomials over either).
template <class T>
T lift(const Rational& q) {
  return ScalarCast<T>::from(q);
}

/// Rational reconstruction of a residue modulo m (Wang's bound); returns false if none.
inline bool rational_reconstruct(const Integer& a, const Integer& m, Rational& out) {
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(m / 2).get_mpz_t());
  Integer r0 = m, r1 = a % m, t0 = 0, t1 = 1;
  if (r1 < 0) r1 += m;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    Integer t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return false;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return false;
  out = Rational(r1, t1);
  out.canonicalize();
  return true;
}

}  // namespace jinv
