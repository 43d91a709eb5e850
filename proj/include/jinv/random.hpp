#pragma once

// Seeded generators for exact test points.  Draws use only mt19937_64 output
// (no std distributions) so sequences are identical across standard libraries.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "jinv/jordan.hpp"

namespace jinv {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi].
inline long long draw_int(Rng& rng, long long lo, long long hi) {
  if (hi < lo) throw std::invalid_argument("draw_int: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long long>(rng() % span);
}

/// Rational num/den with |num| <= bound and den in [1, max_den].
inline Rational draw_rational(Rng& rng, long long bound, long long max_den = 1) {
  Rational q(Integer(std::to_string(draw_int(rng, -bound, bound))), Integer(std::to_string(draw_int(rng, 1, max_den))));
  q.canonicalize();
  return q;
}

inline Rational draw_nonzero_rational(Rng& rng, long long bound, long long max_den = 1) {
  for (;;) {
    Rational q = draw_rational(rng, bound, max_den);
    if (q != 0) return q;
  }
}

inline SymMat3<Rational> random_symmat(Rng& rng, long long bound = 9, long long max_den = 1) {
  SymMat3<Rational> x;
  for (int k = 0; k < 6; ++k) x.coord(k) = draw_rational(rng, bound, max_den);
  return x;
}

inline std::vector<SymMat3<Rational>> random_tuple(Rng& rng, int p, long long bound = 9, long long max_den = 1) {
  std::vector<SymMat3<Rational>> v;
  v.reserve(p);
  for (int i = 0; i < p; ++i) v.push_back(random_symmat(rng, bound, max_den));
  return v;
}

template <class T>
SymMat3<T> convert(const SymMat3<Rational>& x) {
  SymMat3<T> r;
  for (int k = 0; k < 6; ++k) r.coord(k) = lift<T>(x.coord(k));
  return r;
}

template <class T>
std::vector<SymMat3<T>> convert(const std::vector<SymMat3<Rational>>& xs) {
  std::vector<SymMat3<T>> r;
  r.reserve(xs.size());
  for (const auto& x : xs) r.push_back(convert<T>(x));
  return r;
}

template <class T>
GroupElement<T> convert(const GroupElement<Rational>& g) {
  Mat3<T> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = lift<T>(g(i, j));
  return GroupElement<T>(m);
}

/// Product of `steps` unipotent elementaries I + c E_ij with c in [-coeff_bound, coeff_bound].
inline GroupElement<Rational> rand_sl3(Rng& rng, int steps, int coeff_bound = 3) {
  if (steps < 1) throw std::invalid_argument("rand_sl3: steps must be >= 1");
  GroupElement<Rational> g;
  for (int s = 0; s < steps; ++s) {
    const int i = static_cast<int>(draw_int(rng, 0, 2));
    int j = static_cast<int>(draw_int(rng, 0, 1));
    if (j >= i) ++j;
    const long long c = draw_int(rng, -coeff_bound, coeff_bound);
    g = GroupElement<Rational>::elementary(i, j, Rational(static_cast<long>(c))) * g;
  }
  return g;
}

inline GroupElement<Rational> rand_sl3(std::uint64_t seed, int steps, int coeff_bound = 3) {
  Rng rng(seed);
  return rand_sl3(rng, steps, coeff_bound);
}

/// Per-purpose seed derivation (splitmix64 of seed ^ salt).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed ^ (salt * 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace jinv
