#pragma once

// dim A_d(p) as the joint kernel of the six sl(3) root derivations on the
// torus-weight-zero monomials of each multidegree, and the Poincare series of A(3).

#include <algorithm>
#include <array>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "jinv/descriptor.hpp"
#include "jinv/linalg.hpp"
#include "jinv/polynomial.hpp"

namespace jinv {

/// Exponent vector over the 6p coordinates; coordinate 6s + k is entry kCoordIndex[k] of slot s.
using Exponents = std::vector<std::uint8_t>;

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto v : e) h = (h ^ v) * 1099511628211ULL;
    return h;
  }
};

struct MonomialBlock {
  int p = 0;
  MultiDegree multidegree;
  std::vector<Exponents> monomials;  // lexicographically decreasing exponent vectors
  std::size_t size() const { return monomials.size(); }
};

namespace detail {

/// Weight e_i + e_j of coordinate k.
inline std::array<int, 3> coord_weight(int k) {
  std::array<int, 3> w{0, 0, 0};
  ++w[kCoordIndex[k].first];
  ++w[kCoordIndex[k].second];
  return w;
}

struct SlotMonomial {
  std::array<std::uint8_t, 6> exps;
  std::array<int, 3> weight;
};

/// All monomials of degree d in the six coordinates of one slot.
inline std::vector<SlotMonomial> slot_monomials(int d) {
  std::vector<SlotMonomial> out;
  std::array<std::uint8_t, 6> cur{};
  auto rec = [&](auto&& self, int k, int left) -> void {
    if (k == 5) {
      cur[5] = static_cast<std::uint8_t>(left);
      SlotMonomial m{cur, {0, 0, 0}};
      for (int c = 0; c < 6; ++c) {
        const auto w = coord_weight(c);
        for (int a = 0; a < 3; ++a) m.weight[a] += cur[c] * w[a];
      }
      out.push_back(m);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[k] = static_cast<std::uint8_t>(e);
      self(self, k + 1, left - e);
    }
  };
  rec(rec, 0, d);
  return out;
}

}  // namespace detail

/// Weight-zero monomials (total weight (k,k,k)) of the given multidegree.
inline MonomialBlock weight_zero_monomials(int p, const MultiDegree& md) {
  if (p < 1 || static_cast<int>(md.size()) != p) throw std::invalid_argument("weight_zero_monomials: need p entries");
  for (int d : md)
    if (d < 0) throw std::invalid_argument("weight_zero_monomials: negative degree");
  MonomialBlock blk;
  blk.p = p;
  blk.multidegree = md;
  const int total = total_degree(md);
  if ((2 * total) % 3 != 0) return blk;
  const int target = 2 * total / 3;
  std::vector<std::vector<detail::SlotMonomial>> per_slot;
  for (int d : md) per_slot.push_back(detail::slot_monomials(d));
  // remaining capacity: each later slot can add between 0 and 2*d to each weight
  std::vector<int> rest(p + 1, 0);
  for (int s = p - 1; s >= 0; --s) rest[s] = rest[s + 1] + 2 * md[s];
  Exponents cur(6 * p, 0);
  auto rec = [&](auto&& self, int s, std::array<int, 3> w) -> void {
    if (s == p) {
      if (w[0] == target && w[1] == target && w[2] == target) blk.monomials.push_back(cur);
      return;
    }
    for (const auto& m : per_slot[s]) {
      std::array<int, 3> nw{w[0] + m.weight[0], w[1] + m.weight[1], w[2] + m.weight[2]};
      bool ok = true;
      for (int a = 0; a < 3; ++a) ok = ok && nw[a] <= target && nw[a] + rest[s + 1] >= target;
      if (!ok) continue;
      std::copy(m.exps.begin(), m.exps.end(), cur.begin() + 6 * s);
      self(self, s + 1, nw);
    }
  };
  rec(rec, 0, {0, 0, 0});
  std::sort(blk.monomials.begin(), blk.monomials.end(), std::greater<>());
  return blk;
}

/// Root operators E_ij, i != j, 0-based, in a fixed order.
inline constexpr std::array<std::pair<int, int>, 6> kRoots{{{0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 2}, {2, 1}}};

namespace detail {

inline int coord_of(int i, int j) {
  if (i > j) std::swap(i, j);
  for (int k = 0; k < 6; ++k)
    if (kCoordIndex[k] == std::make_pair(i, j)) return k;
  throw std::logic_error("coord_of");
}

/// D(x_kl) = delta_ki x_jl + delta_il x_kj for the root E_ij, as (coordinate, coefficient) terms.
inline std::vector<std::pair<int, int>> root_image(int i, int j, int coord) {
  const auto [k, l] = kCoordIndex[coord];
  std::map<int, int> acc;
  auto add = [&](int a, int b) { ++acc[coord_of(a, b)]; };
  if (k == i) add(j, l);
  if (l == i) add(k, j);
  std::vector<std::pair<int, int>> out(acc.begin(), acc.end());
  return out;
}

}  // namespace detail

/// Sparse matrix of the derivation E_ij from the block to its image monomials (weight e_i - e_j).
struct DerivationMatrix {
  std::pair<int, int> root;
  std::vector<std::vector<std::pair<std::uint32_t, long long>>> columns;  // (image row, coefficient)
  std::size_t rows = 0;
};

inline DerivationMatrix derivation_matrix(const MonomialBlock& blk, std::pair<int, int> root) {
  DerivationMatrix dm;
  dm.root = root;
  std::unordered_map<Exponents, std::uint32_t, ExponentsHash> index;
  std::array<std::vector<std::pair<int, int>>, 6> images;
  for (int c = 0; c < 6; ++c) images[c] = detail::root_image(root.first, root.second, c);
  for (const auto& m : blk.monomials) {
    std::map<std::uint32_t, long long> col;
    for (int v = 0; v < static_cast<int>(m.size()); ++v) {
      if (m[v] == 0) continue;
      const int s = v / 6, c = v % 6;
      for (const auto& [c2, coef] : images[c]) {
        Exponents img = m;
        --img[v];
        ++img[6 * s + c2];
        auto [it, ins] = index.try_emplace(std::move(img), static_cast<std::uint32_t>(index.size()));
        col[it->second] += static_cast<long long>(m[v]) * coef;
      }
    }
    std::vector<std::pair<std::uint32_t, long long>> entries;
    for (const auto& [r, v] : col)
      if (v != 0) entries.emplace_back(r, v);
    dm.columns.push_back(std::move(entries));
  }
  dm.rows = index.size();
  return dm;
}

inline std::vector<DerivationMatrix> derivation_matrices(const MonomialBlock& blk) {
  std::vector<DerivationMatrix> out;
  for (const auto& r : kRoots) out.push_back(derivation_matrix(blk, r));
  return out;
}

/// Joint kernel dimension of the derivations on the block, modulo the given prime.
inline std::size_t block_kernel_dim(const MonomialBlock& blk, const std::vector<DerivationMatrix>& ders,
                                    std::uint64_t prime) {
  if (blk.size() == 0) return 0;
  ModulusScope scope(prime);
  // transpose: rows of the stacked matrix are indexed by columns of the block, i.e. rank of
  // the (monomials x stacked images) matrix equals the rank of the derivation map
  std::vector<SparseRow> rows(blk.size());
  std::uint32_t offset = 0;
  for (const auto& dm : ders) {
    for (std::size_t c = 0; c < dm.columns.size(); ++c)
      for (const auto& [r, v] : dm.columns[c]) rows[c].emplace_back(offset + r, Fp(v));
    offset += static_cast<std::uint32_t>(dm.rows);
  }
  const std::size_t rk = sparse_rank(std::move(rows), offset);
  return blk.size() - rk;
}

inline std::vector<MultiDegree> compositions(int p, int total) {
  std::vector<MultiDegree> out;
  MultiDegree cur(p, 0);
  auto rec = [&](auto&& self, int s, int left) -> void {
    if (s == p - 1) {
      cur[s] = left;
      out.push_back(cur);
      return;
    }
    for (int d = left; d >= 0; --d) {
      cur[s] = d;
      self(self, s + 1, left - d);
    }
  };
  if (p >= 1) rec(rec, 0, total);
  return out;
}

struct DimensionOptions {
  std::vector<std::uint64_t> primes{kPrimeA, kPrimeB};
  std::uint64_t tiebreak_prime = kPrimeC;
  std::optional<int> ceiling;  // overrides the default ceilings
};

/// Default ceilings: total degree 9 for p <= 3, 6 for p = 4 and p = 5 (a single
/// multidegree may go to 9 for p = 5).
inline int default_ceiling(int p, bool per_multidegree) {
  if (p <= 3) return 9;
  if (p == 4) return 6;
  return per_multidegree ? 9 : 6;
}

struct BlockDimension {
  MultiDegree multidegree;
  std::size_t block_size = 0;
  std::size_t dim = 0;
  std::vector<std::size_t> per_prime;
};

struct DimensionResult {
  int p = 0;
  int degree = 0;
  std::vector<BlockDimension> per_multidegree;  // only nonempty blocks
  std::size_t total = 0;
  std::vector<std::uint64_t> primes_used;
  bool primes_disagreed = false;
};

inline BlockDimension block_dimension(int p, const MultiDegree& md, const DimensionOptions& opt,
                                      std::vector<std::uint64_t>& primes_used, bool& disagreed) {
  BlockDimension bd;
  bd.multidegree = md;
  const MonomialBlock blk = weight_zero_monomials(p, md);
  bd.block_size = blk.size();
  if (blk.size() == 0) return bd;
  const auto ders = derivation_matrices(blk);
  for (auto q : opt.primes) bd.per_prime.push_back(block_kernel_dim(blk, ders, q));
  bool agree = std::all_of(bd.per_prime.begin(), bd.per_prime.end(), [&](auto v) { return v == bd.per_prime[0]; });
  if (!agree) {
    disagreed = true;
    bd.per_prime.push_back(block_kernel_dim(blk, ders, opt.tiebreak_prime));
    if (std::find(primes_used.begin(), primes_used.end(), opt.tiebreak_prime) == primes_used.end())
      primes_used.push_back(opt.tiebreak_prime);
    // a bad prime can only lower the rank, so the true dimension is the minimum
  }
  bd.dim = *std::min_element(bd.per_prime.begin(), bd.per_prime.end());
  return bd;
}

/// dim A_d(p) for a total degree (summed over all compositions) or a single multidegree.
inline DimensionResult invariant_dimension(int p, int degree, const std::optional<MultiDegree>& md = std::nullopt,
                                           const DimensionOptions& opt = {}) {
  if (p < 1) throw std::invalid_argument("invariant_dimension: p must be >= 1");
  if (opt.primes.size() < 2) throw std::invalid_argument("invariant_dimension: two primes required");
  if (md && (static_cast<int>(md->size()) != p || total_degree(*md) != degree))
    throw std::invalid_argument("invariant_dimension: multidegree does not match p and degree");
  const int ceiling = opt.ceiling.value_or(default_ceiling(p, md.has_value()));
  if (degree > ceiling)
    throw std::out_of_range("invariant_dimension: degree " + std::to_string(degree) + " exceeds ceiling " +
                            std::to_string(ceiling) + " for p = " + std::to_string(p));
  DimensionResult res;
  res.p = p;
  res.degree = degree;
  res.primes_used = opt.primes;
  const auto mds = md ? std::vector<MultiDegree>{*md} : compositions(p, degree);
  for (const auto& m : mds) {
    auto bd = block_dimension(p, m, opt, res.primes_used, res.primes_disagreed);
    if (bd.block_size == 0) continue;
    res.total += bd.dim;
    res.per_multidegree.push_back(std::move(bd));
  }
  return res;
}

inline nlohmann::json to_json(const DimensionResult& r) {
  nlohmann::json per = nlohmann::json::array();
  for (const auto& b : r.per_multidegree)
    per.push_back({{"multidegree", b.multidegree}, {"block_size", b.block_size}, {"dim", b.dim}, {"per_prime", b.per_prime}});
  nlohmann::json primes = nlohmann::json::array();
  for (auto q : r.primes_used) primes.push_back(std::to_string(q));
  return {{"p", r.p},
          {"degree", r.degree},
          {"per_multidegree", per},
          {"total", r.total},
          {"primes_used", primes},
          {"primes_disagreed", r.primes_disagreed}};
}

// ---------------------------------------------------------------------------
// Generators lie in the kernel

/// Expansion of a descriptor as a polynomial over F_p in the coordinates 6s + k.
inline Polynomial<Fp> expand_descriptor(const InvariantDescriptor& d) {
  std::vector<SymMat3<Polynomial<Fp>>> pt(d.arity());
  for (int s = 0; s < d.arity(); ++s)
    for (int k = 0; k < 6; ++k) pt[s].coord(k) = Polynomial<Fp>::variable(static_cast<VarId>(6 * s + k));
  return evaluate<Polynomial<Fp>>(d, pt);
}

inline Exponents to_exponents(const Monomial& m, int p) {
  Exponents e(6 * p, 0);
  for (VarId v : m) ++e.at(v);
  return e;
}

/// Coordinates of a polynomial on the block; false if some term lies outside it.
inline bool block_vector(const Polynomial<Fp>& poly, const MonomialBlock& blk, std::vector<Fp>& out) {
  std::unordered_map<Exponents, std::size_t, ExponentsHash> index;
  for (std::size_t i = 0; i < blk.size(); ++i) index.emplace(blk.monomials[i], i);
  out.assign(blk.size(), Fp(0));
  for (const auto& [m, c] : poly.terms()) {
    auto it = index.find(to_exponents(m, blk.p));
    if (it == index.end()) return false;
    out[it->second] = c;
  }
  return true;
}

/// Applies every derivation matrix to v; true iff all images vanish.
inline bool in_joint_kernel(const std::vector<DerivationMatrix>& ders, const std::vector<Fp>& v) {
  for (const auto& dm : ders) {
    std::vector<Fp> img(dm.rows, Fp(0));
    for (std::size_t c = 0; c < dm.columns.size(); ++c) {
      if (v[c] == Fp(0)) continue;
      for (const auto& [r, coef] : dm.columns[c]) img[r] += Fp(coef) * v[c];
    }
    for (const auto& x : img)
      if (x != Fp(0)) return false;
  }
  return true;
}

struct KernelMembership {
  std::string name;
  bool in_block = false;  // every term lies in the weight-zero block
  bool nonzero = false;
  bool in_kernel = false;
};

/// For each descriptor: expand, locate in its multidegree block, apply the six derivations.
inline std::vector<KernelMembership> generators_in_kernel(const std::vector<InvariantDescriptor>& descs,
                                                          std::uint64_t prime = kPrimeA) {
  ModulusScope scope(prime);
  std::map<MultiDegree, std::pair<MonomialBlock, std::vector<DerivationMatrix>>> cache;
  std::vector<KernelMembership> out;
  for (const auto& d : descs) {
    KernelMembership km;
    km.name = d.name();
    auto it = cache.find(d.multidegree());
    if (it == cache.end()) {
      auto blk = weight_zero_monomials(d.arity(), d.multidegree());
      auto ders = derivation_matrices(blk);
      it = cache.emplace(d.multidegree(), std::make_pair(std::move(blk), std::move(ders))).first;
    }
    const auto poly = expand_descriptor(d);
    std::vector<Fp> v;
    km.nonzero = !poly.is_zero();
    km.in_block = block_vector(poly, it->second.first, v);
    km.in_kernel = km.in_block && in_joint_kernel(it->second.second, v);
    out.push_back(km);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Poincare series of A(3): N(t) / (1 - t^3)^10 with N in powers of t^3

struct PoincareNumerator {
  std::array<long long, 5> a{};  // a0, a3, a6, a9, a12
  bool palindromic() const { return a[0] == a[4] && a[1] == a[3]; }
};

/// Coefficient of t^{3n} in (1 - t^3)^{-k}: C(n + k - 1, k - 1).
inline long long series_coefficient(int n, int k = 10) {
  if (n < 0) return 0;
  long long c = 1;
  for (int i = 1; i <= k - 1; ++i) c = c * (n + i) / i;
  return c;
}

/// Solves a3 = dim3 - 10, a6 = dim6 - 10 a3 - 55 with a0 = a12 = 1 and a9 = a3.
/// Throws if the implied numerator has a negative coefficient or fails a supplied dim9 check.
inline PoincareNumerator poincare_numerator_A3(long long dim3, long long dim6,
                                               std::optional<long long> dim9 = std::nullopt) {
  PoincareNumerator n;
  n.a[0] = 1;
  n.a[1] = dim3 - series_coefficient(1);
  n.a[2] = dim6 - series_coefficient(1) * n.a[1] - series_coefficient(2);
  n.a[3] = n.a[1];
  n.a[4] = n.a[0];
  for (auto v : n.a)
    if (v < 0) throw std::domain_error("poincare_numerator_A3: negative numerator coefficient (inconsistent inputs)");
  if (dim9) {
    long long pred = 0;
    for (int i = 0; i <= 3; ++i) pred += n.a[i] * series_coefficient(3 - i);
    if (pred != *dim9) throw std::domain_error("poincare_numerator_A3: dim9 disagrees with the palindromic numerator");
  }
  return n;
}

/// Taylor coefficient at t^degree; degrees not divisible by 3 give 0 with a warning.
inline long long predicted_dim(const PoincareNumerator& n, int degree, std::ostream* warn = &std::clog) {
  if (degree < 0) return 0;
  if (degree % 3 != 0) {
    if (warn) *warn << "warning: invariant degrees are multiples of 3; degree " << degree << " has dimension 0\n";
    return 0;
  }
  const int m = degree / 3;
  long long s = 0;
  for (int i = 0; i <= 4 && i <= m; ++i) s += n.a[i] * series_coefficient(m - i);
  return s;
}

/// Rank of A(3) over the parameter subalgebra: the numerator at t = 1.
inline long long verify_rank_free_module(const PoincareNumerator& n) {
  long long r = 0;
  for (auto v : n.a) r += v;
  return r;
}

}  // namespace jinv
