#pragma once

// Generator families of A(p) = C[pV]^SL(3) for p <= 5, exact invariance and
// multihomogeneity checks, and the binary-cubic pencil map of A(2).

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "jinv/descriptor.hpp"
#include "jinv/random.hpp"

namespace jinv {

namespace detail {

/// Factor relating f(x_i,x_j,x_k) to the coefficient of a_i a_j a_k in det(sum a_s x_s).
inline std::string polarization_note(std::array<int, 3> idx) {
  std::sort(idx.begin(), idx.end());
  int factor = 1;
  if (idx[0] == idx[2]) factor = 6;
  else if (idx[0] == idx[1] || idx[1] == idx[2]) factor = 2;
  return "equals " + std::to_string(factor) + " x the matching coefficient of det(sum a_i x_i)";
}

inline InvariantDescriptor f_triple(TreeBuilder& b, int arity, int i, int j, int k, std::string name = {}) {
  std::string formula = "f(" + slot_name(i) + "," + slot_name(j) + "," + slot_name(k) + ")";
  return InvariantDescriptor(name.empty() ? formula : name, arity, b.f(b.slot(i), b.slot(j), b.slot(k)),
                             polarization_note({i, j, k}));
}

inline InvariantDescriptor det_of(TreeBuilder& b, int arity, int i, std::string name = {}) {
  return InvariantDescriptor(name.empty() ? "det " + slot_name(i) : name, arity, b.det(b.slot(i)),
                             "det " + slot_name(i) + " = f(" + slot_name(i) + "," + slot_name(i) + "," +
                                 slot_name(i) + ")/6");
}

}  // namespace detail

/// det x, det y, f(x,x,y), f(x,y,y).
inline std::vector<InvariantDescriptor> gens_A2(TreeBuilder& b) {
  return {detail::det_of(b, 2, 0), detail::det_of(b, 2, 1), detail::f_triple(b, 2, 0, 0, 1),
          detail::f_triple(b, 2, 0, 1, 1)};
}

/// f1..f10 (the degree-3 system of parameters) followed by f11 = f(n(x), n(y), n(z)).
inline std::vector<InvariantDescriptor> gens_A3(TreeBuilder& b) {
  std::vector<InvariantDescriptor> g;
  g.push_back(detail::det_of(b, 3, 0, "f1"));
  g.push_back(detail::det_of(b, 3, 1, "f2"));
  g.push_back(detail::det_of(b, 3, 2, "f3"));
  g.push_back(detail::f_triple(b, 3, 0, 0, 1, "f4"));
  g.push_back(detail::f_triple(b, 3, 0, 0, 2, "f5"));
  g.push_back(detail::f_triple(b, 3, 1, 1, 0, "f6"));
  g.push_back(detail::f_triple(b, 3, 1, 1, 2, "f7"));
  g.push_back(detail::f_triple(b, 3, 2, 2, 0, "f8"));
  g.push_back(detail::f_triple(b, 3, 2, 2, 1, "f9"));
  g.push_back(detail::f_triple(b, 3, 0, 1, 2, "f10"));
  g.emplace_back("f11", 3, b.f(b.adj(b.slot(0)), b.adj(b.slot(1)), b.adj(b.slot(2))),
                 "f(n(x),n(y),n(z)) = f(x×x,y×y,z×z)/8");
  return g;
}

/// f(n(x) × n(y), (x × z) × (y × t), u), multidegree (3,3,1,1,1).
inline InvariantDescriptor deg9_descriptor(TreeBuilder& b) {
  auto x = b.slot(0), y = b.slot(1), z = b.slot(2), t = b.slot(3), u = b.slot(4);
  return InvariantDescriptor("deg9", 5, b.f(b.cross(b.adj(x), b.adj(y)), b.cross(b.cross(x, z), b.cross(y, t)), u));
}

template <class T>
T deg9(const SymMat3<T>& x, const SymMat3<T>& y, const SymMat3<T>& z, const SymMat3<T>& t, const SymMat3<T>& u) {
  return trilinear_f(cross(adjugate(x), adjugate(y)), cross(cross(x, z), cross(y, t)), u);
}

/// The enumerated family plus the bookkeeping of the deduplication passes.
struct GeneratorFamily {
  int p = 0;
  std::vector<InvariantDescriptor> generators;
  std::size_t candidates = 0;         // canonical representatives under the symmetry of f and ×
  std::size_t evaluation_merges = 0;  // dropped as identical to an earlier generator at every sample point
  std::size_t vanishing = 0;          // dropped as identically zero at every sample point
  std::map<int, std::size_t> count_by_degree;
};

namespace detail {

using Pair = std::array<int, 2>;

inline std::vector<Pair> sorted_pairs(int p) {
  std::vector<Pair> v;
  for (int i = 0; i < p; ++i)
    for (int j = i; j < p; ++j) v.push_back({i, j});
  return v;
}

inline std::string pair_text(const Pair& q) { return "cross(" + slot_name(q[0]) + "," + slot_name(q[1]) + ")"; }

/// Drops candidates whose evaluation vectors at a few random points mod p vanish or repeat.
inline void merge_by_evaluation(std::vector<InvariantDescriptor>& cands, GeneratorFamily& fam, int arity,
                                std::uint64_t seed) {
  constexpr int kPoints = 3;
  ModulusScope scope(kPrimeA);
  Rng rng(seed);
  std::vector<std::vector<SymMat3<Fp>>> points;
  for (int k = 0; k < kPoints; ++k) points.push_back(convert<Fp>(random_tuple(rng, arity, 1000000)));
  std::vector<Evaluator<Fp>> evs;
  for (const auto& pt : points) evs.emplace_back(pt);
  std::map<std::vector<std::uint64_t>, std::size_t> seen;
  std::vector<InvariantDescriptor> kept;
  for (auto& d : cands) {
    std::vector<std::uint64_t> sig;
    bool zero = true;
    for (auto& ev : evs) {
      const Fp v = ev(d);
      zero = zero && v == Fp(0);
      sig.push_back(v.value());
    }
    if (zero) {
      ++fam.vanishing;
      continue;
    }
    sig.push_back(static_cast<std::uint64_t>(d.total_degree()));
    if (!seen.emplace(sig, kept.size()).second) {
      ++fam.evaluation_merges;
      continue;
    }
    kept.push_back(std::move(d));
  }
  cands = std::move(kept);
}

}  // namespace detail

/// Generating families: p <= 3 from the classical lists; p = 4, 5 from the polarized
/// families f(x_i,x_j,x_k), f(x_i×x_j, x_k×x_l, x_m×x_n) and (p = 5)
/// f((x_i×x_j)×(x_k×x_l), (x_m×x_n)×(x_o×x_p), x_q), one representative per symmetry orbit.
inline GeneratorFamily enumerate_generators(int p, TreeBuilder& b, std::uint64_t seed = 0x5eed) {
  if (p < 1 || p > 5) throw std::invalid_argument("enumerate_generators: p must be in [1, 5]");
  GeneratorFamily fam;
  fam.p = p;
  if (p == 1) {
    fam.generators.push_back(detail::det_of(b, 1, 0));
  } else if (p == 2) {
    fam.generators = gens_A2(b);
  } else if (p == 3) {
    fam.generators = gens_A3(b);
  } else {
    using detail::Pair;
    std::vector<InvariantDescriptor> cands;
    for (int i = 0; i < p; ++i)
      for (int j = i; j < p; ++j)
        for (int k = j; k < p; ++k) cands.push_back(detail::f_triple(b, p, i, j, k));
    const auto pairs = detail::sorted_pairs(p);
    const std::size_t np = pairs.size();
    auto cross_of = [&](const Pair& q) { return b.cross(b.slot(q[0]), b.slot(q[1])); };
    for (std::size_t a = 0; a < np; ++a)
      for (std::size_t c = a; c < np; ++c)
        for (std::size_t e = c; e < np; ++e) {
          std::string name = "f(" + detail::pair_text(pairs[a]) + "," + detail::pair_text(pairs[c]) + "," +
                             detail::pair_text(pairs[e]) + ")";
          cands.emplace_back(name, p, b.f(cross_of(pairs[a]), cross_of(pairs[c]), cross_of(pairs[e])));
        }
    if (p == 5) {
      // double crosses: unordered pairs of pairs
      std::vector<std::array<std::size_t, 2>> dbl;
      for (std::size_t a = 0; a < np; ++a)
        for (std::size_t c = a; c < np; ++c) dbl.push_back({a, c});
      auto dbl_node = [&](const std::array<std::size_t, 2>& d) {
        return b.cross(cross_of(pairs[d[0]]), cross_of(pairs[d[1]]));
      };
      auto dbl_text = [&](const std::array<std::size_t, 2>& d) {
        return "cross(" + detail::pair_text(pairs[d[0]]) + "," + detail::pair_text(pairs[d[1]]) + ")";
      };
      for (std::size_t a = 0; a < dbl.size(); ++a)
        for (std::size_t c = a; c < dbl.size(); ++c)
          for (int q = 0; q < p; ++q) {
            std::string name = "f(" + dbl_text(dbl[a]) + "," + dbl_text(dbl[c]) + "," + slot_name(q) + ")";
            cands.emplace_back(name, p, b.f(dbl_node(dbl[a]), dbl_node(dbl[c]), b.slot(q)));
          }
    }
    fam.candidates = cands.size();
    detail::merge_by_evaluation(cands, fam, p, seed);
    fam.generators = std::move(cands);
  }
  if (fam.candidates == 0) fam.candidates = fam.generators.size();
  for (const auto& g : fam.generators) ++fam.count_by_degree[g.total_degree()];
  return fam;
}

// ---------------------------------------------------------------------------
// Exact invariance and multihomogeneity

struct InvarianceOptions {
  int trials = 100;
  std::uint64_t seed = 0;
  int group_steps = 6;       // elementary factors per random group element
  long long entry_bound = 9;  // tuple entries num/den with |num| <= bound
  long long max_den = 2;
  bool identity_only = false;  // use g = I in every trial
};

struct InvarianceReport {
  std::string name;
  std::vector<bool> trial_pass;
  bool pass() const {
    return !trial_pass.empty() && std::all_of(trial_pass.begin(), trial_pass.end(), [](bool b) { return b; });
  }
  std::size_t failures() const { return std::count(trial_pass.begin(), trial_pass.end(), false); }
};

/// Checks d(g.X) == d(X) exactly for every descriptor; all descriptors share the
/// sample points of each trial (per-trial seeds derived from the master seed).
inline std::vector<InvarianceReport> check_invariance(const std::vector<InvariantDescriptor>& descs,
                                                      const InvarianceOptions& opt) {
  if (opt.trials < 1) throw std::invalid_argument("check_invariance: trials must be >= 1");
  int arity = 1;
  for (const auto& d : descs) arity = std::max(arity, d.arity());
  std::vector<InvarianceReport> out(descs.size());
  for (std::size_t i = 0; i < descs.size(); ++i) out[i].name = descs[i].name();
  for (int trial = 0; trial < opt.trials; ++trial) {
    Rng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(trial) + 1));
    const auto pt = random_tuple(rng, arity, opt.entry_bound, opt.max_den);
    const GroupElement<Rational> g =
        opt.identity_only ? GroupElement<Rational>::identity() : rand_sl3(rng, opt.group_steps);
    std::vector<SymMat3<Rational>> moved;
    for (const auto& x : pt) moved.push_back(act(g, x));
    Evaluator<Rational> before(pt), after(moved);
    for (std::size_t i = 0; i < descs.size(); ++i) out[i].trial_pass.push_back(before(descs[i]) == after(descs[i]));
  }
  return out;
}

inline InvarianceReport check_invariance(const InvariantDescriptor& d, int trials, std::uint64_t seed) {
  InvarianceOptions opt;
  opt.trials = trials;
  opt.seed = seed;
  return check_invariance(std::vector<InvariantDescriptor>{d}, opt).front();
}

/// Scaling slot i by lambda_i multiplies d by prod lambda_i^{d_i}; checked exactly
/// at `points` random points with random nonzero rational scalars.
inline std::vector<bool> check_multihomogeneous(const std::vector<InvariantDescriptor>& descs, std::uint64_t seed,
                                                int points = 2) {
  int arity = 1;
  for (const auto& d : descs) arity = std::max(arity, d.arity());
  std::vector<bool> ok(descs.size(), true);
  for (int k = 0; k < points; ++k) {
    Rng rng(derive_seed(seed, 0x40 + static_cast<std::uint64_t>(k)));
    const auto pt = random_tuple(rng, arity, 9, 2);
    std::vector<Rational> lambda;
    auto scaled = pt;
    for (int s = 0; s < arity; ++s) {
      lambda.push_back(draw_nonzero_rational(rng, 5, 3));
      scaled[s] *= lambda.back();
    }
    Evaluator<Rational> plain(pt), sc(scaled);
    for (std::size_t i = 0; i < descs.size(); ++i) {
      Rational factor = 1;
      const auto& md = descs[i].multidegree();
      for (int s = 0; s < static_cast<int>(md.size()); ++s)
        for (int e = 0; e < md[s]; ++e) factor *= lambda[s];
      if (!(sc(descs[i]) == factor * plain(descs[i]))) ok[i] = false;
    }
  }
  return ok;
}

inline bool check_multihomogeneous(const InvariantDescriptor& d, std::uint64_t seed) {
  return check_multihomogeneous(std::vector<InvariantDescriptor>{d}, seed).front();
}

// ---------------------------------------------------------------------------
// The pencil map (x, y) -> det(a x + b y) of A(2)

/// Coefficients (c30, c21, c12, c03) of det(a x + b y) in a^3, a^2 b, a b^2, b^3.
template <class T>
std::array<T, 4> binary_cubic_of_pencil(const SymMat3<T>& x, const SymMat3<T>& y) {
  const T half = T(1) / T(2);
  return {det3(x), half * trilinear_f(x, x, y), half * trilinear_f(x, y, y), det3(y)};
}

template <class T>
struct PencilSection {
  SymMat3<T> x, y;
  T scale;  // det(a x + b y) = scale * g(a, b)
};

/// Section of the pencil map on factored cubics g = lambda b^{3-N} prod (a - r_i b):
/// x = e_1 + ... + e_N, y = -sum r_i e_i + e_{N+1} + ... + e_3, so det(ax+by) = g / lambda.
template <class T>
PencilSection<T> pencil_from_factored_cubic(const T& lambda, const std::vector<T>& roots) {
  if (lambda == T(0)) throw std::invalid_argument("pencil_from_factored_cubic: lambda must be nonzero");
  if (roots.size() > 3) throw std::invalid_argument("pencil_from_factored_cubic: at most 3 roots");
  PencilSection<T> s;
  for (std::size_t i = 0; i < 3; ++i) {
    if (i < roots.size()) {
      s.x.at(i, i) = T(1);
      s.y.at(i, i) = T(0) - roots[i];
    } else {
      s.y.at(i, i) = T(1);
    }
  }
  s.scale = T(1) / lambda;
  return s;
}

/// Coefficients of lambda b^{3-N} prod (a - r_i b), same order as binary_cubic_of_pencil.
template <class T>
std::array<T, 4> expand_factored_cubic(const T& lambda, const std::vector<T>& roots) {
  // polynomial in (a, b) stored by power of b: c[k] multiplies a^{3-k} b^k
  std::vector<T> c{T(1)};
  for (const T& r : roots) {
    std::vector<T> n(c.size() + 1, T(0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      n[k] += c[k];
      n[k + 1] -= r * c[k];
    }
    c = std::move(n);
  }
  std::array<T, 4> out{T(0), T(0), T(0), T(0)};
  const std::size_t shift = 3 - roots.size();
  for (std::size_t k = 0; k < c.size(); ++k) out[k + shift] = lambda * c[k];
  return out;
}

/// Krull dimension of A(p), p >= 2.
inline int krull_dim(int p) {
  if (p < 2) throw std::invalid_argument("krull_dim: requires p >= 2");
  return 6 * p - 8;
}

}  // namespace jinv
