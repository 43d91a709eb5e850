#pragma once

// The cubic relation f11^3 + Q1 f11^2 + Q2 f11 + Q3 = 0 over C[f1..f10], found by exact
// linear algebra on evaluations, and the identities on triples (lambda e, diag(y), z).

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "jinv/generators.hpp"
#include "jinv/linalg.hpp"

namespace jinv {

// ---------------------------------------------------------------------------
// Triples (lambda e, y1 e1 + y2 e2 + y3 e3, z)

struct NormalFormTriple {
  Rational lambda;
  std::array<Rational, 3> y;
  SymMat3<Rational> z;

  NormalFormTriple(Rational l, std::array<Rational, 3> ys, SymMat3<Rational> zz)
      : lambda(std::move(l)), y(std::move(ys)), z(std::move(zz)) {
    if (lambda == 0) throw std::invalid_argument("NormalFormTriple: lambda must be nonzero");
    if (y[0] == y[1] || y[0] == y[2] || y[1] == y[2]) throw std::invalid_argument("NormalFormTriple: Δ = 0");
  }

  std::vector<SymMat3<Rational>> tuple() const {
    return {lambda * SymMat3<Rational>::identity(), SymMat3<Rational>::diag(y[0], y[1], y[2]), z};
  }
};

/// Integer entries in [-9, 9]; lambda and the y_i resampled until valid.
inline NormalFormTriple random_normal_form_triple(Rng& rng, long long bound = 9) {
  Rational l = draw_nonzero_rational(rng, bound);
  std::array<Rational, 3> y;
  do {
    for (auto& v : y) v = draw_rational(rng, bound);
  } while (y[0] == y[1] || y[0] == y[2] || y[1] == y[2]);
  return NormalFormTriple(l, y, random_symmat(rng, bound));
}

struct AppendixQuantities {
  std::array<Rational, 3> Z;  // diagonal entries of n(z)
  Rational pi, Pi, V, Delta;
  std::array<Rational, 3> sigma;  // elementary symmetric functions of y

  explicit AppendixQuantities(const NormalFormTriple& t) {
    const auto& z = t.z;
    Z = {z.d2 * z.d3 - z.o23 * z.o23, z.d1 * z.d3 - z.o13 * z.o13, z.d1 * z.d2 - z.o12 * z.o12};
    pi = z.d1 * z.d2 * z.d3;
    Pi = Z[0] * Z[1] * Z[2];
    V = z.d1 * Z[0] + z.d2 * Z[1] + z.d3 * Z[2];
    const auto& y = t.y;
    Delta = (y[0] - y[2]) * (y[1] - y[2]) * (y[1] - y[0]);
    sigma = {y[0] + y[1] + y[2], y[0] * y[1] + y[0] * y[2] + y[1] * y[2], y[0] * y[1] * y[2]};
  }
};

/// Values f1..f11 at a triple (index 0 is f1).
inline std::array<Rational, 11> f_values(const std::vector<SymMat3<Rational>>& t) {
  const auto &x = t.at(0), &y = t.at(1), &z = t.at(2);
  return {det3(x),
          det3(y),
          det3(z),
          trilinear_f(x, x, y),
          trilinear_f(x, x, z),
          trilinear_f(y, y, x),
          trilinear_f(y, y, z),
          trilinear_f(z, z, x),
          trilinear_f(z, z, y),
          trilinear_f(x, y, z),
          trilinear_f(adjugate(x), adjugate(y), adjugate(z))};
}

/// 2 z12 z23 z13 = f3 + 2 pi - V and
/// 4 Pi = -V^2 + 4 sum_{i<j} z_i z_j Z_i Z_j + 2 V f3 - 4 pi f3 - f3^2.
inline bool verify_star_identities(const NormalFormTriple& t) {
  const AppendixQuantities q(t);
  const auto& z = t.z;
  const Rational f3 = det3(z);
  const bool star = 2 * z.o12 * z.o23 * z.o13 == f3 + 2 * q.pi - q.V;
  const std::array<Rational, 3> zd{z.d1, z.d2, z.d3};
  Rational s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) s += zd[i] * zd[j] * q.Z[i] * q.Z[j];
  const bool star2 = 4 * q.Pi == -q.V * q.V + 4 * s + 2 * q.V * f3 - 4 * q.pi * f3 - f3 * f3;
  return star && star2;
}

struct CramerReport {
  bool z_system = false;        // (z1, z2, z3) solves the first system
  bool Z_system = false;        // (Z1, Z2, Z3) solves the second
  bool z_closed_form = false;   // z_i = (y_k - y_j) P(y_i) / Δ
  bool Z_closed_form = false;   // Z_i = (y_k - y_j) Q(y_i, y_j y_k) / Δ
  bool products = false;        // pi = -P1 P2 P3 / Δ^2 and Pi = -Q1 Q2 Q3 / Δ^2
  bool sigmas = false;          // sigma_1 = f4 / (2 lambda^2), sigma_2 = f6 / (2 lambda), sigma_3 = f2
  int z_det_sign = 0;           // det(system) / Δ
  int Z_det_sign = 0;
  bool all() const { return z_system && Z_system && z_closed_form && Z_closed_form && products && sigmas; }
};

inline Rational det3x3(const std::array<std::array<Rational, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline CramerReport verify_cramer_systems(const NormalFormTriple& t) {
  CramerReport r;
  const AppendixQuantities q(t);
  const auto f = f_values(t.tuple());
  const auto& y = t.y;
  const Rational& l = t.lambda;
  const std::array<Rational, 3> zd{t.z.d1, t.z.d2, t.z.d3};
  const Rational f4 = f[3], f5 = f[4], f6 = f[5], f7 = f[6], f8 = f[7], f9 = f[8], f10 = f[9], f11 = f[10];

  std::array<std::array<Rational, 3>, 3> A{{{1, 1, 1},
                                            {y[1] * y[2], y[0] * y[2], y[0] * y[1]},
                                            {y[1] + y[2], y[0] + y[2], y[0] + y[1]}}};
  std::array<Rational, 3> rhs{f5 / (2 * l * l), f7 / 2, f10 / l};
  std::array<std::array<Rational, 3>, 3> B{{{1, 1, 1},
                                            {y[0], y[1], y[2]},
                                            {(y[1] + y[2]) * y[0], (y[0] + y[2]) * y[1], (y[0] + y[1]) * y[2]}}};
  std::array<Rational, 3> rhsB{f8 / (2 * l), f9 / 2, f11 / (l * l)};
  r.z_system = r.Z_system = true;
  for (int i = 0; i < 3; ++i) {
    r.z_system = r.z_system && A[i][0] * zd[0] + A[i][1] * zd[1] + A[i][2] * zd[2] == rhs[i];
    r.Z_system = r.Z_system && B[i][0] * q.Z[0] + B[i][1] * q.Z[1] + B[i][2] * q.Z[2] == rhsB[i];
  }
  auto sign_vs = [&](const Rational& d) {
    if (d == q.Delta) return 1;
    if (d == -q.Delta) return -1;
    return 0;
  };
  r.z_det_sign = sign_vs(det3x3(A));
  r.Z_det_sign = sign_vs(det3x3(B));

  auto P = [&](const Rational& v) -> Rational { return f5 / (2 * l * l) * v * v - f10 / l * v + f7 / 2; };
  auto Q = [&](const Rational& X, const Rational& Y) -> Rational { return f8 / (2 * l) * Y + f9 / 2 * X - f11 / (l * l); };
  const std::array<Rational, 3> lead{y[2] - y[1], y[0] - y[2], y[1] - y[0]};
  const std::array<Rational, 3> Ps{P(y[0]), P(y[1]), P(y[2])};
  const std::array<Rational, 3> Qs{Q(y[0], y[1] * y[2]), Q(y[1], y[0] * y[2]), Q(y[2], y[0] * y[1])};
  r.z_closed_form = r.Z_closed_form = true;
  for (int i = 0; i < 3; ++i) {
    r.z_closed_form = r.z_closed_form && zd[i] == lead[i] * Ps[i] / q.Delta;
    r.Z_closed_form = r.Z_closed_form && q.Z[i] == lead[i] * Qs[i] / q.Delta;
  }
  const Rational D2 = q.Delta * q.Delta;
  r.products = q.pi == -Ps[0] * Ps[1] * Ps[2] / D2 && q.Pi == -Qs[0] * Qs[1] * Qs[2] / D2;
  r.sigmas = q.sigma[0] == f4 / (2 * l * l) && q.sigma[1] == f6 / (2 * l) && q.sigma[2] == f[1];
  return r;
}

// ---------------------------------------------------------------------------
// Monomials in f1..f11

/// Exponent vector over f1..f11 (index 0 is f1).
using FMonomial = std::array<int, 11>;

/// (x,y,z)-multidegrees of f1..f11.
inline const std::array<std::array<int, 3>, 11>& f_multidegrees() {
  static const std::array<std::array<int, 3>, 11> md{{{3, 0, 0},
                                                      {0, 3, 0},
                                                      {0, 0, 3},
                                                      {2, 1, 0},
                                                      {2, 0, 1},
                                                      {1, 2, 0},
                                                      {0, 2, 1},
                                                      {1, 0, 2},
                                                      {0, 1, 2},
                                                      {1, 1, 1},
                                                      {2, 2, 2}}};
  return md;
}

inline std::array<int, 3> multidegree_of(const FMonomial& m) {
  std::array<int, 3> d{0, 0, 0};
  for (int i = 0; i < 11; ++i)
    for (int a = 0; a < 3; ++a) d[a] += m[i] * f_multidegrees()[i][a];
  return d;
}

/// All monomials in f1..f10 of the given (x,y,z)-multidegree, in decreasing exponent order.
inline std::vector<FMonomial> f_monomials_of_multidegree(std::array<int, 3> target) {
  std::vector<FMonomial> out;
  FMonomial cur{};
  const auto& md = f_multidegrees();
  auto rec = [&](auto&& self, int i, std::array<int, 3> left) -> void {
    if (i == 10) {
      if (left == std::array<int, 3>{0, 0, 0}) out.push_back(cur);
      return;
    }
    for (int e = 0;; ++e) {
      std::array<int, 3> nl{left[0] - e * md[i][0], left[1] - e * md[i][1], left[2] - e * md[i][2]};
      if (nl[0] < 0 || nl[1] < 0 || nl[2] < 0) break;
      cur[i] = e;
      self(self, i + 1, nl);
    }
    cur[i] = 0;
  };
  rec(rec, 0, target);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

/// {f4 f9, f5 f7, f6 f8, f10^2}: the degree-2 monomials of multidegree (2,2,2).
inline std::vector<FMonomial> q1_ansatz() { return f_monomials_of_multidegree({2, 2, 2}); }

inline std::string f_monomial_text(const FMonomial& m) {
  std::string s;
  for (int i = 0; i < 11; ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += "f" + std::to_string(i + 1);
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

template <class T>
T eval_f_monomial(const FMonomial& m, const std::array<T, 11>& f) {
  T v(1);
  for (int i = 0; i < 11; ++i)
    for (int e = 0; e < m[i]; ++e) v *= f[i];
  return v;
}

// ---------------------------------------------------------------------------
// The relation

struct CubicRelation {
  /// Q[k] for k = 1, 2, 3 at index k - 1: (monomial in f1..f10, coefficient) pairs.
  std::array<std::vector<std::pair<FMonomial, Rational>>, 3> Q;

  /// All terms of f11^3 + Q1 f11^2 + Q2 f11 + Q3 as monomials in f1..f11.
  std::map<FMonomial, Rational> terms() const {
    std::map<FMonomial, Rational> t;
    FMonomial top{};
    top[10] = 3;
    t[top] = 1;
    for (int k = 0; k < 3; ++k)
      for (const auto& [m, c] : Q[k]) {
        FMonomial mm = m;
        mm[10] = 2 - k;
        t[mm] = c;
      }
    return t;
  }

  Rational evaluate(const std::array<Rational, 11>& f) const {
    Rational s = 0;
    for (const auto& [m, c] : terms()) s += c * eval_f_monomial(m, f);
    return s;
  }
};

/// Permutation of f1..f11 induced by permuting the slots (x, y, z) -> (s[0], s[1], s[2]).
inline std::array<int, 11> f_index_permutation(const std::array<int, 3>& s) {
  // f_i as the multiset of slots of its polarization (f11 is fixed)
  static const std::array<std::array<int, 3>, 10> slots{
      {{0, 0, 0}, {1, 1, 1}, {2, 2, 2}, {0, 0, 1}, {0, 0, 2}, {1, 1, 0}, {1, 1, 2}, {2, 2, 0}, {2, 2, 1}, {0, 1, 2}}};
  std::array<int, 11> perm{};
  for (int i = 0; i < 10; ++i) {
    std::array<int, 3> img{s[slots[i][0]], s[slots[i][1]], s[slots[i][2]]};
    std::sort(img.begin(), img.end());
    for (int j = 0; j < 10; ++j) {
      auto sj = slots[j];
      std::sort(sj.begin(), sj.end());
      if (sj == img) perm[i] = j;
    }
  }
  perm[10] = 10;
  return perm;
}

/// True iff the relation is unchanged by all six slot permutations.
inline bool is_s3_symmetric(const CubicRelation& r) {
  const auto t = r.terms();
  std::array<int, 3> s{0, 1, 2};
  do {
    const auto perm = f_index_permutation(s);
    std::map<FMonomial, Rational> moved;
    for (const auto& [m, c] : t) {
      FMonomial mm{};
      for (int i = 0; i < 11; ++i) mm[perm[i]] = m[i];
      moved[mm] = c;
    }
    if (moved != t) return false;
  } while (std::next_permutation(s.begin(), s.end()));
  return true;
}

struct RelationSearch {
  CubicRelation relation;
  std::size_t unknowns = 0;
  std::vector<std::size_t> sample_sizes;   // rows used in each round
  std::vector<std::size_t> kernel_dims;    // kernel dimension in each round
  std::size_t excess_syzygies = 0;         // kernel dimension beyond 1 in the final round
  std::size_t verification_points = 0;
  bool verified = false;
};

namespace detail {

inline std::array<Rational, 11> random_f_values(Rng& rng) { return f_values(random_tuple(rng, 3, 9)); }

}  // namespace detail

/// Evaluation ansatz f11^3, f11^2 Q1, f11 Q2, Q3 over multidegree-constrained monomials;
/// exact kernel by fraction-free elimination; monic normalization; verification at
/// `verify_points` fresh random triples.
inline RelationSearch find_cubic_relation(std::uint64_t seed, int verify_points = 1000) {
  std::vector<FMonomial> cols;
  {
    FMonomial top{};
    top[10] = 3;
    cols.push_back(top);
  }
  for (int k = 1; k <= 3; ++k)
    for (auto m : f_monomials_of_multidegree({2 * k, 2 * k, 2 * k})) {
      m[10] = 3 - k;
      cols.push_back(m);
    }
  RelationSearch res;
  res.unknowns = cols.size();
  Rng rng(derive_seed(seed, 0x7e1));
  IntMatrix rows;
  auto add_rows = [&](std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto f = detail::random_f_values(rng);
      std::vector<Integer> row;
      row.reserve(cols.size());
      for (const auto& m : cols) row.push_back(eval_f_monomial(m, f).get_num());
      rows.push_back(std::move(row));
    }
  };
  add_rows(cols.size() + (cols.size() + 3) / 4);
  std::vector<std::vector<Rational>> kernel;
  for (int round = 0;; ++round) {
    kernel = integer_kernel(rows, cols.size());
    res.sample_sizes.push_back(rows.size());
    res.kernel_dims.push_back(kernel.size());
    const std::size_t k = res.kernel_dims.size();
    if (kernel.size() <= 1) break;
    if (k >= 2 && res.kernel_dims[k - 1] == res.kernel_dims[k - 2]) break;
    if (round > 20) break;
    add_rows((cols.size() + 3) / 4);
  }
  if (kernel.empty()) throw std::runtime_error("find_cubic_relation: no relation at the declared multidegrees");
  res.excess_syzygies = kernel.size() - 1;
  // monic: pick the kernel vector with nonzero f11^3 coefficient (the basis has one per free column)
  const std::vector<Rational>* v = nullptr;
  for (const auto& k : kernel)
    if (k[0] != 0) v = &k;
  if (!v) throw std::runtime_error("find_cubic_relation: kernel has no component in f11^3");
  const Rational lead = (*v)[0];
  for (std::size_t j = 1; j < cols.size(); ++j) {
    const Rational c = (*v)[j] / lead;
    if (c == 0) continue;
    FMonomial m = cols[j];
    const int k = 3 - m[10];
    m[10] = 0;
    res.relation.Q[k - 1].emplace_back(m, c);
  }
  Rng vrng(derive_seed(seed, 0x7e2));
  res.verified = true;
  for (int i = 0; i < verify_points; ++i) {
    if (res.relation.evaluate(detail::random_f_values(vrng)) != 0) res.verified = false;
    ++res.verification_points;
  }
  return res;
}

inline nlohmann::json to_json(const CubicRelation& r) {
  nlohmann::json j;
  const char* names[] = {"Q1", "Q2", "Q3"};
  for (int k = 0; k < 3; ++k) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : r.Q[k]) {
      std::vector<int> e(m.begin(), m.begin() + 10);
      terms.push_back({{"exponents", e}, {"coefficient", c.get_str()}, {"monomial", f_monomial_text(m)}});
    }
    j[names[k]] = {{"multidegree", {2 * (k + 1), 2 * (k + 1), 2 * (k + 1)}}, {"terms", terms}};
  }
  return j;
}

inline CubicRelation relation_from_json(const nlohmann::json& j) {
  CubicRelation r;
  const char* names[] = {"Q1", "Q2", "Q3"};
  for (int k = 0; k < 3; ++k)
    for (const auto& t : j.at(names[k]).at("terms")) {
      const auto e = t.at("exponents").get<std::vector<int>>();
      if (e.size() != 10) throw std::invalid_argument("relation term needs 10 exponents");
      FMonomial m{};
      std::copy(e.begin(), e.end(), m.begin());
      if (multidegree_of(m) != std::array<int, 3>{2 * (k + 1), 2 * (k + 1), 2 * (k + 1)})
        throw std::invalid_argument("relation term has the wrong multidegree");
      r.Q[k].emplace_back(m, parse_rational(t.at("coefficient").get<std::string>()));
    }
  return r;
}

// ---------------------------------------------------------------------------
// f11 is not in A3(3) A3(3)

struct OutsideCertificate {
  /// Rows of the homogeneous system c0 f11 + c1 f4 f9 + c2 f5 f7 + c3 f6 f8 + c4 f10^2 = 0,
  /// one per specialization, and the label of each row.
  std::vector<std::vector<Rational>> rows;
  std::vector<std::string> labels;
  std::size_t rank = 0;
  bool f11_vanishes_on_e1_e2 = false;   // f11(e1, e2, z) = 0 for every sampled z
  bool f10_nonzero_on_e1_e2 = false;    // f10(e1, e2, z) != 0 for some sampled z
  bool established() const { return rank == 5 && f11_vanishes_on_e1_e2 && f10_nonzero_on_e1_e2; }
};

inline OutsideCertificate check_f11_outside_A3A3(std::uint64_t seed, int samples = 20) {
  using S = SymMat3<Rational>;
  OutsideCertificate cert;
  Rng rng(derive_seed(seed, 0x0a3));
  const auto ansatz = q1_ansatz();
  auto row_at = [&](const std::vector<S>& t, const std::string& label) {
    const auto f = f_values(t);
    std::vector<Rational> row{f[10]};
    for (const auto& m : ansatz) row.push_back(eval_f_monomial(m, f));
    cert.rows.push_back(row);
    cert.labels.push_back(label);
  };
  cert.f11_vanishes_on_e1_e2 = true;
  for (int i = 0; i < samples; ++i) {
    const S z = random_symmat(rng);
    const auto f = f_values({S::frame(1), S::frame(2), z});
    cert.f11_vanishes_on_e1_e2 = cert.f11_vanishes_on_e1_e2 && f[10] == 0;
    cert.f10_nonzero_on_e1_e2 = cert.f10_nonzero_on_e1_e2 || f[9] != 0;
    row_at({S::frame(1), S::frame(2), z}, "(e1,e2,z)");
  }
  for (int i = 0; i < samples; ++i) {
    row_at({S::frame(1), random_symmat(rng), random_symmat(rng)}, "(e1,y,z)");
    row_at({random_symmat(rng), S::frame(1), random_symmat(rng)}, "(x,e1,z)");
    row_at({random_symmat(rng), random_symmat(rng), S::frame(1)}, "(x,y,e1)");
  }
  row_at({S::identity(), S::identity(), S::identity()}, "(e,e,e)");
  IntMatrix m;
  for (const auto& r : cert.rows) {
    std::vector<Integer> ir;
    for (const auto& v : r) ir.push_back(v.get_num());  // integer points give integer values
    m.push_back(std::move(ir));
  }
  cert.rank = integer_rank(m);
  return cert;
}

}  // namespace jinv
