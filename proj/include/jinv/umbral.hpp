#pragma once

// Symbolic (umbral) method: letters standing for symmetric matrices, brackets and
// symbolic cross products expanded to coordinate polynomials, and the umbral
// operator U that sends a letter of degree two to the matching matrix entry.

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jinv/descriptor.hpp"
#include "jinv/generators.hpp"
#include "jinv/linalg.hpp"
#include "jinv/polynomial.hpp"
#include "jinv/random.hpp"

namespace jinv {

/// A symbolic vector (a_1, a_2, a_3) representing the matrix of slot `slot`;
/// distinct instances of one slot are independent copies.
struct UmbralLetter {
  int slot = 0;
  int instance = 0;
  friend auto operator<=>(const UmbralLetter&, const UmbralLetter&) = default;
};

inline constexpr int kMaxInstances = 16;

/// Coordinate variable of a letter: (slot * 16 + instance) * 3 + coord.
inline VarId letter_var(const UmbralLetter& l, int coord) {
  if (l.slot < 0 || l.instance < 0 || l.instance >= kMaxInstances || coord < 0 || coord > 2)
    throw std::out_of_range("umbral letter out of range");
  return static_cast<VarId>((l.slot * kMaxInstances + l.instance) * 3 + coord);
}

inline UmbralLetter var_letter(VarId v) { return {v / 3 / kMaxInstances, (v / 3) % kMaxInstances}; }
inline int var_coord(VarId v) { return v % 3; }

inline std::string letter_name(const UmbralLetter& l) {
  return std::string(1, static_cast<char>('a' + l.instance)) + "@" + slot_name(l.slot);
}

using BracketPolynomial = Polynomial<Rational>;

/// Letter or cross product of two symbolic vectors; expanded eagerly to three components.
class SymbolicVector {
 public:
  SymbolicVector(const UmbralLetter& l) {  // NOLINT(google-explicit-constructor)
    for (int i = 0; i < 3; ++i) c_[i] = BracketPolynomial::variable(letter_var(l, i));
  }
  explicit SymbolicVector(std::array<BracketPolynomial, 3> c) : c_(std::move(c)) {}

  const BracketPolynomial& operator[](int i) const { return c_.at(i); }

 private:
  std::array<BracketPolynomial, 3> c_;
};

inline SymbolicVector cross(const SymbolicVector& u, const SymbolicVector& v) {
  return SymbolicVector({u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]});
}

/// u_v = sum u_i v_i.
inline BracketPolynomial dot(const SymbolicVector& u, const SymbolicVector& v) {
  return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

/// [u, v, w] = det of the three vectors as rows.
inline BracketPolynomial bracket(const SymbolicVector& u, const SymbolicVector& v, const SymbolicVector& w) {
  return dot(u, cross(v, w));
}

// ---------------------------------------------------------------------------
// The umbral operator

/// Position of entry (i, j) in the d1 d2 d3 o12 o13 o23 order.
inline int entry_index(int i, int j) {
  if (i > j) std::swap(i, j);
  for (int k = 0; k < 6; ++k)
    if (kCoordIndex[k].first == i && kCoordIndex[k].second == j) return k;
  throw std::logic_error("entry_index");
}

namespace detail {

/// Image of one monomial: entry indices (slot, coordinate index 0..5) or nullopt if U kills it.
inline bool umbral_monomial(const Monomial& m, std::vector<std::pair<int, int>>& entries) {
  entries.clear();
  std::size_t i = 0;
  while (i < m.size()) {
    const int letter = m[i] / 3;
    std::size_t j = i;
    std::array<int, 3> e{0, 0, 0};
    while (j < m.size() && m[j] / 3 == letter) ++e[m[j++] % 3];
    if (j - i != 2) return false;  // total degree of a present letter must be 2
    int r = -1, s = -1;
    for (int c = 0; c < 3; ++c)
      for (int k = 0; k < e[c]; ++k) (r < 0 ? r : s) = c;
    const int slot = letter / kMaxInstances;
    entries.emplace_back(slot, entry_index(r, s));
    i = j;
  }
  return true;
}

}  // namespace detail

/// U(q) at concrete matrices: letters of degree 0 give 1, letters with profile a_i a_j give
/// x_ij of their slot, anything else gives 0.
template <class T>
T umbral_eval(const BracketPolynomial& q, const std::vector<SymMat3<T>>& assignment) {
  T acc(0);
  std::vector<std::pair<int, int>> entries;
  for (const auto& [m, c] : q.terms()) {
    if (!detail::umbral_monomial(m, entries)) continue;
    T t = lift<T>(c);
    for (const auto& [slot, k] : entries) t *= assignment.at(slot).coord(k);
    acc += t;
  }
  return acc;
}

/// U(q) as a polynomial in the matrix entries; entry k of slot s is variable 6 s + k.
inline Polynomial<Rational> umbral_symbolic(const BracketPolynomial& q) {
  Polynomial<Rational> out;
  std::vector<std::pair<int, int>> entries;
  for (const auto& [m, c] : q.terms()) {
    if (!detail::umbral_monomial(m, entries)) continue;
    Monomial img;
    for (const auto& [slot, k] : entries) img.push_back(static_cast<VarId>(6 * slot + k));
    std::sort(img.begin(), img.end());
    out.add_term(img, c);
  }
  return out;
}

/// Evaluates a polynomial in matrix entries (variables 6 s + k) at a tuple.
template <class T>
T eval_entry_polynomial(const Polynomial<Rational>& p, const std::vector<SymMat3<T>>& pt) {
  std::vector<T> vals;
  for (const auto& x : pt)
    for (int k = 0; k < 6; ++k) vals.push_back(x.coord(k));
  return p.evaluate(vals, [](const Rational& c) { return lift<T>(c); });
}

// ---------------------------------------------------------------------------
// Lemma checks

namespace detail {

inline UmbralLetter L(int slot, int instance = 0) { return {slot, instance}; }

/// Entries (i <= j) of the vector-valued expression w as U(w_i w_j).
inline std::array<Polynomial<Rational>, 6> umbral_square_entries(const SymbolicVector& w) {
  std::array<Polynomial<Rational>, 6> out;
  for (int k = 0; k < 6; ++k) {
    const auto [i, j] = kCoordIndex[k];
    out[k] = umbral_symbolic(w[i] * w[j]);
  }
  return out;
}

inline bool matches_entries(const std::array<Polynomial<Rational>, 6>& u, const std::vector<SymMat3<Rational>>& pt,
                            const SymMat3<Rational>& expected) {
  for (int k = 0; k < 6; ++k)
    if (eval_entry_polynomial(u[k], pt) != expected.coord(k)) return false;
  return true;
}

}  // namespace detail

/// alpha = a x b with a, b on slot x gives x × x; a x a' with a' on slot y gives x × y.
inline bool check_lemma_7_1(int samples, std::uint64_t seed) {
  using detail::L;
  const auto same = detail::umbral_square_entries(cross(SymbolicVector(L(0, 0)), SymbolicVector(L(0, 1))));
  const auto mixed = detail::umbral_square_entries(cross(SymbolicVector(L(0, 0)), SymbolicVector(L(1, 0))));
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    auto pt = random_tuple(rng, 2, 9, 3);
    if (!detail::matches_entries(same, pt, cross(pt[0], pt[0]))) return false;
    if (!detail::matches_entries(mixed, pt, cross(pt[0], pt[1]))) return false;
  }
  return true;
}

/// [(alpha x alpha'), u, v] - (u_alpha v_alpha' - u_alpha' v_alpha) is the zero polynomial.
inline BracketPolynomial lemma_7_2_difference() {
  using detail::L;
  const SymbolicVector al(L(0, 0)), alp(L(1, 0)), u(L(2, 0)), v(L(3, 0));
  return bracket(cross(al, alp), u, v) - (dot(u, al) * dot(v, alp) - dot(u, alp) * dot(v, al));
}

inline bool check_lemma_7_2() { return lemma_7_2_difference().is_zero(); }

/// w = a3 [a', a, a''] - a' [a3, a, a''] with a on x, a' on y, a'' on z, a3 on t.
inline SymbolicVector lemma_7_3_vector() {
  using detail::L;
  const SymbolicVector a(L(0)), ap(L(1)), app(L(2)), a3(L(3));
  const BracketPolynomial b1 = bracket(ap, a, app), b2 = bracket(a3, a, app);
  return SymbolicVector({a3[0] * b1 - ap[0] * b2, a3[1] * b1 - ap[1] * b2, a3[2] * b1 - ap[2] * b2});
}

inline bool check_lemma_7_3(int samples, std::uint64_t seed,
                            const std::vector<std::vector<SymMat3<Rational>>>& extra = {}) {
  const auto u = detail::umbral_square_entries(lemma_7_3_vector());
  auto check = [&](const std::vector<SymMat3<Rational>>& pt) {
    return detail::matches_entries(u, pt, cross(cross(pt[0], pt[2]), cross(pt[1], pt[3])));
  };
  for (const auto& pt : extra)
    if (!check(pt)) return false;
  Rng rng(seed);
  for (int s = 0; s < samples; ++s)
    if (!check(random_tuple(rng, 4, 9, 2))) return false;
  return true;
}

/// U([A, B, C]^2) with letters on slots X, Y, Z.
inline Polynomial<Rational> lemma_7_4_polynomial() {
  using detail::L;
  const auto b = bracket(SymbolicVector(L(0)), SymbolicVector(L(1)), SymbolicVector(L(2)));
  return umbral_symbolic(b * b);
}

inline bool check_lemma_7_4(int samples, std::uint64_t seed,
                            const std::vector<std::vector<SymMat3<Rational>>>& extra = {}) {
  const auto p = lemma_7_4_polynomial();
  auto check = [&](const std::vector<SymMat3<Rational>>& pt) {
    return eval_entry_polynomial(p, pt) == trilinear_f(pt[0], pt[1], pt[2]);
  };
  for (const auto& pt : extra)
    if (!check(pt)) return false;
  Rng rng(seed);
  for (int s = 0; s < samples; ++s)
    if (!check(random_tuple(rng, 3, 9, 2))) return false;
  return true;
}

/// The constant c with U([a, b, c]^2) = c det x for three instances of slot x.
inline Rational bracket_square_constant() {
  using detail::L;
  const auto b = bracket(SymbolicVector(L(0, 0)), SymbolicVector(L(0, 1)), SymbolicVector(L(0, 2)));
  const auto u = umbral_symbolic(b * b);
  // compare with det x as a polynomial in the entries
  std::vector<SymMat3<Polynomial<Rational>>> pt(1);
  for (int k = 0; k < 6; ++k) pt[0].coord(k) = Polynomial<Rational>::variable(static_cast<VarId>(k));
  const auto det = det3(pt[0]);
  const auto& [m, c] = *det.terms().begin();
  const auto it = u.terms().find(m);
  const Rational ratio = it == u.terms().end() ? Rational(0) : it->second / c;
  if (u != det.scaled(ratio)) throw std::logic_error("U([a,b,c]^2) is not a multiple of det x");
  return ratio;
}

// ---------------------------------------------------------------------------
// The degree-9 invariant in symbolic form

namespace detail {

struct ToddLetters {
  // slot x: a, b, c; slot y: a', b', c'; slots z, t, u: a'', a3, a4
  SymbolicVector a{L(0, 0)}, b{L(0, 1)}, c{L(0, 2)};
  SymbolicVector ap{L(1, 0)}, bp{L(1, 1)}, cp{L(1, 2)};
  SymbolicVector app{L(2, 0)}, a3{L(3, 0)}, a4{L(4, 0)};
  SymbolicVector alpha = cross(b, c), alphap = cross(bp, cp);
};

}  // namespace detail

/// [a, a', a''] [a, a', a3] a''_alpha a4_alpha a4_alpha' a3_alpha' with alpha = b x c (slot x)
/// and alpha' = b' x c' (slot y).
inline BracketPolynomial todd_bracket_monomial() {
  detail::ToddLetters t;
  return bracket(t.a, t.ap, t.app) * bracket(t.a, t.ap, t.a3) * dot(t.app, t.alpha) * dot(t.a4, t.alpha) *
         dot(t.a4, t.alphap) * dot(t.a3, t.alphap);
}

/// a'_alpha a4_alpha a4_alpha' a3_alpha' [a3, a, a''] [a', a, a''], the form reached in the
/// reduction of the Jordan expression.
inline BracketPolynomial reduced_bracket_monomial() {
  detail::ToddLetters t;
  return dot(t.ap, t.alpha) * dot(t.a4, t.alpha) * dot(t.a4, t.alphap) * dot(t.a3, t.alphap) *
         bracket(t.a3, t.a, t.app) * bracket(t.ap, t.a, t.app);
}

/// 2 a3_alpha a4_alpha' [a', a, a''] a'_alpha' a4_alpha [a3, a, a'']: contains a'_alpha'.
inline BracketPolynomial divisibility_probe_monomial() {
  detail::ToddLetters t;
  return BracketPolynomial(2) * dot(t.a3, t.alpha) * dot(t.a4, t.alphap) * bracket(t.ap, t.a, t.app) *
         dot(t.ap, t.alphap) * dot(t.a4, t.alpha) * bracket(t.a3, t.a, t.app);
}

/// U of the Todd monomial as a polynomial in the 30 entries of (x, y, z, t, u); computed once.
inline const Polynomial<Rational>& todd_polynomial() {
  static const Polynomial<Rational> p = umbral_symbolic(todd_bracket_monomial());
  return p;
}

template <class T>
T todd_umbral(const SymMat3<T>& x, const SymMat3<T>& y, const SymMat3<T>& z, const SymMat3<T>& t,
              const SymMat3<T>& u) {
  return eval_entry_polynomial(todd_polynomial(), std::vector<SymMat3<T>>{x, y, z, t, u});
}

// ---------------------------------------------------------------------------
// The degree-9 identity modulo A3(5) A6(5)

/// f((x × x) × (y × y), (x × z) × (y × t), u), which is 4 deg9 since x × x = 2 n(x).
inline InvariantDescriptor jordan_deg9_descriptor(TreeBuilder& b) {
  const auto x = b.slot(0), y = b.slot(1), z = b.slot(2), t = b.slot(3), u = b.slot(4);
  return InvariantDescriptor("J9", 5, b.f(b.cross(b.cross(x, x), b.cross(y, y)), b.cross(b.cross(x, z), b.cross(y, t)), u),
                             "f((x×x)×(y×y), (x×z)×(y×t), u) = 4 deg9");
}

struct ToddReport {
  std::size_t products = 0;  // g3 * g6 products of multidegree (3,3,1,1,1)
  std::size_t sample_points = 0;
  std::size_t span_rank = 0;
  std::vector<std::uint64_t> primes;
  std::vector<bool> member_per_prime;          // J9 - 2 U(reduced) in span
  std::vector<bool> todd_member_per_prime;     // J9 + 2 todd in span
  std::vector<bool> literal_member_per_prime;  // deg9 - 2 todd in span
  bool j9_is_4_deg9 = false;                   // checked on every sample
  bool todd_in_span = false;                   // todd alone already lies in the span
  std::optional<Rational> deg9_constant;       // c with deg9 - c todd in span
  std::optional<Rational> reduced_constant;    // same for the reduced bracket monomial
  bool divisibility_vanishes = false;          // probe term vanishes at singular y
  bool divisibility_nonzero = false;           // and is nonzero at generic y
  static bool all(const std::vector<bool>& v) {
    return !v.empty() && std::all_of(v.begin(), v.end(), [](bool b) { return b; });
  }
  bool pass() const { return all(member_per_prime) && j9_is_4_deg9; }
  bool todd_pass() const { return all(todd_member_per_prime); }
  bool literal_pass() const { return all(literal_member_per_prime); }
};

namespace detail {

/// Products g3 * g6 of multidegree (3,3,1,1,1) from the p = 5 generator family.
inline std::vector<std::pair<InvariantDescriptor, InvariantDescriptor>> todd_span_products(TreeBuilder& b) {
  const auto fam = enumerate_generators(5, b);
  const MultiDegree target{3, 3, 1, 1, 1};
  std::vector<std::pair<InvariantDescriptor, InvariantDescriptor>> out;
  for (const auto& g : fam.generators) {
    if (g.total_degree() != 3) continue;
    for (const auto& h : fam.generators) {
      if (h.total_degree() != 6) continue;
      MultiDegree md(5);
      for (std::size_t i = 0; i < 5; ++i) md[i] = g.multidegree()[i] + h.multidegree()[i];
      if (md == target) out.emplace_back(g, h);
    }
  }
  return out;
}

/// c such that target - c probe lies in the column span (mod p); nullopt if not determined.
inline std::optional<Fp> span_constant(const DenseMatrixFp& span, const std::vector<Fp>& target,
                                       const std::vector<Fp>& probe) {
  const std::size_t k = span.empty() ? 0 : span[0].size();
  DenseMatrixFp m = span;
  for (std::size_t i = 0; i < m.size(); ++i) {
    m[i].push_back(target[i]);
    m[i].push_back(probe[i]);
  }
  // a kernel vector v with v[k] != 0 gives target = -(v[k+1] / v[k]) probe + span
  std::optional<Fp> c;
  for (const auto& v : dense_kernel(m, k + 2)) {
    if (v[k] == Fp(0)) continue;
    const Fp val = Fp(0) - v[k + 1] / v[k];
    if (c && *c != val) return std::nullopt;
    c = val;
  }
  return c;
}

inline bool column_in_span(const DenseMatrixFp& span, std::size_t rank, const std::vector<Fp>& col) {
  DenseMatrixFp m = span;
  for (std::size_t i = 0; i < m.size(); ++i) m[i].push_back(col[i]);
  return dense_rank(std::move(m)) == rank;
}

inline std::optional<Rational> agreed(const std::vector<std::optional<Rational>>& v) {
  if (v.empty() || !v[0]) return std::nullopt;
  for (const auto& q : v)
    if (q != v[0]) return std::nullopt;
  return v[0];
}

}  // namespace detail

/// Tests J9 - 2 U(reduced) against the span of g3 * g6 products at random points modulo each prime.
inline ToddReport check_todd_identity(std::uint64_t seed, std::vector<std::uint64_t> primes = {kPrimeA, kPrimeB}) {
  ToddReport rep;
  rep.primes = primes;
  TreeBuilder b;
  const auto prods = detail::todd_span_products(b);
  const auto d9 = deg9_descriptor(b);
  const auto j9 = jordan_deg9_descriptor(b);
  rep.products = prods.size();
  rep.sample_points = prods.size() + 30;
  const auto& todd = todd_polynomial();
  const auto reduced = umbral_symbolic(reduced_bracket_monomial());
  rep.j9_is_4_deg9 = true;
  std::vector<std::optional<Rational>> found, found_reduced;
  for (std::size_t pi = 0; pi < primes.size(); ++pi) {
    ModulusScope scope(primes[pi]);
    Rng rng(derive_seed(seed, 0x70dd + pi));
    DenseMatrixFp span;
    std::vector<Fp> dvec, jvec, tvec, rvec;
    for (std::size_t s = 0; s < rep.sample_points; ++s) {
      std::vector<SymMat3<Fp>> pt(5);
      for (auto& x : pt)
        for (int k = 0; k < 6; ++k) x.coord(k) = Fp::from_raw(rng());
      Evaluator<Fp> ev(pt);
      std::vector<Fp> row;
      for (const auto& [g, h] : prods) row.push_back(ev(g) * ev(h));
      span.push_back(std::move(row));
      dvec.push_back(ev(d9));
      jvec.push_back(ev(j9));
      tvec.push_back(eval_entry_polynomial(todd, pt));
      rvec.push_back(eval_entry_polynomial(reduced, pt));
      if (jvec.back() != Fp(4) * dvec.back()) rep.j9_is_4_deg9 = false;
    }
    const std::size_t r = dense_rank(span);
    if (pi == 0) rep.span_rank = r;
    std::vector<Fp> dj(jvec.size()), dt(jvec.size()), dd(dvec.size());
    for (std::size_t i = 0; i < dj.size(); ++i) {
      dj[i] = jvec[i] - Fp(2) * rvec[i];
      dt[i] = jvec[i] + Fp(2) * tvec[i];
      dd[i] = dvec[i] - Fp(2) * tvec[i];
    }
    rep.member_per_prime.push_back(detail::column_in_span(span, r, dj));
    rep.todd_member_per_prime.push_back(detail::column_in_span(span, r, dt));
    rep.literal_member_per_prime.push_back(detail::column_in_span(span, r, dd));
    if (pi == 0) rep.todd_in_span = detail::column_in_span(span, r, tvec);
    const Integer p(std::to_string(primes[pi]));
    auto recon = [&](std::optional<Fp> c) -> std::optional<Rational> {
      Rational q;
      if (c && rational_reconstruct(Integer(std::to_string(c->value())), p, q)) return q;
      return std::nullopt;
    };
    found.push_back(recon(detail::span_constant(span, dvec, tvec)));
    found_reduced.push_back(recon(detail::span_constant(span, dvec, rvec)));
  }
  rep.deg9_constant = detail::agreed(found);
  rep.reduced_constant = detail::agreed(found_reduced);

  // a term containing a'_alpha' = [a', b', c'] vanishes when det y = 0
  const auto probe = umbral_symbolic(divisibility_probe_monomial());
  Rng rng(derive_seed(seed, 0xd1f));
  rep.divisibility_vanishes = true;
  for (int s = 0; s < 10; ++s) {
    auto pt = random_tuple(rng, 5, 9);
    std::array<Rational, 3> v, w;
    for (auto& c : v) c = draw_rational(rng, 9);
    for (auto& c : w) c = draw_rational(rng, 9);
    SymMat3<Rational> y;  // v v^t + w w^t has rank <= 2
    for (int k = 0; k < 6; ++k) {
      const auto [i, j] = kCoordIndex[k];
      y.coord(k) = v[i] * v[j] + w[i] * w[j];
    }
    rep.divisibility_nonzero = rep.divisibility_nonzero || eval_entry_polynomial(probe, pt) != 0;
    pt[1] = y;
    if (eval_entry_polynomial(probe, pt) != 0) rep.divisibility_vanishes = false;
  }
  return rep;
}

}  // namespace jinv
