#pragma once

// The rank-3 Jordan algebra Sym(3) of symmetric 3x3 matrices over an exact scalar T,
// together with the congruence action of SL(3) and of one-parameter subgroups.
//
// T is any commutative ring type with value semantics constructible from int:
// Rational, Fp, Polynomial<...>, std::complex<double>.  Operations that divide
// by 2 (the Jordan product) additionally need T to be a field.

#include <array>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jinv/scalar.hpp"

namespace jinv {

/// Symmetric 3x3 matrix stored as its six independent entries.
template <class T>
struct SymMat3 {
  T d1{0}, d2{0}, d3{0};     // x11, x22, x33
  T o12{0}, o13{0}, o23{0};  // x12, x13, x23

  static SymMat3 zero() { return {}; }
  static SymMat3 identity() { return diag(T(1), T(1), T(1)); }
  static SymMat3 diag(T a, T b, T c) {
    SymMat3 m;
    m.d1 = std::move(a);
    m.d2 = std::move(b);
    m.d3 = std::move(c);
    return m;
  }
  /// Jordan frame idempotent e_k, k in {1,2,3}.
  static SymMat3 frame(int k) {
    SymMat3 m;
    m.at(k - 1, k - 1) = T(1);
    return m;
  }
  /// b_ij: ones at (i,j) and (j,i), 1-based, i != j.
  static SymMat3 offdiag_unit(int i, int j) {
    if (i == j) throw std::invalid_argument("offdiag_unit needs i != j");
    SymMat3 m;
    m.at(i - 1, j - 1) = T(1);
    return m;
  }

  /// 0-based entry access; (i,j) and (j,i) alias the same storage.
  T& at(int i, int j) { return *slot(*this, i, j); }
  const T& at(int i, int j) const { return *slot(const_cast<SymMat3&>(*this), i, j); }

  /// Coordinates in the fixed order d1 d2 d3 o12 o13 o23.
  std::array<T, 6> coords() const { return {d1, d2, d3, o12, o13, o23}; }
  static SymMat3 from_coords(const std::array<T, 6>& c) {
    SymMat3 m;
    m.d1 = c[0];
    m.d2 = c[1];
    m.d3 = c[2];
    m.o12 = c[3];
    m.o13 = c[4];
    m.o23 = c[5];
    return m;
  }
  T& coord(int k) { return *coord_slot(*this, k); }
  const T& coord(int k) const { return *coord_slot(const_cast<SymMat3&>(*this), k); }

  SymMat3& operator+=(const SymMat3& o) {
    d1 += o.d1, d2 += o.d2, d3 += o.d3, o12 += o.o12, o13 += o.o13, o23 += o.o23;
    return *this;
  }
  SymMat3& operator-=(const SymMat3& o) {
    d1 -= o.d1, d2 -= o.d2, d3 -= o.d3, o12 -= o.o12, o13 -= o.o13, o23 -= o.o23;
    return *this;
  }
  SymMat3& operator*=(const T& s) {
    d1 *= s, d2 *= s, d3 *= s, o12 *= s, o13 *= s, o23 *= s;
    return *this;
  }
  friend SymMat3 operator+(SymMat3 a, const SymMat3& b) { return a += b; }
  friend SymMat3 operator-(SymMat3 a, const SymMat3& b) { return a -= b; }
  friend SymMat3 operator*(const T& s, SymMat3 a) { return a *= s; }
  friend SymMat3 operator-(SymMat3 a) { return a *= T(-1); }
  friend bool operator==(const SymMat3& a, const SymMat3& b) {
    return a.d1 == b.d1 && a.d2 == b.d2 && a.d3 == b.d3 && a.o12 == b.o12 && a.o13 == b.o13 && a.o23 == b.o23;
  }
  friend bool operator!=(const SymMat3& a, const SymMat3& b) { return !(a == b); }

 private:
  static T* slot(SymMat3& m, int i, int j) {
    if (i > j) std::swap(i, j);
    if (i == j) {
      switch (i) {
        case 0: return &m.d1;
        case 1: return &m.d2;
        case 2: return &m.d3;
      }
    } else if (i == 0) {
      return j == 1 ? &m.o12 : &m.o13;
    } else if (i == 1 && j == 2) {
      return &m.o23;
    }
    throw std::out_of_range("SymMat3 index");
  }
  static T* coord_slot(SymMat3& m, int k) {
    switch (k) {
      case 0: return &m.d1;
      case 1: return &m.d2;
      case 2: return &m.d3;
      case 3: return &m.o12;
      case 4: return &m.o13;
      case 5: return &m.o23;
    }
    throw std::out_of_range("SymMat3 coordinate");
  }
};

/// Row/column pairs of the six coordinates, 0-based.
inline constexpr std::array<std::pair<int, int>, 6> kCoordIndex{{{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}}};

/// Dense 3x3 matrix, row-major.
template <class T>
struct Mat3 {
  std::array<T, 9> a{T(0), T(0), T(0), T(0), T(0), T(0), T(0), T(0), T(0)};

  static Mat3 identity() {
    Mat3 m;
    m(0, 0) = T(1), m(1, 1) = T(1), m(2, 2) = T(1);
    return m;
  }
  static Mat3 from_sym(const SymMat3<T>& s) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = s.at(i, j);
    return m;
  }

  T& operator()(int i, int j) { return a[3 * i + j]; }
  const T& operator()(int i, int j) const { return a[3 * i + j]; }

  Mat3 transpose() const {
    Mat3 t;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
    return t;
  }
  T det() const {
    const Mat3& m = *this;
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  }
  /// Classical adjugate: m * adj(m) = det(m) * I.
  Mat3 adjugate() const {
    const Mat3& m = *this;
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
        r(i, j) = m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
      }
    return r;
  }
  friend Mat3 operator*(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        T s = x(i, 0) * y(0, j);
        s += x(i, 1) * y(1, j);
        s += x(i, 2) * y(2, j);
        r(i, j) = std::move(s);
      }
    return r;
  }
  friend bool operator==(const Mat3& x, const Mat3& y) { return x.a == y.a; }
};

/// Element of SL(3) over an exact field; determinant checked on construction.
template <class T>
class GroupElement {
 public:
  GroupElement() : m_(Mat3<T>::identity()) {}
  explicit GroupElement(Mat3<T> m) : m_(std::move(m)) {
    if (!(m_.det() == T(1))) throw std::invalid_argument("GroupElement: determinant must be exactly 1");
  }
  static GroupElement identity() { return {}; }
  /// I + c E_ij (0-based, i != j).
  static GroupElement elementary(int i, int j, const T& c) {
    if (i == j) throw std::invalid_argument("elementary matrix needs i != j");
    Mat3<T> m = Mat3<T>::identity();
    m(i, j) = c;
    GroupElement g;
    g.m_ = std::move(m);
    return g;
  }

  const Mat3<T>& matrix() const { return m_; }
  const T& operator()(int i, int j) const { return m_(i, j); }

  GroupElement inverse() const {
    GroupElement g;
    g.m_ = m_.adjugate();
    return g;
  }
  GroupElement transpose() const {
    GroupElement g;
    g.m_ = m_.transpose();
    return g;
  }
  friend GroupElement operator*(const GroupElement& x, const GroupElement& y) {
    GroupElement g;
    g.m_ = x.m_ * y.m_;
    return g;
  }
  friend bool operator==(const GroupElement& x, const GroupElement& y) { return x.m_ == y.m_; }

 private:
  Mat3<T> m_;
};

/// One-parameter subgroup t -> diag(t^n1, t^n2, t^n3) with n1 + n2 + n3 = 0.
struct OneParamSubgroup {
  int n1 = 0, n2 = 0, n3 = 0;

  OneParamSubgroup() = default;
  OneParamSubgroup(int a, int b, int c) : n1(a), n2(b), n3(c) {
    if (a + b + c != 0) throw std::invalid_argument("one-parameter subgroup exponents must sum to 0");
  }
  int exponent(int k) const { return k == 0 ? n1 : (k == 1 ? n2 : n3); }
  /// Exponent n_i + n_j acting on entry (i,j), 0-based.
  int entry_exponent(int i, int j) const { return exponent(i) + exponent(j); }
  friend bool operator==(const OneParamSubgroup&, const OneParamSubgroup&) = default;
};

// ---------------------------------------------------------------------------
// Jordan algebra primitives

template <class T>
SymMat3<T> jordan_product(const SymMat3<T>& x, const SymMat3<T>& y) {
  const Mat3<T> X = Mat3<T>::from_sym(x), Y = Mat3<T>::from_sym(y);
  const Mat3<T> xy = X * Y, yx = Y * X;
  const T half = T(1) / T(2);
  SymMat3<T> r;
  for (int k = 0; k < 6; ++k) {
    const auto [i, j] = kCoordIndex[k];
    r.coord(k) = half * (xy(i, j) + yx(i, j));
  }
  return r;
}

/// tr(xy).
template <class T>
T trace_form(const SymMat3<T>& x, const SymMat3<T>& y) {
  T s = x.d1 * y.d1;
  s += x.d2 * y.d2;
  s += x.d3 * y.d3;
  T off = x.o12 * y.o12;
  off += x.o13 * y.o13;
  off += x.o23 * y.o23;
  s += off + off;
  return s;
}

template <class T>
T det3(const SymMat3<T>& x) {
  // x11 x22 x33 + 2 x12 x13 x23 - x11 x23^2 - x22 x13^2 - x33 x12^2
  T t = x.o12 * x.o13 * x.o23;
  T r = x.d1 * x.d2 * x.d3;
  r += t + t;
  r -= x.d1 * x.o23 * x.o23;
  r -= x.d2 * x.o13 * x.o13;
  r -= x.d3 * x.o12 * x.o12;
  return r;
}

/// n(x): transpose of the cofactor matrix, x n(x) = det(x) I.
template <class T>
SymMat3<T> adjugate(const SymMat3<T>& x) {
  SymMat3<T> n;
  n.d1 = x.d2 * x.d3 - x.o23 * x.o23;
  n.d2 = x.d1 * x.d3 - x.o13 * x.o13;
  n.d3 = x.d1 * x.d2 - x.o12 * x.o12;
  n.o12 = x.o13 * x.o23 - x.o12 * x.d3;
  n.o13 = x.o12 * x.o23 - x.o13 * x.d2;
  n.o23 = x.o12 * x.o13 - x.d1 * x.o23;
  return n;
}

/// x × y = n(x+y) - n(x) - n(y), written out as the polarized cofactors.
template <class T>
SymMat3<T> cross(const SymMat3<T>& x, const SymMat3<T>& y) {
  SymMat3<T> r;
  T t;
  r.d1 = x.d2 * y.d3 + x.d3 * y.d2;
  t = x.o23 * y.o23;
  r.d1 -= t + t;
  r.d2 = x.d1 * y.d3 + x.d3 * y.d1;
  t = x.o13 * y.o13;
  r.d2 -= t + t;
  r.d3 = x.d1 * y.d2 + x.d2 * y.d1;
  t = x.o12 * y.o12;
  r.d3 -= t + t;
  r.o12 = x.o13 * y.o23 + x.o23 * y.o13 - x.o12 * y.d3 - x.d3 * y.o12;
  r.o13 = x.o12 * y.o23 + x.o23 * y.o12 - x.o13 * y.d2 - x.d2 * y.o13;
  r.o23 = x.o12 * y.o13 + x.o13 * y.o12 - x.d1 * y.o23 - x.o23 * y.d1;
  return r;
}

/// f(x,y,z) = <x × y, z>, the polarized determinant with f(x,x,x) = 6 det x.
template <class T>
T trilinear_f(const SymMat3<T>& x, const SymMat3<T>& y, const SymMat3<T>& z) {
  return trace_form(cross(x, y), z);
}

// ---------------------------------------------------------------------------
// Group actions

/// Congruence g x g^t by a general 3x3 matrix (no determinant condition).
template <class T>
SymMat3<T> congruence(const Mat3<T>& g, const SymMat3<T>& x) {
  const Mat3<T> gx = g * Mat3<T>::from_sym(x);
  SymMat3<T> r;
  for (int k = 0; k < 6; ++k) {
    const auto [i, j] = kCoordIndex[k];
    T s = gx(i, 0) * g(j, 0);
    s += gx(i, 1) * g(j, 1);
    s += gx(i, 2) * g(j, 2);
    r.coord(k) = std::move(s);
  }
  return r;
}

template <class T>
SymMat3<T> act(const GroupElement<T>& g, const SymMat3<T>& x) {
  return congruence(g.matrix(), x);
}

/// n(g.x) == (g^t)^{-1} . n(x), exactly.
template <class T>
bool check_adjugate_equivariance(const GroupElement<T>& g, const SymMat3<T>& x) {
  const GroupElement<T> contragredient = g.transpose().inverse();
  return adjugate(act(g, x)) == act(contragredient, adjugate(x));
}

/// Scales entry (i,j) by t^(n_i + n_j).
template <class T>
SymMat3<T> one_param_act(const OneParamSubgroup& lambda, const T& t, const SymMat3<T>& x) {
  const bool t_zero = (t == T(0));
  SymMat3<T> r;
  for (int k = 0; k < 6; ++k) {
    const auto [i, j] = kCoordIndex[k];
    const int e = lambda.entry_exponent(i, j);
    const T& v = x.coord(k);
    if (t_zero) {
      if (e < 0 && !(v == T(0))) throw std::domain_error("pole at t=0");
      r.coord(k) = (e == 0) ? v : T(0);
      continue;
    }
    T scale(1);
    const T base = e >= 0 ? t : T(1) / t;
    for (int s = 0; s < (e >= 0 ? e : -e); ++s) scale *= base;
    r.coord(k) = scale * v;
  }
  return r;
}

/// act(I + c E_ij, x), 1-based (i,j) as in the matrix-unit notation, i != j.
template <class T>
SymMat3<T> elementary_congruence(std::pair<int, int> position, const T& c, const SymMat3<T>& x) {
  const auto [i, j] = position;
  if (i == j) throw std::invalid_argument("elementary_congruence needs i != j");
  if (i < 1 || i > 3 || j < 1 || j > 3) throw std::out_of_range("elementary_congruence position");
  Mat3<T> g = Mat3<T>::identity();
  g(i - 1, j - 1) = c;
  return congruence(g, x);
}

/// Rank over a field, by elimination on a copy.
template <class T>
int rank(const SymMat3<T>& x) {
  Mat3<T> m = Mat3<T>::from_sym(x);
  int r = 0;
  for (int col = 0; col < 3 && r < 3; ++col) {
    int piv = -1;
    for (int i = r; i < 3; ++i)
      if (!(m(i, col) == T(0))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (int j = 0; j < 3; ++j) std::swap(m(r, j), m(piv, j));
    for (int i = r + 1; i < 3; ++i) {
      const T f = m(i, col) / m(r, col);
      for (int j = col; j < 3; ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Text form: "d1 d2 d3 o12 o13 o23", rationals as num/den or integers.

inline SymMat3<Rational> parse_symmat(const std::string& line) {
  std::istringstream in(line);
  std::array<Rational, 6> c;
  std::string tok;
  for (int k = 0; k < 6; ++k) {
    if (!(in >> tok)) throw std::invalid_argument("SymMat3 text form needs six scalars: '" + line + "'");
    c[k] = parse_rational(tok);
  }
  if (in >> tok) throw std::invalid_argument("SymMat3 text form has trailing data: '" + line + "'");
  return SymMat3<Rational>::from_coords(c);
}

inline std::string format_symmat(const SymMat3<Rational>& x) {
  std::string s;
  for (int k = 0; k < 6; ++k) {
    if (k) s += ' ';
    s += x.coord(k).get_str();
  }
  return s;
}

/// One matrix per non-blank line; '#' starts a comment.
inline std::vector<SymMat3<Rational>> read_symmat_tuple(std::istream& in) {
  std::vector<SymMat3<Rational>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_symmat(line));
  }
  return out;
}

template <class T>
std::ostream& operator<<(std::ostream& os, const SymMat3<T>& x) {
  return os << "[" << x.d1 << " " << x.d2 << " " << x.d3 << " | " << x.o12 << " " << x.o13 << " " << x.o23 << "]";
}

}  // namespace jinv
