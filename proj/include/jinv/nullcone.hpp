#pragma once

// Nilcone of p-tuples: the exact equation check f(x_i, x_j, x_k) = 0, and a floating-point
// search for a one-parameter subgroup driving a tuple satisfying it to zero.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "jinv/jordan.hpp"
#include "jinv/random.hpp"

namespace jinv {

enum class ShapePattern {
  TopLeftBlock,    // support in {(1,1), (1,2), (2,2)}
  FirstRowColumn,  // support in {(1,1), (1,2), (1,3)}
};

inline std::string to_string(ShapePattern s) {
  return s == ShapePattern::TopLeftBlock ? "TopLeftBlock" : "FirstRowColumn";
}

/// Whether entry (i, j), 0-based, lies in the support of the shape.
inline bool in_support(ShapePattern s, int i, int j) {
  if (i > j) std::swap(i, j);
  if (s == ShapePattern::TopLeftBlock) return j <= 1;
  return i == 0;
}

template <class T>
bool has_shape(ShapePattern s, const SymMat3<T>& x) {
  for (int k = 0; k < 6; ++k) {
    const auto [i, j] = kCoordIndex[k];
    if (!in_support(s, i, j) && !(x.coord(k) == T(0))) return false;
  }
  return true;
}

/// True iff f(x_i, x_j, x_k) = 0 for every multiset {i, j, k}.
inline bool check_nilcone_equations(const std::vector<SymMat3<Rational>>& tuple) {
  const std::size_t p = tuple.size();
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) {
      const SymMat3<Rational> c = cross(tuple[i], tuple[j]);
      for (std::size_t k = j; k < p; ++k)
        if (trace_form(c, tuple[k]) != 0) return false;
    }
  return true;
}

/// TopLeftBlock gives (1,1,-2), FirstRowColumn gives (2,-1,-1); both positive on the support.
inline OneParamSubgroup witness_from_shape(ShapePattern s) {
  return s == ShapePattern::TopLeftBlock ? OneParamSubgroup(1, 1, -2) : OneParamSubgroup(2, -1, -1);
}

/// Smallest n_i + n_j over the support.
inline int min_support_exponent(ShapePattern s, const OneParamSubgroup& l) {
  int m = 1 << 30;
  for (const auto& [i, j] : kCoordIndex)
    if (in_support(s, i, j)) m = std::min(m, l.entry_exponent(i, j));
  return m;
}

/// Random rational entries on the support, optionally moved by a random element of SL(3).
inline std::vector<SymMat3<Rational>> canonical_nilpotent_tuple(ShapePattern shape, int p, std::uint64_t seed,
                                                                bool conjugate = true) {
  if (p < 1) throw std::invalid_argument("canonical_nilpotent_tuple: p must be >= 1");
  Rng rng(seed);
  std::vector<SymMat3<Rational>> out(p);
  for (auto& x : out)
    for (int k = 0; k < 6; ++k) {
      const auto [i, j] = kCoordIndex[k];
      if (in_support(shape, i, j)) x.coord(k) = draw_rational(rng, 9, 3);
    }
  if (!conjugate) return out;
  // many elementaries stabilize a shape; redraw until the tuple leaves it
  const bool nonzero = std::any_of(out.begin(), out.end(), [](const auto& x) { return !(x == SymMat3<Rational>{}); });
  for (int attempt = 0;; ++attempt) {
    const auto g = rand_sl3(rng, 8);
    std::vector<SymMat3<Rational>> moved;
    for (const auto& x : out) moved.push_back(act(g, x));
    const bool left = std::any_of(moved.begin(), moved.end(), [&](const auto& x) { return !has_shape(shape, x); });
    if (left || !nonzero || attempt == 31) return moved;
  }
}

// ---------------------------------------------------------------------------
// Witness search

using Complex = std::complex<double>;
using CMat3 = Eigen::Matrix3cd;

struct Witness {
  CMat3 g = CMat3::Identity();
  OneParamSubgroup exponents;  // base exponents of the shape reached
  int multiplier = 1;          // the contract is checked for multiplier * exponents
  ShapePattern shape = ShapePattern::TopLeftBlock;
  double residual = 0;     // largest off-support entry of g.x_i relative to the largest entry
  double contraction = 0;  // largest entry after lambda(t) relative to the input's largest entry
  double t = 1e-3;
  bool contract_met = false;
  std::vector<std::string> trace;
  std::string diagnostic;

  OneParamSubgroup effective() const {
    return {multiplier * exponents.n1, multiplier * exponents.n2, multiplier * exponents.n3};
  }
};

class NullconeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline constexpr double kRankTol = 1e-9;
inline constexpr double kShapeTol = 1e-9;
inline constexpr double kContract = 1e-8;

inline CMat3 to_cmat(const SymMat3<Rational>& x) {
  CMat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = x.at(i, j).get_d();
  return m;
}

inline double max_abs(const CMat3& m) { return m.cwiseAbs().maxCoeff(); }

inline int numeric_rank(const CMat3& m) {
  const double s = max_abs(m);
  if (s == 0) return 0;
  const Eigen::Vector3d sv = Eigen::JacobiSVD<CMat3>(m).singularValues();
  int r = 0;
  for (int k = 0; k < 3; ++k)
    if (sv(k) > kRankTol * s) ++r;
  return r;
}

/// h with h x h^T = diag(1,1,0) (rank 2) or diag(1,0,0) (rank 1), from x = sum r_k r_k^T.
inline CMat3 normalize_to_frame(const CMat3& x, int r) {
  CMat3 y = x;
  std::vector<Eigen::Vector3cd> cols;
  const Eigen::Vector3cd cand[] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
  for (int k = 0; k < r; ++k) {
    const Eigen::Vector3cd* best = &cand[0];
    double bq = -1;
    for (const auto& w : cand) {
      const double q = std::abs(Complex((w.transpose() * y * w)(0, 0)));
      if (q > bq) {
        bq = q;
        best = &w;
      }
    }
    const Complex q = (best->transpose() * y * *best)(0, 0);
    const Eigen::Vector3cd v = y * *best / std::sqrt(q);
    cols.push_back(v);
    y -= v * v.transpose();
  }
  CMat3 R;
  if (r == 2) {
    R.col(0) = cols[0];
    R.col(1) = cols[1];
    R.col(2) = cols[0].cross(cols[1]).conjugate();
  } else {
    R.col(0) = cols[0];
    double best = -1;
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        CMat3 T;
        T.col(0) = cols[0];
        T.col(1) = Eigen::Vector3cd::Unit(a);
        T.col(2) = Eigen::Vector3cd::Unit(b);
        const double d = std::abs(T.determinant());
        if (d > best) {
          best = d;
          R = T;
        }
      }
  }
  return R.inverse();
}

inline CMat3 elementary(int i, int j, Complex c) {  // I + c E_ij, 0-based
  CMat3 h = CMat3::Identity();
  h(i, j) = c;
  return h;
}

struct WorkFamily {
  std::vector<CMat3> m;
  std::size_t original = 0;  // the first `original` matrices are the input tuple
  CMat3 g = CMat3::Identity();
  std::vector<std::string>* trace = nullptr;

  void apply(const CMat3& h, const std::string& what) {
    g = h * g;
    for (auto& x : m) x = h * x * h.transpose();
    if (trace) trace->push_back(what);
  }
  double scale() const {
    double s = 0;
    for (const auto& x : m) s = std::max(s, max_abs(x));
    return s;
  }
  /// Largest off-support entry among the input matrices, relative to the family scale.
  double off_support(ShapePattern s) const {
    const double sc = scale();
    if (sc == 0) return 0;
    double r = 0;
    for (std::size_t k = 0; k < original; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
          if (!in_support(s, i, j)) r = std::max(r, std::abs(m[k](i, j)));
    return r / sc;
  }
  std::optional<ShapePattern> fitted() const {
    for (ShapePattern s : {ShapePattern::TopLeftBlock, ShapePattern::FirstRowColumn})
      if (off_support(s) <= kShapeTol) return s;
    return std::nullopt;
  }
};

inline std::string fmt(Complex c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.6g%+.6gi)", c.real(), c.imag());
  return buf;
}

// Case A: some member has rank 2.
inline std::optional<ShapePattern> rank_two_case(WorkFamily& w, std::size_t pivot) {
  w.apply(normalize_to_frame(w.m[pivot], 2), "normalize member " + std::to_string(pivot) + " to e1+e2");
  const double sc = w.scale();
  std::size_t best = pivot;
  double by = 0;
  for (std::size_t k = 0; k < w.m.size(); ++k) {
    if (k == pivot) continue;
    if (std::abs(w.m[k](2, 2)) > kShapeTol * sc)
      w.trace->push_back("warning: y33 = " + fmt(w.m[k](2, 2)) + " on member " + std::to_string(k));
    if (std::abs(w.m[k](1, 2)) > by) {
      by = std::abs(w.m[k](1, 2));
      best = k;
    }
  }
  if (by <= kShapeTol * sc) return ShapePattern::TopLeftBlock;
  const Complex c = -w.m[best](1, 2) / w.m[best](0, 2);
  w.apply(elementary(1, 0, c), "tau(u): I + c E21, c = -y23/y13 = " + fmt(c) + " from member " + std::to_string(best));
  return w.fitted();
}

inline std::optional<ShapePattern> drive(WorkFamily& w, int depth) {
  if (auto s = w.fitted()) return s;
  if (depth > 3) return std::nullopt;
  // pick the most robust rank-2 member, if any
  std::size_t pivot = w.m.size();
  double ratio = 0;
  std::size_t big = 0;
  double bigv = -1;
  for (std::size_t k = 0; k < w.m.size(); ++k) {
    const double s = max_abs(w.m[k]);
    if (s > bigv) {
      bigv = s;
      big = k;
    }
    if (numeric_rank(w.m[k]) >= 2) {
      const Eigen::Vector3d sv = Eigen::JacobiSVD<CMat3>(w.m[k]).singularValues();
      if (sv(1) / sv(0) > ratio) {
        ratio = sv(1) / sv(0);
        pivot = k;
      }
    }
  }
  if (pivot < w.m.size()) return rank_two_case(w, pivot);
  if (bigv == 0) return ShapePattern::TopLeftBlock;

  // Case B: all members have rank <= 1
  w.apply(normalize_to_frame(w.m[big], 1), "normalize member " + std::to_string(big) + " to e1");
  double sc = w.scale();
  auto find_y33 = [&]() {
    std::size_t b = w.m.size();
    double v = kShapeTol * sc;
    for (std::size_t k = 0; k < w.m.size(); ++k)
      if (std::abs(w.m[k](2, 2)) > v) {
        v = std::abs(w.m[k](2, 2));
        b = k;
      }
    return b;
  };
  std::size_t y = find_y33();
  if (y == w.m.size()) {
    std::size_t b = w.m.size();
    double v = kShapeTol * sc;
    for (std::size_t k = 0; k < w.m.size(); ++k) {
      const double a = std::max(std::abs(w.m[k](1, 1)), std::abs(w.m[k](1, 2)));
      if (a > v) {
        v = a;
        b = k;
      }
    }
    if (b == w.m.size()) return w.fitted();  // first row/column shape up to tolerance
    // I + s E32 makes y33 = 2 s y23 + s^2 y22 nonzero
    double bv = -1;
    Complex bs = 1;
    for (double s : {1.0, -1.0, 2.0, 0.5}) {
      const double v33 = std::abs(2.0 * s * w.m[b](1, 2) + s * s * w.m[b](1, 1));
      if (v33 > bv) {
        bv = v33;
        bs = s;
      }
    }
    w.apply(elementary(2, 1, bs), "tau(u): I + s E32, s = " + fmt(bs) + " on member " + std::to_string(b));
    sc = w.scale();
    y = find_y33();
    if (y == w.m.size()) return std::nullopt;
  }
  const Complex y33 = w.m[y](2, 2);
  CMat3 h = CMat3::Identity();
  h(0, 2) = -w.m[y](0, 2) / y33;
  h(1, 2) = -w.m[y](1, 2) / y33;
  w.apply(h, "tau(u): I + a E13 + b E23 clearing y13, y23 of member " + std::to_string(y));
  // the family's span contains e1 + y33 e3 (rank 2)
  CMat3 extra = w.m[big] / w.m[big](0, 0) + w.m[y] / w.m[y](2, 2);
  w.m.push_back(extra);
  w.trace->push_back("adjoin e1 + y'/y33 (rank 2) and continue with the rank-2 case");
  return drive(w, depth + 1);
}

}  // namespace detail

/// Hilbert-Mumford witness for a tuple on the nilcone, following the rank-2 / rank-1 case split.
/// Throws NullconeError if the tuple does not satisfy the nilcone equations.
inline Witness drive_to_zero(const std::vector<SymMat3<Rational>>& tuple, double t = 1e-3) {
  if (!check_nilcone_equations(tuple)) throw NullconeError("drive_to_zero: tuple does not satisfy f(x_i,x_j,x_k) = 0");
  Witness w;
  w.t = t;
  detail::WorkFamily fam;
  for (const auto& x : tuple) fam.m.push_back(detail::to_cmat(x));
  fam.original = fam.m.size();
  fam.trace = &w.trace;
  const double input_scale = fam.scale();

  const auto shape = detail::drive(fam, 0);
  // report the best shape even on failure
  const ShapePattern s = shape.value_or(
      fam.off_support(ShapePattern::TopLeftBlock) <= fam.off_support(ShapePattern::FirstRowColumn)
          ? ShapePattern::TopLeftBlock
          : ShapePattern::FirstRowColumn);
  w.shape = s;
  w.exponents = witness_from_shape(s);

  // det g = 1: rescale by a cube root; matrices scale by its square
  const Complex d = fam.g.determinant();
  const Complex root = std::pow(d, -1.0 / 3.0);
  fam.g *= root;
  for (auto& x : fam.m) x *= root * root;
  w.g = fam.g;
  w.residual = fam.off_support(s);
  if (!shape || w.residual > detail::kShapeTol) {
    w.diagnostic = "no shape reached: off-support residual " + std::to_string(w.residual) + " for " + to_string(s);
    w.contraction = std::numeric_limits<double>::infinity();
    return w;
  }

  // snap the off-support noise and pick the multiplier
  std::vector<SymMat3<Complex>> snapped;
  double moved = 0;
  for (std::size_t k = 0; k < fam.original; ++k) {
    SymMat3<Complex> x;
    for (int c = 0; c < 6; ++c) {
      const auto [i, j] = kCoordIndex[c];
      x.coord(c) = in_support(s, i, j) ? fam.m[k](i, j) : Complex(0);
      moved = std::max(moved, std::abs(x.coord(c)));
    }
    snapped.push_back(x);
  }
  if (input_scale == 0) {
    w.contract_met = true;
    return w;
  }
  const int kmin = min_support_exponent(s, w.exponents);
  w.multiplier = 1;
  while (std::pow(t, w.multiplier * kmin) * moved > detail::kContract * input_scale && w.multiplier < 64) ++w.multiplier;
  double after = 0;
  for (const auto& x : snapped) {
    const auto y = one_param_act(w.effective(), Complex(t), x);
    for (int c = 0; c < 6; ++c) after = std::max(after, std::abs(y.coord(c)));
  }
  w.contraction = after / input_scale;
  w.contract_met = w.contraction <= detail::kContract;
  if (!w.contract_met) w.diagnostic = "contraction " + std::to_string(w.contraction) + " above 1e-8";
  return w;
}

inline nlohmann::json to_json(const Witness& w) {
  std::vector<double> g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      g.push_back(w.g(i, j).real());
      g.push_back(w.g(i, j).imag());
    }
  nlohmann::json j{{"g", g},
                   {"exponents", {w.exponents.n1, w.exponents.n2, w.exponents.n3}},
                   {"multiplier", w.multiplier},
                   {"shape", to_string(w.shape)},
                   {"residual", w.residual},
                   {"contraction", std::isfinite(w.contraction) ? nlohmann::json(w.contraction) : nlohmann::json()},
                   {"t", w.t},
                   {"contract_met", w.contract_met},
                   {"trace", w.trace}};
  if (!w.diagnostic.empty()) j["diagnostic"] = w.diagnostic;
  return j;
}

}  // namespace jinv
