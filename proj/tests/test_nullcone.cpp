#include <gtest/gtest.h>

#include "jinv/nullcone.hpp"

using namespace jinv;

namespace {

using Q = Rational;
using S = SymMat3<Q>;

// g.x_i in complex double, for checking a witness independently of the search.
std::vector<CMat3> moved(const Witness& w, const std::vector<S>& tuple) {
  std::vector<CMat3> out;
  for (const auto& x : tuple) {
    CMat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = x.at(i, j).get_d();
    out.push_back(w.g * m * w.g.transpose());
  }
  return out;
}

double max_entry(const std::vector<S>& tuple) {
  double s = 0;
  for (const auto& x : tuple)
    for (int k = 0; k < 6; ++k) s = std::max(s, std::abs(x.coord(k).get_d()));
  return s;
}

// Every entry of g.x_i that is not numerically zero gets a positive exponent.
void expect_valid(const Witness& w, const std::vector<S>& tuple) {
  ASSERT_TRUE(w.contract_met) << w.diagnostic;
  EXPECT_NEAR(std::abs(w.g.determinant() - Complex(1)), 0.0, 1e-12);
  const auto l = w.effective();
  EXPECT_EQ(l.n1 + l.n2 + l.n3, 0);
  const double scale = max_entry(tuple);
  for (const auto& m : moved(w, tuple)) {
    const double local = m.cwiseAbs().maxCoeff();
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j)
        if (std::abs(m(i, j)) > 1e-9 * std::max(local, scale)) {
          EXPECT_GE(l.entry_exponent(i, j), 1);
        }
  }
}

}  // namespace

TEST(Shapes, Membership) {
  EXPECT_TRUE(has_shape(ShapePattern::TopLeftBlock, S::frame(1)));
  EXPECT_TRUE(has_shape(ShapePattern::TopLeftBlock, S::offdiag_unit(1, 2)));
  EXPECT_FALSE(has_shape(ShapePattern::TopLeftBlock, S::offdiag_unit(1, 3)));
  EXPECT_TRUE(has_shape(ShapePattern::FirstRowColumn, S::offdiag_unit(1, 3)));
  EXPECT_FALSE(has_shape(ShapePattern::FirstRowColumn, S::frame(2)));
  EXPECT_TRUE(has_shape(ShapePattern::FirstRowColumn, S::zero()));
}

TEST(Shapes, WitnessExponents) {
  const auto top = witness_from_shape(ShapePattern::TopLeftBlock);
  const auto row = witness_from_shape(ShapePattern::FirstRowColumn);
  EXPECT_EQ(top, OneParamSubgroup(1, 1, -2));
  EXPECT_EQ(row, OneParamSubgroup(2, -1, -1));
  EXPECT_EQ(top.entry_exponent(0, 1), 2);
  EXPECT_EQ(row.entry_exponent(0, 2), 1);
  EXPECT_EQ(row.entry_exponent(0, 0), 4);
  for (auto s : {ShapePattern::TopLeftBlock, ShapePattern::FirstRowColumn})
    for (const auto& [i, j] : kCoordIndex)
      if (in_support(s, i, j)) {
        EXPECT_GT(witness_from_shape(s).entry_exponent(i, j), 0);
      }
  EXPECT_EQ(min_support_exponent(ShapePattern::TopLeftBlock, top), 2);
  EXPECT_EQ(min_support_exponent(ShapePattern::FirstRowColumn, row), 1);
}

TEST(Shapes, OneParamDrivesEntries) {
  const S x = S::from_coords({Q(1), Q(0), Q(0), Q(1), Q(1), Q(0)});
  const auto y = one_param_act(witness_from_shape(ShapePattern::FirstRowColumn), Q(1, 10), x);
  EXPECT_EQ(y.o13, Q(1, 10));
  EXPECT_EQ(y.d1, Q(1, 10000));
  const auto z = one_param_act(witness_from_shape(ShapePattern::TopLeftBlock), Q(1, 10), S::offdiag_unit(1, 2));
  EXPECT_EQ(z.o12, Q(1, 100));
}

TEST(Equations, Examples) {
  EXPECT_TRUE(check_nilcone_equations(canonical_nilpotent_tuple(ShapePattern::TopLeftBlock, 3, 1, false)));
  EXPECT_TRUE(check_nilcone_equations(canonical_nilpotent_tuple(ShapePattern::FirstRowColumn, 3, 1, false)));
  EXPECT_FALSE(check_nilcone_equations({S::identity()}));
  EXPECT_FALSE(check_nilcone_equations({S::frame(1), S::frame(2), S::frame(3)}));
  EXPECT_TRUE(check_nilcone_equations({S::frame(1), S::frame(2)}));
  EXPECT_TRUE(check_nilcone_equations({}));
}

TEST(Equations, ForwardDirectionOnConjugatedShapes) {
  int n = 0;
  for (int i = 0; i < 100; ++i) {
    const auto shape = i % 2 ? ShapePattern::FirstRowColumn : ShapePattern::TopLeftBlock;
    const auto t = canonical_nilpotent_tuple(shape, 2 + i % 4, 500 + i);
    n += check_nilcone_equations(t);
  }
  EXPECT_EQ(n, 100);
}

TEST(CanonicalTuple, Properties) {
  const auto a = canonical_nilpotent_tuple(ShapePattern::TopLeftBlock, 3, 42);
  EXPECT_EQ(a, canonical_nilpotent_tuple(ShapePattern::TopLeftBlock, 3, 42));
  EXPECT_NE(a, canonical_nilpotent_tuple(ShapePattern::TopLeftBlock, 3, 43));
  bool left = false;
  for (const auto& x : a) left = left || !has_shape(ShapePattern::TopLeftBlock, x);
  EXPECT_TRUE(left);
  const auto one = canonical_nilpotent_tuple(ShapePattern::FirstRowColumn, 1, 7);
  EXPECT_EQ(det3(one[0]), 0);
  EXPECT_THROW(canonical_nilpotent_tuple(ShapePattern::TopLeftBlock, 0, 1), std::invalid_argument);
  // moved by a further group element, the equations persist
  const auto g = rand_sl3(9, 5);
  std::vector<S> b;
  for (const auto& x : a) b.push_back(act(g, x));
  EXPECT_TRUE(check_nilcone_equations(b));
}

TEST(DriveToZero, AlreadyInShape) {
  const auto t = canonical_nilpotent_tuple(ShapePattern::TopLeftBlock, 3, 3, false);
  const auto w = drive_to_zero(t);
  EXPECT_TRUE((w.g - CMat3::Identity()).norm() < 1e-12);
  EXPECT_EQ(w.exponents, OneParamSubgroup(1, 1, -2));
  EXPECT_EQ(w.shape, ShapePattern::TopLeftBlock);
  expect_valid(w, t);
}

TEST(DriveToZero, ConjugatedFirstRowColumn) {
  const auto t = canonical_nilpotent_tuple(ShapePattern::FirstRowColumn, 3, 4);
  const auto w = drive_to_zero(t);
  expect_valid(w, t);
  EXPECT_LE(w.residual, 1e-9);
  EXPECT_LE(w.contraction, 1e-8);
  EXPECT_FALSE(w.trace.empty());
}

TEST(DriveToZero, RankOneFamilies) {
  const auto g = rand_sl3(11, 8);
  const S v = S::from_coords({Q(0), Q(1), Q(1), Q(0), Q(0), Q(1)});  // (e2 + e3)(e2 + e3)^T
  for (const auto& t : std::vector<std::vector<S>>{{S::frame(1), S::frame(3)},
                                                   {act(g, S::frame(1)), act(g, v)},
                                                   {act(g, S::frame(2)), act(g, S::frame(2))},
                                                   {act(g, S::frame(1))}}) {
    ASSERT_TRUE(check_nilcone_equations(t));
    expect_valid(drive_to_zero(t), t);
  }
}

TEST(DriveToZero, ZeroTuple) {
  const auto w = drive_to_zero({S::zero(), S::zero()});
  EXPECT_TRUE(w.contract_met);
}

TEST(DriveToZero, PreconditionError) {
  EXPECT_THROW(drive_to_zero({S::frame(1), S::frame(2), S::frame(3)}), NullconeError);
}

TEST(DriveToZero, RandomConjugatedShapes) {
  int ok = 0;
  for (int i = 0; i < 100; ++i) {
    const auto shape = i % 2 ? ShapePattern::FirstRowColumn : ShapePattern::TopLeftBlock;
    const auto t = canonical_nilpotent_tuple(shape, 2 + i % 4, 1000 + i);
    const auto w = drive_to_zero(t);
    if (w.contract_met) {
      ++ok;
      expect_valid(w, t);
    } else {
      EXPECT_FALSE(w.diagnostic.empty());
    }
  }
  EXPECT_GE(ok, 95);
}

TEST(DriveToZero, Deterministic) {
  const auto t = canonical_nilpotent_tuple(ShapePattern::FirstRowColumn, 4, 77);
  EXPECT_EQ(to_json(drive_to_zero(t)).dump(), to_json(drive_to_zero(t)).dump());
}

TEST(DriveToZero, JsonShape) {
  const auto j = to_json(drive_to_zero(canonical_nilpotent_tuple(ShapePattern::TopLeftBlock, 2, 5)));
  EXPECT_EQ(j["g"].size(), 18u);
  EXPECT_EQ(j["exponents"].size(), 3u);
  EXPECT_TRUE(j.contains("residual"));
  EXPECT_TRUE(j["contract_met"].get<bool>());
}
