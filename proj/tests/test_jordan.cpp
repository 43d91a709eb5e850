#include <gtest/gtest.h>

#include <sstream>

#include "jinv/jordan.hpp"
#include "jinv/random.hpp"

using namespace jinv;

namespace {

using Q = Rational;
using S = SymMat3<Q>;

const S e = S::identity();
const S e1 = S::frame(1), e2 = S::frame(2), e3 = S::frame(3);
const S b12 = S::offdiag_unit(1, 2);

S ones() {
  S m;
  for (int k = 0; k < 6; ++k) m.coord(k) = 1;
  return m;
}

// x * y as full matrices, independent of the symmetric storage.
Mat3<Q> full(const S& x) { return Mat3<Q>::from_sym(x); }

}  // namespace

TEST(JordanProduct, Examples) {
  EXPECT_EQ(jordan_product(e, e), e);
  EXPECT_EQ(jordan_product(e1, e1), e1);
  EXPECT_EQ(jordan_product(b12, b12), e1 + e2);
}

TEST(JordanProduct, MatchesHalfAnticommutator) {
  Rng rng(1);
  for (int k = 0; k < 50; ++k) {
    S x = random_symmat(rng), y = random_symmat(rng);
    Mat3<Q> xy = full(x) * full(y), yx = full(y) * full(x);
    S r = jordan_product(x, y);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) EXPECT_EQ(r.at(i, j), (xy(i, j) + yx(i, j)) / 2);
    EXPECT_EQ(r, jordan_product(y, x));
  }
}

TEST(TraceForm, Examples) {
  EXPECT_EQ(trace_form(e, e), 3);
  EXPECT_EQ(trace_form(e1, e2), 0);
  EXPECT_EQ(trace_form(b12, b12), 2);
}

TEST(Det, Examples) {
  EXPECT_EQ(det3(e), 1);
  EXPECT_EQ(det3(e1 + e2), 0);
  EXPECT_EQ(det3(ones()), 0);
}

TEST(Adjugate, Examples) {
  EXPECT_EQ(adjugate(e), e);
  EXPECT_EQ(adjugate(e1 + e2), e3);
  EXPECT_EQ(adjugate(S::diag(1, 2, 3)), S::diag(6, 3, 2));
}

TEST(Cross, Examples) {
  EXPECT_EQ(cross(e1, e2), e3);
  EXPECT_EQ(cross(e, e), Q(2) * e);
  EXPECT_EQ(cross(e, e1), e2 + e3);
}

TEST(TrilinearF, Examples) {
  EXPECT_EQ(trilinear_f(e, e, e), 6);
  EXPECT_EQ(trilinear_f(e1, e2, e3), 1);
  EXPECT_EQ(trilinear_f(e, e, e1), 2);
}

TEST(Act, Examples) {
  Rng rng(2);
  S x = random_symmat(rng);
  EXPECT_EQ(act(GroupElement<Q>::identity(), x), x);
  auto g = GroupElement<Q>::elementary(1, 0, Q(1));
  EXPECT_EQ(act(g, e1), e1 + e2 + b12);
  for (int k = 0; k < 20; ++k) EXPECT_EQ(det3(act(rand_sl3(rng, 5), S::diag(1, 2, 3))), 6);
}

TEST(Act, IsHomomorphism) {
  Rng rng(3);
  for (int k = 0; k < 30; ++k) {
    auto g = rand_sl3(rng, 4), h = rand_sl3(rng, 4);
    S x = random_symmat(rng, 9, 3);
    EXPECT_EQ(act(g * h, x), act(g, act(h, x)));
  }
}

TEST(GroupElement, RejectsNonUnitDeterminant) {
  Mat3<Q> m = Mat3<Q>::identity();
  m(0, 0) = 2;
  EXPECT_THROW(GroupElement<Q>{m}, std::invalid_argument);
}

TEST(Equivariance, Examples) {
  Rng rng(4);
  EXPECT_TRUE(check_adjugate_equivariance(GroupElement<Q>::identity(), random_symmat(rng)));
  EXPECT_TRUE(check_adjugate_equivariance(GroupElement<Q>::elementary(1, 0, Q(1)), e1));
  for (int k = 0; k < 100; ++k) EXPECT_TRUE(check_adjugate_equivariance(rand_sl3(rng, 5), random_symmat(rng, 9, 2)));
}

TEST(OneParam, Examples) {
  Rng rng(5);
  S x = random_symmat(rng);
  const Q t(3, 2);
  EXPECT_EQ(one_param_act(OneParamSubgroup(0, 0, 0), t, x), x);
  EXPECT_EQ(one_param_act(OneParamSubgroup(1, 1, -2), t, e1), t * t * e1);
  EXPECT_EQ(one_param_act(OneParamSubgroup(1, 1, -2), t, e3), (1 / (t * t * t * t)) * e3);
  EXPECT_THROW(one_param_act(OneParamSubgroup(1, 1, -2), Q(0), e3), std::domain_error);
  EXPECT_EQ(one_param_act(OneParamSubgroup(1, 1, -2), Q(0), e1), S());
  EXPECT_THROW(OneParamSubgroup(1, 1, 1), std::invalid_argument);
}

TEST(RandSl3, DeterministicUnimodular) {
  EXPECT_THROW(rand_sl3(7, 0), std::invalid_argument);
  EXPECT_EQ(rand_sl3(7, 4), rand_sl3(7, 4));
  for (std::uint64_t s = 0; s < 50; ++s) EXPECT_EQ(rand_sl3(s, 6).matrix().det(), 1);
  // zero coefficient range gives the identity
  EXPECT_EQ(rand_sl3(9, 1, 0), GroupElement<Q>::identity());
}

TEST(ElementaryCongruence, Examples) {
  Rng rng(6);
  S x = random_symmat(rng);
  EXPECT_EQ(elementary_congruence({1, 2}, Q(0), x), x);
  EXPECT_THROW(elementary_congruence({2, 2}, Q(1), x), std::invalid_argument);
  for (int k = 0; k < 50; ++k) {
    S y = random_symmat(rng, 3);
    if (k % 3 == 0) y = cross(y, y);  // exercise lower ranks too
    if (k % 5 == 0) y = S::frame(1 + k % 3);
    const int i = 1 + k % 3, j = 1 + (k + 1) % 3;
    S z = elementary_congruence({i, j}, Q(k % 7 - 3), y);
    EXPECT_EQ(rank(z), rank(y));
    EXPECT_EQ(det3(z), det3(y));
  }
}

// tau(u) with u = c b12, c^2 = -1, sends e1 + e2 to e1 + u.  Needs a square root of -1.
TEST(ElementaryCongruence, FrobeniusOnRankTwoIdempotent) {
  ModulusScope scope(kPrimeB);
  Fp i;
  for (long long g = 2;; ++g) {
    i = Fp(g).pow((kPrimeB - 1) / 4);
    if (i * i == Fp(-1)) break;
  }
  using F = SymMat3<Fp>;
  // y13, y23 with y23^2 = -y13^2: y13 = 1, y23 = i; u = -(y23/y13) b12
  const Fp c = Fp(0) - i;
  F r = elementary_congruence({2, 1}, c, F::frame(1) + F::frame(2));
  EXPECT_EQ(r, F::frame(1) + c * F::offdiag_unit(1, 2));
}

TEST(Identities, JordanIdentity) {
  Rng rng(7);
  for (int k = 0; k < 50; ++k) {
    S x = random_symmat(rng, 9, 2), y = random_symmat(rng, 9, 2);
    S x2 = jordan_product(x, x);
    EXPECT_EQ(jordan_product(jordan_product(x2, y), x), jordan_product(x2, jordan_product(y, x)));
  }
}

TEST(Identities, TraceFormAssociative) {
  Rng rng(8);
  for (int k = 0; k < 50; ++k) {
    S x = random_symmat(rng), y = random_symmat(rng), z = random_symmat(rng);
    EXPECT_EQ(trace_form(jordan_product(x, z), y), trace_form(x, jordan_product(y, z)));
  }
}

TEST(Identities, AdjugateInverse) {
  Rng rng(9);
  for (int k = 0; k < 50; ++k) {
    S x = random_symmat(rng, 9, 3);
    Mat3<Q> p = full(x) * full(adjugate(x));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) EXPECT_EQ(p(i, j), i == j ? det3(x) : Q(0));
  }
}

TEST(Identities, CrossAndTrilinear) {
  Rng rng(10);
  for (int k = 0; k < 50; ++k) {
    S x = random_symmat(rng), y = random_symmat(rng), z = random_symmat(rng);
    const Q a = draw_rational(rng, 5, 3);
    EXPECT_EQ(cross(x, y), cross(y, x));
    EXPECT_EQ(cross(x + a * z, y), cross(x, y) + a * cross(z, y));
    EXPECT_EQ(cross(x, x), Q(2) * adjugate(x));
    EXPECT_EQ(cross(x, y), adjugate(x + y) - adjugate(x) - adjugate(y));
    const Q v = trilinear_f(x, y, z);
    EXPECT_EQ(v, trilinear_f(y, x, z));
    EXPECT_EQ(v, trilinear_f(z, y, x));
    EXPECT_EQ(v, trilinear_f(x, z, y));
    EXPECT_EQ(v, trilinear_f(y, z, x));
    EXPECT_EQ(v, trilinear_f(z, x, y));
    EXPECT_EQ(trilinear_f(x, x, x), 6 * det3(x));
  }
}

TEST(Identities, PencilExpansion) {
  Rng rng(11);
  for (int k = 0; k < 10; ++k) {
    S x = random_symmat(rng), y = random_symmat(rng);
    for (int s = 0; s < 10; ++s) {
      const Q a = draw_rational(rng, 7, 3), b = draw_rational(rng, 7, 3);
      const Q rhs = a * a * a * det3(x) + b * b * b * det3(y) + a * a * b / 2 * trilinear_f(x, x, y) +
                    a * b * b / 2 * trilinear_f(x, y, y);
      EXPECT_EQ(det3(a * x + b * y), rhs);
    }
  }
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(S()), 0);
  EXPECT_EQ(rank(e1), 1);
  EXPECT_EQ(rank(e1 + e2), 2);
  EXPECT_EQ(rank(ones()), 1);
  EXPECT_EQ(rank(e), 3);
}

TEST(TextForm, RoundTrip) {
  S x = S::from_coords({Q(1), Q(-2), Q(3, 4), Q(0), Q(5), Q(-1, 7)});
  EXPECT_EQ(parse_symmat(format_symmat(x)), x);
  EXPECT_THROW(parse_symmat("1 2 3"), std::invalid_argument);
  EXPECT_THROW(parse_symmat("1 2 3 4 5 6 7"), std::invalid_argument);
  std::istringstream in("# tuple\n1 0 0 0 0 0\n\n0 1 0 0 0 0  # e2\n");
  auto t = read_symmat_tuple(in);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[1], e2);
}
