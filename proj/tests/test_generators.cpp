#include <gtest/gtest.h>

#include <set>

#include "jinv/generators.hpp"

using namespace jinv;

namespace {

using Q = Rational;
using S = SymMat3<Q>;

const S e = S::identity();
const S e1 = S::frame(1), e2 = S::frame(2), e3 = S::frame(3);

std::vector<Q> values(const std::vector<InvariantDescriptor>& ds, const std::vector<S>& pt) {
  Evaluator<Q> ev(pt);
  std::vector<Q> out;
  for (const auto& d : ds) out.push_back(ev(d));
  return out;
}

}  // namespace

TEST(GensA2, Examples) {
  TreeBuilder b;
  auto g = gens_A2(b);
  ASSERT_EQ(g.size(), 4u);
  EXPECT_EQ(g[0].multidegree(), (MultiDegree{3, 0}));
  EXPECT_EQ(g[1].multidegree(), (MultiDegree{0, 3}));
  EXPECT_EQ(g[2].multidegree(), (MultiDegree{2, 1}));
  EXPECT_EQ(g[3].multidegree(), (MultiDegree{1, 2}));
  EXPECT_EQ(values(g, {e, e}), (std::vector<Q>{1, 1, 6, 6}));
  EXPECT_EQ(values(g, {e1, e2}), (std::vector<Q>{0, 0, 0, 0}));
  EXPECT_EQ(values(g, {e, e1}), (std::vector<Q>{1, 0, 2, 0}));
}

TEST(GensA3, MultidegreesAndValues) {
  TreeBuilder b;
  auto g = gens_A3(b);
  ASSERT_EQ(g.size(), 11u);
  const std::vector<MultiDegree> expected{{3, 0, 0}, {0, 3, 0}, {0, 0, 3}, {2, 1, 0}, {2, 0, 1}, {1, 2, 0},
                                          {0, 2, 1}, {1, 0, 2}, {0, 1, 2}, {1, 1, 1}, {2, 2, 2}};
  for (std::size_t i = 0; i < 11; ++i) EXPECT_EQ(g[i].multidegree(), expected[i]) << g[i].name();
  auto v = values(g, {e, e, e});
  for (int i = 0; i < 3; ++i) EXPECT_EQ(v[i], 1);
  for (int i = 3; i < 11; ++i) EXPECT_EQ(v[i], 6);
  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    S z = random_symmat(rng);
    auto w = values(g, {e1, e2, z});
    EXPECT_EQ(w[10], 0);
  }
  EXPECT_EQ(values(g, {e, e, S::diag(1, 2, 3)})[10], 22);
}

TEST(GensA3, TripleNamesFollowPolarizationOrder) {
  TreeBuilder b;
  auto g = gens_A3(b);
  Rng rng(4);
  auto pt = random_tuple(rng, 3);
  const S &x = pt[0], &y = pt[1], &z = pt[2];
  auto v = values(g, pt);
  EXPECT_EQ(v[3], trilinear_f(x, x, y));
  EXPECT_EQ(v[4], trilinear_f(x, x, z));
  EXPECT_EQ(v[5], trilinear_f(y, y, x));
  EXPECT_EQ(v[6], trilinear_f(y, y, z));
  EXPECT_EQ(v[7], trilinear_f(z, z, x));
  EXPECT_EQ(v[8], trilinear_f(z, z, y));
  EXPECT_EQ(v[9], trilinear_f(x, y, z));
  EXPECT_EQ(v[10], trilinear_f(adjugate(x), adjugate(y), adjugate(z)));
}

TEST(Deg9, Examples) {
  Rng rng(5);
  auto pt = random_tuple(rng, 5);
  EXPECT_EQ(deg9(e1, pt[1], pt[2], pt[3], pt[4]), 0);
  EXPECT_EQ(deg9(pt[0], pt[1], pt[2], pt[3], S()), 0);
  EXPECT_EQ(deg9(e, e, e, e, e), 96);
  TreeBuilder b;
  auto d = deg9_descriptor(b);
  EXPECT_EQ(d.multidegree(), (MultiDegree{3, 3, 1, 1, 1}));
  EXPECT_EQ(evaluate<Q>(d, pt), deg9(pt[0], pt[1], pt[2], pt[3], pt[4]));
}

TEST(Enumerate, Counts) {
  TreeBuilder b;
  EXPECT_EQ(enumerate_generators(1, b).generators.size(), 1u);
  EXPECT_EQ(enumerate_generators(2, b).generators.size(), 4u);
  EXPECT_EQ(enumerate_generators(3, b).generators.size(), 11u);
  EXPECT_THROW(enumerate_generators(0, b), std::invalid_argument);
  EXPECT_THROW(enumerate_generators(6, b), std::invalid_argument);
  auto f4 = enumerate_generators(4, b);
  EXPECT_EQ(f4.count_by_degree.at(3), 20u);
  EXPECT_GT(f4.count_by_degree.at(6), 0u);
  EXPECT_EQ(f4.generators.size() + f4.evaluation_merges + f4.vanishing, f4.candidates);
}

TEST(Enumerate, P5CrossSwapIsRedundant) {
  TreeBuilder b;
  auto fam = enumerate_generators(5, b);
  Rng rng(6);
  auto pt = random_tuple(rng, 5);
  Evaluator<Q> ev(pt);
  std::set<Q> retained;
  for (const auto& g : fam.generators)
    if (g.total_degree() == 6) retained.insert(ev(g));
  // f(x_j x x_i, ...) for swapped factors must match a retained representative
  const auto x = [&](int i) { return b.slot(i); };
  int checked = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      for (int k = 0; k < 5; ++k) {
        InvariantDescriptor swapped("swap", 5,
                                    b.f(b.cross(x(j), x(i)), b.cross(x(k), x((k + 1) % 5)), b.cross(x(i), x(k))));
        const Q v = ev(swapped);
        if (v == 0) continue;
        EXPECT_TRUE(retained.count(v)) << swapped.formula();
        ++checked;
      }
  EXPECT_GT(checked, 0);
}

TEST(Invariance, SmallFamiliesPass) {
  TreeBuilder b;
  for (int p = 1; p <= 3; ++p) {
    auto fam = enumerate_generators(p, b);
    InvarianceOptions opt;
    opt.trials = 20;
    opt.seed = 100 + p;
    for (const auto& r : check_invariance(fam.generators, opt)) EXPECT_TRUE(r.pass()) << r.name;
    for (bool ok : check_multihomogeneous(fam.generators, 7)) EXPECT_TRUE(ok);
  }
}

TEST(Invariance, ProbeFails) {
  TreeBuilder b;
  InvariantDescriptor probe("x11", 1, b.entry(b.slot(0), 0, 0));
  EXPECT_FALSE(check_invariance(probe, 100, 1).pass());
  InvarianceOptions opt;
  opt.identity_only = true;
  opt.trials = 5;
  EXPECT_TRUE(check_invariance({probe}, opt).front().pass());
  EXPECT_THROW(check_invariance(probe, 0, 1), std::invalid_argument);
}

TEST(Multihomogeneous, Examples) {
  TreeBuilder b;
  auto g = gens_A3(b);
  EXPECT_TRUE(check_multihomogeneous(g[0], 1));
  EXPECT_TRUE(check_multihomogeneous(g[10], 2));
  EXPECT_TRUE(check_multihomogeneous(deg9_descriptor(b), 3));
}

TEST(Pencil, Examples) {
  EXPECT_EQ(binary_cubic_of_pencil(e, e1), (std::array<Q, 4>{1, 1, 0, 0}));
  EXPECT_EQ(binary_cubic_of_pencil(e, e), (std::array<Q, 4>{1, 3, 3, 1}));
  EXPECT_EQ(binary_cubic_of_pencil(e1 + e2, e3), (std::array<Q, 4>{0, 1, 0, 0}));
}

TEST(Pencil, SectionExamples) {
  auto s = pencil_from_factored_cubic<Q>(Q(1), {Q(0), Q(0), Q(0)});
  EXPECT_EQ(s.x, e);
  EXPECT_EQ(s.y, S());
  s = pencil_from_factored_cubic<Q>(Q(1), {Q(0), Q(0)});
  EXPECT_EQ(s.x, e1 + e2);
  EXPECT_EQ(s.y, e3);
  s = pencil_from_factored_cubic<Q>(Q(1), {Q(1), Q(2), Q(3)});
  EXPECT_EQ(s.y, Q(-1) * S::diag(1, 2, 3));
  EXPECT_EQ(binary_cubic_of_pencil(s.x, s.y), (std::array<Q, 4>{1, -6, 11, -6}));
  EXPECT_THROW(pencil_from_factored_cubic<Q>(Q(0), {}), std::invalid_argument);
  EXPECT_THROW(pencil_from_factored_cubic<Q>(Q(1), {Q(1), Q(1), Q(1), Q(1)}), std::invalid_argument);
}

TEST(Pencil, SectionRoundTripRandom) {
  Rng rng(8);
  for (int k = 0; k < 100; ++k) {
    const Q lambda = draw_nonzero_rational(rng, 9, 4);
    std::vector<Q> roots;
    const int n = static_cast<int>(draw_int(rng, 0, 3));
    for (int i = 0; i < n; ++i) roots.push_back(draw_rational(rng, 9, 3));
    auto s = pencil_from_factored_cubic(lambda, roots);
    auto got = binary_cubic_of_pencil(s.x, s.y);
    auto want = expand_factored_cubic(lambda, roots);
    for (int i = 0; i < 4; ++i) EXPECT_EQ(got[i], s.scale * want[i]);
  }
}

TEST(KrullDim, Examples) {
  EXPECT_EQ(krull_dim(2), 4);
  EXPECT_EQ(krull_dim(3), 10);
  EXPECT_EQ(krull_dim(5), 22);
  EXPECT_THROW(krull_dim(1), std::invalid_argument);
}

TEST(DescriptorJson, RoundTrip) {
  TreeBuilder b;
  auto d = deg9_descriptor(b);
  auto j = to_json(d);
  TreeBuilder b2;
  auto back = descriptor_from_json(j, b2);
  EXPECT_EQ(back.formula(), d.formula());
  EXPECT_EQ(back.multidegree(), d.multidegree());
  j["multidegree"] = {1, 1, 1, 1, 1};
  EXPECT_THROW(descriptor_from_json(j, b2), std::invalid_argument);
  nlohmann::json bad = {{"name", "q"}, {"arity", 1}, {"tree", {"slot", 0}}};
  EXPECT_THROW(descriptor_from_json(bad, b2), std::invalid_argument);
}

TEST(DescriptorJson, ArityViolationRejected) {
  TreeBuilder b;
  EXPECT_THROW(InvariantDescriptor("bad", 1, b.det(b.slot(2))), std::invalid_argument);
  EXPECT_THROW(b.f(b.slot(0), b.slot(1), b.det(b.slot(0))), std::invalid_argument);
}
