#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "jinv/dimension.hpp"
#include "jinv/generators.hpp"

using namespace jinv;

namespace {

using Weight = std::array<int, 3>;

// Number of monomials of the multidegree with each torus weight, by convolution.
std::map<Weight, long long> weight_counts(const MultiDegree& md) {
  std::map<Weight, long long> acc{{{0, 0, 0}, 1}};
  const Weight cw[6] = {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
  for (int d : md) {
    std::map<Weight, long long> slot{{{0, 0, 0}, 1}};
    for (int c = 0; c < 6; ++c) {
      std::map<Weight, long long> next;
      for (const auto& [w, n] : slot) {
        int used = w[0] + w[1] + w[2];
        for (int e = 0; 2 * e + used <= 2 * d; ++e) {
          Weight nw{w[0] + e * cw[c][0], w[1] + e * cw[c][1], w[2] + e * cw[c][2]};
          next[nw] += n;
        }
      }
      slot.swap(next);
    }
    std::map<Weight, long long> merged;
    for (const auto& [w, n] : slot) {
      if (w[0] + w[1] + w[2] != 2 * d) continue;
      for (const auto& [v, m] : acc) merged[{w[0] + v[0], w[1] + v[1], w[2] + v[2]}] += n * m;
    }
    acc.swap(merged);
  }
  return acc;
}

// Invariant count from the Weyl character formula: alternating sum over the Weyl group
// of weight multiplicities shifted by w(rho) - rho.
long long weyl_invariants(const MultiDegree& md) {
  const int total = total_degree(md);
  if ((2 * total) % 3) return 0;
  const int k = 2 * total / 3;
  const auto counts = weight_counts(md);
  auto m = [&](int a, int b) {  // multiplicity of weight (k,k,k) + a*alpha1 + b*alpha2
    Weight w{k + a, k - a + b, k - b};
    auto it = counts.find(w);
    return it == counts.end() ? 0LL : it->second;
  };
  return m(0, 0) - m(1, 0) - m(0, 1) + m(2, 1) + m(1, 2) - m(2, 2);
}

}  // namespace

TEST(WeightZero, Examples) {
  auto b = weight_zero_monomials(1, {3});
  EXPECT_EQ(b.size(), 5u);
  EXPECT_EQ(weight_zero_monomials(1, {1}).size(), 0u);
  EXPECT_EQ(weight_zero_monomials(1, {0}).size(), 1u);
  EXPECT_THROW(weight_zero_monomials(2, {3}), std::invalid_argument);
}

TEST(WeightZero, MatchesBruteForceFilter) {
  // all 6^3 products x^(1) y^(2) z^(3) filtered by weight
  std::size_t brute = 0;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      for (int c = 0; c < 6; ++c) {
        Weight w{0, 0, 0};
        for (int k : {a, b, c}) {
          ++w[kCoordIndex[k].first];
          ++w[kCoordIndex[k].second];
        }
        if (w[0] == 2 && w[1] == 2 && w[2] == 2) ++brute;
      }
  EXPECT_EQ(weight_zero_monomials(3, {1, 1, 1}).size(), brute);
}

TEST(WeightZero, CanonicalOrderAndWeights) {
  auto blk = weight_zero_monomials(3, {2, 1, 3});
  ASSERT_GT(blk.size(), 1u);
  for (std::size_t i = 1; i < blk.size(); ++i) EXPECT_GT(blk.monomials[i - 1], blk.monomials[i]);
  for (const auto& m : blk.monomials) {
    Weight w{0, 0, 0};
    std::array<int, 3> deg{0, 0, 0};
    for (int v = 0; v < 18; ++v) {
      deg[v / 6] += m[v];
      w[kCoordIndex[v % 6].first] += m[v];
      w[kCoordIndex[v % 6].second] += m[v];
    }
    EXPECT_EQ(deg, (std::array<int, 3>{2, 1, 3}));
    EXPECT_EQ(w, (Weight{4, 4, 4}));
  }
  EXPECT_EQ(blk.monomials, weight_zero_monomials(3, {2, 1, 3}).monomials);
}

TEST(DerivationMatrix, ColumnSparsity) {
  auto blk = weight_zero_monomials(3, {2, 2, 2});
  for (const auto& dm : derivation_matrices(blk))
    for (const auto& col : dm.columns) EXPECT_LE(col.size(), 6u * 2);
  // each column has at most (total degree) distinct image monomials per orientation
  for (const auto& dm : derivation_matrices(weight_zero_monomials(1, {3})))
    for (const auto& col : dm.columns) EXPECT_LE(col.size(), 3u);
}

TEST(Dimension, KnownValues) {
  EXPECT_EQ(invariant_dimension(3, 3).total, 10u);
  EXPECT_EQ(invariant_dimension(3, 6).total, 56u);
  EXPECT_EQ(invariant_dimension(2, 6).total, 10u);
  EXPECT_EQ(invariant_dimension(2, 3).total, 4u);
  EXPECT_EQ(invariant_dimension(1, 3).total, 1u);
  EXPECT_EQ(invariant_dimension(1, 6).total, 1u);
  EXPECT_EQ(invariant_dimension(3, 4).total, 0u);
}

TEST(Dimension, MatchesWeylCharacterOracle) {
  for (int p = 1; p <= 3; ++p)
    for (int d : {3, 6})
      for (const auto& md : compositions(p, d)) {
        auto r = invariant_dimension(p, d, md);
        EXPECT_EQ(static_cast<long long>(r.total), weyl_invariants(md)) << "p=" << p << " d=" << d;
      }
  for (const auto& md : std::vector<MultiDegree>{{2, 2, 2}, {3, 3}, {4, 1, 1}, {1, 1, 1, 1, 1, 1}, {6, 0, 0}})
    EXPECT_EQ(static_cast<long long>(invariant_dimension(static_cast<int>(md.size()), total_degree(md), md).total),
              weyl_invariants(md));
}

TEST(Dimension, PerMultidegreeSumAndPrimes) {
  auto r = invariant_dimension(3, 6);
  std::size_t sum = 0;
  for (const auto& b : r.per_multidegree) {
    sum += b.dim;
    ASSERT_EQ(b.per_prime.size(), 2u);
    EXPECT_EQ(b.per_prime[0], b.per_prime[1]);
  }
  EXPECT_EQ(sum, 56u);
  EXPECT_FALSE(r.primes_disagreed);
  EXPECT_EQ(r.primes_used.size(), 2u);
  DimensionOptions opt;
  opt.primes = {kPrimeC, 1000000007ULL};
  EXPECT_EQ(invariant_dimension(3, 6, std::nullopt, opt).total, 56u);
}

TEST(Dimension, CeilingsAndArguments) {
  EXPECT_THROW(invariant_dimension(3, 12), std::out_of_range);
  EXPECT_THROW(invariant_dimension(4, 9), std::out_of_range);
  EXPECT_THROW(invariant_dimension(5, 9), std::out_of_range);
  EXPECT_THROW(invariant_dimension(3, 6, MultiDegree{2, 2}), std::invalid_argument);
  DimensionOptions one;
  one.primes = {kPrimeA};
  EXPECT_THROW(invariant_dimension(2, 3, std::nullopt, one), std::invalid_argument);
  DimensionOptions raised;
  raised.ceiling = 12;
  EXPECT_EQ(invariant_dimension(1, 12, std::nullopt, raised).total, 1u);
}

TEST(Dimension, GeneratorsLieInKernel) {
  TreeBuilder b;
  auto g = gens_A3(b);
  g.push_back(deg9_descriptor(b));
  for (const auto& d : gens_A2(b)) g.push_back(d);
  for (const auto& k : generators_in_kernel(g)) {
    EXPECT_TRUE(k.in_block) << k.name;
    EXPECT_TRUE(k.nonzero) << k.name;
    EXPECT_TRUE(k.in_kernel) << k.name;
  }
}

TEST(Dimension, NonInvariantIsNotInKernel) {
  TreeBuilder b;
  // tr(x, x) has weight-zero terms but is not invariant
  InvariantDescriptor probe("tr(x,x)", 1, b.trace(b.slot(0), b.slot(0)));
  auto k = generators_in_kernel({probe}).front();
  EXPECT_FALSE(k.in_kernel);
}

TEST(Poincare, Numerator) {
  auto n = poincare_numerator_A3(10, 56);
  EXPECT_EQ(n.a, (std::array<long long, 5>{1, 0, 1, 0, 1}));
  EXPECT_TRUE(n.palindromic());
  EXPECT_EQ(series_coefficient(1), 10);
  EXPECT_EQ(series_coefficient(2), 55);
  EXPECT_EQ(n.a[0], 1);
  EXPECT_THROW(poincare_numerator_A3(9, 56), std::domain_error);
  EXPECT_NO_THROW(poincare_numerator_A3(10, 56, 230));
  EXPECT_THROW(poincare_numerator_A3(10, 56, 220), std::domain_error);
}

TEST(Poincare, PredictedDimensions) {
  auto n = poincare_numerator_A3(10, 56);
  EXPECT_EQ(predicted_dim(n, 0), 1);
  EXPECT_EQ(predicted_dim(n, 3), 10);
  EXPECT_EQ(predicted_dim(n, 6), 56);
  EXPECT_EQ(predicted_dim(n, 9), 230);
  std::ostringstream warn;
  EXPECT_EQ(predicted_dim(n, 4, &warn), 0);
  EXPECT_FALSE(warn.str().empty());
}

TEST(Poincare, RankAtOne) {
  EXPECT_EQ(verify_rank_free_module(poincare_numerator_A3(10, 56)), 3);
  PoincareNumerator free_case;
  free_case.a = {1, 0, 0, 0, 0};
  EXPECT_EQ(verify_rank_free_module(free_case), 1);
}

TEST(Poincare, Degree9AgreesWithKernel) {
  EXPECT_EQ(static_cast<long long>(invariant_dimension(3, 9).total), predicted_dim(poincare_numerator_A3(10, 56), 9));
}

TEST(SparseRank, AgreesWithDense) {
  ModulusScope scope(kPrimeA);
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const int r = 1 + trial % 9, c = 1 + (trial * 7) % 11;
    DenseMatrixFp dense(r, std::vector<Fp>(c, Fp(0)));
    std::vector<SparseRow> rows(r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        if (rng() % 3 == 0) {
          const Fp v = Fp(static_cast<long long>(rng() % 5) + 1);
          dense[i][j] = v;
          rows[i].emplace_back(j, v);
        }
    // duplicate a row to force dependence
    if (r > 1) {
      dense[r - 1] = dense[0];
      rows[r - 1] = rows[0];
    }
    EXPECT_EQ(sparse_rank(rows, c), dense_rank(dense));
  }
}
