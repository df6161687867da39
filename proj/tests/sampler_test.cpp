#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "flexlist/sampler.hpp"
#include "oracles.hpp"

using namespace flexlist;

namespace {

double to_double(const Rational& q) { return q.convert_to<double>(); }

// Every S with |S| <= d, as sorted vertex lists.
std::vector<std::vector<Vertex>> small_subsets(int n, int d) {
  std::vector<std::vector<Vertex>> out;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    if (std::popcount(m) > d) continue;
    std::vector<Vertex> S;
    for (int v = 1; v <= n; ++v)
      if (m >> (v - 1) & 1u) S.push_back(v);
    out.push_back(std::move(S));
  }
  return out;
}

}  // namespace

TEST(FlexConstants, ExactValues) {
  auto k0 = FlexConstants::for_degree(0);
  EXPECT_EQ(k0.delta, make_rational(1, 2));
  EXPECT_EQ(k0.epsilon, make_rational(1, 2));
  auto k1 = FlexConstants::for_degree(1);
  EXPECT_EQ(k1.delta, make_rational(1, 9));
  EXPECT_EQ(k1.epsilon, make_rational(1, 81));
  auto k2 = FlexConstants::for_degree(2);
  EXPECT_EQ(k2.delta, make_rational(1, 64));
  EXPECT_EQ(k2.epsilon, make_rational(1, 262144));
  for (int d = 0; d <= 6; ++d) {
    auto k = FlexConstants::for_degree(d);
    EXPECT_GT(k.epsilon, 0);
    EXPECT_LE(k.epsilon, k.delta);
    EXPECT_LT(k.delta, 1);
  }
}

TEST(SampleFlexWdeg, Examples) {
  Graph k2 = Graph::complete(2);
  auto L2 = ListAssignment::uniform(2, {1, 2});
  std::map<Coloring, int> seen;
  for (std::uint64_t s = 0; s < 2000; ++s) ++seen[sample_flex_wdeg(k2, L2, 0, s)];
  ASSERT_EQ(seen.size(), 2u);
  EXPECT_TRUE(seen.count(Coloring{1, 2}) && seen.count(Coloring{2, 1}));
  EXPECT_NEAR(seen[(Coloring{1, 2})] / 2000.0, 0.5, 0.05);

  auto dist = flex_wdeg_distribution(k2, L2, 0);
  ASSERT_EQ(dist.support.size(), 2u);
  for (const auto& [phi, p] : dist.support) EXPECT_EQ(p, make_rational(1, 2));

  auto single = flex_wdeg_distribution(Graph(1), ListAssignment::uniform(1, {1, 2}), 0);
  EXPECT_EQ(single.marginal(1, 1), make_rational(1, 2));

  auto L3 = ListAssignment::uniform(3, {1, 2, 3});
  for (std::uint64_t s = 0; s < 200; ++s) EXPECT_TRUE(is_L_coloring(Graph::path(3), L3, sample_flex_wdeg(Graph::path(3), L3, 1, s)));
}

TEST(SampleFlexWdeg, DeterministicPerSeed) {
  Graph g = Graph::cycle(5);
  auto L = ListAssignment::uniform(5, {1, 2, 3, 4});
  for (std::uint64_t s = 0; s < 50; ++s) EXPECT_EQ(sample_flex_wdeg(g, L, 2, s), sample_flex_wdeg(g, L, 2, s));
}

TEST(SampleFlexWdeg, Preconditions) {
  try {
    sample_flex_wdeg(Graph::complete(4), ListAssignment::uniform(4, {1, 2, 3}), 1, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PreconditionViolated);
  }
  EXPECT_THROW(sample_flex_wdeg(Graph::path(3), ListAssignment::uniform(3, {1, 2}), 1, 0), Error);
}

TEST(ExactMarginals, Examples) {
  auto k2 = exact_marginals_flex_wdeg(Graph::complete(2), ListAssignment::uniform(2, {1, 2}), 0);
  for (const auto& [key, p] : k2) EXPECT_EQ(p, make_rational(1, 2));

  auto k4 = exact_marginals_flex_wdeg(Graph::complete(4), ListAssignment::uniform(4, {1, 2, 3, 4}), 2);
  for (const auto& [key, p] : k4) EXPECT_GE(p, FlexConstants::for_degree(2).epsilon);
  Rational row(0);
  for (Color c = 1; c <= 4; ++c) row += k4.at({3, c});
  EXPECT_EQ(row, Rational(1));
}

TEST(ExactMarginals, SupportCap) {
  SamplerOptions tiny;
  tiny.support_cap = 3;
  try {
    exact_marginals_flex_wdeg(Graph(3), ListAssignment::uniform(3, {1, 2}), 0, tiny);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CapExceeded);
  }
}

TEST(Avoidance, Examples) {
  std::vector<Vertex> none;
  EXPECT_EQ(avoidance_probability(Graph::complete(2), ListAssignment::uniform(2, {1, 2}), 0, none, 1), Rational(1));
  std::vector<Vertex> one{1};
  try {
    avoidance_probability(Graph::complete(2), ListAssignment::uniform(2, {1, 2}), 0, one, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SetTooLarge);
  }
  std::vector<Vertex> middle{2};
  Rational p = avoidance_probability(Graph::path(3), ListAssignment::uniform(3, {1, 2, 3}), 1, middle, 1);
  EXPECT_GE(p, make_rational(1, 9));
  EXPECT_LE(p, Rational(1));
}

namespace {

// Exact marginal and avoidance bounds of the procedure over the connected catalog for one d.
void check_wdeg_catalog(int d) {
  int instances = 0;
  auto K = FlexConstants::for_degree(d);
  for (int n = 1; n <= 5; ++n)
    for (const auto& g : oracle::graphs_up_to_iso(n, true)) {
      if (!is_weakly_degenerate(g, d)) continue;
      for (const auto& L : oracle::lists_up_to_color_perm(n, d + 2, 4)) {
        auto dist = flex_wdeg_distribution(g, L, d);
        ASSERT_EQ(dist.total(), Rational(1));
        for (const auto& [phi, p] : dist.support) ASSERT_TRUE(is_L_coloring(g, L, phi));
        for (const auto& [key, p] : marginals_of(dist, L))
          ASSERT_GE(p, K.epsilon) << "n=" << n << " m=" << g.edge_count() << " vertex " << key.first << " color "
                                  << key.second;
        for (const auto& S : small_subsets(n, d))
          for (Color c = 1; c <= 4; ++c)
            ASSERT_GE(avoidance_probability(dist, S, c), pow(K.delta, static_cast<unsigned>(S.size())));
        ++instances;
      }
    }
  EXPECT_GT(instances, 10);
}

}  // namespace

TEST(WdegCatalog, DegreeOneMarginalAndAvoidanceBounds) { check_wdeg_catalog(1); }

TEST(WdegCatalog, DegreeZeroMarginalBound) { check_wdeg_catalog(0); }

TEST(WdegCatalog, DegreeZeroEdgeHasQuarterMarginal) {
  // A block of one degree-1 vertex still sees one outside neighbour, so its color can be blocked.
  ListAssignment L(2);
  L.set(1, {1, 2});
  L.set(2, {1, 3});
  auto dist = flex_wdeg_distribution(Graph::complete(2), L, 0);
  EXPECT_EQ(dist.marginal(1, 1), make_rational(1, 4));
  EXPECT_EQ(dist.marginal(1, 2), make_rational(3, 4));
  // The LP still finds a distribution with all marginals 1/2.
  EXPECT_EQ(weighted_flexibility_lp(Graph::complete(2), L).epsilon, make_rational(1, 2));
}

TEST(WdegCatalog, WeightedFlexibilityAtLeastEpsilon) {
  for (int d = 0; d <= 1; ++d)
    for (int n = 1; n <= 4; ++n)
      for (const auto& g : oracle::graphs_up_to_iso(n, true)) {
        if (!is_weakly_degenerate(g, d)) continue;
        for (const auto& L : oracle::lists_up_to_color_perm(n, d + 2, 4))
          ASSERT_GE(weighted_flexibility_lp(g, L).epsilon, FlexConstants::for_degree(d).epsilon);
      }
}

TEST(SampleFlexWdeg, FrequenciesMatchExactDistribution) {
  struct Case {
    Graph g;
    ListAssignment L;
    int d;
  };
  ListAssignment mixed(4);
  mixed.set(1, {1, 2, 3});
  mixed.set(2, {2, 3, 4});
  mixed.set(3, {1, 3, 4});
  mixed.set(4, {1, 2, 4});
  std::vector<Case> cases{{Graph::path(3), ListAssignment::uniform(3, {1, 2, 3}), 1},
                          {Graph::cycle(4), mixed, 1},
                          {Graph::complete(3), ListAssignment::uniform(3, {1, 2, 3, 4}), 2}};
  const int samples = 100000;
  for (const auto& cs : cases) {
    auto dist = flex_wdeg_distribution(cs.g, cs.L, cs.d);
    std::map<Coloring, int> counts;
    for (int s = 0; s < samples; ++s) ++counts[sample_flex_wdeg(cs.g, cs.L, cs.d, derive_seed(99, s))];
    double tv = 0, chi2 = 0;
    int observed_total = 0;
    for (const auto& [phi, p] : dist.support) {
      double expected = to_double(p) * samples;
      double got = counts.count(phi) ? counts[phi] : 0;
      observed_total += static_cast<int>(got);
      tv += std::abs(got / samples - to_double(p));
      chi2 += (got - expected) * (got - expected) / expected;
    }
    ASSERT_EQ(observed_total, samples) << "sampler produced a coloring outside the exact support";
    tv /= 2;
    const double dof = static_cast<double>(dist.support.size() - 1);
    EXPECT_LT(tv, 0.01);
    // Roughly a 5-sigma upper tail of chi-square with dof degrees of freedom.
    EXPECT_LT(chi2, dof + 5 * std::sqrt(2 * dof));
  }
}

TEST(MadProcedure, Examples) {
  Graph c6 = Graph::cycle(6);
  auto L = ListAssignment::uniform(6, {1, 2, 3});
  for (std::uint64_t s = 0; s < 500; ++s) {
    auto phi = run_mad_procedure(c6, L, {{1, 1}}, 3, exact_choosability_oracle(), s);
    ASSERT_TRUE(is_L_coloring(c6, L, phi));
  }
  MadProcedure proc(c6, L, 3, exact_choosability_oracle());
  for (std::uint64_t s = 0; s < 50; ++s) EXPECT_TRUE(is_L_coloring(c6, L, proc.run(Request{}, s)));
}

TEST(MadProcedure, Preconditions) {
  auto oracle = exact_choosability_oracle();
  EXPECT_THROW(MadProcedure(Graph::complete(4), ListAssignment::uniform(4, {1, 2, 3}), 2, oracle), Error);
  EXPECT_THROW(MadProcedure(Graph::cycle(6), ListAssignment::uniform(6, {1, 2}), 3, oracle), Error);
  ChoosabilityOracle broken = [](const Graph&, const ListAssignment&) { return std::optional<Coloring>{}; };
  try {
    MadProcedure(Graph::cycle(6), ListAssignment::uniform(6, {1, 2, 3}), 3, broken);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OracleFailure);
  }
}

TEST(MadProcedure, RestrictionIsIndependentAndCoversAFraction) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 3 + trial % 6;
    Graph g = oracle::random_connected_graph(rng, n, 0.15);
    // Degeneracy k makes G (k+1)-choosable, which the procedure needs for d-1 colors.
    int d = std::max({3, static_cast<int>(std::ceil(max_average_degree(g).convert_to<double>())), degeneracy(g).d + 2});
    ListAssignment L(n);
    for (Vertex v = 1; v <= n; ++v) L.set(v, oracle::random_list(rng, d + static_cast<int>(rng() % 2), d + 2));
    MadProcedure proc(g, L, d, exact_choosability_oracle());
    Request r;
    for (Vertex v = 1; v <= n; ++v)
      if (rng() % 2) r.set(v, L[v][rng() % L[v].size()]);
    Request a = proc.restrict_to_class(r);
    for (auto [u, c] : a)
      for (auto [v, c2] : a) ASSERT_FALSE(g.has_edge(u, v));
    ASSERT_GE(static_cast<int>(a.size()) * (d - 1), static_cast<int>(r.size()));
    for (std::uint64_t s = 0; s < 20; ++s) ASSERT_TRUE(is_L_coloring(g, L, proc.run(r, derive_seed(trial, s))));
  }
}

TEST(MadProcedure, RequestSatisfiedWithPositiveFrequencyOnTheCycle) {
  Graph c6 = Graph::cycle(6);
  auto L = ListAssignment::uniform(6, {1, 2, 3});
  MadProcedure proc(c6, L, 3, exact_choosability_oracle());
  Request r{{1, 1}, {4, 1}};
  const int trials = 20000;
  long matched = 0;
  for (int s = 0; s < trials; ++s) matched += static_cast<long>(matched_count(r, proc.run(r, derive_seed(5, s))));
  double fraction = static_cast<double>(matched) / (trials * 2.0);
  EXPECT_GT(fraction, 1.0 / 1458);
}
