#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <random>
#include <set>

#include "flexlist/nullstellensatz.hpp"
#include "oracles.hpp"

using namespace flexlist;

namespace {

std::vector<Vertex> identity_order(int n) {
  std::vector<Vertex> o(static_cast<std::size_t>(n));
  std::iota(o.begin(), o.end(), 1);
  return o;
}

// Sparse expansion of the graph polynomial into a monomial map, with no pruning.
std::map<std::vector<int>, BigInt> expand_sparse(const Graph& g, const std::vector<Vertex>& ordering) {
  const int n = g.vertex_count();
  std::vector<int> pos(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k < n; ++k) pos[ordering[k]] = k;
  std::map<std::vector<int>, BigInt> poly{{std::vector<int>(n, 0), BigInt(1)}};
  for (auto [u, v] : g.edges()) {
    int i = std::min(pos[u], pos[v]), j = std::max(pos[u], pos[v]);
    std::map<std::vector<int>, BigInt> next;
    for (const auto& [mono, c] : poly) {
      auto up = mono;
      ++up[j];
      next[up] += c;
      auto down = mono;
      ++down[i];
      next[down] -= c;
    }
    poly.clear();
    for (auto& [mono, c] : next)
      if (c != 0) poly.emplace(mono, c);
  }
  return poly;
}

void for_each_composition(int total, int parts, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> r(static_cast<std::size_t>(parts), 0);
  std::function<void(int, int)> rec = [&](int idx, int left) {
    if (idx == parts - 1) {
      r[idx] = left;
      visit(r);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      r[idx] = x;
      rec(idx + 1, left - x);
    }
  };
  rec(0, total);
}

bool values_form_range(std::vector<int> values, int lo) {
  std::sort(values.begin(), values.end());
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] != lo + static_cast<int>(i)) return false;
  return true;
}

long long fact(int k) { return k <= 1 ? 1 : k * fact(k - 1); }

int residue_of(const BigInt& v, int m) {
  BigInt r = v % m;
  if (r < 0) r += m;
  return static_cast<int>(r);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::InternalError;
}

}  // namespace

TEST(GraphPolynomial, Examples) {
  Graph k2 = Graph::complete(2);
  EXPECT_EQ(graph_polynomial_coeff(k2, {{1, 2}, {0, 1}}), BigInt(1));
  EXPECT_EQ(graph_polynomial_coeff(k2, {{1, 2}, {1, 0}}), BigInt(-1));
  EXPECT_EQ(graph_polynomial_coeff(k2, {{2, 1}, {0, 1}}), BigInt(1));

  Graph k3 = Graph::complete(3);
  EXPECT_EQ(graph_polynomial_coeff(k3, {{1, 2, 3}, {0, 1, 2}}), BigInt(1));
  EXPECT_EQ(graph_polynomial_coeff(k3, {{1, 2, 3}, {1, 1, 1}}), BigInt(0));
  EXPECT_EQ(graph_polynomial_coeff(k3, {{1, 2, 3}, {2, 1, 0}}), BigInt(-1));
  EXPECT_EQ(graph_polynomial_coeff(k3, {{1, 2, 3}, {0, 0, 2}}), BigInt(0));
  EXPECT_EQ(graph_polynomial_coeff(k3, {{1, 2, 3}, {-1, 2, 2}}), BigInt(0));
}

TEST(GraphPolynomial, RejectsBadOrderingsAndHugeTables) {
  Graph k3 = Graph::complete(3);
  EXPECT_EQ(kind_of([&] { graph_polynomial_coeff(k3, {{1, 1, 2}, {0, 1, 2}}); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([&] { graph_polynomial_coeff(k3, {{1, 2}, {0, 1}}); }), ErrorKind::InvalidArgument);
  Graph big = Graph::complete(10);
  EXPECT_EQ(kind_of([&] { GraphPolynomial(big, identity_order(10), std::vector<int>(10, 9)); }),
            ErrorKind::CapExceeded);
}

TEST(GraphPolynomial, MatchesSparseExpansionOnSmallGraphs) {
  std::mt19937_64 rng(31);
  int compared = 0;
  for (int trial = 0; trial < 120; ++trial) {
    int n = 2 + trial % 5;
    Graph g = oracle::random_graph(rng, n, 0.6);
    auto order = identity_order(n);
    std::shuffle(order.begin(), order.end(), rng);
    auto sparse = expand_sparse(g, order);
    const int m = static_cast<int>(g.edge_count());
    for_each_composition(m, n, [&](const std::vector<int>& e) {
      auto it = sparse.find(e);
      BigInt expected = it == sparse.end() ? BigInt(0) : it->second;
      ASSERT_EQ(graph_polynomial_coeff(g, {order, e}), expected);
      ++compared;
    });
  }
  EXPECT_GT(compared, 1000);
}

TEST(ShiftCondition, Examples) {
  EXPECT_TRUE(shift_condition({0, 1}, {2, 0}));
  EXPECT_EQ(add_request({0, 1}, {2, 0}), (Bijection{2, 1}));
  EXPECT_FALSE(shift_condition({1, 0}, {2, 0}));
  EXPECT_EQ(add_request({1, 0}, {2, 0}), (Bijection{3, 0}));

  Bijection pi{2, 0, 1};
  EXPECT_TRUE(shift_condition({0, 2, 1}, {3, 0, 0}));
  EXPECT_FALSE(shift_condition(pi, {3, 0, 0}));
  EXPECT_TRUE(shift_condition({1, 0, 2}, {0, 3, 0}));

  EXPECT_THROW(shift_condition({0, 0}, {2, 0}), Error);
  EXPECT_THROW(shift_condition({0, 1}, {1, 0}), Error);
}

TEST(ShiftCondition, EquationIffShiftIsPermutationForDUpToFive) {
  for (int d = 1; d <= 5; ++d) {
    for_each_composition(d, d, [&](const std::vector<int>& r) {
      Bijection pi(static_cast<std::size_t>(d));
      std::iota(pi.begin(), pi.end(), 0);
      do {
        std::vector<int> shifted(pi.size());
        for (std::size_t t = 0; t < pi.size(); ++t) shifted[t] = pi[t] + r[t];
        ASSERT_EQ(shift_condition(pi, r), values_form_range(shifted, 1));
      } while (std::next_permutation(pi.begin(), pi.end()));
    });
  }
}

TEST(SignedShiftable, Examples) {
  auto a = count_signed_shiftable(2, {2, 0});
  EXPECT_EQ(a.count, 1);
  EXPECT_EQ(a.sign_product, -1);
  auto b = count_signed_shiftable(2, {1, 1});
  EXPECT_EQ(b.count, 2);
  EXPECT_EQ(b.sign_product, 1);
  auto c = count_signed_shiftable(4, {4, 0, 0, 0});
  EXPECT_EQ(c.count, 6);
  EXPECT_EQ(c.sign_product, -1);
  EXPECT_EQ(kind_of([] { count_signed_shiftable(8, {8, 0, 0, 0, 0, 0, 0, 0}); }), ErrorKind::CapExceeded);
  EXPECT_THROW(count_signed_shiftable(2, {1, 0}), Error);
}

TEST(SignedShiftable, CountAndSignAgreeWithIndependentCountForDUpToSix) {
  for (int d = 1; d <= 6; ++d) {
    for_each_composition(d, d, [&](const std::vector<int>& r) {
      long long count = 0;
      std::set<int> signs;
      Bijection pi(static_cast<std::size_t>(d));
      std::iota(pi.begin(), pi.end(), 0);
      do {
        std::vector<int> shifted(pi.size());
        for (std::size_t t = 0; t < pi.size(); ++t) shifted[t] = pi[t] + r[t];
        if (!values_form_range(shifted, 1)) continue;
        ++count;
        signs.insert(sign_of(pi) * sign_of(shifted));
      } while (std::next_permutation(pi.begin(), pi.end()));
      const int k = static_cast<int>(std::count_if(r.begin(), r.end(), [](int x) { return x > 0; }));
      auto got = count_signed_shiftable(d, r);
      ASSERT_EQ(got.count, count);
      ASSERT_EQ(count, fact(k) * fact(d - k));
      ASSERT_EQ(signs.size(), 1u);
      ASSERT_EQ(*signs.begin(), got.sign_product);
      ASSERT_EQ(got.sign_product, (k + d) % 2 ? -1 : 1);
    });
  }
}

TEST(CompleteToMaximal, Examples) {
  auto k3 = complete_to_maximal(Graph::complete(3), 2);
  EXPECT_EQ(k3.graph.edge_count(), 3u);
  EXPECT_EQ(k3.ordering.size(), 3u);
  EXPECT_TRUE(is_maximal_degenerate_ordering(k3.graph, k3.ordering, 2));

  auto p3 = complete_to_maximal(Graph::path(3), 2);
  EXPECT_EQ(p3.graph.edge_count(), 3u);
  EXPECT_TRUE(p3.graph.has_edge(1, 3));

  auto empty = complete_to_maximal(Graph(3), 2);
  EXPECT_EQ(empty.graph.edge_count(), 3u);

  EXPECT_EQ(kind_of([] { complete_to_maximal(Graph::complete(4), 2); }), ErrorKind::NotDegenerate);
  EXPECT_EQ(kind_of([] { complete_to_maximal(Graph(1), 2); }), ErrorKind::PreconditionViolated);
}

TEST(CompleteToMaximal, SupergraphWithExactBackDegrees) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 400; ++trial) {
    int n = 3 + trial % 6;
    Graph g = oracle::random_graph(rng, n, 0.4);
    int d = std::max(1, degeneracy(g).d) + static_cast<int>(trial % 2);
    if (n < d) continue;
    auto out = complete_to_maximal(g, d);
    for (auto [u, v] : g.edges()) ASSERT_TRUE(out.graph.has_edge(u, v));
    ASSERT_EQ(static_cast<int>(out.graph.edge_count()), d * (d - 1) / 2 + (n - d) * d);
    ASSERT_TRUE(is_maximal_degenerate_ordering(out.graph, out.ordering, d));
  }
}

TEST(MaximalCatalog, CountsMatchProductOfBinomials) {
  // Vertex k > d picks d of its k - 1 predecessors.
  auto binom = [](int a, int b) {
    long long r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  for (int d = 1; d <= 3; ++d) {
    std::map<int, long long> seen;
    for_each_maximal_degenerate(d, d + 3, [&](const MaximalDegenerate& m) {
      EXPECT_TRUE(is_maximal_degenerate_ordering(m.graph, m.ordering, d));
      ++seen[m.graph.vertex_count()];
    });
    long long expected = 1;
    for (int n = d; n <= d + 3; ++n) {
      if (n > d) expected *= binom(n - 1, d);
      EXPECT_EQ(seen[n], expected) << "d=" << d << " n=" << n;
    }
  }
}

TEST(CoefficientSum, Examples) {
  Graph k2 = Graph::complete(2);
  EXPECT_EQ(c_G_of_h_direct(k2, {1, 2}, {2, 0}, 2), BigInt(-1));
  EXPECT_EQ(c_G_of_h_direct(k2, {1, 2}, {1, 1}, 2), BigInt(2));
  EXPECT_EQ(c_G_of_h_recursive(k2, {1, 2}, {2, 0}, 2).residue, 2);

  Graph k3 = Graph::complete(3);
  for_each_composition(2, 3, [&](const std::vector<int>& r) {
    EXPECT_EQ(residue_of(c_G_of_h_direct(k3, {1, 2, 3}, r, 2), 3), 2);
  });

  Graph k5 = Graph::complete(5);
  auto rec = c_G_of_h_recursive(k5, identity_order(5), {4, 0, 0, 0, 0}, 4);
  EXPECT_EQ(rec.residue, 4);
  EXPECT_EQ(residue_of(c_G_of_h_direct(k5, identity_order(5), {4, 0, 0, 0, 0}, 4), 5), 4);
}

TEST(CoefficientSum, Errors) {
  Graph k4 = Graph::complete(4);
  EXPECT_EQ(kind_of([&] { c_G_of_h_recursive(k4, identity_order(4), {3, 0, 0, 0}, 3); }), ErrorKind::NotPrime);
  EXPECT_EQ(kind_of([] { c_G_of_h_direct(Graph::path(3), {1, 2, 3}, {2, 0, 0}, 2); }),
            ErrorKind::PreconditionViolated);
  EXPECT_EQ(kind_of([] { c_G_of_h_direct(Graph::complete(2), {1, 2}, {1, 0}, 2); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] {
              auto m = complete_to_maximal(Graph(9), 2);
              c_G_of_h_direct(m.graph, m.ordering, std::vector<int>{2, 0, 0, 0, 0, 0, 0, 0, 0}, 2);
            }),
            ErrorKind::CapExceeded);
}

TEST(CoefficientSum, DirectMatchesBaseFormulaAtTheClique) {
  for (int d : {1, 2, 3, 4}) {
    Graph kd = Graph::complete(d);
    for_each_composition(d, d, [&](const std::vector<int>& r) {
      BigInt expected(0);
      Bijection pi(static_cast<std::size_t>(d));
      std::iota(pi.begin(), pi.end(), 0);
      do {
        Bijection s = add_request(pi, r);
        if (values_form_range(s, 1)) expected += sign_of(pi) * sign_of(s);
      } while (std::next_permutation(pi.begin(), pi.end()));
      ASSERT_EQ(c_G_of_h_direct(kd, identity_order(d), r, d), expected);
    });
  }
}

TEST(CoefficientSum, ResidueIsMinusOneOnEveryMaximalGraphForPrimeModuli) {
  for (int d : {2, 4}) {
    int instances = 0;
    for_each_maximal_degenerate(d, d + 3, [&](const MaximalDegenerate& m) {
      const int n = m.graph.vertex_count();
      GraphPolynomial poly = coefficient_table(m.graph, m.ordering, d);
      for_each_composition(d, n, [&](const std::vector<int>& r) {
        BigInt direct = c_G_of_h_direct(poly, r, d);
        auto rec = c_G_of_h_recursive(m.graph, m.ordering, r, d);
        ASSERT_EQ(rec.value, direct) << "d=" << d << " n=" << n;
        ASSERT_EQ(residue_of(direct, d + 1), d);
        ASSERT_EQ(rec.residue, d);
        ++instances;
      });
    });
    EXPECT_GT(instances, 100) << "d=" << d;
  }
}

TEST(CoefficientSum, CompositeModuliAreComputedWithoutAsserting) {
  for (auto [d, extra] : {std::pair{3, 3}, std::pair{5, 1}}) {
    std::set<int> residues;
    for_each_maximal_degenerate(d, d + extra, [&](const MaximalDegenerate& m) {
      for_each_composition(d, m.graph.vertex_count(), [&](const std::vector<int>& r) {
        residues.insert(residue_of(c_G_of_h_direct(m.graph, m.ordering, r, d), d + 1));
      });
    });
    EXPECT_FALSE(residues.empty());
    for (int x : residues) {
      EXPECT_GE(x, 0);
      EXPECT_LE(x, d);
    }
  }
}

TEST(AlonTarsi, NonzeroCoefficientGivesColoringForEveryListAssignment) {
  std::mt19937_64 rng(51);
  int checked = 0;
  for (int n = 2; n <= 4; ++n)
    for (const auto& g : oracle::graphs_up_to_iso(n, true)) {
      auto order = identity_order(n);
      const int m = static_cast<int>(g.edge_count());
      for_each_composition(m, n, [&](const std::vector<int>& e) {
        if (graph_polynomial_coeff(g, {order, e}) == 0) return;
        const int top = *std::max_element(e.begin(), e.end());
        const int universe = std::max(2, 2 * (top + 1));
        for (int trial = 0; trial < 60; ++trial) {
          ListAssignment L(n);
          for (Vertex v = 1; v <= n; ++v) L.set(v, oracle::random_list(rng, e[v - 1] + 1, universe));
          ASSERT_FALSE(oracle::brute_colorings(g, L).empty());
          ++checked;
        }
      });
    }
  EXPECT_GT(checked, 1000);
}

TEST(SingleRequest, Examples) {
  Graph k3 = Graph::complete(3);
  ListAssignment L(3);
  L.set(1, {5});
  L.set(2, {1, 2, 3});
  L.set(3, {1, 2, 3});
  Coloring phi = single_request_colorable(k3, L, 2, {2, 0, 0});
  EXPECT_EQ(phi[1], 5);
  EXPECT_TRUE(is_L_coloring(k3, L, phi));

  EXPECT_EQ(kind_of([&] { single_request_colorable(k3, L, 2, {1, 1, 0}); }), ErrorKind::PreconditionViolated);
  EXPECT_EQ(kind_of([&] { single_request_colorable(k3, L, 3, {3, 0, 0}); }), ErrorKind::PreconditionViolated);
  EXPECT_EQ(kind_of([] {
              single_request_colorable(Graph::complete(4), ListAssignment::uniform(4, {1, 2, 3}), 2, {2, 0, 0, 0});
            }),
            ErrorKind::PreconditionViolated);

  auto s = satisfy_singleton_request(Graph::cycle(5), ListAssignment::uniform(5, {1, 2, 3}), 2, 3, 2);
  EXPECT_EQ(s[3], 2);
}

TEST(SingleRequest, TriangleWithTwoUnitRequestsIsAlwaysColorable) {
  Graph k3 = Graph::complete(3);
  std::vector<std::vector<Color>> pairs, triples;
  for (Color a = 1; a <= 5; ++a)
    for (Color b = a + 1; b <= 5; ++b) {
      pairs.push_back({a, b});
      for (Color c = b + 1; c <= 5; ++c) triples.push_back({a, b, c});
    }
  int count = 0;
  for (const auto& a : pairs)
    for (const auto& b : pairs)
      for (const auto& c : triples) {
        ListAssignment L(3);
        L.set(1, a);
        L.set(2, b);
        L.set(3, c);
        Coloring phi = single_request_colorable(k3, L, 2, {1, 1, 0});
        ASSERT_TRUE(is_L_coloring(k3, L, phi));
        ++count;
      }
  EXPECT_EQ(count, 1000);
}

TEST(SingleRequest, RandomRequestVectorsOnDegenerateGraphs) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 1500; ++trial) {
    int n = 2 + trial % 7;
    Graph g = oracle::random_graph(rng, n, 0.5);
    const int dg = degeneracy(g).d;
    if (dg > 4) continue;
    const int d = dg <= 2 ? 2 : 4;
    RequestVector r(static_cast<std::size_t>(n), 0);
    for (int k = 0; k < d; ++k) ++r[rng() % n];
    ListAssignment L(n);
    for (Vertex v = 1; v <= n; ++v) {
      int size = std::max(1, d + 1 - r[v - 1]);
      L.set(v, oracle::random_list(rng, size, d + 3));
    }
    Coloring phi = single_request_colorable(g, L, d, r);
    ASSERT_TRUE(is_L_coloring(g, L, phi));
  }
}

TEST(SingleRequest, SingletonRequestIsHonouredOnTwoDegenerateGraphs) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 1 + trial % 10;
    Graph g = oracle::random_graph(rng, n, 0.35);
    if (degeneracy(g).d > 2) continue;
    ListAssignment L(n);
    for (Vertex v = 1; v <= n; ++v) L.set(v, oracle::random_list(rng, 3, 6));
    Vertex v = 1 + static_cast<Vertex>(rng() % n);
    Color c = L[v][rng() % 3];
    Coloring phi = satisfy_singleton_request(g, L, 2, v, c);
    ASSERT_EQ(phi[v], c);
    ASSERT_TRUE(is_L_coloring(g, L, phi));
  }
}
