#pragma once

// Structural predicates over graphs: degeneracy, weak degeneracy, maximum
// average degree and the low-degree/soft-vertex witness.

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "flexlist/error.hpp"
#include "flexlist/graph.hpp"
#include "flexlist/maxflow.hpp"
#include "flexlist/rational.hpp"

namespace flexlist {

struct DegeneracyResult {
  int d = 0;
  /// Each vertex has at most d neighbors earlier in this order.
  std::vector<Vertex> order;
};

/// Repeated removal of a minimum-degree vertex (lowest index on ties),
/// reported in reverse removal order.
inline DegeneracyResult degeneracy(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> deg(n + 1);
  std::vector<char> removed(n + 1, 0);
  for (Vertex v = 1; v <= n; ++v) deg[v] = g.degree(v);
  DegeneracyResult result;
  std::vector<Vertex> removal;
  removal.reserve(n);
  for (int step = 0; step < n; ++step) {
    Vertex best = 0;
    for (Vertex v = 1; v <= n; ++v)
      if (!removed[v] && (best == 0 || deg[v] < deg[best])) best = v;
    result.d = std::max(result.d, deg[best]);
    removed[best] = 1;
    removal.push_back(best);
    for (Vertex w : g.neighbors(best))
      if (!removed[w]) --deg[w];
  }
  result.order.assign(removal.rbegin(), removal.rend());
  return result;
}

struct WeakReductionStep {
  enum class Kind { SingleVertex, ConnectedBlock };
  Kind kind = Kind::SingleVertex;
  /// Sorted; one vertex for SingleVertex, d+1 for ConnectedBlock.
  std::vector<Vertex> vertices;

  friend bool operator==(const WeakReductionStep&, const WeakReductionStep&) = default;
};

namespace detail {

inline int alive_degree(const Graph& g, std::span<const char> alive, Vertex v) {
  int k = 0;
  for (Vertex w : g.neighbors(v)) k += alive[w] ? 1 : 0;
  return k;
}

inline bool is_connected_set(const Graph& g, std::span<const Vertex> set) {
  if (set.size() <= 1) return true;
  std::vector<char> seen(set.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < set.size(); ++j)
      if (!seen[j] && g.has_edge(set[i], set[j])) {
        seen[j] = 1;
        ++reached;
        stack.push_back(j);
      }
  }
  return reached == set.size();
}

}  // namespace detail

/// Canonical reduction step of the current graph G[alive]: the lowest-index
/// vertex of degree <= d, else the lexicographically smallest connected set of
/// d+1 vertices of degree exactly d+1.
inline std::optional<WeakReductionStep> find_weak_reduction(const Graph& g, int d, std::span<const char> alive) {
  require(d >= 0, ErrorKind::InvalidArgument, "d must be nonnegative");
  const int n = g.vertex_count();
  std::vector<int> deg(n + 1, 0);
  for (Vertex v = 1; v <= n; ++v) {
    if (!alive[v]) continue;
    deg[v] = detail::alive_degree(g, alive, v);
    if (deg[v] <= d) return WeakReductionStep{WeakReductionStep::Kind::SingleVertex, {v}};
  }

  std::vector<char> candidate(n + 1, 0);
  for (Vertex v = 1; v <= n; ++v) candidate[v] = alive[v] && deg[v] == d + 1;

  // The smallest element of the answer is the smallest candidate lying in a
  // candidate component of size >= d+1; it is that component's minimum.
  std::vector<int> component(n + 1, 0);
  int next_id = 0;
  for (Vertex root = 1; root <= n; ++root) {
    if (!candidate[root] || component[root]) continue;
    std::vector<Vertex> members{root}, stack{root};
    component[root] = ++next_id;
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(u))
        if (candidate[w] && !component[w]) {
          component[w] = next_id;
          members.push_back(w);
          stack.push_back(w);
        }
    }
    if (static_cast<int>(members.size()) < d + 1) continue;
    std::sort(members.begin(), members.end());

    // Lexicographic scan of (d+1)-subsets containing the root.
    const int k = d;
    const int m = static_cast<int>(members.size()) - 1;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 1);
    std::vector<Vertex> set(d + 1);
    while (true) {
      set[0] = members[0];
      for (int i = 0; i < k; ++i) set[i + 1] = members[idx[i]];
      if (detail::is_connected_set(g, set)) return WeakReductionStep{WeakReductionStep::Kind::ConnectedBlock, set};
      int i = k - 1;
      while (i >= 0 && idx[i] == m - (k - 1 - i)) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    fail(ErrorKind::InternalError, "connected component without a connected subset of the required size");
  }
  return std::nullopt;
}

inline std::optional<WeakReductionStep> find_weak_reduction(const Graph& g, int d) {
  std::vector<char> alive(g.vertex_count() + 1, 1);
  alive[0] = 0;
  return find_weak_reduction(g, d, alive);
}

/// The canonical greedy peel, or nullopt when it gets stuck.
inline std::optional<std::vector<WeakReductionStep>> weak_reduction_sequence(const Graph& g, int d) {
  const int n = g.vertex_count();
  std::vector<char> alive(n + 1, 1);
  alive[0] = 0;
  std::vector<WeakReductionStep> steps;
  int remaining = n;
  while (remaining > 0) {
    auto step = find_weak_reduction(g, d, alive);
    if (!step) return std::nullopt;
    for (Vertex v : step->vertices) alive[v] = 0;
    remaining -= static_cast<int>(step->vertices.size());
    steps.push_back(std::move(*step));
  }
  return steps;
}

inline bool is_weakly_degenerate(const Graph& g, int d) { return weak_reduction_sequence(g, d).has_value(); }

/// Exact maximum of |E(H)| / |V(H)| over nonempty H and a vertex set attaining it.
struct DensestSubgraph {
  Rational density;
  std::vector<Vertex> vertices;
};

namespace detail {

// Max-closure test: is there H with q|E(H)| - p|V(H)| > 0? Returns its vertex set.
inline std::optional<std::vector<Vertex>> denser_than(const Graph& g, const Rational& threshold) {
  const int n = g.vertex_count();
  const int m = static_cast<int>(g.edge_count());
  BigInt p = numerator_of(threshold), q = denominator_of(threshold);
  const int source = 0, sink = n + m + 1;
  MaxFlow<BigInt> flow(n + m + 2);
  BigInt infinite = q * (m + 1) + 1;
  int node = n + 1;
  for (auto [u, v] : g.edges()) {
    flow.add_arc(source, node, q);
    flow.add_arc(node, u, infinite);
    flow.add_arc(node, v, infinite);
    ++node;
  }
  for (Vertex v = 1; v <= n; ++v) flow.add_arc(v, sink, p);
  BigInt cut = flow.run(source, sink);
  if (q * m - cut <= 0) return std::nullopt;
  auto side = flow.source_side(source);
  std::vector<Vertex> vertices;
  for (Vertex v = 1; v <= n; ++v)
    if (side[v]) vertices.push_back(v);
  return vertices;
}

inline Rational density_of(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<char> in(g.vertex_count() + 1, 0);
  for (Vertex v : vertices) in[v] = 1;
  long edges = 0;
  for (auto [u, v] : g.edges()) edges += (in[u] && in[v]) ? 1 : 0;
  return make_rational(edges, static_cast<std::int64_t>(vertices.size()));
}

}  // namespace detail

/// Densities have denominators <= n, so bisection stops once the bracket is
/// narrower than 1/(n(n-1)); the lower end is always an attained density.
inline DensestSubgraph densest_subgraph(const Graph& g) {
  const int n = g.vertex_count();
  require(n >= 1, ErrorKind::EmptyGraph, "maximum average degree of the null graph");
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), 1);
  DensestSubgraph best{detail::density_of(g, all), all};
  if (n == 1) return best;
  int max_degree = 0;
  for (Vertex v = 1; v <= n; ++v) max_degree = std::max(max_degree, g.degree(v));
  Rational hi = make_rational(max_degree, 2);
  const Rational resolution = make_rational(1, static_cast<std::int64_t>(n) * (n - 1));
  while (hi - best.density >= resolution) {
    Rational mid = (best.density + hi) / 2;
    if (auto found = detail::denser_than(g, mid)) {
      best.density = detail::density_of(g, *found);
      best.vertices = std::move(*found);
    } else {
      hi = mid;
    }
  }
  return best;
}

inline Rational max_average_degree(const Graph& g) { return 2 * densest_subgraph(g).density; }

struct SgWitness {
  enum class Kind { LowDegree, SoftVertex };
  Kind kind;
  Vertex vertex;

  friend bool operator==(const SgWitness&, const SgWitness&) = default;
};

/// A vertex of degree <= d, else a vertex of degree d+1 with at most one
/// neighbor of degree > d+1 (lowest index). Neither can be missing when the
/// average degree is below d+1+2/(d+4).
inline std::optional<SgWitness> sg_witness(const Graph& g, int d) {
  require(d >= 0, ErrorKind::InvalidArgument, "d must be nonnegative");
  const int n = g.vertex_count();
  if (n == 0) return std::nullopt;
  for (Vertex v = 1; v <= n; ++v)
    if (g.degree(v) <= d) return SgWitness{SgWitness::Kind::LowDegree, v};
  for (Vertex v = 1; v <= n; ++v) {
    if (g.degree(v) != d + 1) continue;
    int bigger = 0;
    for (Vertex w : g.neighbors(v)) bigger += g.degree(w) > d + 1 ? 1 : 0;
    if (bigger <= 1) return SgWitness{SgWitness::Kind::SoftVertex, v};
  }
  Rational average = make_rational(2 * static_cast<std::int64_t>(g.edge_count()), n);
  Rational threshold = Rational(d + 1) + make_rational(2, d + 4);
  require(average >= threshold, ErrorKind::InternalError,
          "no witness although the average degree is below d+1+2/(d+4)");
  return std::nullopt;
}

}  // namespace flexlist
