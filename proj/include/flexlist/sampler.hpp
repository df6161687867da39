#pragma once

// Randomised coloring procedures: the weak-degeneracy recursion (sampled and
// computed exactly) and the independent-request procedure for graphs of
// bounded maximum average degree.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "flexlist/coloring.hpp"
#include "flexlist/error.hpp"
#include "flexlist/flexibility.hpp"
#include "flexlist/graph.hpp"
#include "flexlist/rational.hpp"
#include "flexlist/rng.hpp"
#include "flexlist/structure.hpp"

namespace flexlist {

/// delta = 1/(d+2)^(d+1), epsilon = delta^(d+1).
struct FlexConstants {
  int d = 0;
  Rational delta;
  Rational epsilon;

  static FlexConstants for_degree(int d) {
    require(d >= 0, ErrorKind::InvalidArgument, "d must be nonnegative");
    FlexConstants k;
    k.d = d;
    k.delta = Rational(1) / pow(Rational(d + 2), static_cast<unsigned>(d + 1));
    k.epsilon = pow(k.delta, static_cast<unsigned>(d + 1));
    return k;
  }
};

using MarginalTable = std::map<std::pair<Vertex, Color>, Rational>;

struct SamplerOptions {
  /// Largest support the exact recursion may build.
  std::size_t support_cap = 500'000;
};

namespace detail {

class WeakDegeneracyProcedure {
 public:
  WeakDegeneracyProcedure(const Graph& g, const ListAssignment& L, int d) : g_(g), L_(L) {
    L.validate_for(g);
    require(d >= 0, ErrorKind::PreconditionViolated, "d must be nonnegative");
    for (Vertex v = 1; v <= g.vertex_count(); ++v)
      require(static_cast<int>(L[v].size()) == d + 2, ErrorKind::PreconditionViolated,
              "every list must have exactly d+2 colors");
    auto steps = weak_reduction_sequence(g, d);
    require(steps.has_value(), ErrorKind::PreconditionViolated, "graph is not weakly d-degenerate");
    steps_ = std::move(*steps);
    for (const auto& step : steps_) blocks_.push_back(induced_subgraph(g, step.vertices));
  }

  /// Steps in the order they are colored: the last peeled block first.
  std::size_t step_count() const { return steps_.size(); }

  /// All L'-colorings of the block colored at position `k`, given the colors
  /// already placed in `phi` (0 = uncolored).
  std::vector<std::vector<Color>> block_colorings(std::size_t k, const std::vector<Color>& phi) const {
    const auto& block = blocks_[steps_.size() - 1 - k];
    const int size = block.graph.vertex_count();
    ListAssignment reduced(size);
    for (Vertex i = 1; i <= size; ++i) {
      Vertex v = block.to_parent[i];
      std::vector<Color> colors;
      for (Color c : L_[v]) {
        bool taken = false;
        for (Vertex u : g_.neighbors(v)) taken = taken || phi[u] == c;
        if (!taken) colors.push_back(c);
      }
      require(static_cast<int>(colors.size()) > block.graph.degree(i), ErrorKind::InternalError,
              "reduced list not larger than the degree inside the block");
      reduced.set(i, std::move(colors));
    }
    std::vector<std::vector<Color>> out;
    for_each_L_coloring(block.graph, reduced, [&](const Coloring& psi) {
      std::vector<Color> colors(size);
      for (Vertex i = 1; i <= size; ++i) colors[i - 1] = psi[i];
      out.push_back(std::move(colors));
      return true;
    });
    require(!out.empty(), ErrorKind::InternalError, "block has no L'-coloring");
    return out;
  }

  const std::vector<Vertex>& block_vertices(std::size_t k) const { return steps_[steps_.size() - 1 - k].vertices; }

  const Graph& graph() const { return g_; }

 private:
  const Graph& g_;
  const ListAssignment& L_;
  std::vector<WeakReductionStep> steps_;
  std::vector<InducedSubgraph> blocks_;
};

}  // namespace detail

/// One draw from the recursive distribution with canonical block choices.
inline Coloring sample_flex_wdeg(const Graph& g, const ListAssignment& L, int d, std::uint64_t seed) {
  detail::WeakDegeneracyProcedure proc(g, L, d);
  Rng rng(seed);
  std::vector<Color> phi(g.vertex_count() + 1, 0);
  for (std::size_t k = 0; k < proc.step_count(); ++k) {
    auto options = proc.block_colorings(k, phi);
    const auto& chosen = options[rng.below(options.size())];
    const auto& vertices = proc.block_vertices(k);
    for (std::size_t i = 0; i < vertices.size(); ++i) phi[vertices[i]] = chosen[i];
  }
  Coloring out(g.vertex_count());
  for (Vertex v = 1; v <= g.vertex_count(); ++v) out[v] = phi[v];
  return out;
}

/// The full output distribution of sample_flex_wdeg, with exact probabilities.
inline ColoringDistribution flex_wdeg_distribution(const Graph& g, const ListAssignment& L, int d,
                                                   const SamplerOptions& options = {}) {
  detail::WeakDegeneracyProcedure proc(g, L, d);
  const int n = g.vertex_count();
  std::map<std::vector<Color>, Rational> layer{{std::vector<Color>(n + 1, 0), Rational(1)}};
  for (std::size_t k = 0; k < proc.step_count(); ++k) {
    std::map<std::vector<Color>, Rational> next;
    const auto& vertices = proc.block_vertices(k);
    for (const auto& [phi, p] : layer) {
      auto extensions = proc.block_colorings(k, phi);
      Rational share = p / static_cast<long>(extensions.size());
      for (const auto& ext : extensions) {
        std::vector<Color> child = phi;
        for (std::size_t i = 0; i < vertices.size(); ++i) child[vertices[i]] = ext[i];
        next[std::move(child)] += share;
      }
      require(next.size() <= options.support_cap, ErrorKind::CapExceeded, "support exceeds the configured cap");
    }
    layer = std::move(next);
  }
  ColoringDistribution dist;
  for (const auto& [colors, p] : layer) {
    Coloring phi(n);
    for (Vertex v = 1; v <= n; ++v) phi[v] = colors[v];
    dist.support.emplace_back(std::move(phi), p);
  }
  return dist;
}

inline MarginalTable marginals_of(const ColoringDistribution& dist, const ListAssignment& L) {
  MarginalTable table;
  for (Vertex v = 1; v <= L.vertex_count(); ++v)
    for (Color c : L[v]) table[{v, c}] = 0;
  for (const auto& [phi, p] : dist.support)
    for (Vertex v = 1; v <= L.vertex_count(); ++v) table[{v, phi[v]}] += p;
  return table;
}

/// Exact marginals of the procedure; throws BoundViolation if one is below epsilon(d).
inline MarginalTable exact_marginals_flex_wdeg(const Graph& g, const ListAssignment& L, int d,
                                               const SamplerOptions& options = {}) {
  auto table = marginals_of(flex_wdeg_distribution(g, L, d, options), L);
  const auto k = FlexConstants::for_degree(d);
  for (const auto& [key, p] : table)
    require(p >= k.epsilon, ErrorKind::BoundViolation,
            "Prob[phi(" + std::to_string(key.first) + ")=" + std::to_string(key.second) + "] = " + to_string(p) +
                " < epsilon = " + to_string(k.epsilon));
  return table;
}

inline Rational avoidance_probability(const ColoringDistribution& dist, std::span<const Vertex> S, Color c) {
  Rational prob(0);
  for (const auto& [phi, p] : dist.support) {
    bool avoids = true;
    for (Vertex v : S) avoids = avoids && phi[v] != c;
    if (avoids) prob += p;
  }
  return prob;
}

/// Prob[no vertex of S gets c]; throws BoundViolation if below delta^|S|.
inline Rational avoidance_probability(const Graph& g, const ListAssignment& L, int d, std::span<const Vertex> S,
                                      Color c, const SamplerOptions& options = {}) {
  require(static_cast<int>(S.size()) <= d, ErrorKind::SetTooLarge, "|S| must not exceed d");
  auto dist = flex_wdeg_distribution(g, L, d, options);
  Rational prob = avoidance_probability(dist, S, c);
  Rational bound = pow(FlexConstants::for_degree(d).delta, static_cast<unsigned>(S.size()));
  require(prob >= bound, ErrorKind::BoundViolation, "avoidance probability " + to_string(prob) + " < " + to_string(bound));
  return prob;
}

/// Produces an L-coloring of the given graph, or nullopt.
using ChoosabilityOracle = std::function<std::optional<Coloring>(const Graph&, const ListAssignment&)>;

inline ChoosabilityOracle exact_choosability_oracle() {
  return [](const Graph& g, const ListAssignment& L) { return is_L_colorable(g, L); };
}

/// Randomized procedure for requests on sparse graphs (bounded mad). Preconditions
/// that only depend on (G, L, d) are checked once so that many seeded runs are cheap.
class MadProcedure {
 public:
  MadProcedure(const Graph& g, const ListAssignment& L, int d, ChoosabilityOracle oracle)
      : g_(g), L_(L), d_(d), oracle_(std::move(oracle)) {
    L.validate_for(g);
    require(d >= 2, ErrorKind::PreconditionViolated, "d must be at least 2");
    for (Vertex v = 1; v <= g.vertex_count(); ++v)
      require(static_cast<int>(L[v].size()) >= d, ErrorKind::PreconditionViolated, "lists must have at least d colors");
    if (g.vertex_count() > 0)
      require(max_average_degree(g) <= d, ErrorKind::PreconditionViolated, "maximum average degree exceeds d");
    auto palette = oracle_(g, ListAssignment::uniform(g.vertex_count(), classes()));
    require(palette.has_value() && is_L_coloring(g, ListAssignment::uniform(g.vertex_count(), classes()), *palette),
            ErrorKind::OracleFailure, "oracle found no proper (d-1)-coloring");
    partition_ = *palette;
  }

  /// The (d-1)-coloring used to pick the independent color class.
  const Coloring& partition() const { return partition_; }

  /// Restriction of r to the color class meeting dom(r) most (smallest class on ties).
  Request restrict_to_class(const Request& r) const {
    std::vector<int> hits(d_, 0);
    for (auto [v, c] : r) ++hits[partition_[v]];
    int best = 1;
    for (int k = 2; k < d_; ++k)
      if (hits[k] > hits[best]) best = k;
    Request out;
    for (auto [v, c] : r)
      if (partition_[v] == best) out.set(v, c);
    return out;
  }

  Coloring run(const Request& r, std::uint64_t seed) const {
    r.validate_against(L_);
    Rng rng(seed);
    const int n = g_.vertex_count();
    Request target = restrict_to_class(r);
    auto lists = trimmed_lists(target);

    // Strip non-request vertices of degree < d, lowest index first.
    std::vector<char> alive(n + 1, 1);
    alive[0] = 0;
    std::vector<Vertex> stripped;
    for (bool changed = true; changed;) {
      changed = false;
      for (Vertex v = 1; v <= n; ++v) {
        if (!alive[v] || target.contains(v)) continue;
        if (detail::alive_degree(g_, alive, v) < d_) {
          alive[v] = 0;
          stripped.push_back(v);
          changed = true;
          break;
        }
      }
    }

    std::vector<Vertex> core;
    for (Vertex v = 1; v <= n; ++v)
      if (alive[v]) core.push_back(v);
    auto sub = induced_subgraph(g_, core);
    ListAssignment reduced(sub.graph.vertex_count());
    for (Vertex i = 1; i <= sub.graph.vertex_count(); ++i) {
      Vertex v = sub.to_parent[i];
      std::vector<Color> colors = lists[v];
      if (!target.contains(v)) colors.erase(colors.begin() + static_cast<long>(rng.below(colors.size())));
      reduced.set(i, std::move(colors));
    }
    Coloring phi(n);
    if (sub.graph.vertex_count() > 0) {
      auto base = oracle_(sub.graph, reduced);
      require(base.has_value() && is_L_coloring(sub.graph, reduced, *base), ErrorKind::OracleFailure,
              "oracle could not color the reduced lists");
      for (Vertex i = 1; i <= sub.graph.vertex_count(); ++i) phi[sub.to_parent[i]] = (*base)[i];
    }

    for (auto [v, c] : target)
      for (Vertex u : g_.neighbors(v))
        require(!target.contains(u), ErrorKind::InternalError, "restricted request is not independent");
    for (auto [v, c] : target) {
      bool blocked = false;
      for (Vertex u : g_.neighbors(v)) blocked = blocked || phi[u] == c;
      if (!blocked) phi[v] = c;
    }

    for (auto it = stripped.rbegin(); it != stripped.rend(); ++it) {
      Vertex v = *it;
      Color chosen = 0;
      for (Color c : lists[v]) {
        bool used = false;
        for (Vertex u : g_.neighbors(v)) used = used || phi[u] == c;
        if (!used) {
          chosen = c;
          break;
        }
      }
      require(chosen != 0, ErrorKind::InternalError, "stripped vertex has no free color");
      phi[v] = chosen;
    }
    require(is_L_coloring(g_, L_, phi), ErrorKind::InternalError, "procedure produced an invalid coloring");
    return phi;
  }

 private:
  std::vector<Color> classes() const {
    std::vector<Color> cs(static_cast<std::size_t>(d_ - 1));
    std::iota(cs.begin(), cs.end(), 1);
    return cs;
  }

  // Exactly d colors per vertex: the smallest ones, except that a requested
  // color is always kept.
  std::vector<std::vector<Color>> trimmed_lists(const Request& target) const {
    std::vector<std::vector<Color>> lists(g_.vertex_count() + 1);
    for (Vertex v = 1; v <= g_.vertex_count(); ++v) {
      std::vector<Color> keep;
      if (target.contains(v)) keep.push_back(target.at(v));
      for (Color c : L_[v]) {
        if (static_cast<int>(keep.size()) == d_) break;
        if (!target.contains(v) || c != target.at(v)) keep.push_back(c);
      }
      std::sort(keep.begin(), keep.end());
      lists[v] = std::move(keep);
    }
    return lists;
  }

  const Graph& g_;
  const ListAssignment& L_;
  int d_;
  ChoosabilityOracle oracle_;
  Coloring partition_;
};

inline Coloring run_mad_procedure(const Graph& g, const ListAssignment& L, const Request& r, int d,
                                  ChoosabilityOracle oracle, std::uint64_t seed) {
  return MadProcedure(g, L, d, std::move(oracle)).run(r, seed);
}

}  // namespace flexlist
