#pragma once

// Exact list-coloring machinery.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "flexlist/error.hpp"
#include "flexlist/graph.hpp"
#include "flexlist/rational.hpp"

namespace flexlist {

struct ColoringConstraint {
  std::map<Vertex, Color> forced;
  std::map<Vertex, std::vector<Color>> forbidden;

  void validate_against(const ListAssignment& L) const {
    for (auto [v, c] : forced) {
      require(v >= 1 && v <= L.vertex_count() && L.contains(v, c), ErrorKind::PreconditionViolated,
              "forced color outside the list of vertex " + std::to_string(v));
      auto it = forbidden.find(v);
      if (it != forbidden.end())
        require(std::find(it->second.begin(), it->second.end(), c) == it->second.end(),
                ErrorKind::PreconditionViolated, "vertex " + std::to_string(v) + " both forced and forbidden");
    }
    for (const auto& [v, colors] : forbidden)
      require(v >= 1 && v <= L.vertex_count(), ErrorKind::PreconditionViolated, "forbidden vertex out of range");
  }
};

struct ColoringEnumeration {
  std::vector<Coloring> colorings;
  bool truncated = false;
};

/// Visits proper L-colorings in lexicographic order of (phi(1), ..., phi(n));
/// stops early when `visit` returns false.
template <class Visitor>
void for_each_L_coloring(const Graph& g, const ListAssignment& L, Visitor&& visit) {
  const int n = g.vertex_count();
  Coloring phi(n);
  if (n == 0) {
    visit(static_cast<const Coloring&>(phi));
    return;
  }
  std::vector<std::size_t> pos(n + 1, 0);
  Vertex v = 1;
  auto fits = [&](Vertex u, Color c) {
    for (Vertex w : g.neighbors(u))
      if (w < u && phi[w] == c) return false;
    return true;
  };
  while (v >= 1) {
    const auto& list = L[v];
    bool placed = false;
    while (pos[v] < list.size()) {
      Color c = list[pos[v]++];
      if (fits(v, c)) {
        phi[v] = c;
        placed = true;
        break;
      }
    }
    if (!placed) {
      pos[v] = 0;
      phi[v] = 0;
      --v;
      continue;
    }
    if (v == n) {
      if (!visit(static_cast<const Coloring&>(phi))) return;
    } else {
      ++v;
    }
  }
}

inline ColoringEnumeration enumerate_L_colorings(const Graph& g, const ListAssignment& L,
                                                 std::optional<std::size_t> limit = std::nullopt) {
  L.validate_for(g);
  ColoringEnumeration out;
  for_each_L_coloring(g, L, [&](const Coloring& phi) {
    if (limit && out.colorings.size() == *limit) {
      out.truncated = true;
      return false;
    }
    out.colorings.push_back(phi);
    return true;
  });
  return out;
}

namespace detail {

// Domains are bitmasks over positions in each vertex's own list.
class ListSearch {
 public:
  ListSearch(const Graph& g, const ListAssignment& L) : g_(g), L_(L) {
    L.validate_for(g);
    const int n = g.vertex_count();
    root_.domain.assign(n + 1, 0);
    root_.value.assign(n + 1, 0);
    for (Vertex v = 1; v <= n; ++v) {
      require(L[v].size() <= 64, ErrorKind::CapExceeded, "lists longer than 64 colors are not supported");
      root_.domain[v] = L[v].size() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << L[v].size()) - 1);
    }
  }

  struct State {
    std::vector<std::uint64_t> domain;
    std::vector<Color> value;  // 0 while unassigned
  };

  const Graph& graph() const { return g_; }
  const ListAssignment& lists() const { return L_; }

  /// Applies the constraint and propagates; false on immediate contradiction.
  bool initialise(const ColoringConstraint& constraint, State& out) const {
    out = root_;
    std::vector<Vertex> queue;
    for (const auto& [v, colors] : constraint.forbidden)
      for (Color c : colors) {
        int p = position(v, c);
        if (p >= 0) out.domain[v] &= ~(std::uint64_t{1} << p);
      }
    for (auto [v, c] : constraint.forced) {
      int p = position(v, c);
      if (p < 0 || !(out.domain[v] >> p & 1u)) return false;
      out.domain[v] = std::uint64_t{1} << p;
    }
    for (Vertex v = 1; v <= g_.vertex_count(); ++v)
      if (!touched(out, v, queue)) return false;
    return propagate(out, queue);
  }

  /// Assigns v := c and propagates to a fixpoint.
  bool assign(State& s, Vertex v, Color c, std::vector<Vertex>& queue) const {
    if (s.value[v] != 0) return s.value[v] == c;
    int p = position(v, c);
    if (p < 0 || !(s.domain[v] >> p & 1u)) return false;
    s.domain[v] = std::uint64_t{1} << p;
    queue.clear();
    touched(s, v, queue);
    return propagate(s, queue);
  }

  /// Smallest-domain unassigned vertex among `pool` (all vertices when empty), lowest index on ties.
  Vertex choose(const State& s, const std::vector<Vertex>* pool = nullptr) const {
    Vertex best = 0;
    int best_size = 65;
    auto consider = [&](Vertex v) {
      if (s.value[v] != 0) return;
      int size = std::popcount(s.domain[v]);
      if (size < best_size) {
        best = v;
        best_size = size;
      }
    };
    if (pool) {
      for (Vertex v : *pool) consider(v);
    } else {
      for (Vertex v = 1; v <= g_.vertex_count(); ++v) consider(v);
    }
    return best;
  }

  std::vector<Color> domain_colors(const State& s, Vertex v) const {
    std::vector<Color> out;
    for (std::uint64_t m = s.domain[v]; m; m &= m - 1) out.push_back(L_[v][std::countr_zero(m)]);
    return out;
  }

  bool allows(const State& s, Vertex v, Color c) const {
    int p = position(v, c);
    return p >= 0 && (s.domain[v] >> p & 1u);
  }

  /// Completes `s` to a full coloring, depth first with smallest domains first.
  bool solve(State& s) const {
    std::vector<Vertex> queue;
    return solve(s, queue);
  }

  Coloring to_coloring(const State& s) const {
    Coloring phi(g_.vertex_count());
    for (Vertex v = 1; v <= g_.vertex_count(); ++v) phi[v] = s.value[v];
    return phi;
  }

 private:
  bool solve(State& s, std::vector<Vertex>& queue) const {
    Vertex v = choose(s);
    if (v == 0) return true;
    for (Color c : domain_colors(s, v)) {
      State child = s;
      if (assign(child, v, c, queue) && solve(child, queue)) {
        s = std::move(child);
        return true;
      }
    }
    return false;
  }

  // Records a forced value and schedules v once its domain has at most two colors.
  bool touched(State& s, Vertex v, std::vector<Vertex>& queue) const {
    const int k = std::popcount(s.domain[v]);
    if (k == 0) return false;
    if (k == 1) s.value[v] = L_[v][std::countr_zero(s.domain[v])];
    if (k <= 2) queue.push_back(v);
    return true;
  }

  bool remove_color(State& s, Vertex v, Color c, std::vector<Vertex>& queue) const {
    int p = position(v, c);
    if (p < 0 || !(s.domain[v] >> p & 1u)) return true;
    s.domain[v] &= ~(std::uint64_t{1} << p);
    return touched(s, v, queue);
  }

  std::pair<Color, Color> pair_of(const State& s, Vertex v) const {
    std::uint64_t m = s.domain[v];
    Color a = L_[v][std::countr_zero(m)];
    m &= m - 1;
    return {a, L_[v][std::countr_zero(m)]};
  }

  // Singletons are removed from neighbours. Two adjacent vertices sharing the
  // same two-color domain use up both colors for every common neighbour.
  bool propagate(State& s, std::vector<Vertex>& queue) const {
    while (!queue.empty()) {
      Vertex u = queue.back();
      queue.pop_back();
      const int k = std::popcount(s.domain[u]);
      if (k == 1) {
        const Color cu = s.value[u];
        for (Vertex w : g_.neighbors(u)) {
          if (s.value[w] == cu) return false;
          if (s.value[w] != 0) continue;
          if (!remove_color(s, w, cu, queue)) return false;
        }
      } else if (k == 2) {
        const auto colors = pair_of(s, u);
        const auto& nu = g_.neighbors(u);
        for (Vertex a : nu) {
          if (std::popcount(s.domain[a]) != 2 || pair_of(s, a) != colors) continue;
          for (Vertex b : nu) {
            if (b == a || !g_.has_edge(a, b)) continue;
            if (!remove_color(s, b, colors.first, queue) || !remove_color(s, b, colors.second, queue)) return false;
          }
          if (std::popcount(s.domain[u]) != 2) break;
        }
      }
    }
    return true;
  }

  int position(Vertex v, Color c) const {
    const auto& l = L_[v];
    auto it = std::lower_bound(l.begin(), l.end(), c);
    return (it != l.end() && *it == c) ? static_cast<int>(it - l.begin()) : -1;
  }

  const Graph& g_;
  const ListAssignment& L_;
  State root_;
};

}  // namespace detail

/// A witness L-coloring respecting `constraint`, or nullopt when none exists.
inline std::optional<Coloring> is_L_colorable(const Graph& g, const ListAssignment& L,
                                              const ColoringConstraint& constraint = {}) {
  constraint.validate_against(L);
  detail::ListSearch search(g, L);
  detail::ListSearch::State s;
  if (!search.initialise(constraint, s)) return std::nullopt;
  if (!search.solve(s)) return std::nullopt;
  return search.to_coloring(s);
}

struct RequestMatch {
  std::size_t count = 0;
  Coloring coloring;
};

/// Exact maximum of |{v in dom(r) : phi(v) = r(v)}| over all L-colorings;
/// nullopt iff G has no L-coloring at all.
inline std::optional<RequestMatch> max_request_match(const Graph& g, const ListAssignment& L, const Request& r) {
  r.validate_against(L);
  detail::ListSearch search(g, L);
  detail::ListSearch::State root;
  if (!search.initialise({}, root)) return std::nullopt;

  std::vector<Vertex> pool;
  for (auto [v, c] : r) pool.push_back(v);
  std::optional<RequestMatch> best;
  std::vector<Vertex> queue;

  std::function<void(detail::ListSearch::State&)> dfs = [&](detail::ListSearch::State& s) {
    std::size_t matched = 0, open = 0;
    for (auto [v, c] : r) {
      if (s.value[v] != 0) matched += s.value[v] == c ? 1 : 0;
      else if (search.allows(s, v, c)) ++open;
    }
    if (best && matched + open <= best->count) return;
    Vertex v = search.choose(s, &pool);
    if (v == 0) {
      if (search.solve(s)) best = RequestMatch{matched, search.to_coloring(s)};
      return;
    }
    std::vector<Color> colors = search.domain_colors(s, v);
    std::stable_partition(colors.begin(), colors.end(), [&](Color c) { return c == r.at(v); });
    for (Color c : colors) {
      detail::ListSearch::State child = s;
      if (search.assign(child, v, c, queue)) dfs(child);
      if (best && best->count == r.size()) return;
    }
  };
  dfs(root);
  return best;
}

struct WeightedMatch {
  Rational weight;
  Coloring coloring;
};

/// Exact maximum of sum_v w(v, phi(v)) over all L-colorings.
inline std::optional<WeightedMatch> max_weighted_match(const Graph& g, const ListAssignment& L,
                                                       const WeightedRequest& w) {
  w.validate_against(L);
  detail::ListSearch search(g, L);
  detail::ListSearch::State root;
  if (!search.initialise({}, root)) return std::nullopt;

  std::vector<Vertex> pool;
  for (const auto& [key, weight] : w.entries())
    if (pool.empty() || pool.back() != key.first) pool.push_back(key.first);
  std::optional<WeightedMatch> best;
  std::vector<Vertex> queue;

  std::function<void(detail::ListSearch::State&)> dfs = [&](detail::ListSearch::State& s) {
    Rational current(0), bound(0);
    for (Vertex v : pool) {
      if (s.value[v] != 0) {
        current += w.weight(v, s.value[v]);
      } else {
        Rational top(0);
        for (Color c : search.domain_colors(s, v)) top = std::max(top, w.weight(v, c));
        bound += top;
      }
    }
    bound += current;
    if (best && bound <= best->weight) return;
    Vertex v = search.choose(s, &pool);
    if (v == 0) {
      if (search.solve(s)) best = WeightedMatch{current, search.to_coloring(s)};
      return;
    }
    std::vector<Color> colors = search.domain_colors(s, v);
    std::stable_sort(colors.begin(), colors.end(),
                     [&](Color a, Color b) { return w.weight(v, a) > w.weight(v, b); });
    for (Color c : colors) {
      detail::ListSearch::State child = s;
      if (search.assign(child, v, c, queue)) dfs(child);
    }
  };
  dfs(root);
  return best;
}

/// An L-coloring in which no vertex other than `v` receives `c`: strip c from
/// every other list, then color greedily in reverse DFS preorder of a spanning
/// tree rooted at v (children by ascending index).
inline Coloring color_avoiding(const Graph& g, const ListAssignment& L, Vertex v, Color c) {
  L.validate_for(g);
  const int n = g.vertex_count();
  require(g.contains(v), ErrorKind::PreconditionViolated, "root vertex out of range");
  require(g.is_connected(), ErrorKind::PreconditionViolated, "graph is not connected");
  for (Vertex u = 1; u <= n; ++u)
    require(static_cast<int>(L[u].size()) > g.degree(u), ErrorKind::PreconditionViolated,
            "|L(" + std::to_string(u) + ")| <= deg(" + std::to_string(u) + ")");

  std::vector<Vertex> preorder;
  std::vector<char> seen(n + 1, 0);
  std::vector<Vertex> stack{v};
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    if (seen[u]) continue;
    seen[u] = 1;
    preorder.push_back(u);
    const auto& nb = g.neighbors(u);
    for (auto it = nb.rbegin(); it != nb.rend(); ++it)
      if (!seen[*it]) stack.push_back(*it);
  }

  Coloring phi(n);
  for (auto it = preorder.rbegin(); it != preorder.rend(); ++it) {
    Vertex u = *it;
    Color chosen = 0;
    for (Color x : L[u]) {
      if (u != v && x == c) continue;
      bool clash = false;
      for (Vertex w : g.neighbors(u)) clash = clash || phi[w] == x;
      if (!clash) {
        chosen = x;
        break;
      }
    }
    require(chosen != 0, ErrorKind::InternalError, "greedy step found no free color");
    phi[u] = chosen;
  }
  return phi;
}

}  // namespace flexlist
