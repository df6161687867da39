#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flexlist/error.hpp"
#include "flexlist/rational.hpp"

namespace flexlist {

/// Vertices are dense 1-based indices; colors are arbitrary positive integers.
using Vertex = int;
using Color = int;
using Edge = std::pair<Vertex, Vertex>;

class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adjacency_(static_cast<std::size_t>(std::max(n, 0)) + 1) {
    require(n >= 0, ErrorKind::InvalidArgument, "negative vertex count");
  }

  static Graph from_edges(int n, std::span<const Edge> edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }

  static Graph complete(int n) {
    Graph g(n);
    for (Vertex u = 1; u <= n; ++u)
      for (Vertex v = u + 1; v <= n; ++v) g.add_edge(u, v);
    return g;
  }

  static Graph path(int n) {
    Graph g(n);
    for (Vertex v = 1; v < n; ++v) g.add_edge(v, v + 1);
    return g;
  }

  static Graph cycle(int n) {
    Graph g = path(n);
    if (n >= 3) g.add_edge(1, n);
    return g;
  }

  int vertex_count() const noexcept { return static_cast<int>(adjacency_.empty() ? 0 : adjacency_.size() - 1); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool contains(Vertex v) const noexcept { return v >= 1 && v <= vertex_count(); }

  const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_.at(checked(v)); }
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

  bool has_edge(Vertex u, Vertex v) const {
    if (!contains(u) || !contains(v)) return false;
    const auto& a = adjacency_[u];
    return std::binary_search(a.begin(), a.end(), v);
  }

  /// Edges as (u, v) with u < v, in insertion order.
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  Vertex add_vertex() {
    if (adjacency_.empty()) adjacency_.resize(1);
    adjacency_.emplace_back();
    return vertex_count();
  }

  void add_edge(Vertex u, Vertex v) {
    checked(u);
    checked(v);
    require(u != v, ErrorKind::InvalidArgument, "self-loop at vertex " + std::to_string(u));
    require(!has_edge(u, v), ErrorKind::InvalidArgument,
            "duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
    insert_sorted(adjacency_[u], v);
    insert_sorted(adjacency_[v], u);
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }

  bool is_connected() const {
    int n = vertex_count();
    if (n <= 1) return true;
    std::vector<char> seen(n + 1, 0);
    std::vector<Vertex> stack{1};
    seen[1] = 1;
    int reached = 1;
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : adjacency_[u])
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
    }
    return reached == n;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.adjacency_ == b.adjacency_; }

 private:
  Vertex checked(Vertex v) const {
    require(contains(v), ErrorKind::InvalidArgument, "vertex " + std::to_string(v) + " out of range");
    return v;
  }

  static void insert_sorted(std::vector<Vertex>& xs, Vertex v) { xs.insert(std::upper_bound(xs.begin(), xs.end(), v), v); }

  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<Edge> edges_;
};

/// An induced subgraph relabelled to 1..k, with the maps back and forth.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_parent;  // child vertex -> parent vertex; index 0 unused
  std::vector<Vertex> to_child;   // parent vertex -> child vertex or 0
};

inline InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  InducedSubgraph sub;
  std::vector<Vertex> sorted(vertices.begin(), vertices.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  sub.graph = Graph(static_cast<int>(sorted.size()));
  sub.to_parent.assign(sorted.size() + 1, 0);
  sub.to_child.assign(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    sub.to_parent[i + 1] = sorted[i];
    sub.to_child.at(sorted[i]) = static_cast<Vertex>(i + 1);
  }
  for (auto [u, v] : g.edges())
    if (sub.to_child[u] && sub.to_child[v]) sub.graph.add_edge(sub.to_child[u], sub.to_child[v]);
  return sub;
}

class ListAssignment {
 public:
  ListAssignment() = default;
  explicit ListAssignment(int n) : lists_(static_cast<std::size_t>(n) + 1) {}

  static ListAssignment uniform(int n, std::vector<Color> colors) {
    ListAssignment L(n);
    for (Vertex v = 1; v <= n; ++v) L.set(v, colors);
    return L;
  }

  int vertex_count() const noexcept { return static_cast<int>(lists_.empty() ? 0 : lists_.size() - 1); }

  /// Sorted, duplicate-free.
  const std::vector<Color>& operator[](Vertex v) const { return lists_.at(static_cast<std::size_t>(v)); }

  void set(Vertex v, std::vector<Color> colors) {
    require(v >= 1 && v <= vertex_count(), ErrorKind::InvalidArgument, "list for vertex out of range");
    for (Color c : colors) require(c >= 1, ErrorKind::InvalidArgument, "colors must be positive integers");
    std::sort(colors.begin(), colors.end());
    colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
    lists_[static_cast<std::size_t>(v)] = std::move(colors);
  }

  /// Appends a new vertex with the given list; returns its index.
  Vertex push_back(std::vector<Color> colors) {
    if (lists_.empty()) lists_.resize(1);
    lists_.emplace_back();
    set(vertex_count(), std::move(colors));
    return vertex_count();
  }

  bool contains(Vertex v, Color c) const {
    const auto& l = (*this)[v];
    return std::binary_search(l.begin(), l.end(), c);
  }

  /// Common list size, or -1 when sizes differ.
  int uniform_size() const {
    int size = -1;
    for (Vertex v = 1; v <= vertex_count(); ++v) {
      int s = static_cast<int>(lists_[v].size());
      if (size == -1) size = s;
      else if (size != s) return -1;
    }
    return size;
  }

  void validate_for(const Graph& g) const {
    require(vertex_count() == g.vertex_count(), ErrorKind::SemanticError, "list assignment size does not match graph");
    for (Vertex v = 1; v <= vertex_count(); ++v)
      require(!lists_[v].empty(), ErrorKind::SemanticError, "vertex " + std::to_string(v) + " has an empty list");
  }

  friend bool operator==(const ListAssignment&, const ListAssignment&) = default;

 private:
  std::vector<std::vector<Color>> lists_;
};

/// A partial map of preferred colors.
class Request {
 public:
  Request() = default;
  Request(std::initializer_list<std::pair<const Vertex, Color>> entries) : entries_(entries) {}

  void set(Vertex v, Color c) { entries_[v] = c; }
  void erase(Vertex v) { entries_.erase(v); }
  bool contains(Vertex v) const { return entries_.count(v) != 0; }
  Color at(Vertex v) const { return entries_.at(v); }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::map<Vertex, Color>& entries() const noexcept { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  void validate_against(const ListAssignment& L) const {
    for (auto [v, c] : entries_) {
      require(v >= 1 && v <= L.vertex_count(), ErrorKind::SemanticError,
              "request vertex " + std::to_string(v) + " out of range");
      require(L.contains(v, c), ErrorKind::SemanticError,
              "requested color " + std::to_string(c) + " not in L(" + std::to_string(v) + ")");
    }
  }

  friend bool operator==(const Request&, const Request&) = default;
  /// Lexicographic on the sorted (vertex, color) sequence.
  friend bool operator<(const Request& a, const Request& b) { return a.entries_ < b.entries_; }

 private:
  std::map<Vertex, Color> entries_;
};

class WeightedRequest {
 public:
  using Key = std::pair<Vertex, Color>;

  void set(Vertex v, Color c, const Rational& w) {
    require(w >= 0, ErrorKind::SemanticError, "negative weight");
    if (w == 0) weights_.erase({v, c});
    else weights_[{v, c}] = w;
  }

  Rational weight(Vertex v, Color c) const {
    auto it = weights_.find({v, c});
    return it == weights_.end() ? Rational(0) : it->second;
  }

  /// w(G, L): the sum of all entries.
  Rational total() const {
    Rational sum(0);
    for (const auto& [key, w] : weights_) sum += w;
    return sum;
  }

  const std::map<Key, Rational>& entries() const noexcept { return weights_; }
  bool empty() const noexcept { return weights_.empty(); }

  void validate_against(const ListAssignment& L) const {
    for (const auto& [key, w] : weights_) {
      auto [v, c] = key;
      require(v >= 1 && v <= L.vertex_count(), ErrorKind::SemanticError,
              "weight vertex " + std::to_string(v) + " out of range");
      require(L.contains(v, c), ErrorKind::SemanticError,
              "weighted color " + std::to_string(c) + " not in L(" + std::to_string(v) + ")");
    }
  }

  friend bool operator==(const WeightedRequest&, const WeightedRequest&) = default;

 private:
  std::map<Key, Rational> weights_;
};

/// A total color map on V(G).
class Coloring {
 public:
  Coloring() = default;
  explicit Coloring(int n) : colors_(static_cast<std::size_t>(n) + 1, 0) {}
  Coloring(std::initializer_list<Color> colors) : colors_{0} { colors_.insert(colors_.end(), colors); }

  int vertex_count() const noexcept { return static_cast<int>(colors_.empty() ? 0 : colors_.size() - 1); }
  Color operator[](Vertex v) const { return colors_.at(static_cast<std::size_t>(v)); }
  Color& operator[](Vertex v) { return colors_.at(static_cast<std::size_t>(v)); }

  friend bool operator==(const Coloring&, const Coloring&) = default;
  friend auto operator<=>(const Coloring&, const Coloring&) = default;

  std::string str() const {
    std::string s = "(";
    for (Vertex v = 1; v <= vertex_count(); ++v) s += (v > 1 ? "," : "") + std::to_string(colors_[v]);
    return s + ")";
  }

 private:
  std::vector<Color> colors_;
};

inline bool is_proper(const Graph& g, const Coloring& phi) {
  if (phi.vertex_count() != g.vertex_count()) return false;
  for (auto [u, v] : g.edges())
    if (phi[u] == phi[v]) return false;
  return true;
}

inline bool is_L_coloring(const Graph& g, const ListAssignment& L, const Coloring& phi) {
  if (!is_proper(g, phi)) return false;
  for (Vertex v = 1; v <= g.vertex_count(); ++v)
    if (!L.contains(v, phi[v])) return false;
  return true;
}

inline std::size_t matched_count(const Request& r, const Coloring& phi) {
  std::size_t count = 0;
  for (auto [v, c] : r)
    if (phi[v] == c) ++count;
  return count;
}

inline Rational matched_weight(const WeightedRequest& w, const Coloring& phi) {
  Rational sum(0);
  for (const auto& [key, weight] : w.entries())
    if (phi[key.first] == key.second) sum += weight;
  return sum;
}

}  // namespace flexlist
