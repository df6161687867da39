#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace flexlist {

/// Dinic's blocking-flow max flow over an arbitrary ordered ring of capacities.
template <class Capacity>
class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : graph_(static_cast<std::size_t>(nodes)), level_(nodes), next_(nodes) {}

  /// Returns the index of the forward arc.
  std::size_t add_arc(int from, int to, const Capacity& capacity) {
    graph_[from].push_back(arcs_.size());
    arcs_.push_back({to, capacity});
    graph_[to].push_back(arcs_.size());
    arcs_.push_back({from, Capacity(0)});
    return arcs_.size() - 2;
  }

  Capacity run(int source, int sink) {
    Capacity total(0);
    while (build_levels(source, sink)) {
      std::fill(next_.begin(), next_.end(), 0);
      while (true) {
        Capacity pushed = augment(source, sink, Capacity(-1));
        if (pushed == 0) break;
        total += pushed;
      }
    }
    return total;
  }

  /// Nodes reachable from the source in the residual graph after `run`.
  std::vector<char> source_side(int source) const {
    std::vector<char> seen(graph_.size(), 0);
    std::vector<int> stack{source};
    seen[source] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (std::size_t id : graph_[u]) {
        const Arc& a = arcs_[id];
        if (a.residual > 0 && !seen[a.to]) {
          seen[a.to] = 1;
          stack.push_back(a.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    int to;
    Capacity residual;
  };

  bool build_levels(int source, int sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> queue;
    level_[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop();
      for (std::size_t id : graph_[u]) {
        const Arc& a = arcs_[id];
        if (a.residual > 0 && level_[a.to] < 0) {
          level_[a.to] = level_[u] + 1;
          queue.push(a.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  // A negative limit stands for "unbounded".
  Capacity augment(int u, int sink, const Capacity& limit) {
    if (u == sink) return limit;
    for (std::size_t& i = next_[u]; i < graph_[u].size(); ++i) {
      std::size_t id = graph_[u][i];
      Arc& a = arcs_[id];
      if (a.residual <= 0 || level_[a.to] != level_[u] + 1) continue;
      Capacity cap = (limit < 0 || a.residual < limit) ? a.residual : limit;
      Capacity pushed = augment(a.to, sink, cap);
      if (pushed > 0) {
        a.residual -= pushed;
        arcs_[id ^ 1u].residual += pushed;
        return pushed;
      }
    }
    return Capacity(0);
  }

  std::vector<std::vector<std::size_t>> graph_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

}  // namespace flexlist
