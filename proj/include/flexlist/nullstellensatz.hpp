#pragma once

// Graph polynomial coefficients and the permutation-shift identities behind
// single-request colorability of d-degenerate graphs.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "flexlist/coloring.hpp"
#include "flexlist/error.hpp"
#include "flexlist/graph.hpp"
#include "flexlist/rational.hpp"
#include "flexlist/structure.hpp"

namespace flexlist {

/// Values pi(1..d) stored at indices 0..d-1. Members of S_d take values 1..d,
/// members of S^0_d take values 0..d-1.
using Bijection = std::vector<int>;
/// Nonnegative integers indexed by position (0-based).
using RequestVector = std::vector<int>;

/// (-1)^(number of inversions).
inline int sign_of(const Bijection& pi) {
  int inversions = 0;
  for (std::size_t i = 0; i < pi.size(); ++i)
    for (std::size_t j = i + 1; j < pi.size(); ++j)
      if (pi[i] > pi[j]) ++inversions;
  return inversions % 2 ? -1 : 1;
}

inline bool is_bijection_onto(const Bijection& pi, int lo) {
  const int d = static_cast<int>(pi.size());
  std::vector<char> seen(static_cast<std::size_t>(d), 0);
  for (int x : pi) {
    if (x < lo || x >= lo + d || seen[x - lo]) return false;
    seen[x - lo] = 1;
  }
  return true;
}

/// Graph polynomial prod over edges (pos(u) < pos(v)) of (x_pos(v) - x_pos(u)).
struct MonomialQuery {
  std::vector<Vertex> ordering;
  /// Exponent of the variable of ordering[k], at index k.
  std::vector<int> exponents;
};

namespace detail {

inline std::vector<int> positions_of(const Graph& g, const std::vector<Vertex>& ordering) {
  const int n = g.vertex_count();
  require(static_cast<int>(ordering.size()) == n, ErrorKind::InvalidArgument, "ordering must list every vertex");
  std::vector<int> pos(static_cast<std::size_t>(n) + 1, -1);
  for (std::size_t k = 0; k < ordering.size(); ++k) {
    Vertex v = ordering[k];
    require(g.contains(v) && pos[v] == -1, ErrorKind::InvalidArgument, "ordering is not a permutation of V(G)");
    pos[v] = static_cast<int>(k);
  }
  return pos;
}

}  // namespace detail

/// Dense coefficient table of p_G truncated to x_k^{caps[k]}.
class GraphPolynomial {
 public:
  static constexpr std::size_t kCellCap = 10'000'000;

  GraphPolynomial(const Graph& g, const std::vector<Vertex>& ordering, std::vector<int> caps,
                  const std::vector<int>* target = nullptr)
      : caps_(std::move(caps)) {
    const std::vector<int> pos = detail::positions_of(g, ordering);
    const std::size_t n = ordering.size();
    require(caps_.size() == n, ErrorKind::InvalidArgument, "one cap per variable required");
    stride_.assign(n, 1);
    std::size_t cells = 1;
    for (std::size_t k = 0; k < n; ++k) {
      require(caps_[k] >= 0, ErrorKind::InvalidArgument, "negative exponent cap");
      stride_[k] = cells;
      require(cells <= kCellCap / static_cast<std::size_t>(caps_[k] + 1), ErrorKind::CapExceeded,
              "graph polynomial expansion exceeds the cell cap");
      cells *= static_cast<std::size_t>(caps_[k] + 1);
    }
    std::vector<std::pair<int, int>> factors;  // (i, j): x_j - x_i with i < j
    for (auto [u, v] : g.edges()) factors.emplace_back(std::min(pos[u], pos[v]), std::max(pos[u], pos[v]));
    if (factors.size() <= 62) expand(small_, factors, cells, target);
    else expand(big_, factors, cells, target);
  }

  /// Zero for negative exponents; exponents above the caps are rejected.
  BigInt coeff(const std::vector<int>& exponents) const {
    require(exponents.size() == caps_.size(), ErrorKind::InvalidArgument, "wrong number of exponents");
    std::size_t key = 0;
    for (std::size_t k = 0; k < caps_.size(); ++k) {
      if (exponents[k] < 0) return BigInt(0);
      require(exponents[k] <= caps_[k], ErrorKind::InvalidArgument, "exponent above the expansion cap");
      key += static_cast<std::size_t>(exponents[k]) * stride_[k];
    }
    return small_.empty() ? big_[key] : BigInt(small_[key]);
  }

 private:
  template <class C>
  void expand(std::vector<C>& cur, const std::vector<std::pair<int, int>>& factors, std::size_t cells,
              const std::vector<int>* target) {
    const std::size_t n = caps_.size();
    std::vector<int> remaining(n, 0);
    for (auto [i, j] : factors) {
      ++remaining[i];
      ++remaining[j];
    }
    cur.assign(cells, C(0));
    cur[0] = C(1);
    std::vector<C> next(cells, C(0));
    std::vector<int> digit(n);
    for (auto [i, j] : factors) {
      --remaining[i];
      --remaining[j];
      std::fill(next.begin(), next.end(), C(0));
      for (std::size_t key = 0; key < cells; ++key) {
        if (cur[key] == 0) continue;
        bool alive = true;
        for (std::size_t k = 0; k < n; ++k) {
          digit[k] = static_cast<int>(key / stride_[k] % static_cast<std::size_t>(caps_[k] + 1));
          // After this factor, x_k can still rise by remaining[k] plus one from this factor.
          if (target && digit[k] + remaining[k] + ((int)k == i || (int)k == j ? 1 : 0) < (*target)[k]) alive = false;
        }
        if (!alive) continue;
        if (digit[j] < caps_[j]) next[key + stride_[j]] += cur[key];
        if (digit[i] < caps_[i]) next[key + stride_[i]] -= cur[key];
      }
      std::swap(cur, next);
    }
  }

  std::vector<int> caps_;
  std::vector<std::size_t> stride_;
  std::vector<std::int64_t> small_;
  std::vector<BigInt> big_;
};

inline BigInt graph_polynomial_coeff(const Graph& g, const MonomialQuery& q) {
  require(q.exponents.size() == q.ordering.size(), ErrorKind::InvalidArgument,
          "one exponent per ordered vertex required");
  long long total = 0;
  for (int e : q.exponents) {
    if (e < 0) return BigInt(0);
    total += e;
  }
  detail::positions_of(g, q.ordering);
  if (total != static_cast<long long>(g.edge_count())) return BigInt(0);
  GraphPolynomial poly(g, q.ordering, q.exponents, &q.exponents);
  return poly.coeff(q.exponents);
}

namespace detail {

inline void check_request_vector(const RequestVector& r, std::size_t size, int d) {
  require(r.size() == size, ErrorKind::InvalidArgument, "request vector has the wrong length");
  long long sum = 0;
  for (int x : r) {
    require(x >= 0, ErrorKind::InvalidArgument, "request vector entries must be nonnegative");
    sum += x;
  }
  require(sum == d, ErrorKind::InvalidArgument, "request vector must sum to d");
}

}  // namespace detail

/// pi(t) = sum_{j : pi(j) < pi(t)} r(j) for every t with r(t) > 0.
inline bool shift_equation_holds(const Bijection& pi, const RequestVector& r) {
  for (std::size_t t = 0; t < pi.size(); ++t) {
    if (r[t] == 0) continue;
    long long sum = 0;
    for (std::size_t j = 0; j < pi.size(); ++j)
      if (pi[j] < pi[t]) sum += r[j];
    if (sum != pi[t]) return false;
  }
  return true;
}

inline Bijection add_request(const Bijection& pi, const RequestVector& r) {
  Bijection sigma(pi.size());
  for (std::size_t t = 0; t < pi.size(); ++t) sigma[t] = pi[t] + r[t];
  return sigma;
}

/// The shift equation for pi in S^0_d, checked against pi + r in S_d.
inline bool shift_condition(const Bijection& pi, const RequestVector& r) {
  const int d = static_cast<int>(pi.size());
  require(is_bijection_onto(pi, 0), ErrorKind::InvalidArgument, "pi must be a bijection onto {0..d-1}");
  detail::check_request_vector(r, pi.size(), d);
  const bool equation = shift_equation_holds(pi, r);
  const bool shifted = is_bijection_onto(add_request(pi, r), 1);
  require(equation == shifted, ErrorKind::InternalError, "shift equation disagrees with pi + r in S_d");
  return equation;
}

struct ShiftableCount {
  long long count = 0;
  int sign_product = 0;
};

/// All pi in S^0_d with pi + r in S_d; checks the count k!(d-k)! and the common sign (-1)^(k+d).
inline ShiftableCount count_signed_shiftable(int d, const RequestVector& r, int cap = 7) {
  require(d >= 1, ErrorKind::InvalidArgument, "d must be positive");
  require(d <= cap, ErrorKind::CapExceeded, "brute force over S^0_d limited to d <= cap");
  detail::check_request_vector(r, static_cast<std::size_t>(d), d);
  const int k = static_cast<int>(std::count_if(r.begin(), r.end(), [](int x) { return x > 0; }));
  const int expected_sign = (k + d) % 2 ? -1 : 1;

  ShiftableCount out;
  out.sign_product = expected_sign;
  Bijection pi(static_cast<std::size_t>(d));
  std::iota(pi.begin(), pi.end(), 0);
  do {
    if (!shift_condition(pi, r)) continue;
    ++out.count;
    int product = sign_of(pi) * sign_of(add_request(pi, r));
    require(product == expected_sign, ErrorKind::InternalError, "sign product differs from (-1)^(k+d)");
  } while (std::next_permutation(pi.begin(), pi.end()));
  BigInt expected = factorial(static_cast<unsigned>(k)) * factorial(static_cast<unsigned>(d - k));
  require(BigInt(out.count) == expected, ErrorKind::InternalError, "shiftable count differs from k!(d-k)!");
  return out;
}

struct MaximalDegenerate {
  Graph graph;
  /// ordering[k] is the vertex at position k + 1.
  std::vector<Vertex> ordering;
};

/// Checks that the first d ordered vertices form a clique and every later one has exactly d earlier neighbors.
inline bool is_maximal_degenerate_ordering(const Graph& g, const std::vector<Vertex>& ordering, int d) {
  const std::vector<int> pos = detail::positions_of(g, ordering);
  const int n = g.vertex_count();
  if (n < d) return false;
  for (int k = 0; k < n; ++k) {
    int back = 0;
    for (Vertex u : g.neighbors(ordering[k]))
      if (pos[u] < k) ++back;
    if (back != std::min(k, d)) return false;
  }
  return true;
}

inline MaximalDegenerate complete_to_maximal(const Graph& g, int d) {
  const int n = g.vertex_count();
  require(d >= 1, ErrorKind::InvalidArgument, "d must be positive");
  require(n >= d, ErrorKind::PreconditionViolated, "maximal d-degenerate completion needs n >= d");
  std::vector<char> alive(static_cast<std::size_t>(n) + 1, 1);
  std::vector<Vertex> removal;
  for (int step = 0; step < n; ++step) {
    Vertex pick = 0;
    for (Vertex v = n; v >= 1; --v)
      if (alive[v] && detail::alive_degree(g, alive, v) <= d) {
        pick = v;
        break;
      }
    require(pick != 0, ErrorKind::NotDegenerate, "graph is not " + std::to_string(d) + "-degenerate");
    alive[pick] = 0;
    removal.push_back(pick);
  }
  MaximalDegenerate out;
  out.ordering.assign(removal.rbegin(), removal.rend());
  out.graph = g;
  const auto& ord = out.ordering;
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      if (!out.graph.has_edge(ord[a], ord[b])) out.graph.add_edge(ord[a], ord[b]);
  for (int k = d; k < n; ++k) {
    int back = 0;
    for (int p = 0; p < k; ++p)
      if (out.graph.has_edge(ord[k], ord[p])) ++back;
    for (int p = 0; p < k && back < d; ++p)
      if (!out.graph.has_edge(ord[k], ord[p])) {
        out.graph.add_edge(ord[k], ord[p]);
        ++back;
      }
  }
  require(is_maximal_degenerate_ordering(out.graph, out.ordering, d), ErrorKind::InternalError,
          "completion is not maximal d-degenerate");
  return out;
}

/// Every maximal d-degenerate graph on d..max_n vertices with ordering 1..n, vertex k at position k.
inline void for_each_maximal_degenerate(int d, int max_n, const std::function<void(const MaximalDegenerate&)>& visit) {
  require(d >= 1, ErrorKind::InvalidArgument, "d must be positive");
  MaximalDegenerate base{Graph::complete(d), {}};
  for (Vertex v = 1; v <= d; ++v) base.ordering.push_back(v);
  std::function<void(const MaximalDegenerate&)> grow = [&](const MaximalDegenerate& cur) {
    visit(cur);
    const int n = cur.graph.vertex_count();
    if (n >= max_n) return;
    std::vector<int> pick(static_cast<std::size_t>(d));
    std::iota(pick.begin(), pick.end(), 1);
    while (true) {
      MaximalDegenerate next = cur;
      Vertex v = next.graph.add_vertex();
      for (int u : pick) next.graph.add_edge(u, v);
      next.ordering.push_back(v);
      grow(next);
      int i = d - 1;
      while (i >= 0 && pick[i] == n - d + i + 1) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < d; ++j) pick[j] = pick[j - 1] + 1;
    }
  };
  if (max_n >= d) grow(base);
}

namespace detail {

inline void check_maximal_instance(const Graph& g, const std::vector<Vertex>& ordering, const RequestVector& r, int d) {
  require(d >= 1, ErrorKind::InvalidArgument, "d must be positive");
  require(is_maximal_degenerate_ordering(g, ordering, d), ErrorKind::PreconditionViolated,
          "graph and ordering are not maximal d-degenerate");
  check_request_vector(r, ordering.size(), d);
}

/// Exponents of (1/h) prod_{i<=d} x_i^{sigma(i)} prod_{i>d} x_i^d.
inline std::vector<int> target_exponents(const Bijection& sigma, const RequestVector& r, int d) {
  std::vector<int> e(r.size());
  for (std::size_t k = 0; k < r.size(); ++k) e[k] = (k < static_cast<std::size_t>(d) ? sigma[k] : d) - r[k];
  return e;
}

}  // namespace detail

/// c_G(h) = sum over sigma in S_d of sgn(sigma) c_G(h, sigma), from a table with caps d.
inline BigInt c_G_of_h_direct(const GraphPolynomial& poly, const RequestVector& r, int d) {
  BigInt total(0);
  Bijection sigma(static_cast<std::size_t>(d));
  std::iota(sigma.begin(), sigma.end(), 1);
  do {
    BigInt c = poly.coeff(detail::target_exponents(sigma, r, d));
    if (c != 0) total += sign_of(sigma) * c;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

inline GraphPolynomial coefficient_table(const Graph& g, const std::vector<Vertex>& ordering, int d) {
  return GraphPolynomial(g, ordering, std::vector<int>(ordering.size(), d));
}

inline BigInt c_G_of_h_direct(const Graph& g, const std::vector<Vertex>& ordering, const RequestVector& r, int d,
                              int max_n = 8) {
  require(g.vertex_count() <= max_n, ErrorKind::CapExceeded, "direct coefficient sum limited to small graphs");
  detail::check_maximal_instance(g, ordering, r, d);
  return c_G_of_h_direct(coefficient_table(g, ordering, d), r, d);
}

namespace detail {

/// Sum over pi in S^0_d with pi + r in S_d of sgn(pi) sgn(pi + r).
inline BigInt clique_base_case(const RequestVector& r, int d) {
  for (int x : r)
    if (x > d) return BigInt(0);
  BigInt total(0);
  Bijection pi(static_cast<std::size_t>(d));
  std::iota(pi.begin(), pi.end(), 0);
  do {
    if (shift_equation_holds(pi, r)) total += sign_of(pi) * sign_of(add_request(pi, r));
  } while (std::next_permutation(pi.begin(), pi.end()));
  return total;
}

/// Strips the last ordered vertex and branches over r(n)-subsets of its d earlier neighbors.
inline BigInt strip_last_vertex(const Graph& g, const std::vector<int>& pos, const std::vector<Vertex>& ordering,
                              std::size_t n, RequestVector r, int d) {
  if (n == static_cast<std::size_t>(d)) return clique_base_case(r, d);
  const Vertex last = ordering[n - 1];
  std::vector<int> back;
  for (Vertex u : g.neighbors(last))
    if (static_cast<std::size_t>(pos[u]) < n - 1) back.push_back(pos[u]);
  const int take = r[n - 1];
  r.resize(n - 1);
  BigInt total(0);
  std::function<void(int, int)> choose = [&](int from, int left) {
    if (left == 0) {
      total += strip_last_vertex(g, pos, ordering, n - 1, r, d);
      return;
    }
    for (int i = from; i + left <= static_cast<int>(back.size()); ++i) {
      ++r[back[i]];
      choose(i + 1, left - 1);
      --r[back[i]];
    }
  };
  choose(0, take);
  return take % 2 ? BigInt(-total) : total;
}

}  // namespace detail

struct CoefficientResidue {
  BigInt value;
  int residue = 0;
};

/// Evaluates c_G(h) by the vertex-stripping recursion and reduces it modulo d + 1.
inline CoefficientResidue c_G_of_h_recursive(const Graph& g, const std::vector<Vertex>& ordering, const RequestVector& r,
                                       int d, int max_n = 8) {
  require(is_prime(d + 1), ErrorKind::NotPrime, "d + 1 = " + std::to_string(d + 1) + " is not prime");
  require(g.vertex_count() <= max_n, ErrorKind::CapExceeded, "recursive coefficient sum limited to small graphs");
  detail::check_maximal_instance(g, ordering, r, d);
  const std::vector<int> pos = detail::positions_of(g, ordering);
  CoefficientResidue out;
  out.value = detail::strip_last_vertex(g, pos, ordering, ordering.size(), r, d);
  out.residue = static_cast<int>(mod_floor(out.value, d + 1));
  return out;
}

/// r is indexed by vertex: r[v - 1]. The lists need |L(v)| >= d + 1 - r(v).
inline Coloring single_request_colorable(const Graph& g, const ListAssignment& L, int d, const RequestVector& r) {
  L.validate_for(g);
  const int n = g.vertex_count();
  require(d >= 2, ErrorKind::PreconditionViolated, "d must be at least 2");
  require(is_prime(d + 1), ErrorKind::PreconditionViolated, "d + 1 must be prime");
  require(degeneracy(g).d <= d, ErrorKind::PreconditionViolated, "graph is not d-degenerate");
  require(static_cast<int>(r.size()) == n, ErrorKind::PreconditionViolated, "request vector must cover every vertex");
  long long sum = 0;
  for (Vertex v = 1; v <= n; ++v) {
    const int rv = r[static_cast<std::size_t>(v - 1)];
    require(rv >= 0, ErrorKind::PreconditionViolated, "request vector entries must be nonnegative");
    require(static_cast<int>(L[v].size()) >= d + 1 - rv, ErrorKind::PreconditionViolated,
            "list of vertex " + std::to_string(v) + " is shorter than d + 1 - r(v)");
    sum += rv;
  }
  require(sum == d, ErrorKind::PreconditionViolated, "request vector must sum to d");
  auto phi = is_L_colorable(g, L, {});
  require(phi.has_value(), ErrorKind::InternalError, "no L-coloring found although one must exist");
  return *phi;
}

/// A coloring from lists of size >= d + 1 that gives v the color c.
inline Coloring satisfy_singleton_request(const Graph& g, const ListAssignment& L, int d, Vertex v, Color c) {
  require(g.contains(v), ErrorKind::InvalidArgument, "request vertex out of range");
  require(L.contains(v, c), ErrorKind::SemanticError, "requested color not in the list");
  for (Vertex u = 1; u <= g.vertex_count(); ++u)
    require(static_cast<int>(L[u].size()) >= d + 1, ErrorKind::PreconditionViolated, "lists must have size >= d + 1");
  ListAssignment restricted = L;
  restricted.set(v, {c});
  RequestVector r(static_cast<std::size_t>(g.vertex_count()), 0);
  r[static_cast<std::size_t>(v - 1)] = d;
  Coloring phi = single_request_colorable(g, restricted, d, r);
  require(phi[v] == c, ErrorKind::InternalError, "singleton request not honoured");
  return phi;
}

}  // namespace flexlist
