#pragma once

// Knapsack-style lower-bound instances built from (u,v)->w implication gadgets.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flexlist/coloring.hpp"
#include "flexlist/error.hpp"
#include "flexlist/graph.hpp"
#include "flexlist/rational.hpp"

namespace flexlist {

struct KnapsackSpec {
  std::vector<int> s;
  int t = 1;

  int n() const noexcept { return static_cast<int>(s.size()); }

  void validate() const {
    require(!s.empty(), ErrorKind::InvalidArgument, "knapsack spec needs n >= 1");
    for (int si : s) require(si >= 1, ErrorKind::InvalidArgument, "knapsack sizes must be positive");
    require(t >= 1, ErrorKind::InvalidArgument, "knapsack capacity must be positive");
  }
};

struct VertexRole {
  enum class Kind { Special, Machine, Sink, Gadget };
  Kind kind = Kind::Special;
  int i = 0;           // Special: index of v_i; Machine: row i
  int j = 0;           // Machine: column j
  int gadget = 0;      // Gadget: 1-based attachment number
  char step = '-';     // Gadget: 'a'..'d', or '-' for a gadget attached by hand
  int slot = 0;        // Gadget: 1..5 for z_1..z_5

  std::string label() const {
    switch (kind) {
      case Kind::Special: return "v" + std::to_string(i);
      case Kind::Machine: return "x" + std::to_string(i) + "," + std::to_string(j);
      case Kind::Sink: return "y";
      case Kind::Gadget: break;
    }
    return "z" + std::to_string(slot) + " gadget " + std::to_string(gadget) + " step " + std::string(1, step);
  }
};

struct GadgetRecord {
  Vertex u = 0, v = 0, w = 0;
  char step = '-';
  std::array<Vertex, 5> z{};
};

struct GadgetConstruction {
  Graph graph;
  ListAssignment lists;
  KnapsackSpec spec;
  std::vector<Vertex> S;
  std::vector<VertexRole> roles;  // indexed by vertex; entry 0 unused
  std::vector<GadgetRecord> gadgets;

  Vertex special(int i) const { return S.at(static_cast<std::size_t>(i - 1)); }
  Vertex machine(int i, int j) const { return spec.n() + (i - 1) * (spec.t + 1) + j + 1; }
  Vertex sink() const { return spec.n() * (spec.t + 2) + 1; }

  Vertex add_vertex(std::vector<Color> list, VertexRole role) {
    graph.add_vertex();
    lists.push_back(std::move(list));
    if (roles.empty()) roles.resize(1);
    roles.push_back(role);
    return graph.vertex_count();
  }
};

inline const std::vector<Color>& special_list() {
  static const std::vector<Color> l{1, 2, 3};
  return l;
}

inline const std::vector<Color>& machine_list() {
  static const std::vector<Color> l{1, 4, 5};
  return l;
}

/// Adds z_1..z_5 forcing "u = 1 and v = 1 implies w = 1"; returns the gadget index.
inline std::size_t attach_gadget(GadgetConstruction& c, Vertex u, Vertex v, Vertex w, char step = '-') {
  for (Vertex x : {u, v, w}) {
    require(c.graph.contains(x), ErrorKind::InvalidArgument, "gadget endpoint out of range");
    const auto& l = c.lists[x];
    require(l == special_list() || l == machine_list(), ErrorKind::BadEndpointList,
            "gadget endpoint " + std::to_string(x) + " must have list {1,2,3} or {1,4,5}");
  }
  GadgetRecord rec{u, v, w, step, {}};
  const int id = static_cast<int>(c.gadgets.size()) + 1;
  const std::vector<Color> wl = c.lists[w];
  for (int k = 0; k < 5; ++k) {
    VertexRole role;
    role.kind = VertexRole::Kind::Gadget;
    role.gadget = id;
    role.step = step;
    role.slot = k + 1;
    rec.z[k] = c.add_vertex(k < 3 ? std::vector<Color>{1, 6, 7} : wl, role);
  }
  auto& g = c.graph;
  const auto& z = rec.z;
  g.add_edge(z[0], z[1]);
  g.add_edge(z[1], z[2]);
  g.add_edge(z[0], z[2]);
  g.add_edge(z[2], z[3]);
  g.add_edge(z[3], z[4]);
  g.add_edge(z[2], z[4]);
  g.add_edge(u, z[0]);
  g.add_edge(v, z[1]);
  g.add_edge(w, z[3]);
  g.add_edge(w, z[4]);
  c.gadgets.push_back(rec);
  return c.gadgets.size() - 1;
}

inline GadgetConstruction build_knapsack_graph(const KnapsackSpec& spec) {
  spec.validate();
  const int n = spec.n(), t = spec.t;
  GadgetConstruction c;
  c.spec = spec;
  for (int i = 1; i <= n; ++i) {
    VertexRole role;
    role.i = i;
    c.S.push_back(c.add_vertex(special_list(), role));
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j <= t; ++j) {
      VertexRole role;
      role.kind = VertexRole::Kind::Machine;
      role.i = i;
      role.j = j;
      c.add_vertex(machine_list(), role);
    }
  VertexRole sink;
  sink.kind = VertexRole::Kind::Sink;
  c.add_vertex(machine_list(), sink);
  c.graph.add_edge(c.sink(), c.machine(1, 0));

  for (int i = 1; i <= n; ++i) attach_gadget(c, c.special(i), c.special(i), c.machine(1, 0), 'a');
  for (int i = 1; i <= n - 1; ++i)
    for (int j = 0; j <= t; ++j) attach_gadget(c, c.machine(i, j), c.machine(i, j), c.machine(i + 1, j), 'b');
  for (int i = 1; i <= n - 1; ++i) {
    const int si = spec.s[i - 1];
    for (int j = 0; j <= t - si; ++j) attach_gadget(c, c.special(i), c.machine(i, j), c.machine(i + 1, j + si), 'c');
  }
  for (int i = 1; i <= n; ++i) {
    const int si = spec.s[i - 1];
    for (int j = std::max(0, t - si + 1); j <= t; ++j) attach_gadget(c, c.special(i), c.machine(i, j), c.sink(), 'd');
  }
  require(static_cast<long long>(c.graph.vertex_count()) < 11LL * n * (t + 2), ErrorKind::InternalError,
          "construction exceeds the vertex bound");
  return c;
}

/// One of the four fixed colorings phi_1..phi_4 of a knapsack construction.
inline Coloring canonical_coloring(const GadgetConstruction& c, int index) {
  require(index >= 1 && index <= 4, ErrorKind::InvalidArgument, "canonical coloring index must be 1..4");
  struct Row {
    Color s, x, y;
    std::array<Color, 5> abc, d;
  };
  static constexpr std::array<Row, 4> table{{
      {2, 1, 4, {6, 7, 1, 4, 5}, {1, 6, 7, 1, 5}},
      {3, 1, 5, {7, 6, 1, 5, 4}, {1, 7, 6, 4, 1}},
      {3, 4, 1, {1, 6, 7, 1, 5}, {6, 1, 7, 5, 4}},
      {3, 5, 1, {7, 1, 6, 4, 1}, {7, 6, 1, 4, 5}},
  }};
  const Row& row = table[static_cast<std::size_t>(index - 1)];
  Coloring phi(c.graph.vertex_count());
  for (Vertex v = 1; v <= c.graph.vertex_count(); ++v) {
    const VertexRole& role = c.roles[v];
    switch (role.kind) {
      case VertexRole::Kind::Special: phi[v] = row.s; break;
      case VertexRole::Kind::Machine: phi[v] = row.x; break;
      case VertexRole::Kind::Sink: phi[v] = row.y; break;
      case VertexRole::Kind::Gadget:
        require(role.step != '-', ErrorKind::InvalidArgument, "canonical colorings need step-tagged gadgets");
        phi[v] = (role.step == 'd' ? row.d : row.abc)[static_cast<std::size_t>(role.slot - 1)];
        break;
    }
  }
  require(is_L_coloring(c.graph, c.lists, phi), ErrorKind::InternalError,
          "canonical coloring " + std::to_string(index) + " is not a proper L-coloring");
  return phi;
}

/// Constraint making {i : phi(v_i) = 1} equal to R exactly.
inline ColoringConstraint realization_constraint(const GadgetConstruction& c, const std::vector<int>& R) {
  ColoringConstraint k;
  std::vector<char> in(static_cast<std::size_t>(c.spec.n()) + 1, 0);
  for (int i : R) in.at(static_cast<std::size_t>(i)) = 1;
  for (int i = 1; i <= c.spec.n(); ++i) {
    if (in[i]) k.forced[c.special(i)] = 1;
    else k.forbidden[c.special(i)] = {1};
  }
  return k;
}

inline std::optional<Coloring> realize(const GadgetConstruction& c, const std::vector<int>& R) {
  return is_L_colorable(c.graph, c.lists, realization_constraint(c, R));
}

/// Every R (as a sorted index list, in increasing bitmask order) that some L-coloring realizes.
inline std::vector<std::vector<int>> realizable_sets(const GadgetConstruction& c, int cap = 4) {
  const int n = c.spec.n();
  require(n <= cap && c.spec.t <= cap, ErrorKind::CapExceeded, "realizability check limited to n, t <= cap");
  std::vector<std::vector<int>> family;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> R;
    for (int i = 1; i <= n; ++i)
      if (mask >> (i - 1) & 1u) R.push_back(i);
    if (realize(c, R)) family.push_back(std::move(R));
  }
  return family;
}

struct LogGapInstance {
  GadgetConstruction construction;
  WeightedRequest hard;
  int k = 0;
};

inline KnapsackSpec log_gap_spec(int k) {
  KnapsackSpec spec;
  const int n = (1 << k) - 1;
  for (int i = 1; i <= n; ++i) {
    int si = 1;
    while (static_cast<long long>(i) * si * 2 <= n) si *= 2;
    spec.s.push_back(si);
  }
  spec.t = 1 << (k - 1);
  return spec;
}

inline LogGapInstance build_log_gap_instance(int k, int cap = 3) {
  require(k >= 1, ErrorKind::InvalidArgument, "k must be positive");
  require(k <= cap, ErrorKind::CapExceeded, "log-gap instance size grows as 4^k; k exceeds the cap");
  LogGapInstance inst;
  inst.k = k;
  inst.construction = build_knapsack_graph(log_gap_spec(k));
  for (int i = 1; i <= inst.construction.spec.n(); ++i)
    inst.hard.set(inst.construction.special(i), 1, Rational(inst.construction.spec.s[i - 1]));
  require(inst.hard.total() == Rational(k * (1 << (k - 1))), ErrorKind::InternalError,
          "hard request total differs from k 2^(k-1)");
  return inst;
}

struct CanonicalChoice {
  Coloring coloring;
  int index = 0;
  Rational weight;
};

/// Best of phi_1..phi_4 for a request with no weight on color 1 at S.
inline CanonicalChoice quarter_satisfy(const GadgetConstruction& c, const WeightedRequest& w) {
  w.validate_against(c.lists);
  for (Vertex v : c.S)
    require(w.weight(v, 1) == 0, ErrorKind::BadRequest,
            "weighted request puts weight on color 1 at special vertex " + std::to_string(v));
  CanonicalChoice best;
  for (int idx = 1; idx <= 4; ++idx) {
    Coloring phi = canonical_coloring(c, idx);
    Rational weight = matched_weight(w, phi);
    if (idx == 1 || weight > best.weight) best = {std::move(phi), idx, weight};
  }
  require(best.weight * 4 >= w.total(), ErrorKind::BoundViolation, "best canonical coloring below a quarter");
  return best;
}

struct SplitResult {
  Coloring coloring;
  std::size_t matched = 0;
  /// 1 when the realized half-of-R_1 coloring wins, 2 when the canonical coloring does.
  int half = 0;
};

/// Splits r into its color-1-on-S part r_1 and the rest r_2, satisfies half of r_1
/// by realizing its largest indices and a quarter of r_2 canonically, keeps the better.
inline SplitResult split_satisfy(const GadgetConstruction& c, const Request& r) {
  r.validate_against(c.lists);
  require(!r.empty(), ErrorKind::EmptyRequest, "request with empty domain");
  std::vector<int> R1;
  WeightedRequest w2;
  for (auto [v, col] : r) {
    const VertexRole& role = c.roles[v];
    if (role.kind == VertexRole::Kind::Special && col == 1) R1.push_back(role.i);
    else w2.set(v, col, Rational(1));
  }
  std::sort(R1.begin(), R1.end());
  std::vector<int> R(R1.end() - static_cast<std::ptrdiff_t>((R1.size() + 1) / 2), R1.end());

  SplitResult result;
  CanonicalChoice quarter = quarter_satisfy(c, w2);
  result.coloring = quarter.coloring;
  result.matched = matched_count(r, quarter.coloring);
  result.half = 2;
  if (!R.empty()) {
    auto phi = realize(c, R);
    require(phi.has_value(), ErrorKind::InternalError, "largest half of R_1 is not realizable");
    std::size_t m = matched_count(r, *phi);
    if (m > result.matched) result = {std::move(*phi), m, 1};
  }
  require(result.matched * 6 >= r.size(), ErrorKind::BoundViolation, "split argument matched below a sixth");
  return result;
}

}  // namespace flexlist
