#pragma once

// Exact flexibility values, the LP certificate for weighted flexibility and
// the reduction from unweighted to weighted requests.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "flexlist/coloring.hpp"
#include "flexlist/error.hpp"
#include "flexlist/graph.hpp"
#include "flexlist/rational.hpp"
#include "flexlist/simplex.hpp"

namespace flexlist {

struct FlexOptions {
  /// Maximum number of nonempty requests examined by flexibility_exact.
  std::size_t request_cap = 1'000'000;
  /// Maximum number of enumerated L-colorings (LP columns, scan tables).
  std::size_t coloring_cap = 200'000;
};

inline Rational epsilon_of_request(const Graph& g, const ListAssignment& L, const Request& r) {
  require(!r.empty(), ErrorKind::EmptyRequest, "request with empty domain");
  auto best = max_request_match(g, L, r);
  require(best.has_value(), ErrorKind::Uncolorable, "graph has no L-coloring");
  return make_rational(static_cast<std::int64_t>(best->count), static_cast<std::int64_t>(r.size()));
}

struct FlexReport {
  Rational epsilon;
  Request worst_request;
  bool colorable = true;
  std::size_t requests_checked = 0;
};

/// Minimum of epsilon_of_request over every nonempty request; ties go to the
/// lexicographically smallest request.
inline FlexReport flexibility_exact(const Graph& g, const ListAssignment& L, const FlexOptions& options = {}) {
  L.validate_for(g);
  const int n = g.vertex_count();
  require(n >= 1, ErrorKind::EmptyRequest, "graph without vertices has no nonempty request");
  long double space = 1;
  for (Vertex v = 1; v <= n; ++v) space *= static_cast<long double>(L[v].size() + 1);
  require(space - 1 <= static_cast<long double>(options.request_cap), ErrorKind::CapExceeded,
          "request space exceeds the configured cap");

  auto table = enumerate_L_colorings(g, L, options.coloring_cap);
  require(!table.colorings.empty(), ErrorKind::Uncolorable, "graph has no L-coloring");

  auto best_count = [&](const Request& r) -> std::size_t {
    if (table.truncated) return max_request_match(g, L, r)->count;
    std::size_t best = 0;
    for (const auto& phi : table.colorings) {
      best = std::max(best, matched_count(r, phi));
      if (best == r.size()) break;
    }
    return best;
  };

  FlexReport report;
  bool have = false;
  std::vector<std::size_t> digit(n + 1, 0);  // 0: vertex not requested; k: k-th color of L(v)
  while (true) {
    Vertex v = n;
    while (v >= 1 && digit[v] == L[v].size()) digit[v--] = 0;
    if (v == 0) break;
    ++digit[v];
    Request r;
    for (Vertex u = 1; u <= n; ++u)
      if (digit[u]) r.set(u, L[u][digit[u] - 1]);
    ++report.requests_checked;
    Rational eps = make_rational(static_cast<std::int64_t>(best_count(r)), static_cast<std::int64_t>(r.size()));
    if (!have || eps < report.epsilon || (eps == report.epsilon && r < report.worst_request)) {
      report.epsilon = eps;
      report.worst_request = std::move(r);
      have = true;
    }
  }
  return report;
}

struct ColoringDistribution {
  std::vector<std::pair<Coloring, Rational>> support;

  Rational total() const {
    Rational s(0);
    for (const auto& [phi, p] : support) s += p;
    return s;
  }

  Rational marginal(Vertex v, Color c) const {
    Rational s(0);
    for (const auto& [phi, p] : support)
      if (phi[v] == c) s += p;
    return s;
  }

  Rational expected_weight(const WeightedRequest& w) const {
    Rational s(0);
    for (const auto& [phi, p] : support) s += p * matched_weight(w, phi);
    return s;
  }
};

struct WeightedFlexReport {
  Rational epsilon;
  ColoringDistribution distribution;
  /// Dual multipliers of the marginal rows; its best satisfaction ratio is epsilon.
  WeightedRequest dual;
  std::size_t columns = 0;
  std::size_t pivots = 0;
};

/// LP over enumerated colorings: maximise eps subject to
/// sum_{phi(v)=c} p_phi >= eps for every (v, c), sum p = 1, p >= 0.
inline WeightedFlexReport weighted_flexibility_lp(const Graph& g, const ListAssignment& L,
                                                  const FlexOptions& options = {}) {
  L.validate_for(g);
  auto table = enumerate_L_colorings(g, L, options.coloring_cap);
  require(!table.truncated, ErrorKind::CapExceeded, "too many L-colorings for the LP");
  require(!table.colorings.empty(), ErrorKind::Uncolorable, "graph has no L-coloring");
  const auto& colorings = table.colorings;

  LPInstance lp;
  lp.maximize = true;
  for (std::size_t k = 0; k < colorings.size(); ++k) lp.add_variable(Rational(0));
  const std::size_t eps_var = lp.add_variable(Rational(1));
  std::vector<WeightedRequest::Key> keys;
  for (Vertex v = 1; v <= g.vertex_count(); ++v)
    for (Color c : L[v]) {
      std::vector<Rational> row(lp.variable_count(), Rational(0));
      row[eps_var] = 1;
      for (std::size_t k = 0; k < colorings.size(); ++k)
        if (colorings[k][v] == c) row[k] = -1;
      lp.add_constraint(std::move(row), Sense::LessEqual, Rational(0));
      keys.emplace_back(v, c);
    }
  std::vector<Rational> sum_row(lp.variable_count(), Rational(1));
  sum_row[eps_var] = 0;
  lp.add_constraint(std::move(sum_row), Sense::Equal, Rational(1));

  LPSolution sol = simplex_solve(lp);
  require(sol.status == LPSolution::Status::Optimal, ErrorKind::InternalError, "flexibility LP not optimal");

  WeightedFlexReport report;
  report.epsilon = sol.value;
  report.columns = colorings.size();
  report.pivots = sol.pivots;
  for (std::size_t k = 0; k < colorings.size(); ++k)
    if (sol.primal[k] > 0) report.distribution.support.emplace_back(colorings[k], sol.primal[k]);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    require(sol.dual[i] >= 0, ErrorKind::InternalError, "negative dual multiplier");
    report.dual.set(keys[i].first, keys[i].second, sol.dual[i]);
  }
  return report;
}

/// Returns a coloring matching at least an eps fraction of the given request.
using FlexOracle = std::function<Coloring(const Request&)>;

inline FlexOracle exact_flex_oracle(const Graph& g, const ListAssignment& L) {
  return [&g, &L](const Request& r) {
    auto match = max_request_match(g, L, r);
    require(match.has_value(), ErrorKind::Uncolorable, "graph has no L-coloring");
    return match->coloring;
  };
}

struct PeelResult {
  Coloring coloring;
  Rational weight;
  /// Sum over v of max_c w(v, c).
  Rational top_weight;
  /// Number of oracle calls t, with n_0 > n_1 > ... > n_t = 0.
  int rounds = 0;
  std::vector<int> prefix_sizes;
};

/// Sort vertices by their heaviest color, satisfy nested prefix requests with
/// the oracle and keep the best of the colorings obtained.
inline PeelResult peel_weighted(const Graph& g, const ListAssignment& L, const WeightedRequest& w,
                                const Rational& eps, const FlexOracle& oracle) {
  L.validate_for(g);
  w.validate_against(L);
  const int n = g.vertex_count();
  require(n >= 1, ErrorKind::PreconditionViolated, "empty graph");
  require(L.uniform_size() > 0, ErrorKind::PreconditionViolated, "lists must all have the same size");
  require(eps > 0 && eps <= 1, ErrorKind::PreconditionViolated, "eps must lie in (0, 1]");

  std::vector<Color> preferred(n + 1);
  std::vector<Rational> top(n + 1);
  PeelResult result;
  result.top_weight = 0;
  for (Vertex v = 1; v <= n; ++v) {
    preferred[v] = L[v].front();
    top[v] = w.weight(v, preferred[v]);
    for (Color c : L[v])
      if (w.weight(v, c) > top[v]) {
        preferred[v] = c;
        top[v] = w.weight(v, c);
      }
    result.top_weight += top[v];
  }
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return top[a] > top[b]; });

  bool have = false;
  int remaining = n;
  while (remaining > 0) {
    result.prefix_sizes.push_back(remaining);
    Request r;
    for (int i = 0; i < remaining; ++i) r.set(order[i], preferred[order[i]]);
    Coloring phi = oracle(r);
    require(is_L_coloring(g, L, phi), ErrorKind::OracleViolation, "oracle returned an invalid coloring");
    int matched = static_cast<int>(matched_count(r, phi));
    require(Rational(matched) >= eps * remaining, ErrorKind::OracleViolation,
            "oracle matched fewer than eps of the request");
    ++result.rounds;
    Rational weight = matched_weight(w, phi);
    if (!have || weight > result.weight) {
      result.weight = weight;
      result.coloring = phi;
      have = true;
    }
    remaining -= matched;
  }
  return result;
}

/// (1 - eps)^k * n >= 1, i.e. k <= log_{1/(1-eps)} n.
inline bool rounds_within_log(int k, const Rational& eps, int n) {
  return pow(Rational(1) - eps, static_cast<unsigned>(k)) * n >= 1;
}

/// Exact test of achieved >= total / (ell * log_{1/(1-eps)} n) for 0 < eps < 1 and n >= 2.
inline bool meets_log_bound(const Rational& achieved, const Rational& total, int ell, const Rational& eps, int n) {
  require(eps > 0 && eps < 1 && n >= 2 && ell >= 1, ErrorKind::InvalidArgument,
          "logarithmic bound needs 0 < eps < 1 and n >= 2");
  if (total <= 0) return true;
  if (achieved <= 0) return false;
  // Equivalent to tau <= log_{1/(1-eps)} n with tau = total / (ell * achieved).
  Rational tau = total / (achieved * ell);
  BigInt a = numerator_of(tau), b = denominator_of(tau);
  BigInt floor_tau = a / b;
  BigInt ceil_tau = (a + b - 1) / b;
  auto small = [](const BigInt& x) {
    require(x <= 1'000'000, ErrorKind::CapExceeded, "exponent too large for exact comparison");
    return x.convert_to<unsigned>();
  };
  if (rounds_within_log(static_cast<int>(small(ceil_tau)), eps, n)) return true;
  if (!rounds_within_log(static_cast<int>(small(floor_tau)), eps, n)) return false;
  // n^b * (1-eps)^a >= 1 with 1 - eps = u/v.
  Rational base = Rational(1) - eps;
  BigInt u = numerator_of(base), v = denominator_of(base);
  unsigned ea = small(a), eb = small(b);
  return pow(BigInt(n), eb) * pow(u, ea) >= pow(v, ea);
}

}  // namespace flexlist
