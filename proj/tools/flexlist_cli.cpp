#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "flexlist/flexlist.hpp"

using namespace flexlist;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kUsage = 2;

// Thrown for bad input files and inconsistent flags; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Report {
  bool ok = true;
  Json json = Json::object();
  std::ostringstream text;
};

std::string q(const Rational& r) { return to_string(r); }

Json coloring_json(const Coloring& phi) {
  Json a = Json::array();
  for (Vertex v = 1; v <= phi.vertex_count(); ++v) a.push_back(phi[v]);
  return a;
}

Json request_json(const Request& r) {
  Json a = Json::array();
  for (auto [v, c] : r) a.push_back({{"vertex", v}, {"color", c}});
  return a;
}

std::string request_text(const Request& r) {
  std::string s = "{";
  for (auto [v, c] : r) s += (s.size() > 1 ? ", " : "") + std::to_string(v) + "->" + std::to_string(c);
  return s + "}";
}

Json weights_json(const WeightedRequest& w) {
  Json a = Json::array();
  for (const auto& [key, value] : w.entries())
    if (value != 0) a.push_back({{"vertex", key.first}, {"color", key.second}, {"weight", q(value)}});
  return a;
}

Json vertices_json(const std::vector<Vertex>& vs) { return Json(vs); }

std::string join(const std::vector<Vertex>& vs) {
  std::string s;
  for (Vertex v : vs) s += (s.empty() ? "" : " ") + std::to_string(v);
  return s;
}

InstanceFile load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_instance(buffer.str());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::SemanticError)
      throw UsageError(path + ": " + e.what());
    throw;
  }
}

std::vector<int> parse_int_list(const std::string& s, const char* what) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("malformed ") + what + " list '" + s + "'");
    }
  }
  if (out.empty()) throw UsageError(std::string("empty ") + what + " list");
  return out;
}

// ---- analyze ----

void run_analyze(const InstanceFile& inst, std::optional<int> sg_d, Report& rep) {
  const Graph& g = inst.graph;
  auto deg = degeneracy(g);
  rep.json["vertices"] = g.vertex_count();
  rep.json["edges"] = g.edge_count();
  rep.json["degeneracy"] = {{"d", deg.d}, {"order", vertices_json(deg.order)}};
  rep.text << "vertices " << g.vertex_count() << ", edges " << g.edge_count() << "\n";
  rep.text << "degeneracy " << deg.d << " (order " << join(deg.order) << ")\n";

  if (g.vertex_count() > 0) {
    auto dense = densest_subgraph(g);
    Rational mad = 2 * dense.density;
    rep.json["mad"] = {{"value", q(mad)}, {"densest_subgraph", vertices_json(dense.vertices)}};
    rep.text << "mad " << q(mad) << " (densest subgraph " << join(dense.vertices) << ")\n";
  }

  int wd = 0;
  while (!is_weakly_degenerate(g, wd)) ++wd;
  Json steps = Json::array();
  const auto sequence = weak_reduction_sequence(g, wd);
  for (const auto& step : *sequence)
    steps.push_back({{"kind", step.kind == WeakReductionStep::Kind::SingleVertex ? "vertex" : "block"},
                     {"vertices", vertices_json(step.vertices)}});
  rep.json["weak_degeneracy"] = {{"d", wd}, {"sequence", steps}};
  rep.text << "weakly " << wd << "-degenerate, " << steps.size() << " reduction steps\n";

  const int d = sg_d.value_or(deg.d);
  auto w = sg_witness(g, d);
  if (w) {
    const char* kind = w->kind == SgWitness::Kind::LowDegree ? "low-degree" : "soft";
    rep.json["sg_witness"] = {{"d", d}, {"kind", kind}, {"vertex", w->vertex}};
    rep.text << "witness for d=" << d << ": " << kind << " vertex " << w->vertex << "\n";
  } else {
    rep.json["sg_witness"] = {{"d", d}, {"kind", nullptr}};
    rep.text << "no witness for d=" << d << "\n";
  }
}

// ---- flex / wflex ----

void run_flex(const InstanceFile& inst, std::size_t request_cap, Report& rep) {
  FlexOptions opts;
  opts.request_cap = request_cap;
  auto res = flexibility_exact(inst.graph, inst.lists, opts);
  rep.json["epsilon"] = q(res.epsilon);
  rep.json["worst_request"] = request_json(res.worst_request);
  rep.json["requests_checked"] = res.requests_checked;
  rep.text << "epsilon* = " << q(res.epsilon) << "\n";
  rep.text << "worst request " << request_text(res.worst_request) << "\n";
  rep.text << res.requests_checked << " requests checked\n";
  if (!inst.request.empty()) {
    Rational eps = epsilon_of_request(inst.graph, inst.lists, inst.request);
    rep.json["file_request"] = {{"request", request_json(inst.request)}, {"epsilon", q(eps)}};
    rep.text << "file request " << request_text(inst.request) << " is " << q(eps) << "-satisfiable\n";
  }
}

void run_wflex(const InstanceFile& inst, Report& rep) {
  auto lp = weighted_flexibility_lp(inst.graph, inst.lists);
  Json support = Json::array();
  for (const auto& [phi, p] : lp.distribution.support)
    support.push_back({{"coloring", coloring_json(phi)}, {"probability", q(p)}});
  auto best = max_weighted_match(inst.graph, inst.lists, lp.dual);
  Rational ratio = lp.dual.total() > 0 ? best->weight / lp.dual.total() : Rational(0);
  rep.ok = lp.dual.total() > 0 && ratio == lp.epsilon;
  rep.json["epsilon"] = q(lp.epsilon);
  rep.json["distribution"] = support;
  rep.json["dual"] = weights_json(lp.dual);
  rep.json["dual_best_ratio"] = q(ratio);
  rep.json["duality_holds"] = rep.ok;
  rep.text << "weighted flexibility " << q(lp.epsilon) << " over " << lp.columns << " colorings\n";
  for (const auto& [phi, p] : lp.distribution.support) rep.text << "  " << q(p) << "  " << phi.str() << "\n";
  rep.text << "dual witness:";
  for (const auto& [key, value] : lp.dual.entries())
    if (value != 0) rep.text << " w(" << key.first << "," << key.second << ")=" << q(value);
  rep.text << "\nbest coloring gets " << q(ratio) << " of the dual weight"
           << (rep.ok ? ", equal to the LP value\n" : ", DIFFERENT from the LP value\n");
}

// ---- sample ----

struct SampleArgs {
  int d = 1;
  bool exact = false;
  std::optional<long> trials;
  std::optional<std::uint64_t> seed;
  std::string procedure = "wdeg";
};

void run_sample(const InstanceFile& inst, const SampleArgs& a, Report& rep) {
  const Graph& g = inst.graph;
  const ListAssignment& L = inst.lists;
  if (a.exact == a.trials.has_value()) throw UsageError("sample needs exactly one of --exact or --trials");
  if (a.trials && !a.seed) throw UsageError("--trials requires --seed");
  rep.json["procedure"] = a.procedure;
  rep.json["d"] = a.d;

  if (a.procedure == "mad") {
    if (a.exact) throw UsageError("the mad procedure is sampled by Monte Carlo only");
    MadProcedure proc(g, L, a.d, exact_choosability_oracle());
    long matched = 0;
    for (long s = 0; s < *a.trials; ++s)
      matched += static_cast<long>(matched_count(inst.request, proc.run(inst.request, derive_seed(*a.seed, s))));
    const long requested = static_cast<long>(inst.request.size()) * *a.trials;
    Rational fraction = requested ? make_rational(matched, requested) : Rational(0);
    Rational target = Rational(1) / (2 * pow(Rational(a.d), static_cast<unsigned>(2 * a.d)));
    rep.ok = inst.request.empty() || fraction >= target;
    rep.json["trials"] = *a.trials;
    rep.json["seed"] = *a.seed;
    rep.json["request"] = request_json(inst.request);
    rep.json["satisfied_fraction"] = q(fraction);
    rep.json["target"] = q(target);
    rep.text << "mad procedure, d=" << a.d << ", " << *a.trials << " trials: satisfied fraction " << q(fraction)
             << " (target " << q(target) << ")\n";
    return;
  }
  if (a.procedure != "wdeg") throw UsageError("unknown procedure '" + a.procedure + "'");

  const auto K = FlexConstants::for_degree(a.d);
  MarginalTable table;
  if (a.exact) {
    table = exact_marginals_flex_wdeg(g, L, a.d);
  } else {
    std::map<std::pair<Vertex, Color>, long> counts;
    for (Vertex v = 1; v <= g.vertex_count(); ++v)
      for (Color c : L[v]) counts[{v, c}] = 0;
    for (long s = 0; s < *a.trials; ++s) {
      Coloring phi = sample_flex_wdeg(g, L, a.d, derive_seed(*a.seed, s));
      for (Vertex v = 1; v <= g.vertex_count(); ++v) ++counts[{v, phi[v]}];
    }
    for (const auto& [key, n] : counts) table[key] = make_rational(n, *a.trials);
    rep.json["trials"] = *a.trials;
    rep.json["seed"] = *a.seed;
  }
  Json rows = Json::array();
  Rational lowest(1);
  for (const auto& [key, p] : table) {
    rows.push_back({{"vertex", key.first}, {"color", key.second}, {"probability", q(p)}});
    lowest = std::min(lowest, p);
  }
  rep.json["mode"] = a.exact ? "exact" : "monte-carlo";
  rep.json["marginals"] = rows;
  rep.json["min_marginal"] = q(lowest);
  rep.json["epsilon_bound"] = q(K.epsilon);
  if (a.exact) {
    rep.ok = lowest >= K.epsilon;
    rep.json["bound_holds"] = rep.ok;
  }
  rep.text << (a.exact ? "exact" : "empirical") << " marginals of the weak-degeneracy procedure, d=" << a.d << "\n";
  for (const auto& [key, p] : table) rep.text << "  P[phi(" << key.first << ")=" << key.second << "] = " << q(p) << "\n";
  rep.text << "minimum " << q(lowest) << ", bound " << q(K.epsilon);
  if (a.exact) rep.text << (rep.ok ? " holds" : " VIOLATED");
  rep.text << "\n";
}

// ---- gadget ----

KnapsackSpec spec_from(std::optional<int> n, const std::string& sizes, int t) {
  KnapsackSpec spec{parse_int_list(sizes, "size"), t};
  if (n && *n != spec.n()) throw UsageError("--n does not match the number of sizes in --s");
  try {
    spec.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return spec;
}

InstanceFile construction_instance(const GadgetConstruction& c) {
  InstanceFile inst;
  inst.graph = c.graph;
  inst.lists = c.lists;
  return inst;
}

std::string serialized_construction(const GadgetConstruction& c) {
  SerializeOptions opts;
  std::string sizes;
  for (int s : c.spec.s) sizes += (sizes.empty() ? "" : ",") + std::to_string(s);
  opts.header_comments = {"knapsack gadget graph, s=(" + sizes + ") t=" + std::to_string(c.spec.t)};
  opts.vertex_notes.resize(static_cast<std::size_t>(c.graph.vertex_count()) + 1);
  for (Vertex v = 1; v <= c.graph.vertex_count(); ++v) opts.vertex_notes[v] = c.roles[v].label();
  return serialize_instance(construction_instance(c), opts);
}

void run_gadget_build(const KnapsackSpec& spec, const std::string& out_path, Report& rep) {
  auto c = build_knapsack_graph(spec);
  std::string text = serialized_construction(c);
  rep.json["vertices"] = c.graph.vertex_count();
  rep.json["edges"] = c.graph.edge_count();
  rep.json["gadgets"] = c.gadgets.size();
  if (out_path.empty()) {
    rep.json["instance"] = text;
    rep.text << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw UsageError("cannot write " + out_path);
  out << text;
  rep.json["written"] = out_path;
  rep.text << "wrote " << c.graph.vertex_count() << " vertices, " << c.graph.edge_count() << " edges, "
           << c.gadgets.size() << " gadgets to " << out_path << "\n";
}

std::string set_text(const std::vector<int>& R) {
  std::string s = "{";
  for (int i : R) s += (s.size() > 1 ? "," : "") + std::to_string(i);
  return s + "}";
}

void run_gadget_verify(const KnapsackSpec& spec, Report& rep) {
  auto c = build_knapsack_graph(spec);
  auto sets = realizable_sets(c);
  std::vector<std::vector<int>> expected;
  for (std::uint32_t mask = 0; mask < (1u << spec.n()); ++mask) {
    std::vector<int> R;
    int total = 0;
    for (int i = 1; i <= spec.n(); ++i)
      if (mask >> (i - 1) & 1u) {
        R.push_back(i);
        total += spec.s[i - 1];
      }
    if (total <= spec.t) expected.push_back(std::move(R));
  }
  std::sort(expected.begin(), expected.end());
  std::sort(sets.begin(), sets.end());
  const int bound = 11 * spec.n() * (spec.t + 2);
  const bool capacity = sets == expected;
  const bool size = c.graph.vertex_count() < bound;
  rep.ok = capacity && size;
  rep.json["vertices"] = c.graph.vertex_count();
  rep.json["vertex_bound"] = bound;
  rep.json["realizable_sets"] = sets;
  rep.json["matches_capacity"] = capacity;
  rep.text << "realizable sets:";
  for (const auto& R : sets) rep.text << " " << set_text(R);
  rep.text << "\n" << (capacity ? "equal to" : "DIFFERENT from") << " the sets with total size <= " << spec.t << "\n";
  rep.text << "|V| = " << c.graph.vertex_count() << (size ? " < " : " >= ") << bound << "\n";
}

void run_gadget_loggap(int k, long trials, std::optional<std::uint64_t> seed, Report& rep) {
  if (trials > 0 && !seed) throw UsageError("--trials requires --seed");
  auto inst = build_log_gap_instance(k);
  const auto& c = inst.construction;
  auto best = max_weighted_match(c.graph, c.lists, inst.hard);
  Rational ratio = best->weight / inst.hard.total();
  rep.ok = ratio == make_rational(1, k);
  rep.json["k"] = k;
  rep.json["vertices"] = c.graph.vertex_count();
  rep.json["hard_request"] = weights_json(inst.hard);
  rep.json["hard_ratio"] = q(ratio);
  rep.text << "log-gap instance k=" << k << ": " << c.graph.vertex_count() << " vertices\n";
  rep.text << "hard weighted request best ratio " << q(ratio) << "\n";
  if (trials <= 0) return;
  std::mt19937_64 rng(*seed);
  Rational worst(1);
  for (long trial = 0; trial < trials; ++trial) {
    Request r;
    double density = 0.05 + 0.05 * static_cast<double>(trial % 12);
    for (Vertex v = 1; v <= c.graph.vertex_count(); ++v)
      if (std::bernoulli_distribution(density)(rng)) r.set(v, c.lists[v][rng() % c.lists[v].size()]);
    if (trial % 3 == 0)
      for (Vertex v : c.S) r.set(v, 1);
    if (r.empty()) r.set(c.sink(), c.lists[c.sink()].front());
    auto res = split_satisfy(c, r);
    worst = std::min(worst, make_rational(static_cast<std::int64_t>(res.matched), static_cast<std::int64_t>(r.size())));
  }
  const bool sixth = worst * 6 >= 1;
  rep.ok = rep.ok && sixth;
  rep.json["split_trials"] = trials;
  rep.json["seed"] = *seed;
  rep.json["worst_split_fraction"] = q(worst);
  rep.text << trials << " random requests, worst matched fraction " << q(worst) << (sixth ? " >= 1/6\n" : " < 1/6\n");
}

// ---- null ----

void for_each_vector(int total, int parts, const std::function<void(const RequestVector&)>& visit) {
  RequestVector r(static_cast<std::size_t>(parts), 0);
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

void run_null_verify(int d, int max_n, Report& rep) {
  if (d < 1) throw UsageError("--d must be positive");
  if (max_n > 8) throw UsageError("--max-n is limited to 8");
  const bool prime = is_prime(d + 1);
  long graphs = 0, checks = 0, mismatches = 0;
  std::map<int, long> residues;
  for_each_maximal_degenerate(d, max_n, [&](const MaximalDegenerate& m) {
    ++graphs;
    GraphPolynomial poly = coefficient_table(m.graph, m.ordering, d);
    for_each_vector(d, m.graph.vertex_count(), [&](const RequestVector& r) {
      BigInt direct = c_G_of_h_direct(poly, r, d);
      int res = static_cast<int>(((direct % (d + 1)) + (d + 1)) % (d + 1));
      ++residues[res];
      ++checks;
      if (prime) {
        auto rec = c_G_of_h_recursive(m.graph, m.ordering, r, d);
        if (rec.value != direct || res != d) ++mismatches;
      }
    });
  });
  rep.ok = mismatches == 0;
  Json hist = Json::object();
  for (auto [res, count] : residues) hist[std::to_string(res)] = count;
  rep.json["d"] = d;
  rep.json["max_n"] = max_n;
  rep.json["modulus_prime"] = prime;
  rep.json["graphs"] = graphs;
  rep.json["request_vectors"] = checks;
  rep.json["residues"] = hist;
  rep.json["mismatches"] = mismatches;
  rep.text << graphs << " maximal " << d << "-degenerate graphs on <= " << max_n << " vertices, " << checks
           << " request vectors\nresidues mod " << d + 1 << ":";
  for (auto [res, count] : residues) rep.text << " " << res << " x" << count;
  rep.text << "\n";
  if (prime)
    rep.text << (mismatches ? "MISMATCH: " + std::to_string(mismatches) + " vectors"
                            : "all residues are -1 mod " + std::to_string(d + 1) + " and the recursion agrees")
             << "\n";
  else
    rep.text << d + 1 << " is not prime; residues reported only\n";
}

void run_null_coeff(const InstanceFile& inst, const std::string& exps, const std::string& ordering, Report& rep) {
  MonomialQuery query;
  query.exponents = parse_int_list(exps, "exponent");
  if (ordering.empty())
    for (Vertex v = 1; v <= inst.graph.vertex_count(); ++v) query.ordering.push_back(v);
  else
    for (int v : parse_int_list(ordering, "ordering")) query.ordering.push_back(v);
  BigInt c = graph_polynomial_coeff(inst.graph, query);
  rep.json["ordering"] = vertices_json(query.ordering);
  rep.json["exponents"] = query.exponents;
  rep.json["coefficient"] = c.str();
  rep.text << "coefficient " << c.str() << "\n";
}

// ---- peel ----

void run_peel(const InstanceFile& inst, long trials, std::optional<std::uint64_t> seed, Report& rep) {
  const Graph& g = inst.graph;
  const ListAssignment& L = inst.lists;
  const int n = g.vertex_count();
  const int ell = L.uniform_size();
  if (ell <= 0) throw UsageError("peel needs lists of one common size");
  std::vector<WeightedRequest> batch;
  if (!inst.weights.empty()) {
    batch.push_back(inst.weights);
  } else {
    if (!seed) throw UsageError("the file has no w lines; random weights need --seed");
    std::mt19937_64 rng(*seed);
    std::uniform_int_distribution<int> num(0, 6), den(1, 4);
    for (long k = 0; k < trials; ++k) {
      WeightedRequest w;
      for (Vertex v = 1; v <= n; ++v)
        for (Color c : L[v])
          if (int p = num(rng)) w.set(v, c, make_rational(p, den(rng)));
      batch.push_back(std::move(w));
    }
  }
  Rational eps = flexibility_exact(g, L).epsilon;
  rep.json["epsilon"] = q(eps);
  rep.json["list_size"] = ell;
  rep.text << "exact epsilon " << q(eps) << ", list size " << ell << "\n";
  if (eps == 0) {
    rep.json["status"] = "vacuous";
    rep.text << "epsilon is 0, the bound is vacuous\n";
    return;
  }
  const bool log_defined = n >= 2 && eps < 1;
  auto oracle = exact_flex_oracle(g, L);
  Json runs = Json::array();
  long stated_failures = 0, sound_failures = 0;
  for (const auto& w : batch) {
    auto res = peel_weighted(g, L, w, eps, oracle);
    const bool sound = res.weight * ell * res.rounds >= w.total();
    const bool stated = log_defined ? meets_log_bound(res.weight, w.total(), ell, eps, n) : sound;
    stated_failures += !stated;
    sound_failures += !sound;
    runs.push_back({{"total", q(w.total())},
                    {"weight", q(res.weight)},
                    {"rounds", res.rounds},
                    {"coloring", coloring_json(res.coloring)},
                    {"stated_bound", stated},
                    {"sound_bound", sound}});
    if (batch.size() == 1)
      rep.text << "matched weight " << q(res.weight) << " of " << q(w.total()) << " in " << res.rounds << " rounds\n";
  }
  rep.ok = stated_failures == 0 && sound_failures == 0;
  rep.json["status"] = log_defined ? "checked" : "log undefined, sound form used";
  rep.json["runs"] = runs;
  rep.json["stated_bound_failures"] = stated_failures;
  rep.json["sound_bound_failures"] = sound_failures;
  rep.text << batch.size() << " weighted requests: stated bound failed " << stated_failures
           << " times, weight*ell*rounds >= w(G,L) failed " << sound_failures << " times\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact flexibility, gadget and graph polynomial checks for list colorings"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "Print a JSON report instead of text");

  std::string file;
  std::optional<int> sg_d;
  auto* analyze = app.add_subcommand("analyze", "Degeneracy, mad, weak degeneracy and low-degree witness");
  analyze->add_option("file", file, "Instance file")->required();
  analyze->add_option("--d", sg_d, "d for the low-degree witness (default: the degeneracy)");

  std::size_t request_cap = FlexOptions{}.request_cap;
  auto* flex = app.add_subcommand("flex", "Exact flexibility and a worst request");
  flex->add_option("file", file, "Instance file")->required();
  flex->add_option("--request-cap", request_cap, "Largest request space to enumerate");

  auto* wflex = app.add_subcommand("wflex", "Weighted flexibility LP with distribution and dual witness");
  wflex->add_option("file", file, "Instance file")->required();

  SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample", "Marginals of the randomized coloring procedures");
  sample->add_option("file", file, "Instance file")->required();
  sample->add_option("--d", sample_args.d, "Degree parameter")->required();
  sample->add_flag("--exact", sample_args.exact, "Exact marginals (weak-degeneracy procedure)");
  sample->add_option("--trials", sample_args.trials, "Monte Carlo trials");
  sample->add_option("--seed", sample_args.seed, "Seed for Monte Carlo runs");
  sample->add_option("--procedure", sample_args.procedure, "wdeg or mad")->check(CLI::IsMember({"wdeg", "mad"}));

  auto* gadget = app.add_subcommand("gadget", "Knapsack gadget graphs");
  gadget->require_subcommand(1);
  std::optional<int> gadget_n;
  std::string sizes, out_path;
  int capacity = 1, k = 2;
  long trials = 0;
  std::optional<std::uint64_t> seed;
  auto* build = gadget->add_subcommand("build", "Write the gadget graph in the instance format");
  auto* verify = gadget->add_subcommand("verify", "Check realizable sets against the capacity criterion");
  for (auto* sub : {build, verify}) {
    sub->add_option("--n", gadget_n, "Number of items (checked against --s)");
    sub->add_option("--s", sizes, "Comma-separated item sizes")->required();
    sub->add_option("--t", capacity, "Capacity")->required();
  }
  build->add_option("--out", out_path, "Output file (default: standard output)");
  auto* loggap = gadget->add_subcommand("loggap", "Log-gap instance and split battery");
  loggap->add_option("--k", k, "Instance parameter")->check(CLI::Range(1, 3));
  loggap->add_option("--trials", trials, "Random requests for the split check");
  loggap->add_option("--seed", seed, "Seed for the random requests");

  auto* null = app.add_subcommand("null", "Graph polynomial coefficients and the residue identity");
  null->require_subcommand(1);
  int null_d = 2, max_n = 5;
  std::string exps, ordering;
  auto* null_verify = null->add_subcommand("verify", "Residues over all maximal d-degenerate graphs");
  null_verify->add_option("--d", null_d, "Degeneracy")->required();
  null_verify->add_option("--max-n", max_n, "Largest vertex count");
  auto* null_coeff = null->add_subcommand("coeff", "One coefficient of the graph polynomial");
  null_coeff->add_option("file", file, "Instance file")->required();
  null_coeff->add_option("--exponents", exps, "Comma-separated exponents by ordering position")->required();
  null_coeff->add_option("--ordering", ordering, "Comma-separated vertex ordering (default 1..n)");

  long peel_trials = 100;
  auto* peel = app.add_subcommand("peel", "Weighted requests through the peeling reduction");
  peel->add_option("file", file, "Instance file")->required();
  peel->add_option("--trials", peel_trials, "Random weighted requests when the file has no w lines");
  peel->add_option("--seed", seed, "Seed for random weighted requests");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  Report rep;
  try {
    if (*analyze) run_analyze(load(file), sg_d, rep);
    else if (*flex) run_flex(load(file), request_cap, rep);
    else if (*wflex) run_wflex(load(file), rep);
    else if (*sample) run_sample(load(file), sample_args, rep);
    else if (*build) run_gadget_build(spec_from(gadget_n, sizes, capacity), out_path, rep);
    else if (*verify) run_gadget_verify(spec_from(gadget_n, sizes, capacity), rep);
    else if (*loggap) run_gadget_loggap(k, trials, seed, rep);
    else if (*null_verify) run_null_verify(null_d, max_n, rep);
    else if (*null_coeff) run_null_coeff(load(file), exps, ordering, rep);
    else if (*peel) run_peel(load(file), peel_trials, seed, rep);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    if (json) std::cout << Json{{"ok", false}, {"error", std::string(e.name())}, {"message", e.what()}}.dump(2) << "\n";
    std::cerr << e.what() << "\n";
    return kVerificationFailed;
  }

  if (json) {
    Json out = {{"ok", rep.ok}};
    out.update(rep.json);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << rep.text.str();
  }
  return rep.ok ? kOk : kVerificationFailed;
}
