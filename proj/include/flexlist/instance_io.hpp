#pragma once

// Line-based instance format:
//   graph <n>
//   e <u> <v>
//   L <v> <c...>
//   r <v> <c>
//   w <v> <c> <p>/<q>
// '#' starts a comment anywhere on a line. Everything after the header may come in any order.

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flexlist/error.hpp"
#include "flexlist/graph.hpp"
#include "flexlist/rational.hpp"

namespace flexlist {

struct InstanceFile {
  Graph graph;
  ListAssignment lists;
  Request request;          // empty when the file has no r lines
  WeightedRequest weights;  // empty when the file has no nonzero w lines

  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

namespace detail {

inline std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

class LineParser {
 public:
  explicit LineParser(int line) : line_(line) {}

  [[noreturn]] void parse_error(const std::string& msg) const {
    fail(ErrorKind::ParseError, "line " + std::to_string(line_) + ": " + msg);
  }
  [[noreturn]] void semantic_error(const std::string& msg) const {
    fail(ErrorKind::SemanticError, "line " + std::to_string(line_) + ": " + msg);
  }

  int integer(std::string_view token, const char* what) const {
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) parse_error(std::string("malformed ") + what);
    return value;
  }

  Rational rational(std::string_view token) const {
    try {
      return parse_rational(token);
    } catch (const Error&) {
      parse_error("malformed rational weight");
    }
  }

 private:
  int line_;
};

}  // namespace detail

inline InstanceFile parse_instance(std::string_view text) {
  InstanceFile inst;
  bool have_header = false;
  int n = 0;
  std::set<Edge> edges;
  std::vector<Edge> edge_order;
  std::vector<int> list_line;
  std::map<Vertex, std::pair<int, Color>> requests;  // vertex -> (line, color)
  std::map<std::pair<Vertex, Color>, std::pair<int, Rational>> weights;

  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = detail::split_tokens(line);
    if (tok.empty()) {
      if (end == text.size()) break;
      continue;
    }
    detail::LineParser p(line_no);
    auto vertex = [&](std::string_view t) {
      int v = p.integer(t, "vertex");
      if (v < 1 || v > n) p.semantic_error("vertex " + std::to_string(v) + " out of range 1.." + std::to_string(n));
      return v;
    };
    auto color = [&](std::string_view t) {
      int c = p.integer(t, "color");
      if (c < 1) p.semantic_error("colors must be positive integers");
      return c;
    };

    const std::string_view kind = tok[0];
    if (!have_header) {
      if (kind != "graph" || tok.size() != 2) p.parse_error("expected header 'graph <n>'");
      n = p.integer(tok[1], "vertex count");
      if (n < 0) p.semantic_error("negative vertex count");
      have_header = true;
      list_line.assign(static_cast<std::size_t>(n) + 1, 0);
      inst.graph = Graph(n);
      inst.lists = ListAssignment(n);
    } else if (kind == "graph") {
      p.parse_error("duplicate header");
    } else if (kind == "e") {
      if (tok.size() != 3) p.parse_error("expected 'e <u> <v>'");
      Vertex u = vertex(tok[1]), v = vertex(tok[2]);
      if (u == v) p.semantic_error("self-loop at vertex " + std::to_string(u));
      Edge key{std::min(u, v), std::max(u, v)};
      if (!edges.insert(key).second) p.parse_error("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
      edge_order.emplace_back(u, v);
    } else if (kind == "L") {
      if (tok.size() < 3) p.parse_error("expected 'L <v> <c...>'");
      Vertex v = vertex(tok[1]);
      if (list_line[v]) p.parse_error("duplicate list for vertex " + std::to_string(v));
      std::vector<Color> colors;
      for (std::size_t k = 2; k < tok.size(); ++k) colors.push_back(color(tok[k]));
      std::vector<Color> sorted = colors;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        p.parse_error("repeated color in list of vertex " + std::to_string(v));
      inst.lists.set(v, std::move(colors));
      list_line[v] = line_no;
    } else if (kind == "r") {
      if (tok.size() != 3) p.parse_error("expected 'r <v> <c>'");
      Vertex v = vertex(tok[1]);
      Color c = color(tok[2]);
      if (!requests.emplace(v, std::make_pair(line_no, c)).second)
        p.parse_error("duplicate request for vertex " + std::to_string(v));
    } else if (kind == "w") {
      if (tok.size() != 4) p.parse_error("expected 'w <v> <c> <p>/<q>'");
      Vertex v = vertex(tok[1]);
      Color c = color(tok[2]);
      Rational weight = p.rational(tok[3]);
      if (weight < 0) p.semantic_error("negative weight");
      if (!weights.emplace(std::make_pair(v, c), std::make_pair(line_no, weight)).second)
        p.parse_error("duplicate weight for vertex " + std::to_string(v) + " color " + std::to_string(c));
    } else {
      p.parse_error("unknown directive '" + std::string(kind) + "'");
    }
    if (end == text.size()) break;
  }
  if (!have_header) fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": missing header 'graph <n>'");

  for (Vertex v = 1; v <= n; ++v)
    require(list_line[v] != 0, ErrorKind::SemanticError, "vertex " + std::to_string(v) + " has no list");
  for (auto [u, v] : edge_order) inst.graph.add_edge(u, v);
  for (const auto& [v, entry] : requests) {
    if (!inst.lists.contains(v, entry.second))
      detail::LineParser(entry.first)
          .semantic_error("requested color " + std::to_string(entry.second) + " not in L(" + std::to_string(v) + ")");
    inst.request.set(v, entry.second);
  }
  for (const auto& [key, entry] : weights) {
    if (!inst.lists.contains(key.first, key.second))
      detail::LineParser(entry.first)
          .semantic_error("weighted color " + std::to_string(key.second) + " not in L(" + std::to_string(key.first) + ")");
    inst.weights.set(key.first, key.second, entry.second);
  }
  return inst;
}

struct SerializeOptions {
  std::vector<std::string> header_comments;
  /// Optional per-vertex annotation appended to its L line; index 0 unused.
  std::vector<std::string> vertex_notes;
};

inline std::string serialize_instance(const InstanceFile& inst, const SerializeOptions& options = {}) {
  std::ostringstream out;
  for (const auto& c : options.header_comments) out << "# " << c << '\n';
  const int n = inst.graph.vertex_count();
  out << "graph " << n << '\n';
  for (Vertex v = 1; v <= n; ++v) {
    out << "L " << v;
    for (Color c : inst.lists[v]) out << ' ' << c;
    if (static_cast<std::size_t>(v) < options.vertex_notes.size() && !options.vertex_notes[v].empty())
      out << "  # " << options.vertex_notes[v];
    out << '\n';
  }
  for (auto [u, v] : inst.graph.edges()) out << "e " << u << ' ' << v << '\n';
  for (auto [v, c] : inst.request) out << "r " << v << ' ' << c << '\n';
  for (const auto& [key, w] : inst.weights.entries())
    out << "w " << key.first << ' ' << key.second << ' ' << to_string(w) << '\n';
  return out.str();
}

}  // namespace flexlist
