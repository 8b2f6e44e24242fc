#pragma once

#include "maghom/error.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace maghom {

// Vertex ids are 1-based everywhere in the public interface.
using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

// Finite simple connected graph with its shortest-path metric.
class Graph {
 public:
  Graph() = default;

  // Builds the graph on vertices 1..n. Throws ValidationError on loops,
  // duplicate edges, out-of-range ids or a disconnected result.
  Graph(int n, const std::vector<Edge>& edges) : n_(n) {
    if (n < 1) throw ValidationError("graph must have at least one vertex");
    adjacency_.assign(static_cast<std::size_t>(n), {});
    std::set<Edge> seen;
    for (auto [u, v] : edges) {
      if (u < 1 || v < 1 || u > n || v > n)
        throw ValidationError("vertex id out of range in edge " + std::to_string(u) +
                              " " + std::to_string(v));
      if (u == v) throw ValidationError("loop at vertex " + std::to_string(u));
      Edge e = std::minmax(u, v);
      if (!seen.insert(e).second)
        throw ValidationError("duplicate edge " + std::to_string(e.first) + " " +
                              std::to_string(e.second));
      adjacency_[u - 1].push_back(v);
      adjacency_[v - 1].push_back(u);
    }
    edges_.assign(seen.begin(), seen.end());
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
    compute_distances();
  }

  int order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_[v - 1]; }

  int dist(Vertex u, Vertex v) const {
    return dist_[static_cast<std::size_t>(u - 1) * n_ + (v - 1)];
  }
  bool adjacent(Vertex u, Vertex v) const { return dist(u, v) == 1; }

  // Common neighbours of u and v in increasing order.
  std::vector<Vertex> common_neighbors(Vertex u, Vertex v) const {
    std::vector<Vertex> out;
    std::set_intersection(neighbors(u).begin(), neighbors(u).end(), neighbors(v).begin(),
                          neighbors(v).end(), std::back_inserter(out));
    return out;
  }

  bool is_tree() const { return edges_.size() + 1 == static_cast<std::size_t>(n_); }

  bool is_bipartite() const {
    for (const auto& [u, v] : edges_)
      if ((dist(1, u) + dist(1, v)) % 2 == 0) return false;
    return true;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void compute_distances() {
    constexpr int kUnreached = std::numeric_limits<int>::max();
    dist_.assign(static_cast<std::size_t>(n_) * n_, kUnreached);
    for (Vertex s = 1; s <= n_; ++s) {
      int* row = &dist_[static_cast<std::size_t>(s - 1) * n_];
      std::queue<Vertex> frontier;
      row[s - 1] = 0;
      frontier.push(s);
      while (!frontier.empty()) {
        Vertex u = frontier.front();
        frontier.pop();
        for (Vertex w : neighbors(u)) {
          if (row[w - 1] != kUnreached) continue;
          row[w - 1] = row[u - 1] + 1;
          frontier.push(w);
        }
      }
      for (Vertex t = 1; t <= n_; ++t)
        if (row[t - 1] == kUnreached)
          throw ValidationError("graph is disconnected (vertex " + std::to_string(t) +
                                " unreachable from " + std::to_string(s) + ")");
    }
  }

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<int> dist_;
};

enum class GraphFormat { edge_list, graph6, automatic };

namespace detail {

inline std::string_view trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return trim(hash == std::string_view::npos ? line : line.substr(0, hash));
}

inline bool looks_like_graph6(std::string_view line) {
  if (line.starts_with(">>graph6<<")) return true;
  if (line.empty() || line.find_first_of(" \t") != std::string_view::npos) return false;
  bool all_digits = std::all_of(line.begin(), line.end(), [](char c) { return c >= '0' && c <= '9'; });
  bool printable = std::all_of(line.begin(), line.end(), [](char c) { return c >= 63 && c <= 126; });
  return !all_digits && printable;
}

inline int parse_vertex_token(std::string_view token, std::size_t line_no) {
  int value = 0;
  if (token.empty()) throw ParseError("line " + std::to_string(line_no) + ": empty vertex id");
  for (char c : token) {
    if (c < '0' || c > '9')
      throw ParseError("line " + std::to_string(line_no) + ": bad vertex id '" +
                       std::string(token) + "'");
    value = value * 10 + (c - '0');
    if (value > 1'000'000)
      throw ParseError("line " + std::to_string(line_no) + ": vertex id too large");
  }
  if (value < 1)
    throw ParseError("line " + std::to_string(line_no) + ": vertex ids are 1-based");
  return value;
}

}  // namespace detail

// Edge-list text: one "u v" pair per line, '#' starts a comment. A line
// with a single id declares a vertex (needed for K_1). Ids are renumbered
// to 1..n in increasing order.
inline Graph parse_edge_list(std::string_view text) {
  std::vector<std::pair<int, int>> raw_edges;
  std::set<int> ids;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto body = detail::strip_comment(line);
    if (body.empty()) continue;
    std::istringstream fields{std::string(body)};
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.size() == 1) {
      ids.insert(detail::parse_vertex_token(tokens[0], line_no));
    } else if (tokens.size() == 2) {
      int u = detail::parse_vertex_token(tokens[0], line_no);
      int v = detail::parse_vertex_token(tokens[1], line_no);
      ids.insert(u);
      ids.insert(v);
      raw_edges.emplace_back(u, v);
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'u v', got '" +
                       std::string(body) + "'");
    }
  }
  if (ids.empty()) throw ParseError("edge list contains no vertices");
  std::map<int, Vertex> renumber;
  for (int id : ids) renumber.emplace(id, static_cast<Vertex>(renumber.size() + 1));
  std::vector<Edge> edges;
  edges.reserve(raw_edges.size());
  for (auto [u, v] : raw_edges) edges.emplace_back(renumber.at(u), renumber.at(v));
  return Graph(static_cast<int>(ids.size()), edges);
}

// Standard graph6 encoding of a single graph (optional ">>graph6<<" header).
inline Graph parse_graph6(std::string_view text) {
  auto line = detail::trim(text);
  if (line.starts_with(">>graph6<<")) line.remove_prefix(10);
  if (line.empty()) throw ParseError("graph6: empty input");
  for (char c : line)
    if (c < 63 || c > 126)
      throw ParseError(std::string("graph6: byte out of range: '") + c + "'");

  std::size_t pos = 0;
  auto byte = [&](std::size_t i) -> std::uint64_t {
    if (i >= line.size()) throw ParseError("graph6: truncated vertex count");
    return static_cast<std::uint64_t>(line[i] - 63);
  };
  std::uint64_t n = 0;
  if (line[0] != 126) {
    n = byte(0);
    pos = 1;
  } else if (line.size() > 1 && line[1] != 126) {
    for (std::size_t i = 1; i <= 3; ++i) n = (n << 6) | byte(i);
    pos = 4;
  } else {
    for (std::size_t i = 2; i <= 7; ++i) n = (n << 6) | byte(i);
    pos = 8;
  }
  if (n == 0) throw ValidationError("graph6: graph has no vertices");
  if (n > 100000) throw ValidationError("graph6: graph too large");

  std::uint64_t bits_needed = n * (n - 1) / 2;
  std::uint64_t bytes_needed = (bits_needed + 5) / 6;
  if (line.size() - pos != bytes_needed)
    throw ParseError("graph6: expected " + std::to_string(bytes_needed) +
                     " adjacency bytes, got " + std::to_string(line.size() - pos));

  std::vector<Edge> edges;
  std::uint64_t bit = 0;
  for (std::uint64_t j = 1; j < n; ++j) {
    for (std::uint64_t i = 0; i < j; ++i, ++bit) {
      auto value = static_cast<std::uint64_t>(line[pos + bit / 6] - 63);
      if ((value >> (5 - bit % 6)) & 1U)
        edges.emplace_back(static_cast<Vertex>(i + 1), static_cast<Vertex>(j + 1));
    }
  }
  // Padding bits must be zero.
  for (; bit < bytes_needed * 6; ++bit) {
    auto value = static_cast<std::uint64_t>(line[pos + bit / 6] - 63);
    if ((value >> (5 - bit % 6)) & 1U) throw ParseError("graph6: nonzero padding bits");
  }
  return Graph(static_cast<int>(n), edges);
}

inline Graph parse_graph(std::string_view text, GraphFormat format) {
  if (format == GraphFormat::automatic) {
    std::istringstream in{std::string(text)};
    std::string line;
    format = GraphFormat::edge_list;
    while (std::getline(in, line)) {
      auto body = detail::strip_comment(line);
      if (body.empty()) continue;
      if (detail::looks_like_graph6(body)) format = GraphFormat::graph6;
      break;
    }
  }
  if (format == GraphFormat::graph6) {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      auto body = detail::trim(line);
      if (!body.empty()) return parse_graph6(body);
    }
    throw ParseError("graph6: empty input");
  }
  return parse_edge_list(text);
}

// Canonical edge list: "u v" with u < v, sorted, one per line. K_1 is "1".
inline std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  if (g.size() == 0) {
    for (Vertex v = 1; v <= g.order(); ++v) out << v << '\n';
    return out.str();
  }
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

inline std::string to_graph6(const Graph& g) {
  std::string out;
  auto n = static_cast<std::uint64_t>(g.order());
  if (n < 63) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n < 258048) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6)
      out.push_back(static_cast<char>(((n >> shift) & 63U) + 63));
  } else {
    out.append(2, static_cast<char>(126));
    for (int shift = 30; shift >= 0; shift -= 6)
      out.push_back(static_cast<char>(((n >> shift) & 63U) + 63));
  }
  unsigned acc = 0;
  int filled = 0;
  for (std::uint64_t j = 1; j < n; ++j) {
    for (std::uint64_t i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(static_cast<Vertex>(i + 1), static_cast<Vertex>(j + 1)) ? 1U : 0U);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

inline Graph read_graph_file(const std::string& path, GraphFormat format = GraphFormat::automatic) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_graph(buffer.str(), format);
}

// ---------------------------------------------------------------------------
// Generators

inline Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (Vertex u = 1; u <= n; ++u)
    for (Vertex v = u + 1; v <= n; ++v) edges.emplace_back(u, v);
  return Graph(n, edges);
}

inline Graph cycle_graph(int n) {
  if (n < 3) throw ValidationError("cycle graph needs at least 3 vertices");
  std::vector<Edge> edges;
  for (Vertex v = 1; v <= n; ++v) edges.emplace_back(v, v % n + 1);
  return Graph(n, edges);
}

inline Graph path_graph(int n) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, edges);
}

// Star K_{1,leaves} with centre 1.
inline Graph star_graph(int leaves) {
  std::vector<Edge> edges;
  for (Vertex v = 2; v <= leaves + 1; ++v) edges.emplace_back(1, v);
  return Graph(leaves + 1, edges);
}

// ---------------------------------------------------------------------------
// Metric predicates

inline int diameter(const Graph& g) {
  int best = 0;
  for (Vertex u = 1; u <= g.order(); ++u)
    for (Vertex v = u + 1; v <= g.order(); ++v) best = std::max(best, g.dist(u, v));
  return best;
}

struct PawfulWitness {
  bool verdict = true;
  // (x, y, z) with d(x,y) = d(y,z) = 2, d(x,z) = 1 and no common neighbour;
  // when the diameter exceeds 2 this is instead a pair (x, y, y) at distance > 2.
  std::optional<std::array<Vertex, 3>> violation;
  int diameter = 0;
};

inline PawfulWitness is_pawful(const Graph& g) {
  PawfulWitness w;
  w.diameter = diameter(g);
  if (w.diameter > 2) {
    w.verdict = false;
    for (Vertex x = 1; x <= g.order() && !w.violation; ++x)
      for (Vertex y = 1; y <= g.order(); ++y)
        if (g.dist(x, y) > 2) {
          w.violation = std::array<Vertex, 3>{x, y, y};
          break;
        }
    return w;
  }
  const int n = g.order();
  for (Vertex x = 1; x <= n; ++x) {
    for (Vertex y = 1; y <= n; ++y) {
      if (g.dist(x, y) != 2) continue;
      for (Vertex z = 1; z <= n; ++z) {
        if (g.dist(y, z) != 2 || g.dist(x, z) != 1) continue;
        bool found = false;
        for (Vertex a : g.neighbors(x))
          if (g.adjacent(a, y) && g.adjacent(a, z)) {
            found = true;
            break;
          }
        if (!found) {
          w.verdict = false;
          w.violation = std::array<Vertex, 3>{x, y, z};
          return w;
        }
      }
    }
  }
  return w;
}

struct EdgeCycleReport {
  bool holds = true;
  std::optional<Edge> failing_edge;
};

// Every edge on a 3-cycle or on a 4-cycle of distinct vertices.
// Trees are rejected: the condition is only stated for non-trees.
inline EdgeCycleReport ahk_edge_cycle_check(const Graph& g) {
  if (g.is_tree()) throw ValidationError("edge-cycle condition applies to non-trees only");
  EdgeCycleReport report;
  for (auto [u, v] : g.edges()) {
    bool ok = !g.common_neighbors(u, v).empty();
    for (Vertex w : g.neighbors(v)) {
      if (ok) break;
      if (w == u) continue;
      for (Vertex x : g.neighbors(u)) {
        if (x == v || x == w) continue;
        if (g.adjacent(w, x)) {
          ok = true;
          break;
        }
      }
    }
    if (!ok) {
      report.holds = false;
      report.failing_edge = Edge{u, v};
      return report;
    }
  }
  return report;
}

}  // namespace maghom
