#pragma once

// Fixture access and independent reference computations used as oracles.
// Nothing here calls into the code under test except for Graph accessors.

#include "maghom/maghom.hpp"

#include <cstdint>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace testing_support {

using maghom::Graph;
using maghom::Integer;
using maghom::Vertex;

inline std::string fixture_path(const std::string& name) { return std::string(MAGHOM_FIXTURE_DIR) + "/" + name; }

inline std::string fixture_text(const std::string& name) {
  std::ifstream in(fixture_path(name));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline Graph fixture(const std::string& name) { return maghom::read_graph_file(fixture_path(name)); }

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"C4", "G1", "G2", "G3", "K4", "K5"};
  return names;
}

// All-pairs distances by Floyd-Warshall over the edge list.
inline std::vector<std::vector<int>> floyd_warshall(const Graph& g) {
  const int n = g.order();
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(n + 1, std::vector<int>(n + 1, inf));
  for (int v = 1; v <= n; ++v) d[v][v] = 0;
  for (auto [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
  for (int k = 1; k <= n; ++k)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// Rank over Q by fraction-free elimination on a dense copy.
inline std::size_t dense_rank(std::vector<std::vector<Integer>> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      Integer f = m[r][c], h = m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * h - m[rank][j] * f;
      Integer g = 0;
      for (std::size_t j = c; j < cols; ++j) g = maghom::gcd(g, m[r][j]);
      if (g > 1)
        for (std::size_t j = c; j < cols; ++j) m[r][j] /= g;
    }
    ++rank;
  }
  return rank;
}

inline Integer dense_det(std::vector<std::vector<Integer>> m) {
  // Cofactor expansion; only used on tiny minors.
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    std::vector<std::vector<Integer>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Integer> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(row);
    }
    Integer term = m[0][j] * dense_det(minor);
    total += (j % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

inline void choose(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                   std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    choose(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// d_k = gcd of all k x k minors, for k = 1..min(rows, cols).
inline std::vector<Integer> determinantal_divisors(const std::vector<std::vector<Integer>>& m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<Integer> out;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    choose(rows, k, 0, cur, rs);
    choose(cols, k, 0, cur, cs);
    Integer g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        std::vector<std::vector<Integer>> sub(k, std::vector<Integer>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[r[i]][c[j]];
        g = maghom::gcd(g, dense_det(sub));
      }
    out.push_back(g);
  }
  return out;
}

// Every tuple in V^{k+1} with no repeated neighbours and total length ell.
inline std::vector<std::vector<Vertex>> brute_sequences(const Graph& g, std::size_t k, int ell) {
  const auto d = floyd_warshall(g);
  const int n = g.order();
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> cur(k + 1, 1);
  for (;;) {
    bool okay = true;
    int len = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (cur[i] == cur[i + 1]) okay = false;
      len += d[cur[i]][cur[i + 1]];
    }
    if (okay && len == ell) out.push_back(cur);
    std::size_t pos = k + 1;
    while (pos > 0 && cur[pos - 1] == n) cur[--pos] = 1;
    if (pos == 0) break;
    ++cur[pos - 1];
  }
  return out;
}

// Betti numbers of MC_*^ell(G) from brute-force bases and dense ranks.
inline std::vector<std::size_t> brute_mh_betti(const Graph& g, int ell) {
  const auto d = floyd_warshall(g);
  std::vector<std::vector<std::vector<Vertex>>> basis(ell + 1);
  for (int k = 0; k <= ell; ++k) basis[k] = brute_sequences(g, static_cast<std::size_t>(k), ell);
  std::vector<std::size_t> rank(ell + 2, 0);
  for (int k = 1; k <= ell; ++k) {
    std::map<std::vector<Vertex>, std::size_t> row;
    for (std::size_t i = 0; i < basis[k - 1].size(); ++i) row[basis[k - 1][i]] = i;
    std::vector<std::vector<Integer>> m(basis[k - 1].size(), std::vector<Integer>(basis[k].size(), 0));
    for (std::size_t c = 0; c < basis[k].size(); ++c) {
      const auto& x = basis[k][c];
      for (int i = 1; i < k; ++i) {
        if (d[x[i - 1]][x[i + 1]] != d[x[i - 1]][x[i]] + d[x[i]][x[i + 1]]) continue;
        auto y = x;
        y.erase(y.begin() + i);
        m[row.at(y)][c] += (i % 2 == 0) ? 1 : -1;
      }
    }
    rank[k] = m.empty() ? 0 : dense_rank(m);
  }
  std::vector<std::size_t> betti(ell + 1);
  for (int k = 0; k <= ell; ++k) betti[k] = basis[k].size() - rank[k] - rank[k + 1];
  return betti;
}

// graph6 writer following the format description directly.
inline std::string graph6_oracle(const Graph& g) {
  const int n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
  std::vector<int> bits;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) bits.push_back(g.adjacent(i + 1, j + 1) ? 1 : 0);
  while (bits.size() % 6) bits.push_back(0);
  for (std::size_t i = 0; i < bits.size(); i += 6) {
    int v = 0;
    for (int b = 0; b < 6; ++b) v = (v << 1) | bits[i + b];
    out.push_back(static_cast<char>(v + 63));
  }
  return out;
}

// Connected graph on n vertices: a random spanning tree plus each other edge
// with probability p.
inline Graph random_connected_graph(std::mt19937_64& rng, int n, double p) {
  std::set<maghom::Edge> edges;
  for (int v = 2; v <= n; ++v) {
    std::uniform_int_distribution<int> parent(1, v - 1);
    edges.insert({parent(rng), v});
  }
  std::bernoulli_distribution extra(p);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if (extra(rng)) edges.insert({u, v});
  // Shuffle labels so the tree is not always rooted at 1.
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i + 1;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<maghom::Edge> relabelled;
  for (auto [u, v] : edges) relabelled.emplace_back(perm[u - 1], perm[v - 1]);
  return Graph(n, relabelled);
}

inline std::vector<std::pair<Vertex, Vertex>> all_pairs(const Graph& g) {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex a = 1; a <= g.order(); ++a)
    for (Vertex b = 1; b <= g.order(); ++b) out.emplace_back(a, b);
  return out;
}

}  // namespace testing_support
