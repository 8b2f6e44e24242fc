#pragma once

#include "maghom/ai_complex.hpp"
#include "maghom/chain_complex.hpp"
#include "maghom/error.hpp"
#include "maghom/graph.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace maghom {

// Face poset of a family of simplices: cover relations are the
// codimension-one inclusions between members of the family.
struct FacePoset {
  std::vector<Simplex> cells;                            // graded order
  std::vector<std::pair<std::size_t, std::size_t>> covers;  // (face, coface)
  std::vector<std::vector<std::size_t>> faces;           // per cell: indices of covered cells
  std::vector<std::vector<std::size_t>> cofaces;         // per cell: indices of covering cells

  std::size_t size() const { return cells.size(); }
  std::size_t dimension(std::size_t i) const { return cells[i].dimension(); }

  std::size_t index_of(const Simplex& s) const {
    auto it = std::lower_bound(cells.begin(), cells.end(), s);
    if (it == cells.end() || *it != s) return cells.size();
    return static_cast<std::size_t>(it - cells.begin());
  }

  bool covers_pair(std::size_t lower, std::size_t upper) const {
    const auto& f = faces[upper];
    return std::find(f.begin(), f.end(), lower) != f.end();
  }
};

inline FacePoset face_poset(std::vector<Simplex> cells) {
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  FacePoset p;
  p.cells = std::move(cells);
  p.faces.resize(p.cells.size());
  p.cofaces.resize(p.cells.size());
  for (std::size_t u = 0; u < p.cells.size(); ++u) {
    const Simplex& s = p.cells[u];
    if (s.elements.size() < 2) continue;
    for (std::size_t i = 0; i < s.elements.size(); ++i) {
      std::size_t l = p.index_of(s.without(i));
      if (l == p.cells.size()) continue;
      p.covers.emplace_back(l, u);
      p.faces[u].push_back(l);
      p.cofaces[l].push_back(u);
    }
  }
  return p;
}

// Poset of the cells of K_ell(a, b) that are not in K'_ell(a, b).
inline FacePoset relative_face_poset(const SimplicialPair& pair) { return face_poset(pair.relative_cells()); }

// Pairs (lower, upper) of poset indices.
struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

struct MatchingCheck {
  bool valid = true;
  std::string violation;
  std::optional<std::size_t> cell;
};

inline MatchingCheck verify_matching(const FacePoset& p, const Matching& m) {
  std::vector<int> uses(p.size(), 0);
  for (const auto& [lower, upper] : m.pairs) {
    if (lower >= p.size() || upper >= p.size())
      return {false, "pair refers to a cell outside the poset", std::nullopt};
    if (!p.covers_pair(lower, upper))
      return {false, p.cells[lower].to_string() + " is not covered by " + p.cells[upper].to_string(), lower};
    for (std::size_t c : {lower, upper})
      if (++uses[c] > 1) return {false, p.cells[c].to_string() + " belongs to more than one pair", c};
  }
  return {};
}

struct AcyclicityReport {
  bool acyclic = true;
  // On failure: b^1, ..., b^p and d(b^1), ..., d(b^p) forming
  // b^1 > d(b^1) < b^2 > d(b^2) < ... < b^{p+1} = b^1.
  std::vector<std::size_t> cycle_uppers;
  std::vector<std::size_t> cycle_lowers;
};

// Hasse diagram with matched covers pointing up and every other cover
// pointing down.
struct MorseDigraph {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> up_degree;  // outgoing up-edges per cell
  std::size_t up_edges = 0;
};

inline MorseDigraph morse_digraph(const FacePoset& p, const Matching& m) {
  const std::size_t n = p.size();
  std::vector<std::size_t> partner_up(n, n);
  for (const auto& [lower, upper] : m.pairs) partner_up[lower] = upper;
  MorseDigraph d;
  d.out.resize(n);
  d.up_degree.assign(n, 0);
  for (const auto& [lower, upper] : p.covers) {
    if (partner_up[lower] == upper) {
      d.out[lower].push_back(upper);
      ++d.up_degree[lower];
      ++d.up_edges;
    } else {
      d.out[upper].push_back(lower);
    }
  }
  return d;
}

// The matching is acyclic iff the Morse digraph has no directed cycle.
// Iterative DFS.
inline AcyclicityReport is_acyclic(const FacePoset& p, const Matching& m) {
  const std::size_t n = p.size();
  std::vector<std::size_t> partner_up(n, n);
  for (const auto& [lower, upper] : m.pairs) partner_up[lower] = upper;
  const auto out = morse_digraph(p, m).out;

  enum : unsigned char { white, grey, black };
  std::vector<unsigned char> colour(n, white);
  std::vector<std::pair<std::size_t, std::size_t>> stack;  // (node, next edge)
  AcyclicityReport report;
  for (std::size_t root = 0; root < n; ++root) {
    if (colour[root] != white) continue;
    stack.emplace_back(root, 0);
    colour[root] = grey;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next == out[node].size()) {
        colour[node] = black;
        stack.pop_back();
        continue;
      }
      std::size_t target = out[node][next++];
      if (colour[target] == white) {
        colour[target] = grey;
        stack.emplace_back(target, 0);
      } else if (colour[target] == grey) {
        // Cycle: the stack from `target` to the top.
        std::vector<std::size_t> cycle;
        auto it = std::find_if(stack.begin(), stack.end(), [&](const auto& f) { return f.first == target; });
        for (; it != stack.end(); ++it) cycle.push_back(it->first);
        // Rotate so the cycle starts at a matched lower cell.
        auto start = std::find_if(cycle.begin(), cycle.end(),
                                  [&](std::size_t c) { return partner_up[c] != n; });
        std::rotate(cycle.begin(), start, cycle.end());
        // cycle = d(c1), c1, d(c2), c2, ... with c_i -> d(c_{i+1}) down.
        // Reversed it reads b^1 > d(b^1) < b^2 > ...
        report.acyclic = false;
        for (std::size_t i = cycle.size(); i >= 2; i -= 2) {
          report.cycle_uppers.push_back(cycle[i - 1]);
          report.cycle_lowers.push_back(cycle[i - 2]);
        }
        return report;
      }
    }
  }
  return report;
}

struct CriticalCell {
  std::size_t cell = 0;
  std::size_t dimension = 0;
};

inline std::vector<CriticalCell> critical_cells(const FacePoset& p, const Matching& m) {
  std::vector<bool> matched(p.size(), false);
  for (const auto& [lower, upper] : m.pairs) {
    if (lower < p.size()) matched[lower] = true;
    if (upper < p.size()) matched[upper] = true;
  }
  std::vector<CriticalCell> out;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!matched[i]) out.push_back({i, p.dimension(i)});
  return out;
}

struct MorseReport {
  bool pass = true;
  std::vector<std::size_t> critical_counts;  // per dimension
  std::vector<HomologyGroup> relative_homology;
  std::vector<std::string> diagnostics;
};

// Homological shadow of "K/K' is a wedge of (ell-2)-spheres": every critical
// cell has dimension ell-2, H_{ell-2}(K, K') is free of rank equal to the
// critical count, and every other relative homology group vanishes.
inline MorseReport morse_rank_check(const Graph& g, Vertex a, Vertex b, int ell, const FacePoset& poset,
                                    const Matching& m) {
  MorseReport report;
  auto check = verify_matching(poset, m);
  if (!check.valid) {
    report.pass = false;
    report.diagnostics.push_back("invalid matching: " + check.violation);
    return report;
  }
  auto acyclic = is_acyclic(poset, m);
  if (!acyclic.acyclic) {
    report.pass = false;
    report.diagnostics.push_back("matching has a cycle through " +
                                 std::to_string(acyclic.cycle_uppers.size()) + " upper cells");
    return report;
  }
  const auto top = static_cast<std::size_t>(ell - 2);
  report.critical_counts.assign(top + 1, 0);
  for (const auto& c : critical_cells(poset, m)) {
    if (c.dimension != top) {
      report.pass = false;
      report.diagnostics.push_back("critical cell " + poset.cells[c.cell].to_string() + " has dimension " +
                                   std::to_string(c.dimension));
    }
    if (c.dimension >= report.critical_counts.size()) report.critical_counts.resize(c.dimension + 1, 0);
    ++report.critical_counts[c.dimension];
  }
  report.relative_homology = relative_homology(build_pair(g, a, b, ell));
  for (std::size_t d = 0; d < report.relative_homology.size(); ++d) {
    const auto& h = report.relative_homology[d];
    if (d == top) {
      if (!h.torsion.empty() || h.rank != report.critical_counts[top]) {
        report.pass = false;
        report.diagnostics.push_back("H_" + std::to_string(d) + "(K, K') = " + h.to_string() + " but " +
                                     std::to_string(report.critical_counts[top]) + " critical cells");
      }
    } else if (!h.is_zero()) {
      report.pass = false;
      report.diagnostics.push_back("H_" + std::to_string(d) + "(K, K') = " + h.to_string() + " should vanish");
    }
  }
  return report;
}

}  // namespace maghom
