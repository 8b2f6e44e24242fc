#pragma once

#include "maghom/chain_complex.hpp"
#include "maghom/error.hpp"
#include "maghom/graph.hpp"
#include "maghom/mag_homology.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace maghom {

// (vertex, position) with 1 <= position <= ell - 1.
struct PositionedVertex {
  Vertex vertex = 0;
  int position = 0;

  auto operator<=>(const PositionedVertex& o) const {
    if (auto c = position <=> o.position; c != 0) return c;
    return vertex <=> o.vertex;
  }
  bool operator==(const PositionedVertex&) const = default;
};

// Nonempty set of positioned vertices with pairwise distinct positions,
// stored in increasing position order.
struct Simplex {
  std::vector<PositionedVertex> elements;

  std::size_t dimension() const { return elements.size() - 1; }

  Simplex without(std::size_t i) const {
    Simplex s;
    s.elements.reserve(elements.size() - 1);
    for (std::size_t j = 0; j < elements.size(); ++j)
      if (j != i) s.elements.push_back(elements[j]);
    return s;
  }

  // The sequence (a, x_{i_1}, ..., x_{i_k}, b).
  Sequence with_endpoints(Vertex a, Vertex b) const {
    Sequence s;
    s.points.reserve(elements.size() + 2);
    s.points.push_back(a);
    for (const auto& e : elements) s.points.push_back(e.vertex);
    s.points.push_back(b);
    return s;
  }

  std::string to_string() const {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (i) out << ", ";
      out << '(' << elements[i].vertex << ", " << elements[i].position << ')';
    }
    out << '}';
    return out.str();
  }

  // Graded order: dimension first, then lexicographic.
  auto operator<=>(const Simplex& o) const {
    if (auto c = elements.size() <=> o.elements.size(); c != 0) return c;
    return elements <=> o.elements;
  }
  bool operator==(const Simplex&) const = default;
};

inline Simplex make_simplex(std::vector<PositionedVertex> elements) {
  std::sort(elements.begin(), elements.end());
  for (std::size_t i = 1; i < elements.size(); ++i)
    if (elements[i].position == elements[i - 1].position)
      throw ValidationError("simplex has two elements at position " + std::to_string(elements[i].position));
  if (elements.empty()) throw ValidationError("simplex must be nonempty");
  return Simplex{std::move(elements)};
}

// P_ell(a, b): edge paths (x_0 = a, ..., x_ell = b), lexicographic order.
inline std::vector<Sequence> enumerate_paths(const Graph& g, Vertex a, Vertex b, int ell) {
  std::vector<Sequence> out;
  if (ell < 1) return out;
  std::vector<Vertex> current{a};
  std::function<void(int)> extend = [&](int remaining) {
    if (remaining == 0) {
      if (current.back() == b) out.push_back(Sequence{current});
      return;
    }
    for (Vertex v : g.neighbors(current.back())) {
      if (g.dist(v, b) > remaining - 1) continue;
      current.push_back(v);
      extend(remaining - 1);
      current.pop_back();
    }
  };
  extend(ell);
  return out;
}

// K_ell(a, b): every nonempty set of interior (vertex, position) pairs of
// some path in P_ell(a, b). Returned in graded order.
inline std::vector<Simplex> build_complex(const Graph& g, Vertex a, Vertex b, int ell) {
  if (ell < 2) return {};
  if (ell > 31) throw ValidationError("length too large for the simplicial complex");
  std::set<Simplex> cells;
  const int interior = ell - 1;
  for (const auto& path : enumerate_paths(g, a, b, ell)) {
    for (unsigned mask = 1; mask < (1u << interior); ++mask) {
      Simplex s;
      for (int i = 0; i < interior; ++i)
        if (mask & (1u << i)) s.elements.push_back({path.points[static_cast<std::size_t>(i + 1)], i + 1});
      cells.insert(std::move(s));
    }
  }
  return {cells.begin(), cells.end()};
}

// K_ell(a, b) together with the subcomplex K'_ell(a, b) of simplices whose
// endpoint-extended sequence has length at most ell - 1.
struct SimplicialPair {
  Vertex a = 0;
  Vertex b = 0;
  int ell = 0;
  std::vector<Simplex> cells;        // K, graded order
  std::vector<bool> in_subcomplex;   // parallel to cells: member of K'

  std::size_t index_of(const Simplex& s) const {
    auto it = std::lower_bound(cells.begin(), cells.end(), s);
    if (it == cells.end() || *it != s) return cells.size();
    return static_cast<std::size_t>(it - cells.begin());
  }
  bool contains(const Simplex& s) const { return index_of(s) != cells.size(); }
  bool in_kprime(const Simplex& s) const {
    auto i = index_of(s);
    return i != cells.size() && in_subcomplex[i];
  }

  std::vector<Simplex> subcomplex() const {
    std::vector<Simplex> out;
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (in_subcomplex[i]) out.push_back(cells[i]);
    return out;
  }

  // Cells of K outside K', graded order.
  std::vector<Simplex> relative_cells() const {
    std::vector<Simplex> out;
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (!in_subcomplex[i]) out.push_back(cells[i]);
    return out;
  }

  // f-vector of K: number of simplices per dimension.
  std::vector<std::size_t> f_vector() const {
    std::vector<std::size_t> f;
    for (const auto& s : cells) {
      if (f.size() <= s.dimension()) f.resize(s.dimension() + 1, 0);
      ++f[s.dimension()];
    }
    return f;
  }
};

inline SimplicialPair build_pair(const Graph& g, Vertex a, Vertex b, int ell) {
  if (ell < 3) throw ValidationError("the simplicial pair is defined for ell >= 3");
  SimplicialPair pair;
  pair.a = a;
  pair.b = b;
  pair.ell = ell;
  pair.cells = build_complex(g, a, b, ell);
  pair.in_subcomplex.resize(pair.cells.size());
  for (std::size_t i = 0; i < pair.cells.size(); ++i)
    pair.in_subcomplex[i] = pair.cells[i].with_endpoints(a, b).length(g) <= ell - 1;
  return pair;
}

// Structural invariants of a built pair. Returns a description of the first
// failure, or nullopt.
inline std::optional<std::string> check_pair_invariants(const Graph& g, const SimplicialPair& pair) {
  for (std::size_t i = 0; i < pair.cells.size(); ++i) {
    const Simplex& s = pair.cells[i];
    for (std::size_t j = 0; s.elements.size() > 1 && j < s.elements.size(); ++j) {
      Simplex face = s.without(j);
      auto fi = pair.index_of(face);
      if (fi == pair.cells.size()) return "K not closed under faces at " + s.to_string();
      if (pair.in_subcomplex[i] && !pair.in_subcomplex[fi]) return "K' not closed under faces at " + s.to_string();
    }
    const bool expected = s.with_endpoints(pair.a, pair.b).length(g) <= pair.ell - 1;
    if (pair.in_subcomplex[i] != expected) return "K' membership wrong at " + s.to_string();
    if (!pair.in_subcomplex[i]) {
      // Outside K' positions are cumulative distances from a.
      int cumulative = 0;
      Vertex prev = pair.a;
      for (const auto& e : s.elements) {
        cumulative += g.dist(prev, e.vertex);
        if (e.position != cumulative) return "position is not cumulative distance in " + s.to_string();
        prev = e.vertex;
      }
    }
  }
  return std::nullopt;
}

namespace detail {

// Simplicial chains on `cells` (graded order) keeping only those accepted by
// `keep`; faces rejected by `keep` are dropped from boundaries. With
// `augmented`, degree index 0 holds the empty simplex and index d+1 holds
// dimension d.
inline ChainComplexData simplicial_chains(const std::vector<Simplex>& cells,
                                          const std::function<bool(const Simplex&)>& keep, bool augmented,
                                          std::size_t top_dimension) {
  const std::size_t shift = augmented ? 1 : 0;
  const std::size_t levels = top_dimension + 1 + shift;
  std::vector<std::vector<const Simplex*>> by_level(levels);
  for (const auto& s : cells)
    if (keep(s) && s.dimension() <= top_dimension) by_level[s.dimension() + shift].push_back(&s);

  std::vector<std::map<Simplex, std::size_t>> index(levels);
  for (std::size_t lv = 0; lv < levels; ++lv)
    for (std::size_t i = 0; i < by_level[lv].size(); ++i) index[lv].emplace(*by_level[lv][i], i);

  ChainComplexData cx;
  cx.dims.resize(levels);
  cx.boundaries.resize(levels);
  if (augmented) cx.dims[0] = 1;
  for (std::size_t lv = shift; lv < levels; ++lv) cx.dims[lv] = by_level[lv].size();
  for (std::size_t lv = 1; lv < levels; ++lv) {
    SparseIntMatrix d(cx.dims[lv - 1], cx.dims[lv]);
    for (std::size_t c = 0; c < by_level[lv].size(); ++c) {
      const Simplex& s = *by_level[lv][c];
      if (s.elements.size() == 1) {
        if (augmented) d.add(0, c, 1);
        continue;
      }
      for (std::size_t i = 0; i < s.elements.size(); ++i) {
        Simplex face = s.without(i);
        auto it = index[lv - 1].find(face);
        if (it == index[lv - 1].end()) continue;
        d.add(it->second, c, (i % 2 == 0) ? 1 : -1);
      }
    }
    cx.boundaries[lv] = std::move(d);
  }
  return cx;
}

}  // namespace detail

// C_*(K, K') in degrees 0..ell-2.
inline ChainComplexData relative_chain_complex(const SimplicialPair& pair) {
  return detail::simplicial_chains(
      pair.cells, [&](const Simplex& s) { return !pair.in_kprime(s); }, false,
      static_cast<std::size_t>(std::max(pair.ell - 2, 0)));
}

// H_d(K, K') for d = 0..ell-2.
inline std::vector<HomologyGroup> relative_homology(const SimplicialPair& pair) {
  return compute_homology(relative_chain_complex(pair));
}

// Reduced simplicial homology for d = 0..dim. Empty input gives an empty
// result.
inline std::vector<HomologyGroup> reduced_homology(const std::vector<Simplex>& complex) {
  if (complex.empty()) return {};
  std::vector<Simplex> sorted = complex;
  std::sort(sorted.begin(), sorted.end());
  std::size_t top = 0;
  for (const auto& s : sorted) top = std::max(top, s.dimension());
  auto cx = detail::simplicial_chains(sorted, [](const Simplex&) { return true; }, true, top);
  auto all = compute_homology(cx);
  return {all.begin() + 1, all.end()};
}

struct CorrespondenceRow {
  std::size_t k = 0;
  HomologyGroup magnitude_side;  // MH_k^ell(a, b)
  HomologyGroup complex_side;    // H_{k-2}(K, K') or reduced H_0(K)
  bool pass = false;
};

struct CorrespondenceReport {
  bool pass = true;
  std::vector<CorrespondenceRow> rows;
};

// Compares MH_k^ell(a, b) with the homology of the pair for 2 <= k <= ell:
// H_{k-2}(K, K') for k >= 3; for k = 2, H_0(K, K') when d(a,b) < ell and
// reduced H_0(K) when d(a,b) = ell.
inline CorrespondenceReport verify_ai_correspondence(const Graph& g, Vertex a, Vertex b, int ell,
                                                     const HomologyOptions& opts = {}) {
  if (ell < 3) throw ValidationError("the correspondence is stated for ell >= 3");
  auto mh = mh_ab_all(g, a, b, ell, opts);
  auto pair = build_pair(g, a, b, ell);
  auto rel = relative_homology(pair);
  std::vector<HomologyGroup> reduced;
  if (g.dist(a, b) == ell) reduced = reduced_homology(pair.cells);

  CorrespondenceReport report;
  for (std::size_t k = 2; k <= static_cast<std::size_t>(ell); ++k) {
    CorrespondenceRow row;
    row.k = k;
    row.magnitude_side = mh[k];
    if (k == 2 && g.dist(a, b) == ell) {
      row.complex_side = reduced.empty() ? HomologyGroup{} : reduced[0];
    } else {
      row.complex_side = k - 2 < rel.size() ? rel[k - 2] : HomologyGroup{};
    }
    row.pass = row.magnitude_side == row.complex_side;
    report.pass = report.pass && row.pass;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace maghom
