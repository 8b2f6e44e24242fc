#pragma once

#include "maghom/chain_complex.hpp"
#include "maghom/error.hpp"
#include "maghom/graph.hpp"
#include "maghom/parallel.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace maghom {

// A vertex tuple (x_0, ..., x_k) with no two consecutive entries equal.
struct Sequence {
  std::vector<Vertex> points;

  std::size_t degree() const { return points.empty() ? 0 : points.size() - 1; }

  int length(const Graph& g) const {
    int total = 0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) total += g.dist(points[i], points[i + 1]);
    return total;
  }

  // Interior index i is smooth when deleting x_i keeps the length.
  bool is_smooth(const Graph& g, std::size_t i) const {
    if (i == 0 || i + 1 >= points.size()) return false;
    return g.dist(points[i - 1], points[i + 1]) ==
           g.dist(points[i - 1], points[i]) + g.dist(points[i], points[i + 1]);
  }

  Sequence without(std::size_t i) const {
    Sequence s;
    s.points.reserve(points.size() - 1);
    for (std::size_t j = 0; j < points.size(); ++j)
      if (j != i) s.points.push_back(points[j]);
    return s;
  }

  auto operator<=>(const Sequence&) const = default;
};

using Endpoints = std::optional<std::pair<Vertex, Vertex>>;

struct HomologyOptions {
  std::size_t basis_cap = 2'000'000;
  unsigned threads = 1;
};

namespace detail {

struct VertexTupleHash {
  std::size_t operator()(const std::vector<Vertex>& v) const noexcept {
    std::size_t h = v.size();
    for (Vertex x : v) h = h * 1000003u ^ static_cast<std::size_t>(x);
    return h;
  }
};

using SequenceIndex = std::unordered_map<std::vector<Vertex>, std::size_t, VertexTupleHash>;

inline void enumerate_into(const Graph& g, std::size_t k, int ell, const Endpoints& endpoints,
                           std::size_t cap, std::size_t& budget_used, std::vector<Sequence>& out) {
  const int n = g.order();
  std::vector<Vertex> current;
  current.reserve(k + 1);
  std::function<void(int)> extend = [&](int remaining) {
    const std::size_t placed = current.size();
    const std::size_t steps_left = k + 1 - placed;
    if (steps_left == 0) {
      if (remaining != 0) return;
      if (++budget_used > cap)
        throw BudgetExceeded("basis size exceeds cap of " + std::to_string(cap));
      out.push_back(Sequence{current});
      return;
    }
    const Vertex prev = current.back();
    for (Vertex v = 1; v <= n; ++v) {
      if (v == prev) continue;
      int rest = remaining - g.dist(prev, v);
      if (rest < static_cast<int>(steps_left) - 1) continue;
      if (endpoints) {
        const Vertex b = endpoints->second;
        if (steps_left == 1) {
          if (v != b || rest != 0) continue;
        } else if (g.dist(v, b) > rest) {
          continue;
        }
      }
      current.push_back(v);
      extend(rest);
      current.pop_back();
    }
  };

  if (endpoints) {
    current.push_back(endpoints->first);
    if (k == 0) {
      if (ell == 0 && endpoints->first == endpoints->second) {
        if (++budget_used > cap) throw BudgetExceeded("basis size exceeds cap of " + std::to_string(cap));
        out.push_back(Sequence{current});
      }
      return;
    }
    extend(ell);
    return;
  }
  for (Vertex a = 1; a <= n; ++a) {
    current.assign(1, a);
    if (k == 0) {
      if (ell == 0) {
        if (++budget_used > cap) throw BudgetExceeded("basis size exceeds cap of " + std::to_string(cap));
        out.push_back(Sequence{current});
      }
      continue;
    }
    extend(ell);
  }
}

}  // namespace detail

// All sequences with k+1 points and length ell, in lexicographic order,
// optionally restricted to x_0 = a and x_k = b.
inline std::vector<Sequence> enumerate_sequences(const Graph& g, std::size_t k, int ell,
                                                 const Endpoints& endpoints = std::nullopt,
                                                 std::size_t cap = HomologyOptions{}.basis_cap) {
  std::vector<Sequence> out;
  std::size_t used = 0;
  if (ell < 0) return out;
  detail::enumerate_into(g, k, ell, endpoints, cap, used, out);
  return out;
}

// Boundary d_k : MC_k -> MC_{k-1} for the given bases. The column of x has
// (-1)^i at the row of x with x_i removed, for each smooth interior i.
inline SparseIntMatrix boundary_matrix(const Graph& g, const std::vector<Sequence>& degree_k,
                                       const std::vector<Sequence>& degree_k_minus_1) {
  detail::SequenceIndex index;
  index.reserve(degree_k_minus_1.size());
  for (std::size_t r = 0; r < degree_k_minus_1.size(); ++r) index.emplace(degree_k_minus_1[r].points, r);
  SparseIntMatrix d(degree_k_minus_1.size(), degree_k.size());
  for (std::size_t c = 0; c < degree_k.size(); ++c) {
    const Sequence& x = degree_k[c];
    for (std::size_t i = 1; i + 1 < x.points.size(); ++i) {
      if (!x.is_smooth(g, i)) continue;
      auto it = index.find(x.without(i).points);
      if (it == index.end()) throw InternalError("boundary face missing from basis");
      d.add(it->second, c, (i % 2 == 0) ? 1 : -1);
    }
  }
  return d;
}

inline SparseIntMatrix boundary_matrix(const Graph& g, std::size_t k, int ell,
                                       const Endpoints& endpoints = std::nullopt) {
  if (k == 0) return SparseIntMatrix(0, enumerate_sequences(g, 0, ell, endpoints).size());
  return boundary_matrix(g, enumerate_sequences(g, k, ell, endpoints),
                         enumerate_sequences(g, k - 1, ell, endpoints));
}

// The magnitude chain complex MC_*^ell (or its (a,b) summand) in degrees
// 0..ell, together with its bases.
struct MagnitudeComplex {
  std::vector<std::vector<Sequence>> bases;
  ChainComplexData data;
};

inline MagnitudeComplex magnitude_chain_complex(const Graph& g, int ell, const Endpoints& endpoints = std::nullopt,
                                                std::size_t cap = HomologyOptions{}.basis_cap) {
  if (ell < 0) throw ValidationError("length must be non-negative");
  MagnitudeComplex mc;
  const auto top = static_cast<std::size_t>(ell);
  mc.bases.resize(top + 1);
  std::size_t used = 0;
  for (std::size_t k = 0; k <= top; ++k) detail::enumerate_into(g, k, ell, endpoints, cap, used, mc.bases[k]);
  mc.data.dims.resize(top + 1);
  mc.data.boundaries.resize(top + 1);
  for (std::size_t k = 0; k <= top; ++k) mc.data.dims[k] = mc.bases[k].size();
  for (std::size_t k = 1; k <= top; ++k) mc.data.boundaries[k] = boundary_matrix(g, mc.bases[k], mc.bases[k - 1]);
  return mc;
}

// MH_k^ell(a, b) for every k in 0..ell.
inline std::vector<HomologyGroup> mh_ab_all(const Graph& g, Vertex a, Vertex b, int ell,
                                            const HomologyOptions& opts = {}) {
  return compute_homology(magnitude_chain_complex(g, ell, std::pair{a, b}, opts.basis_cap).data);
}

inline HomologyGroup mh_ab(const Graph& g, Vertex a, Vertex b, std::size_t k, int ell,
                           const HomologyOptions& opts = {}) {
  if (ell < 0 || k > static_cast<std::size_t>(ell)) return {};
  return mh_ab_all(g, a, b, ell, opts)[k];
}

enum class HomologyStrategy { split_by_endpoints, whole_complex };

// MH_k^ell(G) for every k in 0..ell.
inline std::vector<HomologyGroup> mh_all_degrees(const Graph& g, int ell, const HomologyOptions& opts = {},
                                                 HomologyStrategy strategy = HomologyStrategy::split_by_endpoints) {
  if (ell < 0) throw ValidationError("length must be non-negative");
  if (strategy == HomologyStrategy::whole_complex)
    return compute_homology(magnitude_chain_complex(g, ell, std::nullopt, opts.basis_cap).data);
  const auto n = static_cast<std::size_t>(g.order());
  auto cells = parallel_map(n * n, opts.threads, [&](std::size_t idx) {
    auto a = static_cast<Vertex>(idx / n + 1);
    auto b = static_cast<Vertex>(idx % n + 1);
    return mh_ab_all(g, a, b, ell, opts);
  });
  std::vector<HomologyGroup> total(static_cast<std::size_t>(ell) + 1);
  for (const auto& cell : cells)
    for (std::size_t k = 0; k < total.size(); ++k) total[k] = direct_sum(total[k], cell[k]);
  return total;
}

inline HomologyGroup mh_rank(const Graph& g, std::size_t k, int ell, const HomologyOptions& opts = {},
                             HomologyStrategy strategy = HomologyStrategy::split_by_endpoints) {
  if (ell < 0 || k > static_cast<std::size_t>(ell)) return {};
  return mh_all_degrees(g, ell, opts, strategy)[k];
}

// Entries (k, ell) for 0 <= k <= ell <= lmax.
struct MHTable {
  int lmax = 0;
  std::map<std::pair<int, int>, HomologyGroup> entries;  // key (k, ell)

  const HomologyGroup& at(int k, int ell) const {
    static const HomologyGroup zero{};
    auto it = entries.find({k, ell});
    return it == entries.end() ? zero : it->second;
  }

  std::vector<std::size_t> diagonal_ranks() const {
    std::vector<std::size_t> out;
    for (int l = 0; l <= lmax; ++l) out.push_back(at(l, l).rank);
    return out;
  }

  // (k, ell) with k != ell and a nonzero group.
  std::vector<std::pair<int, int>> off_diagonal_support() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& [key, group] : entries)
      if (key.first != key.second && !group.is_zero()) out.push_back(key);
    return out;
  }
};

inline MHTable mh_table(const Graph& g, int lmax, const HomologyOptions& opts = {}) {
  if (lmax < 0) throw ValidationError("lmax must be non-negative");
  MHTable table;
  table.lmax = lmax;
  for (int ell = 0; ell <= lmax; ++ell) {
    auto groups = mh_all_degrees(g, ell, opts);
    for (int k = 0; k <= ell; ++k) table.entries[{k, ell}] = groups[static_cast<std::size_t>(k)];
  }
  return table;
}

inline bool is_diagonal_up_to(const Graph& g, int lmax, const HomologyOptions& opts = {}) {
  return mh_table(g, lmax, opts).off_diagonal_support().empty();
}

// Rows ell = 0..lmax, columns k = 0..lmax; zero groups are blank cells.
inline std::string format_table_csv(const MHTable& t) {
  std::ostringstream out;
  out << "l\\k";
  for (int k = 0; k <= t.lmax; ++k) out << ',' << k;
  out << '\n';
  for (int ell = 0; ell <= t.lmax; ++ell) {
    out << ell;
    for (int k = 0; k <= t.lmax; ++k) {
      out << ',';
      const auto& h = t.at(k, ell);
      if (h.is_zero()) continue;
      out << h.rank;
      for (const auto& d : h.torsion) out << ";Z/" << d;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace maghom
