#pragma once

#include "maghom/ai_complex.hpp"
#include "maghom/discrete_morse.hpp"
#include "maghom/error.hpp"
#include "maghom/graph.hpp"
#include "maghom/mag_homology.hpp"
#include "maghom/s_structure.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace maghom {

// i(x) and j(x); nullopt stands for infinity.
struct SequenceIndices {
  std::optional<std::size_t> i_idx;
  std::optional<std::size_t> j_idx;
};

// Which rule wins when (x_0, x_1, x_2) is an S-triple and some quad also
// matches. The triple rule (i = 0) overrides by default.
enum class TriplePrecedence { triple_first, quadruple_first };

namespace detail {

[[noreturn]] inline void matching_failure(SOrigin origin, const std::string& what) {
  if (origin == SOrigin::pawful) throw InternalError("pawful matching: " + what);
  throw ValidationError("S-structure does not induce a matching: " + what);
}

}  // namespace detail

inline bool index_less(const std::optional<std::size_t>& a, const std::optional<std::size_t>& b) {
  if (!a) return false;
  if (!b) return true;
  return *a < *b;
}

// x is the endpoint-extended sequence (a, interior..., b), indices 0..k.
inline SequenceIndices sequence_indices(const Graph& g, const Sequence& x, const SStructure& s,
                                        TriplePrecedence precedence = TriplePrecedence::triple_first) {
  const auto& v = x.points;
  const std::size_t k = x.degree();
  SequenceIndices out;
  std::optional<std::size_t> quad_index;
  for (std::size_t i = 1; i + 2 <= k; ++i)
    if (s.has_quad(v[i - 1], v[i], v[i + 1], v[i + 2])) {
      quad_index = i;
      break;
    }
  const bool triple = k >= 2 && s.has_triple(v[0], v[1], v[2]);
  if (precedence == TriplePrecedence::triple_first) out.i_idx = triple ? std::optional<std::size_t>(0) : quad_index;
  else out.i_idx = quad_index ? quad_index : (triple ? std::optional<std::size_t>(0) : std::nullopt);
  for (std::size_t j = 0; j < k; ++j)
    if (g.dist(v[j], v[j + 1]) == 2) {
      out.j_idx = j;
      break;
    }
  return out;
}

// Interior points of (a, ..., b) positioned at cumulative distances from a.
inline Simplex simplex_from_sequence(const Graph& g, const Sequence& x) {
  Simplex s;
  int position = 0;
  for (std::size_t i = 1; i + 1 < x.points.size(); ++i) {
    position += g.dist(x.points[i - 1], x.points[i]);
    s.elements.push_back({x.points[i], position});
  }
  return s;
}

struct MatchingConstruction {
  SimplicialPair pair;
  FacePoset poset;  // cells of K \ K'
  Matching matching;
  std::vector<std::size_t> critical;    // A
  std::vector<std::size_t> lower;       // P'
  std::vector<std::size_t> upper;       // P''
};

// The insertion/deletion matching on K_ell(a, b) \ K'_ell(a, b):
//   f : P' -> P'' inserts the S-designated middle vertex after x_{j(x)},
//   g : P'' -> P' deletes y_{i(y)+1},
// with f o g and g o f checked to be identities.
inline MatchingConstruction build_matching(const Graph& g, Vertex a, Vertex b, int ell, const SStructure& s,
                                           TriplePrecedence precedence = TriplePrecedence::triple_first) {
  require_diameter_two(g);
  MatchingConstruction out;
  out.pair = build_pair(g, a, b, ell);
  out.poset = relative_face_poset(out.pair);
  const FacePoset& poset = out.poset;
  const std::size_t n = poset.size();

  auto failure = [&](const std::string& what) { detail::matching_failure(s.origin, what); };

  enum class Part { a, lower, upper };
  std::vector<Part> part(n);
  std::vector<SequenceIndices> indices(n);
  for (std::size_t c = 0; c < n; ++c) {
    indices[c] = sequence_indices(g, poset.cells[c].with_endpoints(a, b), s, precedence);
    const auto& [i, j] = indices[c];
    if (!i && !j) part[c] = Part::a;
    else if (index_less(j, i)) part[c] = Part::lower;
    else if (index_less(i, j)) part[c] = Part::upper;
    else failure("i(x) = j(x) at " + poset.cells[c].to_string());
  }

  auto insert = [&](std::size_t c) -> std::size_t {
    const Sequence x = poset.cells[c].with_endpoints(a, b);
    const std::size_t j = *indices[c].j_idx;
    const auto& v = x.points;
    std::optional<Vertex> z;
    if (j == 0) {
      auto it = s.f1.find({v[0], v[1]});
      if (it != s.f1.end()) z = it->second;
    } else {
      auto it = s.f2.find({v[j - 1], v[j], v[j + 1]});
      if (it != s.f2.end()) z = it->second;
    }
    if (!z) failure("no S entry to insert into " + poset.cells[c].to_string());
    Sequence y;
    y.points.assign(v.begin(), v.begin() + static_cast<long>(j) + 1);
    y.points.push_back(*z);
    y.points.insert(y.points.end(), v.begin() + static_cast<long>(j) + 1, v.end());
    std::size_t target = poset.index_of(simplex_from_sequence(g, y));
    if (target == n) failure("insertion leaves K \\ K' at " + poset.cells[c].to_string());
    return target;
  };
  auto remove = [&](std::size_t c) -> std::size_t {
    const std::size_t i = *indices[c].i_idx;
    Sequence y = poset.cells[c].with_endpoints(a, b);
    Sequence x = y.without(i + 1);
    if (x.points.size() < 3) failure("deletion empties " + poset.cells[c].to_string());
    std::size_t target = poset.index_of(simplex_from_sequence(g, x));
    if (target == n) failure("deletion leaves K \\ K' at " + poset.cells[c].to_string());
    return target;
  };

  for (std::size_t c = 0; c < n; ++c) {
    switch (part[c]) {
      case Part::a:
        out.critical.push_back(c);
        break;
      case Part::lower: {
        out.lower.push_back(c);
        std::size_t up = insert(c);
        if (part[up] != Part::upper) failure("f(x) not in P'' for x = " + poset.cells[c].to_string());
        if (remove(up) != c) failure("g(f(x)) != x for x = " + poset.cells[c].to_string());
        out.matching.pairs.emplace_back(c, up);
        break;
      }
      case Part::upper: {
        out.upper.push_back(c);
        std::size_t down = remove(c);
        if (part[down] != Part::lower) failure("g(y) not in P' for y = " + poset.cells[c].to_string());
        if (insert(down) != c) failure("f(g(y)) != y for y = " + poset.cells[c].to_string());
        break;
      }
    }
  }
  return out;
}

}  // namespace maghom
