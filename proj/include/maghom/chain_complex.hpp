#pragma once

#include "maghom/error.hpp"
#include "maghom/integer.hpp"
#include "maghom/smith.hpp"

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

namespace maghom {

// A finitely generated abelian group Z^rank + (+)_i Z/torsion_i, with the
// torsion orders kept as invariant factors.
struct HomologyGroup {
  std::size_t rank = 0;
  std::vector<Integer> torsion;

  bool is_zero() const { return rank == 0 && torsion.empty(); }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    if (rank > 0) {
      out << "Z";
      if (rank > 1) out << "^" << rank;
      first = false;
    }
    for (const auto& t : torsion) {
      if (!first) out << "+";
      out << "Z/" << t;
      first = false;
    }
    return out.str();
  }

  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

inline HomologyGroup direct_sum(const HomologyGroup& a, const HomologyGroup& b) {
  HomologyGroup out;
  out.rank = a.rank + b.rank;
  out.torsion = a.torsion;
  out.torsion.insert(out.torsion.end(), b.torsion.begin(), b.torsion.end());
  out.torsion = invariant_factors(std::move(out.torsion));
  return out;
}

// Graded free chain complex. boundaries[k] maps degree k to degree k-1 and
// has shape dims[k-1] x dims[k]; boundaries[0] is unused.
struct ChainComplexData {
  std::vector<std::size_t> dims;
  std::vector<SparseIntMatrix> boundaries;

  std::size_t top_degree() const { return dims.empty() ? 0 : dims.size() - 1; }

  void validate_shapes() const {
    if (boundaries.size() != dims.size()) throw InternalError("chain complex: boundary count mismatch");
    for (std::size_t k = 1; k < dims.size(); ++k)
      if (boundaries[k].rows() != dims[k - 1] || boundaries[k].cols() != dims[k])
        throw InternalError("chain complex: boundary shape mismatch in degree " + std::to_string(k));
  }

  // True when every composite d_{k-1} d_k vanishes.
  bool squares_to_zero() const {
    for (std::size_t k = 2; k < dims.size(); ++k)
      if (!(boundaries[k - 1] * boundaries[k]).is_zero()) return false;
    return true;
  }
};

// H_k = ker d_k / im d_{k+1} for every degree, via Smith normal form of each
// boundary map computed once.
inline std::vector<HomologyGroup> compute_homology(const ChainComplexData& cx) {
  cx.validate_shapes();
  const std::size_t n = cx.dims.size();
  std::vector<SNFResult> snf(n + 1);
  for (std::size_t k = 1; k < n; ++k) snf[k] = smith_normal_form(cx.boundaries[k]);
  std::vector<HomologyGroup> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t rank_out = k >= 1 ? snf[k].rank : 0;
    std::size_t rank_in = k + 1 < n ? snf[k + 1].rank : 0;
    if (rank_out + rank_in > cx.dims[k]) throw InternalError("homology: rank exceeds chain dimension");
    out[k].rank = cx.dims[k] - rank_out - rank_in;
    if (k + 1 < n) out[k].torsion = snf[k + 1].divisors;
  }
  return out;
}

}  // namespace maghom
