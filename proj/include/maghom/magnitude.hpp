#pragma once

#include "maghom/error.hpp"
#include "maghom/graph.hpp"
#include "maghom/mag_homology.hpp"
#include "maghom/polynomial.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace maghom {

using PolyMatrix = std::vector<std::vector<IntPoly>>;

// Z_G(x, y) = q^d(x, y).
inline PolyMatrix zeta_matrix(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.order());
  PolyMatrix z(n, std::vector<IntPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      z[i][j] = IntPoly::monomial(static_cast<std::size_t>(g.dist(static_cast<Vertex>(i + 1), static_cast<Vertex>(j + 1))));
  return z;
}

// Determinant over Z[q] by Bareiss fraction-free elimination. Every
// division is exact.
inline IntPoly determinant(PolyMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return IntPoly{1};
  IntPoly previous{1};
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return {};
      std::swap(m[k], m[swap_row]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        IntPoly t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = t.divexact(previous);
      }
      m[i][k] = IntPoly{};
    }
    previous = m[k][k];
  }
  IntPoly det = m[n - 1][n - 1];
  return negate ? -det : det;
}

// #G = sum of the entries of Z_G^{-1}. With J the all-ones matrix,
// det(Z + J) = det(Z) + 1^T adj(Z) 1, so
//   #G = (det(Z + J) - det(Z)) / det(Z).
inline RatFunc magnitude_rational(const Graph& g) {
  PolyMatrix z = zeta_matrix(g);
  IntPoly det_z = determinant(z);
  if (det_z.is_zero()) throw InternalError("zeta matrix determinant vanished");
  PolyMatrix shifted = z;
  for (auto& row : shifted)
    for (auto& entry : row) entry += IntPoly{1};
  IntPoly numerator = determinant(std::move(shifted)) - det_z;
  return RatFunc(std::move(numerator), std::move(det_z));
}

// Taylor coefficients of #G through q^order. Z_G = I + N with N = O(q), so
// the solution of Z_G w = 1 is the fixed point of w = 1 - N w, exact to
// order m after m + 1 sweeps.
inline SeriesCoeffs magnitude_series(const Graph& g, std::size_t order) {
  const auto n = static_cast<std::size_t>(g.order());
  using Series = std::vector<Integer>;
  std::vector<Series> w(n, Series(order + 1, 0));
  for (auto& s : w) s[0] = 1;
  for (std::size_t sweep = 0; sweep < order; ++sweep) {
    std::vector<Series> next(n, Series(order + 1, 0));
    for (std::size_t i = 0; i < n; ++i) {
      next[i][0] = 1;
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        auto shift = static_cast<std::size_t>(g.dist(static_cast<Vertex>(i + 1), static_cast<Vertex>(j + 1)));
        for (std::size_t t = 0; t + shift <= order; ++t) next[i][t + shift] -= w[j][t];
      }
    }
    w = std::move(next);
  }
  SeriesCoeffs out;
  out.order = order;
  out.coeffs.assign(order + 1, 0);
  for (const auto& s : w)
    for (std::size_t t = 0; t <= order; ++t) out.coeffs[t] += s[t];
  return out;
}

struct EulerCheckReport {
  bool holds = true;
  std::vector<Integer> series;          // c_0..c_L
  std::vector<Integer> alternating_sums;  // sum_k (-1)^k rank MH_k^l
};

// Compares c_l with sum_k (-1)^k rank MH_k^l for l = 0..order.
inline EulerCheckReport euler_check(const Graph& g, std::size_t order, const HomologyOptions& opts = {}) {
  EulerCheckReport report;
  report.series = magnitude_series(g, order).coeffs;
  for (std::size_t ell = 0; ell <= order; ++ell) {
    auto groups = mh_all_degrees(g, static_cast<int>(ell), opts);
    Integer sum = 0;
    for (std::size_t k = 0; k < groups.size(); ++k) {
      Integer r = static_cast<long long>(groups[k].rank);
      sum += (k % 2 == 0) ? r : Integer(-r);
    }
    report.alternating_sums.push_back(sum);
    if (sum != report.series[ell]) report.holds = false;
  }
  return report;
}

}  // namespace maghom
