#pragma once

#include "maghom/error.hpp"
#include "maghom/integer.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace maghom {

// Column-major sparse integer matrix. Each column holds (row, value) pairs
// sorted by row with no zero values.
class SparseIntMatrix {
 public:
  using Entry = std::pair<std::size_t, Integer>;

  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }

  // Adds `value` to entry (row, col).
  void add(std::size_t row, std::size_t col, const Integer& value) {
    if (row >= rows_ || col >= columns_.size()) throw InternalError("sparse matrix index out of range");
    auto& column = columns_[col];
    auto it = std::lower_bound(column.begin(), column.end(), row,
                               [](const Entry& e, std::size_t r) { return e.first < r; });
    if (it != column.end() && it->first == row) {
      it->second += value;
      if (it->second == 0) column.erase(it);
    } else if (value != 0) {
      column.insert(it, Entry{row, value});
    }
  }

  const std::vector<Entry>& column(std::size_t col) const { return columns_[col]; }

  Integer at(std::size_t row, std::size_t col) const {
    for (const auto& [r, v] : columns_[col])
      if (r == row) return v;
    return 0;
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
  }

  bool is_zero() const { return nonzeros() == 0; }

  friend SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b) {
    if (a.cols() != b.rows()) throw InternalError("sparse matrix product shape mismatch");
    SparseIntMatrix out(a.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
      std::map<std::size_t, Integer> acc;
      for (const auto& [k, bv] : b.column(j))
        for (const auto& [i, av] : a.column(k)) acc[i] += av * bv;
      for (auto& [i, v] : acc)
        if (v != 0) out.columns_[j].emplace_back(i, v);
    }
    return out;
  }

  std::vector<std::vector<Integer>> to_dense() const {
    std::vector<std::vector<Integer>> d(rows_, std::vector<Integer>(cols(), 0));
    for (std::size_t j = 0; j < cols(); ++j)
      for (const auto& [i, v] : columns_[j]) d[i][j] = v;
    return d;
  }

  static SparseIntMatrix from_dense(const std::vector<std::vector<Integer>>& d) {
    std::size_t rows = d.size();
    std::size_t cols = rows == 0 ? 0 : d.front().size();
    SparseIntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (d[i][j] != 0) m.columns_[j].emplace_back(i, d[i][j]);
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::vector<std::vector<Entry>> columns_;
};

// Rank and invariant factors > 1 of an integer matrix.
struct SNFResult {
  std::size_t rank = 0;
  std::vector<Integer> divisors;

  friend bool operator==(const SNFResult&, const SNFResult&) = default;
};

namespace detail {

// Row-major working copy with a column -> rows occupancy index.
class SmithWorkspace {
 public:
  explicit SmithWorkspace(const SparseIntMatrix& m) : rows_(m.rows()), col_rows_(m.cols()) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (const auto& [i, v] : m.column(j)) {
        rows_[i].emplace(j, v);
        col_rows_[j].insert(i);
      }
  }

  SNFResult run() {
    eliminate_unit_pivots();
    eliminate_general();
    SNFResult out;
    out.rank = pivots_.size();
    out.divisors = invariant_factors(pivots_);
    return out;
  }

 private:
  using Row = std::map<std::size_t, Integer>;

  // row[target] -= factor * row[source]
  void row_axpy(std::size_t target, std::size_t source, const Integer& factor) {
    Row& t = rows_[target];
    for (const auto& [c, v] : rows_[source]) {
      auto [it, inserted] = t.try_emplace(c, 0);
      it->second -= factor * v;
      if (it->second == 0) {
        t.erase(it);
        col_rows_[c].erase(target);
      } else if (inserted) {
        col_rows_[c].insert(target);
      }
    }
  }

  void drop_pivot(std::size_t r, std::size_t c, const Integer& value) {
    for (const auto& [cc, v] : rows_[r]) col_rows_[cc].erase(r);
    rows_[r].clear();
    for (std::size_t rr : col_rows_[c]) rows_[rr].erase(c);
    col_rows_[c].clear();
    pivots_.push_back(abs_value(value));
  }

  // A +-1 pivot clears its column by row operations; the pivot row is then
  // cleared by column operations that touch no other row.
  void eliminate_unit_pivots() {
    bool progress = true;
    while (progress) {
      progress = false;
      std::vector<std::size_t> order;
      for (std::size_t c = 0; c < col_rows_.size(); ++c)
        if (!col_rows_[c].empty()) order.push_back(c);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return col_rows_[a].size() < col_rows_[b].size();
      });
      for (std::size_t c : order) {
        if (col_rows_[c].empty()) continue;
        std::size_t best = rows_.size();
        for (std::size_t r : col_rows_[c]) {
          const Integer& v = rows_[r].at(c);
          if (abs_value(v) != 1) continue;
          if (best == rows_.size() || rows_[r].size() < rows_[best].size()) best = r;
        }
        if (best == rows_.size()) continue;
        const Integer pivot = rows_[best].at(c);
        std::vector<std::size_t> others(col_rows_[c].begin(), col_rows_[c].end());
        for (std::size_t r : others) {
          if (r == best) continue;
          Integer factor = rows_[r].at(c) * pivot;  // pivot is its own inverse
          row_axpy(r, best, factor);
        }
        drop_pivot(best, c, pivot);
        progress = true;
      }
    }
  }

  // Remaining entries: repeated Euclidean reduction on a smallest pivot.
  void eliminate_general() {
    for (;;) {
      std::size_t pr = rows_.size(), pc = 0;
      Integer best = 0;
      for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& [c, v] : rows_[r]) {
          Integer a = abs_value(v);
          if (pr == rows_.size() || a < best) {
            best = a;
            pr = r;
            pc = c;
          }
        }
      if (pr == rows_.size()) return;
      reduce_at(pr, pc);
    }
  }

  void reduce_at(std::size_t r, std::size_t c) {
    for (;;) {
      const Integer pivot = rows_[r].at(c);
      // Column pass.
      std::size_t next_row = r;
      std::vector<std::size_t> others(col_rows_[c].begin(), col_rows_[c].end());
      for (std::size_t rr : others) {
        if (rr == r) continue;
        Integer factor = rows_[rr].at(c) / pivot;
        if (factor != 0) row_axpy(rr, r, factor);
        // A nonzero remainder is smaller than the pivot: move the pivot there.
        if (next_row == r && col_rows_[c].count(rr)) next_row = rr;
      }
      if (next_row != r) {
        r = next_row;
        continue;
      }
      // Row pass: column c now holds only the pivot, so column operations
      // change row r alone.
      for (auto it = rows_[r].begin(); it != rows_[r].end();) {
        if (it->first == c) {
          ++it;
          continue;
        }
        Integer rem = it->second % pivot;
        if (rem == 0) {
          col_rows_[it->first].erase(r);
          it = rows_[r].erase(it);
        } else {
          it->second = rem;
          ++it;
        }
      }
      if (rows_[r].size() == 1) {
        drop_pivot(r, c, pivot);
        return;
      }
      // Some column now carries a remainder smaller than the pivot: continue
      // from the smallest entry in the row. Column operations on other
      // columns may need that column's other rows cleared too.
      std::size_t next = c;
      Integer smallest = abs_value(pivot);
      for (const auto& [cc, v] : rows_[r])
        if (abs_value(v) < smallest) {
          smallest = abs_value(v);
          next = cc;
        }
      c = next;
    }
  }

  std::vector<Row> rows_;
  std::vector<std::set<std::size_t>> col_rows_;
  std::vector<Integer> pivots_;
};

}  // namespace detail

inline SNFResult smith_normal_form(const SparseIntMatrix& m) {
  return detail::SmithWorkspace(m).run();
}

}  // namespace maghom
