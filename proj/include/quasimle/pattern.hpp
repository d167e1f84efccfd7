#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "quasimle/rational.hpp"

namespace quasimle {

// 1-based (row, column) position in an m x n table.
struct CellIndex {
  int row = 0;
  int col = 0;

  auto operator<=>(const CellIndex&) const = default;
};

std::string to_string(CellIndex c);

// Support set S of a two-way table with structural zeros.
//
// Cells are kept duplicate-free and sorted row-major; that order is the column
// order of the design matrix, of Horn matrices and of every serialized table.
// Every row in [m] and every column in [n] must carry at least one cell.
class Pattern {
 public:
  Pattern(int rows, int cols, std::vector<CellIndex> cells);

  int rows() const noexcept { return m_; }
  int cols() const noexcept { return n_; }
  std::size_t size() const noexcept { return cells_.size(); }
  const std::vector<CellIndex>& cells() const noexcept { return cells_; }
  const CellIndex& cell(std::size_t k) const { return cells_.at(k); }

  bool contains(int row, int col) const noexcept;
  bool contains(CellIndex c) const noexcept { return contains(c.row, c.col); }

  std::optional<std::size_t> find(CellIndex c) const noexcept;
  // Throws Error(CellNotInSupport).
  std::size_t index(CellIndex c) const;

  // Columns present in `row`, rows present in `col`; both sorted.
  const std::vector<int>& row_support(int row) const { return row_cols_.at(row - 1); }
  const std::vector<int>& col_support(int col) const { return col_rows_.at(col - 1); }

  bool operator==(const Pattern& other) const noexcept {
    return m_ == other.m_ && n_ == other.n_ && cells_ == other.cells_;
  }

 private:
  int m_;
  int n_;
  std::vector<CellIndex> cells_;
  std::vector<int> lookup_;  // m*n, -1 where structurally zero
  std::vector<std::vector<int>> row_cols_;
  std::vector<std::vector<int>> col_rows_;
};

// Grid text: '*' marks a support cell, '0' or '.' a structural zero. Spaces and
// tabs inside a line are ignored, as are blank lines and lines starting with '#'.
Pattern parse_pattern(std::string_view text);
std::string render_pattern(const Pattern& s);

Pattern full_pattern(int rows, int cols);
// {(i,i)} u {(i,i+1)} u {(k,1)}: the bipartite graph is a single 2k-cycle.
Pattern cycle_pattern(int k);
// {11, 12, 21, 22, 23, 32, 33}
Pattern double_square_pattern();

// A(S): (m+n) x #S, column of (i,j) has ones at rows i and m+j.
Eigen::MatrixXi design_matrix(const Pattern& s);

// Number of connected components of the bipartite graph G_S.
int connected_components(const Pattern& s);

struct CountTable {
  CountTable(Pattern p, RationalVector v);

  Pattern pattern;
  RationalVector values;

  const Rational& operator()(int row, int col) const { return values(pattern.index({row, col})); }
  Rational total() const { return values.sum(); }
};

CountTable uniform_counts(const Pattern& s, const Rational& value = Rational(1));

template <typename Scalar>
struct Marginals {
  SupportVector<Scalar> row_sums;
  SupportVector<Scalar> col_sums;
  Scalar total;
};

template <typename Scalar>
Marginals<Scalar> marginals(const Pattern& s, const SupportVector<Scalar>& values) {
  Marginals<Scalar> out{SupportVector<Scalar>::Zero(s.rows()), SupportVector<Scalar>::Zero(s.cols()),
                        Scalar(0)};
  for (std::size_t k = 0; k < s.size(); ++k) {
    const auto& c = s.cell(k);
    const auto idx = static_cast<Eigen::Index>(k);
    out.row_sums(c.row - 1) += values(idx);
    out.col_sums(c.col - 1) += values(idx);
    out.total += values(idx);
  }
  return out;
}

inline Marginals<Rational> marginals(const CountTable& u) { return marginals(u.pattern, u.values); }

// Restriction of S to rows x cols, reindexed to consecutive 1-based indices.
struct Subpattern {
  Pattern pattern;
  std::vector<int> rows;           // rows[k] = parent row of new row k+1
  std::vector<int> cols;           // cols[k] = parent column of new column k+1
  std::vector<std::size_t> cells;  // cells[k] = parent support index of new cell k

  CellIndex to_parent(CellIndex c) const { return {rows.at(c.row - 1), cols.at(c.col - 1)}; }
};

Subpattern induced_subpattern(const Pattern& s, std::vector<int> rows, std::vector<int> cols);

template <typename Scalar>
SupportVector<Scalar> restrict_values(const Subpattern& sub, const SupportVector<Scalar>& parent) {
  SupportVector<Scalar> out(static_cast<Eigen::Index>(sub.cells.size()));
  for (std::size_t k = 0; k < sub.cells.size(); ++k)
    out(static_cast<Eigen::Index>(k)) = parent(static_cast<Eigen::Index>(sub.cells[k]));
  return out;
}

CountTable restrict_counts(const CountTable& u, const Subpattern& sub);

// row_perm[i-1] is the new index of row i (likewise for columns).
Pattern permuted(const Pattern& s, const std::vector<int>& row_perm, const std::vector<int>& col_perm);
// Index map old support index -> new support index under the same relabeling.
std::vector<std::size_t> permuted_cell_map(const Pattern& s, const std::vector<int>& row_perm,
                                           const std::vector<int>& col_perm);

struct ParsedCounts {
  CountTable table;
  std::vector<std::string> warnings;
};

// CSV with m rows and n columns. Entries at structural zeros must be 0 or empty;
// nonempty zero entries there produce a warning and are dropped.
ParsedCounts parse_counts_csv(const Pattern& s, std::string_view text);

}  // namespace quasimle
