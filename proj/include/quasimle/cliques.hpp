#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quasimle/pattern.hpp"

namespace quasimle {

// Combinatorial rectangle rows x cols. Both sides sorted; ordering and equality
// use the (rows, cols) pair, which doubles as the deduplication key.
struct Clique {
  std::vector<int> rows;
  std::vector<int> cols;

  auto operator<=>(const Clique&) const = default;

  bool empty() const noexcept { return rows.empty() || cols.empty(); }
  std::size_t size() const noexcept { return rows.size() * cols.size(); }
  bool contains(CellIndex c) const;
  std::vector<CellIndex> cells() const;
};

Clique intersect(const Clique& a, const Clique& b);
// Containment of cell sets (empty cliques are contained in everything).
bool is_subclique(const Clique& a, const Clique& b);
bool is_clique_of(const Pattern& s, const Clique& c);

// "{11, 12, 21}" when every index is a single digit, "{(1,10), ...}" otherwise.
std::string clique_label(const Clique& c);

// C^+ : sum of the values on the cells of c.
template <typename Scalar>
Scalar clique_sum(const Pattern& s, const Clique& c, const SupportVector<Scalar>& values) {
  Scalar sum(0);
  for (int i : c.rows)
    for (int j : c.cols) sum += values(static_cast<Eigen::Index>(s.index({i, j})));
  return sum;
}

// Coarsest partition of the columns by their support on the rows of an anchor
// column j0. Part 0 holds j0; the other parts follow by smallest member column.
struct BlockPart {
  std::vector<int> cols;  // T_l
  std::vector<int> rows;  // rows of B_l, a subset of the anchor rows; empty => B_l empty

  bool empty() const noexcept { return rows.empty(); }
};

struct BlockDecomposition {
  int anchor_col = 0;
  std::vector<int> anchor_rows;  // rows of column j0
  std::vector<BlockPart> parts;
};

BlockDecomposition blocks_for_column(const Pattern& s, int anchor_col);

// D = rows(B) x {j : rows(B) subset of rows^{j0}(j)}. Throws Error(EmptyBlock).
Clique induced_clique(const Pattern& s, const BlockDecomposition& dec, std::size_t part);

// First pair of parts whose row sets overlap without nesting, if any.
std::optional<std::pair<std::size_t, std::size_t>> laminarity_violation(const BlockDecomposition& dec);

// Laminar block rows for every anchor column; equivalent to having no induced double square.
bool is_ds_free(const Pattern& s);

enum class CliqueMethod { Blocks, BruteForce };

struct MaxCliques {
  std::vector<Clique> cliques;  // sorted
  CliqueMethod method;
};

// Induced cliques over all anchor columns when S is DS-free, otherwise the
// closure enumeration (flagged through `method`).
MaxCliques max_cliques(const Pattern& s);

// All maximal all-ones submatrices: every intersection of column supports is
// paired with the columns containing it.
std::vector<Clique> max_cliques_bruteforce(const Pattern& s);

// Containment-maximal nonempty pairwise intersections of the given cliques.
std::vector<Clique> maximal_intersections(const std::vector<Clique>& cliques);

std::vector<Clique> int_cliques(const Pattern& s);

// Max(ij) and Int(ij). Throw Error(CellNotInSupport).
std::vector<Clique> max_of(const Pattern& s, CellIndex cell);
std::vector<Clique> int_of(const Pattern& s, CellIndex cell);
std::vector<Clique> max_of(const Pattern& s, const std::vector<Clique>& max, CellIndex cell);
std::vector<Clique> int_of(const Pattern& s, const std::vector<Clique>& max, CellIndex cell);

// Induced cliques of one anchor column ordered by containment of their anchor rows.
struct CliquePoset {
  int anchor_col = 0;
  std::vector<Clique> elements;                          // element 0 is the top D_0
  std::vector<std::size_t> parts;                        // block index of each element
  std::vector<std::pair<std::size_t, std::size_t>> covers;  // (lower, upper)

  bool less(std::size_t a, std::size_t b) const;
  std::optional<std::size_t> cover_of(std::size_t a) const;
  std::vector<std::size_t> covered_by(std::size_t b) const;
};

// Throws Error(NotDSFree) when the block rows of j0 are not laminar.
CliquePoset clique_poset(const Pattern& s, int anchor_col);

// Cells where Int(ij) differs from {C in Int(S) : ij in C}.
struct IntDivergence {
  CellIndex cell;
  std::vector<Clique> from_cell;
  std::vector<Clique> from_global;
};

std::vector<IntDivergence> int_consistency(const Pattern& s);

}  // namespace quasimle
