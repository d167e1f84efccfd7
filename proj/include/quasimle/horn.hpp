#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "quasimle/cliques.hpp"
#include "quasimle/mle.hpp"
#include "quasimle/pattern.hpp"

namespace quasimle {

enum class HornRowKind { RowMarginal, ColMarginal, IntClique, MaxClique, GrandTotal };

struct HornRowLabel {
  HornRowKind kind;
  int index = 0;  // row or column for marginal rows
  Clique clique;  // for clique rows

  std::string str() const;
};

// Horn pair (B, h). Psi_k(u) = h_k prod_i (sum_j b_ij u_j)^{b_ik}.
//
// Row layout: row marginals, column marginals, one +1 row per C in Int(S), one
// -1 row per D in Max(S), and the all -1 grand total row. Columns follow
// `columns`; after restriction the columns are in subpattern coordinates while
// row labels keep the parent's indices.
struct HornPair {
  std::vector<HornRowLabel> labels;
  Eigen::MatrixXi B;
  Eigen::VectorXi h;
  std::vector<CellIndex> columns;
  std::vector<bool> inert;  // all-zero rows (only after restriction)
};

// Throws Error(NotDoublyChordalBipartite).
HornPair build_horn_pair(const Pattern& s);
HornPair build_horn_pair(const CliqueFormula& formula);

// Exact Psi(u). Throws Error(VanishingLinearForm) naming the row whose linear
// form is zero while carrying a nonzero exponent.
RationalVector evaluate_horn(const HornPair& hp, const RationalVector& u);
RationalTable evaluate_horn(const HornPair& hp, const CountTable& u);

// Keeps the columns of B (and entries of h) at the cells of the induced subpattern.
HornPair restrict_horn(const HornPair& hp, const Pattern& s, std::vector<int> rows, std::vector<int> cols);

}  // namespace quasimle
