#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "quasimle/cliques.hpp"
#include "quasimle/error.hpp"
#include "quasimle/pattern.hpp"

namespace quasimle {

// Sum of u over `cells`, printed under `label`.
struct LinearFactor {
  std::string label;
  std::vector<CellIndex> cells;
};

// Unsimplified product form of one MLE coordinate.
struct FactoredEntry {
  std::vector<LinearFactor> numerator;
  std::vector<LinearFactor> denominator;
};

std::string render_factor(const LinearFactor& f, const Pattern& s);
std::string render_factored(const FactoredEntry& e, const Pattern& s);

struct RationalTable {
  Pattern pattern;
  RationalVector values;
  std::optional<std::vector<FactoredEntry>> symbolic;

  const Rational& operator()(int row, int col) const { return values(pattern.index({row, col})); }
  Rational sum() const { return values.sum(); }
};

// Clique formula for a doubly chordal bipartite pattern:
//
//   p_ij = u_{i+} u_{+j} prod_{C in Int(ij)} C^+ / (u_{++} prod_{D in Max(ij)} D^+)
//
// The clique structure is computed once; evaluate() may be called for many tables.
class CliqueFormula {
 public:
  // Throws Error(NotDoublyChordalBipartite).
  explicit CliqueFormula(Pattern s);

  const Pattern& pattern() const noexcept { return s_; }
  const std::vector<Clique>& max_cliques() const noexcept { return max_; }
  const std::vector<Clique>& int_cliques() const noexcept { return int_; }
  const std::vector<Clique>& max_of(std::size_t cell) const { return max_of_.at(cell); }
  const std::vector<Clique>& int_of(std::size_t cell) const { return int_of_.at(cell); }

  FactoredEntry factored(std::size_t cell) const;

  // Throws Error(ZeroDenominatorFactor) naming the first vanishing sum.
  template <typename Scalar>
  SupportVector<Scalar> evaluate(const SupportVector<Scalar>& u) const;

  RationalTable evaluate(const CountTable& u) const;

 private:
  Pattern s_;
  std::vector<Clique> max_;
  std::vector<Clique> int_;
  std::vector<std::vector<Clique>> max_of_;
  std::vector<std::vector<Clique>> int_of_;
};

RationalTable clique_formula_mle(const Pattern& s, const CountTable& u);

struct MinorResidual {
  std::array<int, 2> rows{};
  std::array<int, 2> cols{};
  Rational value;
};

// All {i1,i2} x {j1,j2} (i1 < i2, j1 < j2) fully inside S.
std::vector<std::pair<std::array<int, 2>, std::array<int, 2>>> observed_minors(const Pattern& s);

// p_{i1 j1} p_{i2 j2} - p_{i1 j2} p_{i2 j1} for every fully observed minor.
std::vector<MinorResidual> minor_residuals(const Pattern& s, const RationalVector& p);

struct VerificationReport {
  RationalVector marginal_residuals;  // A(S)u/u_{++} - A(S)p; rows first, then columns
  Rational normalization_residual;    // sum(p) - 1
  std::vector<MinorResidual> minor_residuals;

  bool exact() const;
};

VerificationReport birch_residuals(const Pattern& s, const CountTable& u, const RationalVector& p);

template <typename Scalar>
SupportVector<Scalar> CliqueFormula::evaluate(const SupportVector<Scalar>& u) const {
  if (u.size() != static_cast<Eigen::Index>(s_.size()))
    throw Error(ErrorKind::InvalidArgument, "count vector does not match the pattern");
  const auto margins = marginals(s_, u);
  if (margins.total == Scalar(0)) throw Error(ErrorKind::ZeroDenominatorFactor, "u_{++} = 0");
  std::vector<Scalar> max_sum(max_.size());
  for (std::size_t d = 0; d < max_.size(); ++d) {
    max_sum[d] = clique_sum(s_, max_[d], u);
    if (max_sum[d] == Scalar(0)) throw Error(ErrorKind::ZeroDenominatorFactor, "clique sum " + clique_label(max_[d]) + " = 0");
  }
  SupportVector<Scalar> p(u.size());
  for (std::size_t k = 0; k < s_.size(); ++k) {
    const auto& c = s_.cell(k);
    Scalar num = margins.row_sums(c.row - 1) * margins.col_sums(c.col - 1);
    for (const auto& clique : int_of_[k]) num *= clique_sum(s_, clique, u);
    Scalar den = margins.total;
    for (const auto& clique : max_of_[k]) {
      auto it = std::lower_bound(max_.begin(), max_.end(), clique);
      den *= max_sum[static_cast<std::size_t>(it - max_.begin())];
    }
    p(static_cast<Eigen::Index>(k)) = num / den;
  }
  return p;
}

}  // namespace quasimle
