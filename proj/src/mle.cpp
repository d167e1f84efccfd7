#include "quasimle/mle.hpp"

#include <algorithm>
#include <iterator>

#include "quasimle/classify.hpp"

namespace quasimle {

namespace {

std::string cell_symbol(CellIndex c, const Pattern& s) {
  if (s.rows() < 10 && s.cols() < 10) return "u" + std::to_string(c.row) + std::to_string(c.col);
  return "u" + to_string(c);
}

std::vector<CellIndex> row_cells(const Pattern& s, int i) {
  std::vector<CellIndex> out;
  for (int j : s.row_support(i)) out.push_back({i, j});
  return out;
}

std::vector<CellIndex> col_cells(const Pattern& s, int j) {
  std::vector<CellIndex> out;
  for (int i : s.col_support(j)) out.push_back({i, j});
  return out;
}

}  // namespace

std::string render_factor(const LinearFactor& f, const Pattern& s) {
  if (f.label == "u_{++}") return f.label;
  std::string out = "(";
  for (std::size_t k = 0; k < f.cells.size(); ++k) {
    if (k > 0) out += " + ";
    out += cell_symbol(f.cells[k], s);
  }
  return out + ")";
}

std::string render_factored(const FactoredEntry& e, const Pattern& s) {
  std::string num;
  for (const auto& f : e.numerator) num += render_factor(f, s);
  std::string den;
  for (const auto& f : e.denominator) den += render_factor(f, s);
  return num + " / (" + den + ")";
}

CliqueFormula::CliqueFormula(Pattern s) : s_(std::move(s)) {
  const auto verdict = classify(s_);
  if (verdict.verdict != Verdict::DoublyChordalBipartite)
    throw Error(ErrorKind::NotDoublyChordalBipartite, std::string(verdict_name(verdict.verdict)));
  max_ = quasimle::max_cliques(s_).cliques;
  int_ = maximal_intersections(max_);
  for (const auto& cell : s_.cells()) {
    max_of_.push_back(quasimle::max_of(s_, max_, cell));
    int_of_.push_back(maximal_intersections(max_of_.back()));
  }
}

FactoredEntry CliqueFormula::factored(std::size_t cell) const {
  const auto& c = s_.cell(cell);
  FactoredEntry e;
  e.numerator.push_back({"u_{" + std::to_string(c.row) + "+}", row_cells(s_, c.row)});
  e.numerator.push_back({"u_{+" + std::to_string(c.col) + "}", col_cells(s_, c.col)});
  for (const auto& clique : int_of_.at(cell)) e.numerator.push_back({clique_label(clique), clique.cells()});
  e.denominator.push_back({"u_{++}", s_.cells()});
  for (const auto& clique : max_of_.at(cell)) e.denominator.push_back({clique_label(clique), clique.cells()});
  return e;
}

RationalTable CliqueFormula::evaluate(const CountTable& u) const {
  if (!(u.pattern == s_)) throw Error(ErrorKind::InvalidArgument, "count table is on a different pattern");
  RationalTable out{s_, evaluate<Rational>(u.values), std::vector<FactoredEntry>{}};
  for (std::size_t k = 0; k < s_.size(); ++k) out.symbolic->push_back(factored(k));
  return out;
}

RationalTable clique_formula_mle(const Pattern& s, const CountTable& u) { return CliqueFormula(s).evaluate(u); }

std::vector<std::pair<std::array<int, 2>, std::array<int, 2>>> observed_minors(const Pattern& s) {
  std::vector<std::pair<std::array<int, 2>, std::array<int, 2>>> out;
  for (int i1 = 1; i1 <= s.rows(); ++i1)
    for (int i2 = i1 + 1; i2 <= s.rows(); ++i2) {
      std::vector<int> shared;
      std::set_intersection(s.row_support(i1).begin(), s.row_support(i1).end(), s.row_support(i2).begin(),
                            s.row_support(i2).end(), std::back_inserter(shared));
      for (std::size_t a = 0; a < shared.size(); ++a)
        for (std::size_t b = a + 1; b < shared.size(); ++b) out.push_back({{i1, i2}, {shared[a], shared[b]}});
    }
  return out;
}

std::vector<MinorResidual> minor_residuals(const Pattern& s, const RationalVector& p) {
  auto at = [&](int i, int j) -> const Rational& { return p(static_cast<Eigen::Index>(s.index({i, j}))); };
  std::vector<MinorResidual> out;
  for (const auto& [r, c] : observed_minors(s))
    out.push_back({r, c, at(r[0], c[0]) * at(r[1], c[1]) - at(r[0], c[1]) * at(r[1], c[0])});
  return out;
}

bool VerificationReport::exact() const {
  if (normalization_residual != 0) return false;
  for (Eigen::Index k = 0; k < marginal_residuals.size(); ++k)
    if (marginal_residuals(k) != 0) return false;
  return std::all_of(minor_residuals.begin(), minor_residuals.end(),
                     [](const MinorResidual& r) { return r.value == 0; });
}

VerificationReport birch_residuals(const Pattern& s, const CountTable& u, const RationalVector& p) {
  if (!(u.pattern == s) || p.size() != static_cast<Eigen::Index>(s.size()))
    throw Error(ErrorKind::InvalidArgument, "table does not match the pattern");
  const Rational total = u.total();
  if (total == 0) throw Error(ErrorKind::ZeroDenominatorFactor, "u_{++} = 0");
  const Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic> a = design_matrix(s).cast<Rational>();
  const RationalVector scaled = u.values / total;
  VerificationReport report;
  report.marginal_residuals = a * scaled - a * p;
  report.normalization_residual = p.sum() - Rational(1);
  report.minor_residuals = minor_residuals(s, p);
  return report;
}

}  // namespace quasimle
