#include "quasimle/horn.hpp"

#include "quasimle/error.hpp"

namespace quasimle {

std::string HornRowLabel::str() const {
  switch (kind) {
    case HornRowKind::RowMarginal: return "row:" + std::to_string(index);
    case HornRowKind::ColMarginal: return "col:" + std::to_string(index);
    case HornRowKind::IntClique: return "int:" + clique_label(clique);
    case HornRowKind::MaxClique: return "max:" + clique_label(clique);
    case HornRowKind::GrandTotal: return "total";
  }
  return "?";
}

HornPair build_horn_pair(const Pattern& s) { return build_horn_pair(CliqueFormula(s)); }

HornPair build_horn_pair(const CliqueFormula& formula) {
  const Pattern& s = formula.pattern();
  const auto& ints = formula.int_cliques();
  const auto& maxes = formula.max_cliques();
  const auto d = static_cast<Eigen::Index>(s.rows() + s.cols() + ints.size() + maxes.size() + 1);
  const auto r = static_cast<Eigen::Index>(s.size());

  HornPair hp;
  hp.B = Eigen::MatrixXi::Zero(d, r);
  hp.h = Eigen::VectorXi::Zero(r);
  hp.columns = s.cells();
  hp.inert.assign(static_cast<std::size_t>(d), false);

  for (int i = 1; i <= s.rows(); ++i) hp.labels.push_back({HornRowKind::RowMarginal, i, {}});
  for (int j = 1; j <= s.cols(); ++j) hp.labels.push_back({HornRowKind::ColMarginal, j, {}});
  for (const auto& c : ints) hp.labels.push_back({HornRowKind::IntClique, 0, c});
  for (const auto& c : maxes) hp.labels.push_back({HornRowKind::MaxClique, 0, c});
  hp.labels.push_back({HornRowKind::GrandTotal, 0, {}});

  for (Eigen::Index k = 0; k < r; ++k) {
    const auto& cell = s.cell(static_cast<std::size_t>(k));
    for (Eigen::Index row = 0; row < d; ++row) {
      const auto& label = hp.labels[static_cast<std::size_t>(row)];
      switch (label.kind) {
        case HornRowKind::RowMarginal: hp.B(row, k) = label.index == cell.row ? 1 : 0; break;
        case HornRowKind::ColMarginal: hp.B(row, k) = label.index == cell.col ? 1 : 0; break;
        case HornRowKind::IntClique: hp.B(row, k) = label.clique.contains(cell) ? 1 : 0; break;
        case HornRowKind::MaxClique: hp.B(row, k) = label.clique.contains(cell) ? -1 : 0; break;
        case HornRowKind::GrandTotal: hp.B(row, k) = -1; break;
      }
    }
    // Max and total rows carry negative linear forms with exponent -1.
    const auto max_count = formula.max_of(static_cast<std::size_t>(k)).size();
    hp.h(k) = (max_count + 1) % 2 == 0 ? 1 : -1;
  }
  return hp;
}

namespace {

Rational integer_power(const Rational& base, int exponent) {
  Rational out(1);
  const int e = exponent < 0 ? -exponent : exponent;
  for (int t = 0; t < e; ++t) out *= base;
  return exponent < 0 ? Rational(1 / out) : out;
}

}  // namespace

RationalVector evaluate_horn(const HornPair& hp, const RationalVector& u) {
  if (u.size() != hp.B.cols()) throw Error(ErrorKind::InvalidArgument, "count vector does not match the Horn pair");
  const RationalVector forms = hp.B.cast<Rational>() * u;
  RationalVector psi(hp.B.cols());
  for (Eigen::Index k = 0; k < hp.B.cols(); ++k) {
    Rational value(hp.h(k));
    for (Eigen::Index i = 0; i < hp.B.rows(); ++i) {
      const int exponent = hp.B(i, k);
      if (exponent == 0) continue;
      if (forms(i) == 0)
        throw Error(ErrorKind::VanishingLinearForm, hp.labels[static_cast<std::size_t>(i)].str() + " vanishes at u");
      value *= integer_power(forms(i), exponent);
    }
    psi(k) = value;
  }
  return psi;
}

RationalTable evaluate_horn(const HornPair& hp, const CountTable& u) {
  if (u.pattern.cells() != hp.columns)
    throw Error(ErrorKind::InvalidArgument, "count table cells do not match the Horn pair columns");
  return RationalTable{u.pattern, evaluate_horn(hp, u.values), std::nullopt};
}

HornPair restrict_horn(const HornPair& hp, const Pattern& s, std::vector<int> rows, std::vector<int> cols) {
  if (s.cells() != hp.columns) throw Error(ErrorKind::InvalidArgument, "pattern does not match the Horn pair columns");
  const auto sub = induced_subpattern(s, std::move(rows), std::move(cols));
  HornPair out;
  out.labels = hp.labels;
  out.columns = sub.pattern.cells();
  out.B.resize(hp.B.rows(), static_cast<Eigen::Index>(sub.cells.size()));
  out.h.resize(static_cast<Eigen::Index>(sub.cells.size()));
  for (std::size_t k = 0; k < sub.cells.size(); ++k) {
    const auto parent = static_cast<Eigen::Index>(sub.cells[k]);
    out.B.col(static_cast<Eigen::Index>(k)) = hp.B.col(parent);
    out.h(static_cast<Eigen::Index>(k)) = hp.h(parent);
  }
  out.inert.resize(static_cast<std::size_t>(out.B.rows()));
  for (Eigen::Index i = 0; i < out.B.rows(); ++i)
    out.inert[static_cast<std::size_t>(i)] = (out.B.row(i).array() == 0).all();
  return out;
}

}  // namespace quasimle
