#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "quasimle/classify.hpp"
#include "quasimle/error.hpp"
#include "quasimle/mle.hpp"
#include "quasimle/numeric.hpp"

using namespace quasimle;

namespace {

Pattern running_example() {
  return parse_pattern(
      "**0000000\n"
      "***0000*0\n"
      "****00000\n"
      "*000*0000\n"
      "*0000**00\n"
      "0000*0000\n"
      "00000*000\n"
      "00000**0*\n");
}

Pattern three_by_three_minus_corner() { return parse_pattern("***\n***\n**0\n"); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::IoError;
}

std::multiset<std::vector<CellIndex>> factor_sets(const std::vector<LinearFactor>& fs) {
  std::multiset<std::vector<CellIndex>> out;
  for (const auto& f : fs) out.insert(f.cells);
  return out;
}

void expect_exact_mle(const CountTable& u) {
  const auto p = clique_formula_mle(u.pattern, u);
  const auto report = birch_residuals(u.pattern, u, p.values);
  EXPECT_TRUE(report.exact()) << render_pattern(u.pattern);
  EXPECT_EQ(p.sum(), Rational(1));
  for (Eigen::Index k = 0; k < p.values.size(); ++k) EXPECT_GT(p.values(k), 0);
}

}  // namespace

TEST(Mle, ThreeByThreeAllOnes) {
  const auto s = three_by_three_minus_corner();
  const auto p = clique_formula_mle(s, uniform_counts(s));
  for (Eigen::Index k = 0; k < p.values.size(); ++k) EXPECT_EQ(p.values(k), Rational(1) / 8);
  EXPECT_EQ(p(1, 3), Rational(1) / 8);
  EXPECT_EQ(p.sum(), Rational(1));
}

TEST(Mle, ThreeByThreeSymbolicEntries) {
  const auto s = three_by_three_minus_corner();
  const CliqueFormula f(s);
  const std::vector<CellIndex> row1{{1, 1}, {1, 2}, {1, 3}};
  const std::vector<CellIndex> row2{{2, 1}, {2, 2}, {2, 3}};
  const std::vector<CellIndex> col3{{1, 3}, {2, 3}};
  const std::vector<CellIndex> top{{1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2}, {2, 3}};

  const auto p13 = f.factored(s.index({1, 3}));
  EXPECT_EQ(factor_sets(p13.numerator), (std::multiset<std::vector<CellIndex>>{row1, col3}));
  EXPECT_EQ(factor_sets(p13.denominator), (std::multiset<std::vector<CellIndex>>{s.cells(), top}));
  EXPECT_EQ(render_factored(p13, s), "(u11 + u12 + u13)(u13 + u23) / (u_{++}(u11 + u12 + u13 + u21 + u22 + u23))");

  const auto p23 = f.factored(s.index({2, 3}));
  EXPECT_EQ(factor_sets(p23.numerator), (std::multiset<std::vector<CellIndex>>{row2, col3}));
  EXPECT_EQ(factor_sets(p23.denominator), (std::multiset<std::vector<CellIndex>>{s.cells(), top}));
}

TEST(Mle, ThreeByThreeSpecificCounts) {
  const auto s = three_by_three_minus_corner();
  const auto u = parse_counts_csv(s, "1,2,3\n4,5,6\n7,8,\n").table;
  const auto p = clique_formula_mle(s, u);
  // (1+2+3)(3+6) / (36 * 21)
  EXPECT_EQ(p(1, 3), Rational(6 * 9, 36 * 21));
  expect_exact_mle(u);
}

TEST(Mle, RunningExampleRandomCounts) {
  const auto s = running_example();
  std::mt19937_64 rng(oracle::test_seed());
  for (int t = 0; t < 10; ++t) {
    const auto u = oracle::random_counts(s, rng);
    expect_exact_mle(u);
  }
}

TEST(Mle, ObservedMinors) {
  EXPECT_TRUE(observed_minors(cycle_pattern(3)).empty());
  EXPECT_EQ(observed_minors(three_by_three_minus_corner()).size(), 5u);
  EXPECT_EQ(observed_minors(full_pattern(3, 4)).size(), 3u * 6u);
}

TEST(Mle, MinorResidualsDetectNonModelTables) {
  const auto s = full_pattern(2, 2);
  RationalVector p(4);
  p << Rational(1, 2), Rational(0), Rational(0), Rational(1, 2);
  const auto r = minor_residuals(s, p);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].value, Rational(1, 4));
  const auto report = birch_residuals(s, uniform_counts(s), p);
  EXPECT_FALSE(report.exact());
}

TEST(Mle, RefusesPatternsOutsideTheClass) {
  EXPECT_EQ(kind_of([] { CliqueFormula{double_square_pattern()}; }), ErrorKind::NotDoublyChordalBipartite);
  EXPECT_EQ(kind_of([] { CliqueFormula{cycle_pattern(3)}; }), ErrorKind::NotDoublyChordalBipartite);
}

TEST(Mle, ZeroDenominators) {
  const auto s = three_by_three_minus_corner();
  const CliqueFormula f(s);
  const auto zero_top = parse_counts_csv(s, "0,0,0\n0,0,0\n1,1,\n").table;
  EXPECT_EQ(kind_of([&] { f.evaluate(zero_top); }), ErrorKind::ZeroDenominatorFactor);
  const auto all_zero = uniform_counts(s, Rational(0));
  EXPECT_EQ(kind_of([&] { f.evaluate(all_zero); }), ErrorKind::ZeroDenominatorFactor);
}

TEST(Mle, ZeroCountsWithPositiveSumsMatchIpf) {
  const auto s = three_by_three_minus_corner();
  const auto u = parse_counts_csv(s, "0,2,3\n4,0,6\n7,8,\n").table;
  const auto p = clique_formula_mle(s, u);
  EXPECT_TRUE(birch_residuals(s, u, p.values).exact());
  const auto ipf = ipf_mle(s, u, 1e-12, 100000);
  ASSERT_TRUE(ipf.converged);
  EXPECT_LT((ipf.values - to_double(p.values)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Mle, DoubleEvaluationTracksRational) {
  const auto s = running_example();
  std::mt19937_64 rng(oracle::test_seed() + 1);
  const auto u = oracle::random_counts(s, rng);
  const CliqueFormula f(s);
  const auto exact = to_double(f.evaluate<Rational>(u.values));
  const auto approx = f.evaluate<double>(to_double(u.values));
  EXPECT_LT((exact - approx).cwiseAbs().maxCoeff(), 1e-14);
}

// Block sums of x_{i j0} against the brute-force right-hand side, every anchor column.
TEST(Mle, BlockSumIdentity) {
  std::mt19937_64 rng(oracle::test_seed() + 2);
  std::vector<Pattern> patterns{running_example(), three_by_three_minus_corner()};
  for (const auto& s : oracle::all_patterns(4, 4))
    if (classify(s).verdict == Verdict::DoublyChordalBipartite) patterns.push_back(s);
  for (const auto& s : patterns) {
    const auto u = oracle::random_counts(s, rng);
    const auto p = CliqueFormula(s).evaluate<Rational>(u.values);
    for (int j0 = 1; j0 <= s.cols(); ++j0)
      for (const auto& check : oracle::block_sum_checks(u, p, j0))
        ASSERT_EQ(check.lhs, check.rhs) << render_pattern(s) << "anchor " << j0 << " clique "
                                        << clique_label(check.clique);
  }
}

// Column sums of x_{i j0} equal u_{+j0} prod_{D in Max(S)} D^+.
TEST(Mle, ColumnSumIdentity) {
  const auto s = running_example();
  std::mt19937_64 rng(oracle::test_seed() + 3);
  const auto u = oracle::random_counts(s, rng);
  const auto p = clique_formula_mle(s, u).values;
  Rational all_max(1);
  for (const auto& d : oracle::max_cliques_by_row_subsets(s)) all_max *= oracle::clique_total(u, d);
  for (int j0 = 1; j0 <= s.cols(); ++j0) {
    Rational lhs(0);
    Rational u_col(0);
    for (int i : s.col_support(j0)) {
      lhs += p(static_cast<Eigen::Index>(s.index({i, j0}))) * u.total() * all_max;
      u_col += u(i, j0);
    }
    EXPECT_EQ(lhs, u_col * all_max) << "column " << j0;
  }
}

TEST(Mle, SweepOfSmallPatterns) {
  std::mt19937_64 rng(oracle::test_seed() + 4);
  int checked = 0;
  for (const auto& s : oracle::all_patterns(4, 4)) {
    if (classify(s).verdict != Verdict::DoublyChordalBipartite) continue;
    for (int t = 0; t < 3; ++t) {
      const auto u = oracle::random_counts(s, rng);
      const auto p = clique_formula_mle(s, u);
      ASSERT_TRUE(birch_residuals(s, u, p.values).exact()) << render_pattern(s);
      const auto ipf = ipf_mle(s, u, 1e-12, 100000);
      ASSERT_TRUE(ipf.converged) << render_pattern(s);
      ASSERT_LT((ipf.values - to_double(p.values)).cwiseAbs().maxCoeff(), 1e-8) << render_pattern(s);
      ++checked;
    }
  }
  EXPECT_GT(checked, 0);
}
