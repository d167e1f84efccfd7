#include "oracles.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>

namespace oracle {

std::uint64_t test_seed() {
  if (const char* env = std::getenv("QUASIMLE_SEED")) return std::strtoull(env, nullptr, 10);
  return 20260101;
}

CycleCensus cycle_census(const Pattern& s) {
  CycleCensus out;
  const int m = s.rows();
  const int n = s.cols();
  std::vector<int> rows;
  std::vector<int> cols;
  std::vector<bool> row_used(static_cast<std::size_t>(m + 1));
  std::vector<bool> col_used(static_cast<std::size_t>(n + 1));

  auto record = [&]() {
    int edges = 0;
    for (int i : rows)
      for (int j : cols) edges += s.contains(i, j) ? 1 : 0;
    const int chords = edges - 2 * static_cast<int>(rows.size());
    ++out.long_cycles;
    out.min_chords = out.min_chords < 0 ? chords : std::min(out.min_chords, chords);
  };

  std::function<void()> extend = [&]() {
    const int r = rows.back();
    for (int c = 1; c <= n; ++c) {
      if (col_used[static_cast<std::size_t>(c)] || !s.contains(r, c)) continue;
      cols.push_back(c);
      col_used[static_cast<std::size_t>(c)] = true;
      if (rows.size() >= 3 && s.contains(rows.front(), c)) record();
      for (int r2 = rows.front() + 1; r2 <= m; ++r2) {
        if (row_used[static_cast<std::size_t>(r2)] || !s.contains(r2, c)) continue;
        rows.push_back(r2);
        row_used[static_cast<std::size_t>(r2)] = true;
        extend();
        row_used[static_cast<std::size_t>(r2)] = false;
        rows.pop_back();
      }
      col_used[static_cast<std::size_t>(c)] = false;
      cols.pop_back();
    }
  };

  for (int r0 = 1; r0 <= m; ++r0) {
    rows = {r0};
    row_used[static_cast<std::size_t>(r0)] = true;
    extend();
    row_used[static_cast<std::size_t>(r0)] = false;
  }
  return out;
}

std::vector<Pattern> all_patterns(int max_m, int max_n) {
  std::vector<Pattern> out;
  for (int m = 1; m <= max_m; ++m)
    for (int n = 1; n <= max_n; ++n) {
      std::vector<int> perm(static_cast<std::size_t>(n));
      std::set<std::vector<unsigned>> seen;
      const unsigned full_row = (1u << n) - 1;
      const unsigned long total = 1ul << (m * n);
      for (unsigned long bits = 0; bits < total; ++bits) {
        std::vector<unsigned> row_masks(static_cast<std::size_t>(m));
        unsigned col_union = 0;
        bool empty_row = false;
        for (int i = 0; i < m; ++i) {
          row_masks[static_cast<std::size_t>(i)] = static_cast<unsigned>((bits >> (i * n)) & full_row);
          empty_row = empty_row || row_masks[static_cast<std::size_t>(i)] == 0;
          col_union |= row_masks[static_cast<std::size_t>(i)];
        }
        if (empty_row || col_union != full_row) continue;

        std::vector<unsigned> best;
        for (int j = 0; j < n; ++j) perm[static_cast<std::size_t>(j)] = j;
        do {
          std::vector<unsigned> form;
          for (unsigned mask : row_masks) {
            unsigned mapped = 0;
            for (int j = 0; j < n; ++j)
              if (mask & (1u << j)) mapped |= 1u << perm[static_cast<std::size_t>(j)];
            form.push_back(mapped);
          }
          std::sort(form.begin(), form.end());
          if (best.empty() || form < best) best = form;
        } while (std::next_permutation(perm.begin(), perm.end()));

        if (!seen.insert(best).second) continue;
        std::vector<quasimle::CellIndex> cells;
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < n; ++j)
            if (best[static_cast<std::size_t>(i)] & (1u << j)) cells.push_back({i + 1, j + 1});
        out.emplace_back(m, n, std::move(cells));
      }
    }
  return out;
}

std::vector<Clique> max_cliques_by_row_subsets(const Pattern& s) {
  std::vector<Clique> all;
  const int m = s.rows();
  for (unsigned long mask = 1; mask < (1ul << m); ++mask) {
    Clique c;
    for (int i = 1; i <= m; ++i)
      if (mask & (1ul << (i - 1))) c.rows.push_back(i);
    for (int j = 1; j <= s.cols(); ++j) {
      bool full = true;
      for (int i : c.rows) full = full && s.contains(i, j);
      if (full) c.cols.push_back(j);
    }
    if (!c.cols.empty()) all.push_back(std::move(c));
  }
  std::vector<Clique> out;
  for (const auto& c : all) {
    bool dominated = false;
    for (const auto& d : all)
      dominated = dominated || (d != c && std::includes(d.rows.begin(), d.rows.end(), c.rows.begin(), c.rows.end()) &&
                                std::includes(d.cols.begin(), d.cols.end(), c.cols.begin(), c.cols.end()));
    if (!dominated) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<int> meet(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  for (int x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) out.push_back(x);
  return out;
}

bool subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::all_of(a.begin(), a.end(), [&b](int x) { return std::find(b.begin(), b.end(), x) != b.end(); });
}

}  // namespace

std::vector<Clique> maximal_pairwise_intersections(const std::vector<Clique>& cliques) {
  std::set<Clique> all;
  for (std::size_t a = 0; a < cliques.size(); ++a)
    for (std::size_t b = a + 1; b < cliques.size(); ++b) {
      Clique c{meet(cliques[a].rows, cliques[b].rows), meet(cliques[a].cols, cliques[b].cols)};
      if (!c.rows.empty() && !c.cols.empty()) all.insert(c);
    }
  std::vector<Clique> out;
  for (const auto& c : all) {
    bool dominated = false;
    for (const auto& d : all) dominated = dominated || (d != c && subset(c.rows, d.rows) && subset(c.cols, d.cols));
    if (!dominated) out.push_back(c);
  }
  return out;
}

CountTable random_counts(const Pattern& s, std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  quasimle::RationalVector v(static_cast<Eigen::Index>(s.size()));
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = Rational(dist(rng));
  return CountTable(s, std::move(v));
}

Rational clique_total(const CountTable& u, const Clique& c) {
  Rational sum(0);
  for (int i : c.rows)
    for (int j : c.cols) sum += u(i, j);
  return sum;
}

std::vector<BlockSumCheck> block_sum_checks(const CountTable& u, const quasimle::RationalVector& p, int j0) {
  const Pattern& s = u.pattern;
  const auto max = max_cliques_by_row_subsets(s);
  const auto ints = maximal_pairwise_intersections(max);
  const auto anchor = s.col_support(j0);
  auto meets_anchor = [j0](const Clique& c) { return std::find(c.cols.begin(), c.cols.end(), j0) != c.cols.end(); };
  auto anchor_rows = [&anchor](const Clique& c) { return meet(c.rows, anchor); };

  Rational all_max(1);
  for (const auto& d : max) all_max *= clique_total(u, d);
  Rational u_col(0);
  for (int i : anchor) u_col += u(i, j0);

  std::vector<BlockSumCheck> out;
  for (const auto& da : max) {
    if (!meets_anchor(da)) continue;
    const auto rows_a = anchor_rows(da);
    BlockSumCheck check{da, Rational(0), u_col};
    for (int i : rows_a) check.lhs += p(static_cast<Eigen::Index>(s.index({i, j0}))) * u.total() * all_max;
    for (const auto& c : ints)
      if (meets_anchor(c) && subset(rows_a, anchor_rows(c)))
        check.rhs *= clique_total(u, c);
    for (const auto& d : max)
      if (meets_anchor(d) && subset(anchor_rows(d), rows_a)) check.rhs *= clique_total(u, d);
    for (const auto& e : max) {
      // N_{j0} cap D_a cap E is empty unless E contains j0 and shares a row of D_a.
      const bool touches = meets_anchor(e) && !meet(rows_a, e.rows).empty();
      if (!touches) check.rhs *= clique_total(u, e);
    }
    out.push_back(std::move(check));
  }
  return out;
}

namespace {

// Bivariate polynomial in (a, b), keyed by exponent pairs.
using Bivariate = std::map<std::pair<int, int>, Rational>;

Bivariate affine(const Rational& c, int a, int b) {
  Bivariate out;
  out[{0, 0}] += c;
  if (a) out[{1, 0}] += Rational(a);
  if (b) out[{0, 1}] += Rational(b);
  return out;
}

Bivariate times(const Bivariate& x, const Bivariate& y) {
  Bivariate out;
  for (const auto& [ex, cx] : x)
    for (const auto& [ey, cy] : y) out[{ex.first + ey.first, ex.second + ey.second}] += cx * cy;
  return out;
}

Bivariate minus(Bivariate x, const Bivariate& y) {
  for (const auto& [e, c] : y) x[e] -= c;
  return x;
}

// Coefficient of a^power as a polynomial in b.
Polynomial slice(const Bivariate& x, int power) {
  std::vector<Rational> coeffs;
  for (const auto& [e, c] : x)
    if (e.first == power) {
      if (coeffs.size() <= static_cast<std::size_t>(e.second)) coeffs.resize(static_cast<std::size_t>(e.second) + 1);
      coeffs[static_cast<std::size_t>(e.second)] += c;
    }
  return Polynomial(coeffs);
}

}  // namespace

Polynomial double_square_resultant(const CountTable& u) {
  // Fitted counts: u11+a, u12-a, u21-a, u22+a+b, u23-b, u32-b, u33+b.
  const auto f11 = affine(u(1, 1), 1, 0);
  const auto f12 = affine(u(1, 2), -1, 0);
  const auto f21 = affine(u(2, 1), -1, 0);
  const auto f22 = affine(u(2, 2), 1, 1);
  const auto f23 = affine(u(2, 3), 0, -1);
  const auto f32 = affine(u(3, 2), 0, -1);
  const auto f33 = affine(u(3, 3), 0, 1);
  const auto left = minus(times(f11, f22), times(f12, f21));
  const auto right = minus(times(f22, f33), times(f23, f32));
  // Both minors are linear in a once the a^2 terms cancel.
  if (!slice(left, 2).is_zero() || !slice(right, 2).is_zero()) return {};
  return slice(left, 1) * slice(right, 0) - slice(left, 0) * slice(right, 1);
}

Polynomial cycle_poly_by_symmetric_functions(int k, const CountTable& u) {
  auto elementary = [](const std::vector<Rational>& x) {
    std::vector<Rational> e(x.size() + 1, Rational(0));
    e[0] = 1;
    for (const auto& v : x)
      for (std::size_t t = e.size() - 1; t >= 1; --t) e[t] += e[t - 1] * v;
    return e;
  };
  std::vector<Rational> diag;
  std::vector<Rational> off;
  for (int i = 1; i <= k; ++i) {
    diag.push_back(u(i, i));
    off.push_back(i < k ? u(i, i + 1) : u(k, 1));
  }
  const auto ed = elementary(diag);
  const auto eo = elementary(off);
  std::vector<Rational> coeffs(static_cast<std::size_t>(k) + 1);
  for (int t = 0; t <= k; ++t) {
    const Rational sign = t % 2 == 0 ? Rational(1) : Rational(-1);
    coeffs[static_cast<std::size_t>(t)] =
        ed[static_cast<std::size_t>(k - t)] - sign * eo[static_cast<std::size_t>(k - t)];
  }
  return Polynomial(coeffs);
}

}  // namespace oracle
