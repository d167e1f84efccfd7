#include "quasimle/cliques.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <set>

#include "quasimle/error.hpp"

namespace quasimle {

namespace {

std::vector<int> set_intersection(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool includes(const std::vector<int>& big, const std::vector<int>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

bool disjoint(const std::vector<int>& a, const std::vector<int>& b) { return set_intersection(a, b).empty(); }

void sort_unique(std::vector<Clique>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

bool Clique::contains(CellIndex c) const {
  return std::binary_search(rows.begin(), rows.end(), c.row) && std::binary_search(cols.begin(), cols.end(), c.col);
}

std::vector<CellIndex> Clique::cells() const {
  std::vector<CellIndex> out;
  out.reserve(size());
  for (int i : rows)
    for (int j : cols) out.push_back({i, j});
  return out;
}

Clique intersect(const Clique& a, const Clique& b) {
  return Clique{set_intersection(a.rows, b.rows), set_intersection(a.cols, b.cols)};
}

bool is_subclique(const Clique& a, const Clique& b) {
  if (a.empty()) return true;
  return includes(b.rows, a.rows) && includes(b.cols, a.cols);
}

bool is_clique_of(const Pattern& s, const Clique& c) {
  if (c.empty()) return false;
  for (int i : c.rows)
    for (int j : c.cols)
      if (!s.contains(i, j)) return false;
  return true;
}

std::string clique_label(const Clique& c) {
  const bool compact = std::all_of(c.rows.begin(), c.rows.end(), [](int i) { return i < 10; }) &&
                       std::all_of(c.cols.begin(), c.cols.end(), [](int j) { return j < 10; });
  std::string out = "{";
  bool first = true;
  for (const auto& cell : c.cells()) {
    if (!first) out += ", ";
    first = false;
    out += compact ? std::to_string(cell.row) + std::to_string(cell.col) : to_string(cell);
  }
  return out + "}";
}

BlockDecomposition blocks_for_column(const Pattern& s, int anchor_col) {
  if (anchor_col < 1 || anchor_col > s.cols())
    throw Error(ErrorKind::InvalidArgument, "anchor column " + std::to_string(anchor_col) + " out of range");
  BlockDecomposition dec;
  dec.anchor_col = anchor_col;
  dec.anchor_rows = s.col_support(anchor_col);

  std::map<std::vector<int>, std::size_t> part_of_key;
  auto add = [&](int j) {
    auto key = set_intersection(s.col_support(j), dec.anchor_rows);
    auto [it, inserted] = part_of_key.try_emplace(key, dec.parts.size());
    if (inserted) dec.parts.push_back(BlockPart{{}, std::move(key)});
    dec.parts[it->second].cols.push_back(j);
  };
  add(anchor_col);
  for (int j = 1; j <= s.cols(); ++j)
    if (j != anchor_col) add(j);
  for (auto& part : dec.parts) std::sort(part.cols.begin(), part.cols.end());
  return dec;
}

Clique induced_clique(const Pattern& s, const BlockDecomposition& dec, std::size_t part) {
  const auto& block = dec.parts.at(part);
  if (block.empty())
    throw Error(ErrorKind::EmptyBlock, "block " + std::to_string(part) + " of column " +
                                           std::to_string(dec.anchor_col) + " has no cells");
  Clique d{block.rows, {}};
  for (int j = 1; j <= s.cols(); ++j)
    if (includes(s.col_support(j), block.rows)) d.cols.push_back(j);
  return d;
}

std::optional<std::pair<std::size_t, std::size_t>> laminarity_violation(const BlockDecomposition& dec) {
  for (std::size_t a = 0; a < dec.parts.size(); ++a)
    for (std::size_t b = a + 1; b < dec.parts.size(); ++b) {
      const auto& ra = dec.parts[a].rows;
      const auto& rb = dec.parts[b].rows;
      if (disjoint(ra, rb)) continue;
      if (!includes(ra, rb) && !includes(rb, ra)) return std::make_pair(a, b);
    }
  return std::nullopt;
}

bool is_ds_free(const Pattern& s) {
  for (int j = 1; j <= s.cols(); ++j)
    if (laminarity_violation(blocks_for_column(s, j))) return false;
  return true;
}

MaxCliques max_cliques(const Pattern& s) {
  if (!is_ds_free(s)) return {max_cliques_bruteforce(s), CliqueMethod::BruteForce};
  MaxCliques out{{}, CliqueMethod::Blocks};
  for (int j = 1; j <= s.cols(); ++j) {
    const auto dec = blocks_for_column(s, j);
    for (std::size_t p = 0; p < dec.parts.size(); ++p)
      if (!dec.parts[p].empty()) out.cliques.push_back(induced_clique(s, dec, p));
  }
  sort_unique(out.cliques);
  return out;
}

std::vector<Clique> max_cliques_bruteforce(const Pattern& s) {
  std::set<std::vector<int>> closed;
  std::vector<std::vector<int>> frontier;
  for (int j = 1; j <= s.cols(); ++j)
    if (closed.insert(s.col_support(j)).second) frontier.push_back(s.col_support(j));
  while (!frontier.empty()) {
    auto rows = std::move(frontier.back());
    frontier.pop_back();
    for (int j = 1; j <= s.cols(); ++j) {
      auto next = set_intersection(rows, s.col_support(j));
      if (!next.empty() && closed.insert(next).second) frontier.push_back(std::move(next));
    }
  }
  std::vector<Clique> out;
  for (const auto& rows : closed) {
    Clique c{rows, {}};
    for (int j = 1; j <= s.cols(); ++j)
      if (includes(s.col_support(j), rows)) c.cols.push_back(j);
    out.push_back(std::move(c));
  }
  sort_unique(out);
  return out;
}

std::vector<Clique> maximal_intersections(const std::vector<Clique>& cliques) {
  std::vector<Clique> all;
  for (std::size_t a = 0; a < cliques.size(); ++a)
    for (std::size_t b = a + 1; b < cliques.size(); ++b) {
      auto c = intersect(cliques[a], cliques[b]);
      if (!c.empty()) all.push_back(std::move(c));
    }
  sort_unique(all);
  std::vector<Clique> out;
  for (const auto& c : all) {
    bool dominated = std::any_of(all.begin(), all.end(),
                                 [&c](const Clique& other) { return other != c && is_subclique(c, other); });
    if (!dominated) out.push_back(c);
  }
  return out;
}

std::vector<Clique> int_cliques(const Pattern& s) { return maximal_intersections(max_cliques(s).cliques); }

std::vector<Clique> max_of(const Pattern& s, const std::vector<Clique>& max, CellIndex cell) {
  if (!s.contains(cell)) throw Error(ErrorKind::CellNotInSupport, to_string(cell));
  std::vector<Clique> out;
  std::copy_if(max.begin(), max.end(), std::back_inserter(out), [cell](const Clique& d) { return d.contains(cell); });
  return out;
}

std::vector<Clique> int_of(const Pattern& s, const std::vector<Clique>& max, CellIndex cell) {
  return maximal_intersections(max_of(s, max, cell));
}

std::vector<Clique> max_of(const Pattern& s, CellIndex cell) { return max_of(s, max_cliques(s).cliques, cell); }

std::vector<Clique> int_of(const Pattern& s, CellIndex cell) { return int_of(s, max_cliques(s).cliques, cell); }

bool CliquePoset::less(std::size_t a, std::size_t b) const {
  const auto& ra = elements.at(a).rows;
  const auto& rb = elements.at(b).rows;
  return ra != rb && includes(rb, ra);
}

std::optional<std::size_t> CliquePoset::cover_of(std::size_t a) const {
  for (const auto& [lo, hi] : covers)
    if (lo == a) return hi;
  return std::nullopt;
}

std::vector<std::size_t> CliquePoset::covered_by(std::size_t b) const {
  std::vector<std::size_t> out;
  for (const auto& [lo, hi] : covers)
    if (hi == b) out.push_back(lo);
  return out;
}

CliquePoset clique_poset(const Pattern& s, int anchor_col) {
  const auto dec = blocks_for_column(s, anchor_col);
  if (auto bad = laminarity_violation(dec))
    throw Error(ErrorKind::NotDSFree, "blocks " + std::to_string(bad->first) + " and " + std::to_string(bad->second) +
                                          " of column " + std::to_string(anchor_col) + " overlap without nesting");
  CliquePoset poset;
  poset.anchor_col = anchor_col;
  for (std::size_t p = 0; p < dec.parts.size(); ++p)
    if (!dec.parts[p].empty()) {
      poset.elements.push_back(induced_clique(s, dec, p));
      poset.parts.push_back(p);
    }
  const auto count = poset.elements.size();
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = 0; b < count; ++b) {
      if (!poset.less(a, b)) continue;
      bool between = false;
      for (std::size_t c = 0; c < count && !between; ++c) between = poset.less(a, c) && poset.less(c, b);
      if (!between) poset.covers.emplace_back(a, b);
    }
  return poset;
}

std::vector<IntDivergence> int_consistency(const Pattern& s) {
  const auto max = max_cliques(s).cliques;
  const auto global = maximal_intersections(max);
  std::vector<IntDivergence> out;
  for (const auto& cell : s.cells()) {
    auto local = int_of(s, max, cell);
    std::vector<Clique> filtered;
    std::copy_if(global.begin(), global.end(), std::back_inserter(filtered),
                 [cell](const Clique& c) { return c.contains(cell); });
    if (local != filtered) out.push_back({cell, std::move(local), std::move(filtered)});
  }
  return out;
}

}  // namespace quasimle
