#include "quasimle/classify.hpp"

#include <algorithm>
#include <set>

namespace quasimle {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::DoublyChordalBipartite: return "DoublyChordalBipartite";
    case Verdict::ChordalBipartiteOnly: return "ChordalBipartiteOnly";
    case Verdict::NotChordalBipartite: return "NotChordalBipartite";
  }
  return "Unknown";
}

std::vector<CellIndex> CycleWitness::edges() const {
  std::vector<CellIndex> out;
  const auto k = rows.size();
  for (std::size_t t = 0; t < k; ++t) {
    out.push_back({rows[t], cols[t]});
    out.push_back({rows[(t + 1) % k], cols[t]});
  }
  return out;
}

namespace {

// Vertices: rows are 0..m-1, columns are m..m+n-1.
class InducedCycleSearch {
 public:
  explicit InducedCycleSearch(const Pattern& s) : s_(s), m_(s.rows()), on_path_(static_cast<std::size_t>(s.rows() + s.cols()), false) {}

  std::optional<CycleWitness> run() {
    for (int start = 0; start < m_; ++start) {
      path_.assign(1, start);
      on_path_[static_cast<std::size_t>(start)] = true;
      bool found = extend();
      on_path_[static_cast<std::size_t>(start)] = false;
      if (found) return witness();
    }
    return std::nullopt;
  }

 private:
  bool adjacent(int a, int b) const {
    if (a >= m_) std::swap(a, b);
    if (a >= m_ || b < m_) return false;  // same side
    return s_.contains(a + 1, b - m_ + 1);
  }

  std::vector<int> neighbours(int v) const {
    std::vector<int> out;
    if (v < m_) {
      for (int j : s_.row_support(v + 1)) out.push_back(m_ + j - 1);
    } else {
      for (int i : s_.col_support(v - m_ + 1)) out.push_back(i - 1);
    }
    return out;
  }

  bool extend() {
    const int last = path_.back();
    const auto k = path_.size() - 1;
    for (int w : neighbours(last)) {
      if (on_path_[static_cast<std::size_t>(w)]) continue;
      if (w < m_ && w < path_.front()) continue;  // start is the smallest row on the cycle
      bool chord = false;
      for (std::size_t t = 1; t + 1 <= k; ++t)
        if (adjacent(w, path_[t])) {
          chord = true;
          break;
        }
      if (chord) continue;
      if (k >= 2 && adjacent(w, path_.front())) {
        if (path_.size() + 1 >= 6) {
          path_.push_back(w);
          return true;
        }
        continue;
      }
      path_.push_back(w);
      on_path_[static_cast<std::size_t>(w)] = true;
      if (extend()) return true;
      on_path_[static_cast<std::size_t>(w)] = false;
      path_.pop_back();
    }
    return false;
  }

  CycleWitness witness() const {
    CycleWitness w;
    for (std::size_t t = 0; t < path_.size(); ++t) {
      if (t % 2 == 0)
        w.rows.push_back(path_[t] + 1);
      else
        w.cols.push_back(path_[t] - m_ + 1);
    }
    return w;
  }

  const Pattern& s_;
  int m_;
  std::vector<bool> on_path_;
  std::vector<int> path_;
};

}  // namespace

std::optional<CycleWitness> find_chordless_cycle(const Pattern& s) { return InducedCycleSearch(s).run(); }

bool is_double_square(const Pattern& s, const std::array<int, 3>& rows, const std::array<int, 3>& cols) {
  int count = 0;
  std::set<int> zero_rows;
  std::set<int> zero_cols;
  for (int i : rows)
    for (int j : cols) {
      if (s.contains(i, j)) {
        ++count;
      } else {
        zero_rows.insert(i);
        zero_cols.insert(j);
      }
    }
  return count == 7 && zero_rows.size() == 2 && zero_cols.size() == 2;
}

std::optional<DoubleSquareWitness> find_induced_double_square(const Pattern& s) {
  const int m = s.rows();
  const int n = s.cols();
  std::vector<int> mask(static_cast<std::size_t>(n));
  for (int i1 = 1; i1 <= m; ++i1)
    for (int i2 = i1 + 1; i2 <= m; ++i2)
      for (int i3 = i2 + 1; i3 <= m; ++i3) {
        bool has_full = false;
        for (int j = 1; j <= n; ++j) {
          int bits = (s.contains(i1, j) ? 1 : 0) | (s.contains(i2, j) ? 2 : 0) | (s.contains(i3, j) ? 4 : 0);
          mask[static_cast<std::size_t>(j - 1)] = bits;
          has_full = has_full || bits == 7;
        }
        if (!has_full) continue;
        auto weight2 = [](int b) { return b == 3 || b == 5 || b == 6; };
        for (int j1 = 1; j1 <= n; ++j1)
          for (int j2 = j1 + 1; j2 <= n; ++j2)
            for (int j3 = j2 + 1; j3 <= n; ++j3) {
              std::array<int, 3> b{mask[static_cast<std::size_t>(j1 - 1)], mask[static_cast<std::size_t>(j2 - 1)],
                                   mask[static_cast<std::size_t>(j3 - 1)]};
              std::sort(b.begin(), b.end());
              if (b[2] == 7 && weight2(b[0]) && weight2(b[1]) && b[0] != b[1])
                return DoubleSquareWitness{{i1, i2, i3}, {j1, j2, j3}};
            }
      }
  return std::nullopt;
}

ClassificationResult classify(const Pattern& s) {
  if (auto cycle = find_chordless_cycle(s)) return {Verdict::NotChordalBipartite, Witness{*cycle}};
  if (auto ds = find_induced_double_square(s)) return {Verdict::ChordalBipartiteOnly, Witness{*ds}};
  return {Verdict::DoublyChordalBipartite, std::nullopt};
}

bool verify_witness(const Pattern& s, const CycleWitness& w) {
  const auto k = w.rows.size();
  if (k < 3 || w.cols.size() != k) return false;
  std::set<int> rs(w.rows.begin(), w.rows.end());
  std::set<int> cs(w.cols.begin(), w.cols.end());
  if (rs.size() != k || cs.size() != k) return false;
  // The induced subgraph on the cycle's vertices must have exactly the 2k cycle edges.
  std::size_t induced = 0;
  for (int i : rs)
    for (int j : cs) induced += s.contains(i, j) ? 1 : 0;
  if (induced != 2 * k) return false;
  for (const auto& e : w.edges())
    if (!s.contains(e)) return false;
  return true;
}

bool verify_witness(const Pattern& s, const DoubleSquareWitness& w) { return is_double_square(s, w.rows, w.cols); }

bool verify_witness(const Pattern& s, const Witness& w) {
  return std::visit([&s](const auto& x) { return verify_witness(s, x); }, w);
}

}  // namespace quasimle
