#include "quasimle/pattern.hpp"

#include <algorithm>
#include <numeric>

#include "quasimle/error.hpp"

namespace quasimle {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::RaggedGrid: return "RaggedGrid";
    case ErrorKind::EmptyRowOrColumn: return "EmptyRowOrColumn";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::CellNotInSupport: return "CellNotInSupport";
    case ErrorKind::EmptyBlock: return "EmptyBlock";
    case ErrorKind::NotDSFree: return "NotDSFree";
    case ErrorKind::NotDoublyChordalBipartite: return "NotDoublyChordalBipartite";
    case ErrorKind::ZeroDenominatorFactor: return "ZeroDenominatorFactor";
    case ErrorKind::VanishingLinearForm: return "VanishingLinearForm";
    case ErrorKind::WrongPattern: return "WrongPattern";
    case ErrorKind::DegenerateElimination: return "DegenerateElimination";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty number");
  bool negative = false;
  std::string_view body = s;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational q;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw Error(ErrorKind::ParseError, "bad rational '" + std::string(s) + "'");
    Rational d{std::string(den)};
    if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(s) + "'");
    q = Rational{std::string(num)} / d;
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto ip = body.substr(0, dot);
    auto fp = body.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
      throw Error(ErrorKind::ParseError, "bad decimal '" + std::string(s) + "'");
    std::string digits = std::string(ip) + std::string(fp);
    std::string scale = "1" + std::string(fp.size(), '0');
    q = Rational{digits} / Rational{scale};
  } else {
    if (!all_digits(body)) throw Error(ErrorKind::ParseError, "bad number '" + std::string(s) + "'");
    q = Rational{std::string(body)};
  }
  return negative ? Rational(-q) : q;
}

std::string to_string(CellIndex c) {
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

Pattern::Pattern(int rows, int cols, std::vector<CellIndex> cells) : m_(rows), n_(cols), cells_(std::move(cells)) {
  if (m_ <= 0 || n_ <= 0) throw Error(ErrorKind::EmptyInput, "pattern needs at least one row and one column");
  std::sort(cells_.begin(), cells_.end());
  if (std::adjacent_find(cells_.begin(), cells_.end()) != cells_.end())
    throw Error(ErrorKind::InvalidArgument, "duplicate cell in support");
  lookup_.assign(static_cast<std::size_t>(m_) * static_cast<std::size_t>(n_), -1);
  row_cols_.assign(static_cast<std::size_t>(m_), {});
  col_rows_.assign(static_cast<std::size_t>(n_), {});
  for (std::size_t k = 0; k < cells_.size(); ++k) {
    const auto& c = cells_[k];
    if (c.row < 1 || c.row > m_ || c.col < 1 || c.col > n_)
      throw Error(ErrorKind::InvalidArgument, "cell " + to_string(c) + " outside " + std::to_string(m_) + "x" +
                                                  std::to_string(n_));
    lookup_[static_cast<std::size_t>((c.row - 1) * n_ + (c.col - 1))] = static_cast<int>(k);
    row_cols_[static_cast<std::size_t>(c.row - 1)].push_back(c.col);
    col_rows_[static_cast<std::size_t>(c.col - 1)].push_back(c.row);
  }
  for (int i = 0; i < m_; ++i)
    if (row_cols_[static_cast<std::size_t>(i)].empty())
      throw Error(ErrorKind::EmptyRowOrColumn, "row " + std::to_string(i + 1) + " has no support cell");
  for (int j = 0; j < n_; ++j) {
    auto& rows_of_col = col_rows_[static_cast<std::size_t>(j)];
    if (rows_of_col.empty())
      throw Error(ErrorKind::EmptyRowOrColumn, "column " + std::to_string(j + 1) + " has no support cell");
    std::sort(rows_of_col.begin(), rows_of_col.end());
  }
}

bool Pattern::contains(int row, int col) const noexcept {
  if (row < 1 || row > m_ || col < 1 || col > n_) return false;
  return lookup_[static_cast<std::size_t>((row - 1) * n_ + (col - 1))] >= 0;
}

std::optional<std::size_t> Pattern::find(CellIndex c) const noexcept {
  if (!contains(c)) return std::nullopt;
  return static_cast<std::size_t>(lookup_[static_cast<std::size_t>((c.row - 1) * n_ + (c.col - 1))]);
}

std::size_t Pattern::index(CellIndex c) const {
  auto k = find(c);
  if (!k) throw Error(ErrorKind::CellNotInSupport, to_string(c));
  return *k;
}

Pattern parse_pattern(std::string_view text) {
  std::vector<std::string> grid;
  for (auto raw : split_lines(text)) {
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::string row;
    for (char ch : line) {
      if (ch == ' ' || ch == '\t') continue;
      if (ch != '*' && ch != '0' && ch != '.')
        throw Error(ErrorKind::ParseError, std::string("unexpected character '") + ch + "' in pattern");
      row.push_back(ch);
    }
    grid.push_back(std::move(row));
  }
  if (grid.empty()) throw Error(ErrorKind::EmptyInput, "pattern text has no rows");
  const auto width = grid.front().size();
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (grid[i].size() != width)
      throw Error(ErrorKind::RaggedGrid, "row " + std::to_string(i + 1) + " has " + std::to_string(grid[i].size()) +
                                             " entries, expected " + std::to_string(width));
  std::vector<CellIndex> cells;
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = 0; j < width; ++j)
      if (grid[i][j] == '*') cells.push_back({static_cast<int>(i + 1), static_cast<int>(j + 1)});
  return Pattern(static_cast<int>(grid.size()), static_cast<int>(width), std::move(cells));
}

std::string render_pattern(const Pattern& s) {
  std::string out;
  for (int i = 1; i <= s.rows(); ++i) {
    for (int j = 1; j <= s.cols(); ++j) out.push_back(s.contains(i, j) ? '*' : '0');
    out.push_back('\n');
  }
  return out;
}

Pattern full_pattern(int rows, int cols) {
  std::vector<CellIndex> cells;
  for (int i = 1; i <= rows; ++i)
    for (int j = 1; j <= cols; ++j) cells.push_back({i, j});
  return Pattern(rows, cols, std::move(cells));
}

Pattern cycle_pattern(int k) {
  if (k < 2) throw Error(ErrorKind::InvalidArgument, "cycle half-length must be at least 2");
  std::vector<CellIndex> cells;
  for (int i = 1; i <= k; ++i) cells.push_back({i, i});
  for (int i = 1; i < k; ++i) cells.push_back({i, i + 1});
  cells.push_back({k, 1});
  return Pattern(k, k, std::move(cells));
}

Pattern double_square_pattern() {
  return Pattern(3, 3, {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {2, 3}, {3, 2}, {3, 3}});
}

Eigen::MatrixXi design_matrix(const Pattern& s) {
  Eigen::MatrixXi a = Eigen::MatrixXi::Zero(s.rows() + s.cols(), static_cast<Eigen::Index>(s.size()));
  for (std::size_t k = 0; k < s.size(); ++k) {
    const auto& c = s.cell(k);
    a(c.row - 1, static_cast<Eigen::Index>(k)) = 1;
    a(s.rows() + c.col - 1, static_cast<Eigen::Index>(k)) = 1;
  }
  return a;
}

int connected_components(const Pattern& s) {
  // union-find over rows [0,m) and columns [m,m+n)
  std::vector<int> parent(static_cast<std::size_t>(s.rows() + s.cols()));
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&parent](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  int components = s.rows() + s.cols();
  for (const auto& c : s.cells()) {
    int a = root(c.row - 1);
    int b = root(s.rows() + c.col - 1);
    if (a != b) {
      parent[static_cast<std::size_t>(a)] = b;
      --components;
    }
  }
  return components;
}

CountTable::CountTable(Pattern p, RationalVector v) : pattern(std::move(p)), values(std::move(v)) {
  if (values.size() != static_cast<Eigen::Index>(pattern.size()))
    throw Error(ErrorKind::InvalidArgument, "count vector has " + std::to_string(values.size()) +
                                                " entries, pattern has " + std::to_string(pattern.size()) + " cells");
  for (Eigen::Index k = 0; k < values.size(); ++k)
    if (values(k) < 0)
      throw Error(ErrorKind::InvalidArgument,
                  "negative count at " + to_string(pattern.cell(static_cast<std::size_t>(k))));
}

CountTable uniform_counts(const Pattern& s, const Rational& value) {
  return CountTable(s, RationalVector::Constant(static_cast<Eigen::Index>(s.size()), value));
}

Subpattern induced_subpattern(const Pattern& s, std::vector<int> rows, std::vector<int> cols) {
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  if (rows.empty() || cols.empty()) throw Error(ErrorKind::EmptyRowOrColumn, "restriction selects no rows or no columns");
  for (int i : rows)
    if (i < 1 || i > s.rows()) throw Error(ErrorKind::InvalidArgument, "row " + std::to_string(i) + " out of range");
  for (int j : cols)
    if (j < 1 || j > s.cols()) throw Error(ErrorKind::InvalidArgument, "column " + std::to_string(j) + " out of range");

  std::vector<CellIndex> cells;
  std::vector<std::size_t> parent_cells;
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b)
      if (auto k = s.find({rows[a], cols[b]})) {
        cells.push_back({static_cast<int>(a + 1), static_cast<int>(b + 1)});
        parent_cells.push_back(*k);
      }
  Pattern sub(static_cast<int>(rows.size()), static_cast<int>(cols.size()), std::move(cells));
  return Subpattern{std::move(sub), std::move(rows), std::move(cols), std::move(parent_cells)};
}

CountTable restrict_counts(const CountTable& u, const Subpattern& sub) {
  return CountTable(sub.pattern, restrict_values(sub, u.values));
}

Pattern permuted(const Pattern& s, const std::vector<int>& row_perm, const std::vector<int>& col_perm) {
  if (row_perm.size() != static_cast<std::size_t>(s.rows()) || col_perm.size() != static_cast<std::size_t>(s.cols()))
    throw Error(ErrorKind::InvalidArgument, "permutation size mismatch");
  std::vector<CellIndex> cells;
  cells.reserve(s.size());
  for (const auto& c : s.cells())
    cells.push_back({row_perm[static_cast<std::size_t>(c.row - 1)], col_perm[static_cast<std::size_t>(c.col - 1)]});
  return Pattern(s.rows(), s.cols(), std::move(cells));
}

std::vector<std::size_t> permuted_cell_map(const Pattern& s, const std::vector<int>& row_perm,
                                           const std::vector<int>& col_perm) {
  const Pattern t = permuted(s, row_perm, col_perm);
  std::vector<std::size_t> map(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    const auto& c = s.cell(k);
    map[k] = t.index({row_perm[static_cast<std::size_t>(c.row - 1)], col_perm[static_cast<std::size_t>(c.col - 1)]});
  }
  return map;
}

ParsedCounts parse_counts_csv(const Pattern& s, std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  for (auto raw : split_lines(text)) {
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      auto comma = line.find(',', start);
      fields.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) throw Error(ErrorKind::EmptyInput, "count file has no rows");
  if (rows.size() != static_cast<std::size_t>(s.rows()))
    throw Error(ErrorKind::RaggedGrid, "count file has " + std::to_string(rows.size()) + " rows, pattern has " +
                                           std::to_string(s.rows()));
  ParsedCounts out{uniform_counts(s, Rational(0)), {}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != static_cast<std::size_t>(s.cols()))
      throw Error(ErrorKind::RaggedGrid, "count row " + std::to_string(i + 1) + " has " +
                                             std::to_string(rows[i].size()) + " entries, pattern has " +
                                             std::to_string(s.cols()) + " columns");
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      const CellIndex c{static_cast<int>(i + 1), static_cast<int>(j + 1)};
      const auto& field = rows[i][j];
      if (auto k = s.find(c)) {
        if (field.empty()) throw Error(ErrorKind::ParseError, "missing count at support cell " + to_string(c));
        Rational q = parse_rational(field);
        if (q < 0) throw Error(ErrorKind::InvalidArgument, "negative count at " + to_string(c));
        out.table.values(static_cast<Eigen::Index>(*k)) = q;
      } else if (!field.empty()) {
        if (parse_rational(field) != 0)
          throw Error(ErrorKind::InvalidArgument, "nonzero count at structural zero " + to_string(c));
        out.warnings.push_back("ignoring entry at structural zero " + to_string(c));
      }
    }
  }
  return out;
}

}  // namespace quasimle
