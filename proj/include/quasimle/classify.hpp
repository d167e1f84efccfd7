#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "quasimle/pattern.hpp"

namespace quasimle {

enum class Verdict { DoublyChordalBipartite, ChordalBipartiteOnly, NotChordalBipartite };

std::string_view verdict_name(Verdict v);

// Induced cycle r1 - c1 - r2 - c2 - ... - rk - ck - r1 of G_S, k >= 3.
// Edges are (r_t, c_t) and (r_{t+1}, c_t), with r_{k+1} = r_1.
struct CycleWitness {
  std::vector<int> rows;
  std::vector<int> cols;

  std::size_t length() const noexcept { return 2 * rows.size(); }
  std::vector<CellIndex> edges() const;
};

// Three rows and three columns whose induced 3x3 submatrix is a double square.
struct DoubleSquareWitness {
  std::array<int, 3> rows{};
  std::array<int, 3> cols{};
};

using Witness = std::variant<CycleWitness, DoubleSquareWitness>;

struct ClassificationResult {
  Verdict verdict;
  std::optional<Witness> witness;  // present iff verdict != DoublyChordalBipartite
};

// Exhaustive DFS over induced paths starting at the smallest row of the cycle.
std::optional<CycleWitness> find_chordless_cycle(const Pattern& s);

// First (lexicographic over row triples, then column triples) induced double square.
std::optional<DoubleSquareWitness> find_induced_double_square(const Pattern& s);

ClassificationResult classify(const Pattern& s);

// 7 cells, the two zeros in distinct rows and distinct columns.
bool is_double_square(const Pattern& s, const std::array<int, 3>& rows, const std::array<int, 3>& cols);

bool verify_witness(const Pattern& s, const CycleWitness& w);
bool verify_witness(const Pattern& s, const DoubleSquareWitness& w);
bool verify_witness(const Pattern& s, const Witness& w);

}  // namespace quasimle
