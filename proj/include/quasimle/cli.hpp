#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "quasimle/classify.hpp"
#include "quasimle/pattern.hpp"

namespace quasimle {

enum class Command { Classify, Cliques, Mle, Horn, Verify, MlDegree };
enum class OutputFormat { Text, Json };

std::string_view command_name(Command c);
// Throws Error(InvalidArgument).
Command parse_command(std::string_view name);

struct Restriction {
  std::vector<int> rows;
  std::vector<int> cols;
};

// "rows=1,2,cols=1,2,3"; ';' and spaces also separate the two lists.
// Throws Error(ParseError).
Restriction parse_restriction(std::string_view text);

struct RunConfig {
  Command command = Command::Classify;
  std::string pattern_path;
  std::optional<std::string> counts_path;
  OutputFormat format = OutputFormat::Text;
  bool factored = false;
  double tolerance = 1e-12;
  int max_iter = 100000;
  double max_gap = 1e-8;
  std::optional<Restriction> restriction;
  std::optional<int> cycle_k;  // mldegree --cycle K
  bool double_square = false;  // mldegree --double-square
};

// exit_code: 0 success, 1 I/O or validation failure, 2 the pattern is not
// doubly chordal bipartite (mle, horn, verify), with the witness in `out`.
struct RunResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

RunResult run(const RunConfig& config);

// A file starting with '{' is read as JSON, anything else as a grid or CSV.
Pattern read_pattern_file(const std::string& path);
CountTable read_counts_file(const Pattern& s, const std::string& path, std::vector<std::string>* warnings = nullptr);

// {"m": 3, "n": 3, "support": [[1,1], ...]}
nlohmann::json pattern_to_json(const Pattern& s);
Pattern pattern_from_json(const nlohmann::json& j);
// {"m", "n", "support", "counts": {"i,j": "p/q"}}
nlohmann::json counts_to_json(const CountTable& u);
CountTable counts_from_json(const nlohmann::json& j);

nlohmann::json witness_to_json(const Witness& w);

}  // namespace quasimle
