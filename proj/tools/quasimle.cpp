#include <iostream>

#include <CLI11.hpp>

#include "quasimle/cli.hpp"
#include "quasimle/error.hpp"

int main(int argc, char** argv) {
  using namespace quasimle;
  CLI::App app{"Exact maximum likelihood for quasi-independence models"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "text";
  std::string restriction_text;
  std::string counts;
  int cycle_k = 0;

  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto* classify = app.add_subcommand("classify", "Classify the bipartite graph of a pattern");
  classify->add_option("pattern", cfg.pattern_path, "Pattern file")->required();

  auto* cliques = app.add_subcommand("cliques", "Maximal cliques, their intersections and column blocks");
  cliques->add_option("pattern", cfg.pattern_path, "Pattern file")->required();

  auto* mle = app.add_subcommand("mle", "Exact MLE by the clique formula");
  mle->add_option("pattern", cfg.pattern_path, "Pattern file")->required();
  mle->add_option("counts", counts, "Counts file (CSV or JSON)")->required();
  mle->add_flag("--factored", cfg.factored, "Print the unsimplified product form");

  auto* horn = app.add_subcommand("horn", "Horn pair (B, h)");
  horn->add_option("pattern", cfg.pattern_path, "Pattern file")->required();
  horn->add_option("counts", counts, "Evaluate the Horn map at these counts");
  horn->add_option("--restrict", restriction_text, "Induced subpattern, e.g. rows=1,2,cols=1,2,3");

  auto* verify = app.add_subcommand("verify", "Check the exact MLE against Birch conditions and IPF");
  verify->add_option("pattern", cfg.pattern_path, "Pattern file")->required();
  verify->add_option("counts", counts, "Counts file (CSV or JSON)")->required();
  verify->add_option("--tol", cfg.tolerance, "IPF margin tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--max-iter", cfg.max_iter, "IPF iteration cap")->check(CLI::PositiveNumber);
  verify->add_option("--max-gap", cfg.max_gap, "Allowed entrywise gap between IPF and the exact MLE");

  auto* mldegree = app.add_subcommand("mldegree", "Critical-equation polynomial for cycles or the double square");
  auto* cycle_opt = mldegree->add_option("--cycle", cycle_k, "Cycle half-length k");
  auto* ds_flag = mldegree->add_flag("--double-square", cfg.double_square, "Double-square pattern");
  cycle_opt->excludes(ds_flag);
  mldegree->add_option("counts", counts, "Counts file on the implied pattern")->required();

  CLI11_PARSE(app, argc, argv);

  cfg.format = format == "json" ? OutputFormat::Json : OutputFormat::Text;
  if (!counts.empty()) cfg.counts_path = counts;
  if (*cycle_opt) cfg.cycle_k = cycle_k;

  RunResult result;
  try {
    cfg.command = parse_command(app.get_subcommands().front()->get_name());
    if (!restriction_text.empty()) cfg.restriction = parse_restriction(restriction_text);
    result = run(cfg);
  } catch (const Error& e) {
    result = {1, "", std::string(e.what()) + "\n"};
  }
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}
