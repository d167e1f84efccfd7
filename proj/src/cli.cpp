#include "quasimle/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "quasimle/cliques.hpp"
#include "quasimle/error.hpp"
#include "quasimle/horn.hpp"
#include "quasimle/mle.hpp"
#include "quasimle/numeric.hpp"

namespace quasimle {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool looks_like_json(std::string_view text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string_view::npos && text[pos] == '{';
}

json parse_json(const std::string& text, const std::string& path) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

std::string join(const std::vector<int>& v, const char* sep = ",") {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? sep : "") + std::to_string(v[k]);
  return out;
}

std::string cell_key(CellIndex c) { return std::to_string(c.row) + "," + std::to_string(c.col); }

std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

json clique_json(const Clique& c) { return {{"rows", c.rows}, {"cols", c.cols}, {"label", clique_label(c)}}; }

json cliques_json(const std::vector<Clique>& cs) {
  json out = json::array();
  for (const auto& c : cs) out.push_back(clique_json(c));
  return out;
}

std::string labels(const std::vector<Clique>& cs) {
  std::string out;
  for (std::size_t k = 0; k < cs.size(); ++k) out += (k ? " " : "") + clique_label(cs[k]);
  return out.empty() ? "-" : out;
}

std::string witness_text(const Witness& w) {
  if (const auto* c = std::get_if<CycleWitness>(&w)) {
    std::string out = "chordless cycle of length " + std::to_string(c->length()) + ":";
    for (std::size_t t = 0; t < c->rows.size(); ++t)
      out += " r" + std::to_string(c->rows[t]) + " c" + std::to_string(c->cols[t]);
    return out + " r" + std::to_string(c->rows.front());
  }
  const auto& d = std::get<DoubleSquareWitness>(w);
  return "double square on rows {" + join({d.rows.begin(), d.rows.end()}) + "} cols {" +
         join({d.cols.begin(), d.cols.end()}) + "}";
}

struct Output {
  explicit Output(OutputFormat f) : format(f) {}

  OutputFormat format;
  json doc = json::object();
  std::ostringstream text;

  std::string str() const { return format == OutputFormat::Json ? doc.dump(2) + "\n" : text.str(); }
};

void put_classification(Output& o, const ClassificationResult& r) {
  o.doc["verdict"] = verdict_name(r.verdict);
  o.doc["witness"] = r.witness ? witness_to_json(*r.witness) : json(nullptr);
  o.text << "verdict: " << verdict_name(r.verdict) << "\n";
  if (r.witness) o.text << "witness: " << witness_text(*r.witness) << "\n";
}

// Classification gate shared by the commands that need a rational MLE.
std::optional<RunResult> refuse_unless_dcb(const Pattern& s, OutputFormat format) {
  const auto r = classify(s);
  if (r.verdict == Verdict::DoublyChordalBipartite) return std::nullopt;
  Output o(format);
  o.doc["pattern"] = pattern_to_json(s);
  put_classification(o, r);
  const Error e(ErrorKind::NotDoublyChordalBipartite, std::string(verdict_name(r.verdict)));
  o.doc["error"] = {{"kind", error_name(e.kind())}, {"message", e.what()}};
  return RunResult{2, o.str(), std::string(e.what()) + "\n"};
}

CountTable load_counts(const Pattern& s, const RunConfig& cfg, std::vector<std::string>& warnings) {
  if (!cfg.counts_path) throw Error(ErrorKind::InvalidArgument, "a counts file is required");
  return read_counts_file(s, *cfg.counts_path, &warnings);
}

void put_warnings(Output& o, const std::vector<std::string>& warnings) {
  if (warnings.empty()) return;
  o.doc["warnings"] = warnings;
  for (const auto& w : warnings) o.text << "warning: " << w << "\n";
}

RunResult run_classify(const RunConfig& cfg) {
  const auto s = read_pattern_file(cfg.pattern_path);
  Output o(cfg.format);
  o.doc["pattern"] = pattern_to_json(s);
  put_classification(o, classify(s));
  return {0, o.str(), ""};
}

RunResult run_cliques(const RunConfig& cfg) {
  const auto s = read_pattern_file(cfg.pattern_path);
  const auto max = max_cliques(s);
  const auto ints = maximal_intersections(max.cliques);
  Output o(cfg.format);
  o.doc["pattern"] = pattern_to_json(s);
  o.doc["method"] = max.method == CliqueMethod::Blocks ? "blocks" : "bruteforce";
  o.doc["ds_free"] = max.method == CliqueMethod::Blocks;
  o.doc["max"] = cliques_json(max.cliques);
  o.doc["int"] = cliques_json(ints);
  o.text << "method: " << (max.method == CliqueMethod::Blocks ? "blocks" : "bruteforce") << "\n";
  o.text << "Max(S) (" << max.cliques.size() << "):\n";
  for (const auto& c : max.cliques) o.text << "  " << clique_label(c) << "\n";
  o.text << "Int(S) (" << ints.size() << "):\n";
  for (const auto& c : ints) o.text << "  " << clique_label(c) << "\n";

  json cells = json::array();
  o.text << "per cell:\n";
  for (const auto& cell : s.cells()) {
    const auto m = max_of(s, max.cliques, cell);
    const auto i = maximal_intersections(m);
    cells.push_back({{"cell", {cell.row, cell.col}}, {"max", cliques_json(m)}, {"int", cliques_json(i)}});
    o.text << "  " << to_string(cell) << "  Max: " << labels(m) << "  Int: " << labels(i) << "\n";
  }
  o.doc["cells"] = cells;

  if (max.method == CliqueMethod::Blocks) {
    json blocks = json::array();
    o.text << "blocks:\n";
    for (int j = 1; j <= s.cols(); ++j) {
      const auto dec = blocks_for_column(s, j);
      json parts = json::array();
      o.text << "  column " << j << ":";
      for (std::size_t p = 0; p < dec.parts.size(); ++p) {
        const auto& part = dec.parts[p];
        json entry = {{"cols", part.cols}, {"rows", part.rows}};
        entry["clique"] = part.empty() ? json(nullptr) : clique_json(induced_clique(s, dec, p));
        parts.push_back(entry);
        o.text << " T={" << join(part.cols) << "} B-rows={" << join(part.rows) << "}";
      }
      o.text << "\n";
      blocks.push_back({{"anchor", j}, {"parts", parts}});
    }
    o.doc["blocks"] = blocks;
  }
  return {0, o.str(), ""};
}

RunResult run_mle(const RunConfig& cfg) {
  const auto s = read_pattern_file(cfg.pattern_path);
  if (!cfg.counts_path) throw Error(ErrorKind::InvalidArgument, "a counts file is required");
  if (auto refused = refuse_unless_dcb(s, cfg.format)) return *refused;
  std::vector<std::string> warnings;
  const auto u = load_counts(s, cfg, warnings);
  const CliqueFormula formula(s);
  const auto p = formula.evaluate(u);
  Output o(cfg.format);
  o.doc["pattern"] = pattern_to_json(s);
  o.doc["counts"] = counts_to_json(u)["counts"];
  json values = json::object();
  json factored = json::object();
  for (std::size_t k = 0; k < s.size(); ++k) {
    const auto& c = s.cell(k);
    const auto& q = p.values(static_cast<Eigen::Index>(k));
    values[cell_key(c)] = to_string(q);
    o.text << "p" << to_string(c) << " = " << to_string(q);
    if (cfg.factored) {
      const auto f = render_factored((*p.symbolic)[k], s);
      factored[cell_key(c)] = f;
      o.text << " = " << f;
    }
    o.text << "\n";
  }
  o.doc["mle"] = values;
  if (cfg.factored) o.doc["factored"] = factored;
  o.doc["sum"] = to_string(p.sum());
  o.text << "sum = " << to_string(p.sum()) << "\n";
  put_warnings(o, warnings);
  return {0, o.str(), ""};
}

RunResult run_horn(const RunConfig& cfg) {
  const auto s = read_pattern_file(cfg.pattern_path);
  if (auto refused = refuse_unless_dcb(s, cfg.format)) return *refused;
  auto hp = build_horn_pair(s);
  std::optional<Subpattern> sub;
  if (cfg.restriction) {
    hp = restrict_horn(hp, s, cfg.restriction->rows, cfg.restriction->cols);
    sub = induced_subpattern(s, cfg.restriction->rows, cfg.restriction->cols);
  }
  const Pattern& target = sub ? sub->pattern : s;

  Output o(cfg.format);
  o.doc["pattern"] = pattern_to_json(s);
  if (sub) {
    o.doc["restriction"] = {{"rows", sub->rows}, {"cols", sub->cols}, {"pattern", pattern_to_json(sub->pattern)}};
    o.text << "restricted to rows {" << join(sub->rows) << "} cols {" << join(sub->cols) << "}\n";
  }
  json columns = json::array();
  o.text << "row";
  for (const auto& c : hp.columns) {
    columns.push_back({c.row, c.col});
    o.text << "\t" << to_string(c);
  }
  o.text << "\n";
  json rows = json::array();
  for (Eigen::Index i = 0; i < hp.B.rows(); ++i) {
    const auto& label = hp.labels[static_cast<std::size_t>(i)];
    std::vector<int> entries(static_cast<std::size_t>(hp.B.cols()));
    for (Eigen::Index k = 0; k < hp.B.cols(); ++k) entries[static_cast<std::size_t>(k)] = hp.B(i, k);
    const bool inert = hp.inert[static_cast<std::size_t>(i)];
    rows.push_back({{"label", label.str()}, {"entries", entries}, {"inert", inert}});
    o.text << label.str() << (inert ? " [inert]" : "");
    for (int e : entries) o.text << "\t" << e;
    o.text << "\n";
  }
  std::vector<int> h(static_cast<std::size_t>(hp.h.size()));
  o.text << "h";
  for (Eigen::Index k = 0; k < hp.h.size(); ++k) {
    h[static_cast<std::size_t>(k)] = hp.h(k);
    o.text << "\t" << hp.h(k);
  }
  o.text << "\n";
  o.doc["columns"] = columns;
  o.doc["B"] = rows;
  o.doc["h"] = h;

  if (cfg.counts_path) {
    std::vector<std::string> warnings;
    const auto u = read_counts_file(target, *cfg.counts_path, &warnings);
    const auto psi = evaluate_horn(hp, u);
    json values = json::object();
    for (std::size_t k = 0; k < target.size(); ++k) {
      const auto& q = psi.values(static_cast<Eigen::Index>(k));
      values[cell_key(target.cell(k))] = to_string(q);
      o.text << "psi" << to_string(target.cell(k)) << " = " << to_string(q) << "\n";
    }
    o.doc["psi"] = values;
    put_warnings(o, warnings);
  }
  return {0, o.str(), ""};
}

RunResult run_verify(const RunConfig& cfg) {
  const auto s = read_pattern_file(cfg.pattern_path);
  if (!cfg.counts_path) throw Error(ErrorKind::InvalidArgument, "a counts file is required");
  if (auto refused = refuse_unless_dcb(s, cfg.format)) return *refused;
  std::vector<std::string> warnings;
  const auto u = load_counts(s, cfg, warnings);
  const auto p = CliqueFormula(s).evaluate<Rational>(u.values);
  const auto report = birch_residuals(s, u, p);
  const auto ipf = ipf_mle(s, u, cfg.tolerance, cfg.max_iter);
  const double gap = (ipf.values - to_double(p)).cwiseAbs().maxCoeff();
  warnings.insert(warnings.end(), ipf.warnings.begin(), ipf.warnings.end());

  bool marginals_zero = true;
  for (Eigen::Index k = 0; k < report.marginal_residuals.size(); ++k)
    marginals_zero = marginals_zero && report.marginal_residuals(k) == 0;
  const bool minors_zero = std::all_of(report.minor_residuals.begin(), report.minor_residuals.end(),
                                       [](const MinorResidual& r) { return r.value == 0; });
  const bool ok = report.exact() && ipf.converged && gap <= cfg.max_gap;

  Output o(cfg.format);
  o.doc["pattern"] = pattern_to_json(s);
  o.doc["birch_residuals_zero"] = marginals_zero;
  o.doc["normalization_exact"] = report.normalization_residual == 0;
  o.doc["minor_count"] = report.minor_residuals.size();
  o.doc["minor_residuals_zero"] = minors_zero;
  o.doc["ipf"] = {{"iterations", ipf.iterations},
                  {"converged", ipf.converged},
                  {"max_marginal_gap", ipf.max_marginal_gap},
                  {"tolerance", cfg.tolerance}};
  o.doc["max_gap"] = gap;
  o.doc["max_gap_allowed"] = cfg.max_gap;
  o.doc["ok"] = ok;
  o.text << "birch residuals: " << (marginals_zero ? "exactly zero" : "NONZERO") << "\n";
  o.text << "sum of p: " << (report.normalization_residual == 0 ? "exactly 1" : "NOT 1") << "\n";
  o.text << "2x2 minors: " << report.minor_residuals.size() << ", " << (minors_zero ? "all vanish" : "NONZERO")
         << "\n";
  o.text << "ipf: " << ipf.iterations << " iterations, margin gap " << format_double(ipf.max_marginal_gap)
         << (ipf.converged ? "" : " (not converged)") << "\n";
  o.text << "max |ipf - exact|: " << format_double(gap) << "\n";
  o.text << (ok ? "OK" : "FAILED") << "\n";
  put_warnings(o, warnings);
  std::string err;
  if (!ipf.converged) err = std::string(error_name(ErrorKind::NoConvergence)) + ": ipf did not reach the tolerance\n";
  return {ok ? 0 : 1, o.str(), err};
}

json polynomial_json(const Polynomial& p) {
  json coeffs = json::array();
  for (const auto& c : p.coefficients()) coeffs.push_back(to_string(c));
  return {{"coefficients", coeffs}, {"degree", p.degree()}};
}

RunResult run_mldegree(const RunConfig& cfg) {
  if (cfg.cycle_k.has_value() == cfg.double_square)
    throw Error(ErrorKind::InvalidArgument, "mldegree needs exactly one of --cycle K or --double-square");
  std::vector<std::string> warnings;
  Output o(cfg.format);
  if (cfg.cycle_k) {
    const int k = *cfg.cycle_k;
    if (k < 2) throw Error(ErrorKind::InvalidArgument, "cycle half-length must be at least 2");
    const auto s = cycle_pattern(k);
    const auto u = load_counts(s, cfg, warnings);
    const auto poly = cycle_ml_polynomial(k, u);
    o.doc["family"] = "cycle";
    o.doc["k"] = k;
    o.doc["polynomial"] = polynomial_json(poly);
    o.doc["polynomial"]["text"] = poly.str("alpha");
    o.text << "cycle k = " << k << "\n";
    o.text << "polynomial: " << poly.str("alpha") << "\n";
    o.text << "degree: " << poly.degree() << "\n";
  } else {
    const auto s = double_square_pattern();
    const auto u = load_counts(s, cfg, warnings);
    const auto cert = double_square_certificate(u);
    const auto& sys = cert.system;
    o.doc["family"] = "double_square";
    o.doc["system"] = {{"c", {to_string(sys.c1), to_string(sys.c2), to_string(sys.c3)}},
                       {"d", {to_string(sys.d1), to_string(sys.d2), to_string(sys.d3)}}};
    o.doc["polynomial"] = polynomial_json(cert.poly);
    o.doc["polynomial"]["text"] = cert.poly.str("beta");
    o.doc["monic"] = cert.poly.monic().str("beta");
    o.doc["discriminant"] = to_string(cert.discriminant);
    o.text << "c = (" << to_string(sys.c1) << ", " << to_string(sys.c2) << ", " << to_string(sys.c3) << ")\n";
    o.text << "d = (" << to_string(sys.d1) << ", " << to_string(sys.d2) << ", " << to_string(sys.d3) << ")\n";
    o.text << "polynomial: " << cert.poly.str("beta") << "\n";
    o.text << "monic: " << cert.poly.monic().str("beta") << "\n";
    o.text << "degree: " << cert.poly.degree() << "\n";
    o.text << "discriminant: " << to_string(cert.discriminant) << "\n";
    json points = json::array();
    for (std::size_t t = 0; t < cert.points.size(); ++t) {
      const auto& pt = cert.points[t];
      std::vector<double> table(pt.table.data(), pt.table.data() + pt.table.size());
      points.push_back({{"alpha", pt.alpha}, {"beta", pt.beta}, {"table", table}, {"positive", pt.positive}});
      o.text << "critical point " << t + 1 << ": beta = " << format_double(pt.beta)
             << ", alpha = " << format_double(pt.alpha) << (pt.positive ? " (positive)" : "") << "\n";
    }
    o.doc["critical_points"] = points;
    o.doc["selected"] = cert.selected ? json(*cert.selected) : json(nullptr);
  }
  put_warnings(o, warnings);
  return {0, o.str(), ""};
}

}  // namespace

std::string_view command_name(Command c) {
  switch (c) {
    case Command::Classify: return "classify";
    case Command::Cliques: return "cliques";
    case Command::Mle: return "mle";
    case Command::Horn: return "horn";
    case Command::Verify: return "verify";
    case Command::MlDegree: return "mldegree";
  }
  return "?";
}

Command parse_command(std::string_view name) {
  for (auto c : {Command::Classify, Command::Cliques, Command::Mle, Command::Horn, Command::Verify, Command::MlDegree})
    if (command_name(c) == name) return c;
  throw Error(ErrorKind::InvalidArgument, "unknown command " + std::string(name));
}

Restriction parse_restriction(std::string_view text) {
  Restriction out;
  std::vector<int>* target = nullptr;
  bool seen_rows = false;
  bool seen_cols = false;
  std::string token;
  auto flush = [&]() {
    if (token.empty()) return;
    if (token.rfind("rows=", 0) == 0) {
      target = &out.rows;
      seen_rows = true;
      token.erase(0, 5);
    } else if (token.rfind("cols=", 0) == 0) {
      target = &out.cols;
      seen_cols = true;
      token.erase(0, 5);
    }
    if (!target) throw Error(ErrorKind::ParseError, "restriction must start with rows= or cols=");
    if (!token.empty()) {
      std::size_t used = 0;
      int value = 0;
      try {
        value = std::stoi(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) throw Error(ErrorKind::ParseError, "bad index '" + token + "' in restriction");
      target->push_back(value);
    }
    token.clear();
  };
  for (char ch : text) {
    if (ch == ',' || ch == ';' || ch == ' ') flush();
    else token += ch;
  }
  flush();
  if (!seen_rows || !seen_cols || out.rows.empty() || out.cols.empty())
    throw Error(ErrorKind::ParseError, "restriction needs nonempty rows= and cols= lists");
  return out;
}

Pattern read_pattern_file(const std::string& path) {
  const auto text = read_file(path);
  if (looks_like_json(text)) return pattern_from_json(parse_json(text, path));
  return parse_pattern(text);
}

CountTable read_counts_file(const Pattern& s, const std::string& path, std::vector<std::string>* warnings) {
  const auto text = read_file(path);
  if (looks_like_json(text)) {
    auto table = counts_from_json(parse_json(text, path));
    if (!(table.pattern == s)) throw Error(ErrorKind::InvalidArgument, path + ": counts are on a different pattern");
    return table;
  }
  auto parsed = parse_counts_csv(s, text);
  if (warnings) warnings->insert(warnings->end(), parsed.warnings.begin(), parsed.warnings.end());
  return std::move(parsed.table);
}

json pattern_to_json(const Pattern& s) {
  json support = json::array();
  for (const auto& c : s.cells()) support.push_back({c.row, c.col});
  return {{"m", s.rows()}, {"n", s.cols()}, {"support", support}};
}

Pattern pattern_from_json(const json& j) {
  try {
    std::vector<CellIndex> cells;
    for (const auto& c : j.at("support")) cells.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
    return Pattern(j.at("m").get<int>(), j.at("n").get<int>(), std::move(cells));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("pattern json: ") + e.what());
  }
}

json counts_to_json(const CountTable& u) {
  json out = pattern_to_json(u.pattern);
  json counts = json::object();
  for (std::size_t k = 0; k < u.pattern.size(); ++k)
    counts[cell_key(u.pattern.cell(k))] = to_string(u.values(static_cast<Eigen::Index>(k)));
  out["counts"] = counts;
  return out;
}

CountTable counts_from_json(const json& j) {
  auto s = pattern_from_json(j);
  RationalVector values(static_cast<Eigen::Index>(s.size()));
  try {
    const auto& counts = j.at("counts");
    for (std::size_t k = 0; k < s.size(); ++k) {
      const auto& v = counts.at(cell_key(s.cell(k)));
      values(static_cast<Eigen::Index>(k)) =
          v.is_string() ? parse_rational(v.get<std::string>()) : parse_rational(v.dump());
    }
    if (counts.size() != s.size()) throw Error(ErrorKind::ParseError, "counts json has entries outside the support");
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("counts json: ") + e.what());
  }
  return CountTable(std::move(s), std::move(values));
}

json witness_to_json(const Witness& w) {
  if (const auto* c = std::get_if<CycleWitness>(&w)) {
    json cells = json::array();
    for (const auto& e : c->edges()) cells.push_back({e.row, e.col});
    return {{"type", "cycle"}, {"length", c->length()}, {"rows", c->rows}, {"cols", c->cols}, {"cells", cells}};
  }
  const auto& d = std::get<DoubleSquareWitness>(w);
  return {{"type", "double_square"}, {"rows", d.rows}, {"cols", d.cols}};
}

RunResult run(const RunConfig& config) {
  try {
    if (config.restriction && config.command != Command::Horn)
      throw Error(ErrorKind::InvalidArgument, "--restrict is only valid for horn");
    switch (config.command) {
      case Command::Classify: return run_classify(config);
      case Command::Cliques: return run_cliques(config);
      case Command::Mle: return run_mle(config);
      case Command::Horn: return run_horn(config);
      case Command::Verify: return run_verify(config);
      case Command::MlDegree: return run_mldegree(config);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown command");
  } catch (const Error& e) {
    RunResult r{1, "", std::string(e.what()) + "\n"};
    if (config.format == OutputFormat::Json) {
      r.out = json{{"error", {{"kind", error_name(e.kind())}, {"message", e.what()}}}}.dump(2) + "\n";
    }
    return r;
  }
}

}  // namespace quasimle
