// treeshift — entropy toolkit for tree-shifts of finite type on d-ary trees.
//
// Subcommands
// -----------
//   entropy     full pipeline: reductions → effective spectral radii → max
//   snre        the counting system: terms, initial values, trajectories
//   reduce      enumerate reductions with their matrices and values
//   oracle      brute-force block counts, cross-checked against the recursion
//   perron      spectral analysis of one nonnegative integer matrix
//   realize     build the shift whose entropy is ln ρ(M) for a given M
//   minimality  saving symbols, full-entropy check, pattern-removal analysis
//
// Every subcommand prints one JSON report (see report.hpp) on stdout.  Exit
// codes: 0 success, 1 domain error, 2 input/usage error, 3 budget exceeded.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "report.hpp"
#include "treeshift/errors.hpp"
#include "treeshift/minimality.hpp"
#include "treeshift/realization.hpp"
#include "treeshift/snre.hpp"
#include "treeshift/tree_spec.hpp"
#include "treeshift/version.hpp"

namespace {

using namespace treeshift;
using cli::json;
using cli::ReportBuilder;

// ── input plumbing ───────────────────────────────────────────────────────────

struct Input {
  std::string text;
  std::string digest;
};

Input read_input(const std::string& path) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw_parse("cannot open input file: " + path);
    buffer << file.rdbuf();
  }
  Input input;
  input.text = buffer.str();
  input.digest = cli::fnv1a64_digest(input.text);
  return input;
}

// Parses the spec and prunes dead symbols, recording the prune as a
// diagnostic: every analysis downstream assumes a pruned spec.
TreeShiftSpec load_pruned_spec(const Input& input, ReportBuilder& report) {
  const TreeShiftSpec raw = parse_spec(input.text);
  PruneResult pruned = prune_dead_symbols(raw);
  if (pruned.changed) {
    std::string names;
    for (const auto& name : pruned.removed) {
      if (!names.empty()) names += ", ";
      names += name;
    }
    report.diagnostic("pruned-symbols",
                      "symbols with no allowed pattern were removed before analysis: " + names);
  }
  return std::move(pruned.spec);
}

IntMatrix parse_matrix(const std::string& text) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::exception& err) {
    throw_parse(std::string("matrix input is not valid JSON: ") + err.what());
  }
  if (!document.is_array() || document.empty())
    throw_parse("matrix input must be a nonempty JSON array of rows");
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& row : document) {
    if (!row.is_array()) throw_parse("matrix rows must be JSON arrays");
    std::vector<std::int64_t> cells;
    for (const auto& cell : row) {
      if (!cell.is_number_integer())
        throw_parse("matrix entries must be integers");
      cells.push_back(cell.get<std::int64_t>());
    }
    rows.push_back(std::move(cells));
  }
  return IntMatrix::from_rows(rows);
}

int default_threads() {
  if (const char* env = std::getenv("TREESHIFT_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed >= 1) return std::min(parsed, 64);
  }
  return 1;
}

// ── shared option blocks ─────────────────────────────────────────────────────

struct EntropyFlags {
  std::uint64_t cap = EntropyOptions{}.reduction_cap;
  int nmax = EntropyOptions{}.estimator_level;
  double agreement_tol = EntropyOptions{}.agreement_tol;
  std::string variant = "sum-counts";
  int threads = default_threads();
  bool witness = false;

  void attach(CLI::App& cmd) {
    cmd.add_option("--cap", cap, "largest reduction count scanned exhaustively");
    cmd.add_option("--nmax", nmax, "level for the double-log entropy estimator")
        ->check(CLI::Range(1, 100000));
    cmd.add_option("--agreement-tol", agreement_tol,
                   "tolerance for the spectral/estimator agreement flag");
    cmd.add_option("--variant", variant, "estimator variant")
        ->check(CLI::IsMember({"sum-counts", "sum-logs"}));
    cmd.add_option("--threads", threads, "workers for the exhaustive scan")
        ->check(CLI::Range(1, 64));
    cmd.add_flag("--witness", witness, "include the witness reduction in the report");
  }

  EntropyOptions options() const {
    EntropyOptions opts;
    opts.reduction_cap = cap;
    opts.estimator_level = nmax;
    opts.agreement_tol = agreement_tol;
    opts.estimator_variant =
        variant == "sum-logs" ? EstimatorVariant::SumLogs : EstimatorVariant::SumCounts;
    opts.threads = threads;
    return opts;
  }

  json echo() const {
    return json{{"cap", cap},          {"nmax", nmax},       {"agreement_tol", cli::finite(agreement_tol)},
                {"variant", variant},  {"threads", threads}, {"witness", witness}};
  }
};

void entropy_diagnostics(const EntropyReport& report, ReportBuilder& builder) {
  if (report.lower_bound_only)
    builder.diagnostic("reduction-budget-exceeded",
                       "the reduction space exceeds the scan cap; the reported entropy is a "
                       "sampled lower bound");
  if (report.rho_effective == 0.0)
    builder.diagnostic("effective-spectral-radius",
                       "no component of the witness feeds a growing count: the effective "
                       "spectral radius is 0 and the entropy is 0");
  else if (report.rho_raw > report.rho_effective + 1e-12)
    builder.diagnostic("spectral-radius-divergence",
                       "the witness matrix has a component of larger spectral radius that no "
                       "growing count feeds; the entropy uses the effective value");
}

// ── subcommands ──────────────────────────────────────────────────────────────

int run_entropy(const std::string& path, const EntropyFlags& flags, bool pretty) {
  const Input input = read_input(path);
  ReportBuilder builder("entropy", input.digest);
  builder.set_options(flags.echo());
  const TreeShiftSpec spec = load_pruned_spec(input, builder);
  const Snre snre = build_snre(spec);
  const EntropyReport report = tsft_entropy(snre, flags.options());
  entropy_diagnostics(report, builder);
  builder.set_result(cli::entropy_report_json(report, spec.alphabet(),
                                              flags.options().estimator_variant, flags.witness));
  std::cout << builder.render(pretty);
  return 0;
}

int run_snre(const std::string& path, int exact_levels, int log_levels,
             std::int64_t digit_budget, bool pretty) {
  const Input input = read_input(path);
  ReportBuilder builder("snre", input.digest);
  builder.set_options(json{{"exact_levels", exact_levels},
                           {"log_levels", log_levels},
                           {"digit_budget", digit_budget}});
  const TreeShiftSpec spec = load_pruned_spec(input, builder);
  const Snre snre = build_snre(spec);
  const Alphabet& alphabet = snre.alphabet;

  json terms = json::object();
  for (SymbolId i = 0; i < snre.symbol_count(); ++i) {
    json table = json::array();
    for (const auto& tuple : snre.terms[static_cast<std::size_t>(i)])
      table.push_back(cli::tuple_json(alphabet, tuple));
    terms[alphabet.name(i)] = std::move(table);
  }

  const IndicatorMatrix indicator = indicator_matrix(snre);
  std::uint64_t nonzeros = 0;
  for (const auto& row : indicator.row_cols) nonzeros += row.size();

  json result{{"alphabet", alphabet.names()},
              {"arity", snre.arity},
              {"initial", snre.initial},
              {"terms", std::move(terms)},
              {"indicator",
               json{{"rows", indicator.rows}, {"cols", indicator.cols}, {"nonzeros", nonzeros}}}};

  if (exact_levels > 0) {
    ExactEvalOptions opts;
    opts.digit_budget = digit_budget;
    const auto levels = evaluate_exact(snre, exact_levels, opts);
    json exact = json::array();
    for (const auto& level : levels) {
      json row = json::array();
      for (const auto& count : level) row.push_back(cli::big(count));
      exact.push_back(std::move(row));
    }
    result["exact"] = std::move(exact);
  }
  if (log_levels > 0) {
    const auto levels = evaluate_log(snre, log_levels);
    json logs = json::array();
    for (const auto& level : levels) {
      json row = json::array();
      for (double v : level) row.push_back(cli::finite(v));
      logs.push_back(std::move(row));
    }
    result["log"] = std::move(logs);
  }

  builder.set_result(std::move(result));
  std::cout << builder.render(pretty);
  return 0;
}

int run_reduce(const std::string& path, std::uint64_t limit, bool pretty) {
  const Input input = read_input(path);
  ReportBuilder builder("reduce", input.digest);
  builder.set_options(json{{"limit", limit}});
  const TreeShiftSpec spec = load_pruned_spec(input, builder);
  const Snre snre = build_snre(spec);
  const Alphabet& alphabet = snre.alphabet;

  ReductionStream stream(snre);
  json reductions = json::array();
  for (const auto& reduced : enumerate_reductions(snre, limit)) {
    const ReducedEntropy value = reduced_entropy(reduced);
    json choice = json::object();
    for (SymbolId i = 0; i < reduced.symbol_count(); ++i)
      choice[alphabet.name(i)] = cli::tuple_json(alphabet, reduced.choice[static_cast<std::size_t>(i)]);
    json components = json::array();
    for (const auto& cv : value.components) {
      json vertices = json::array();
      for (int v : cv.vertices) vertices.push_back(alphabet.name(v));
      components.push_back(json{{"vertices", std::move(vertices)},
                                {"rho", cli::finite(cv.rho)},
                                {"nontrivial", cv.nontrivial},
                                {"qualifying", cv.qualifying}});
    }
    reductions.push_back(json{{"choice", std::move(choice)},
                              {"matrix", cli::matrix_json(value.matrix)},
                              {"value", cli::finite(value.value)},
                              {"rho_effective", cli::finite(value.rho_effective)},
                              {"components", std::move(components)}});
  }
  if (stream.total() > static_cast<unsigned long>(limit))
    builder.diagnostic("reduction-budget-exceeded",
                       "only the first " + std::to_string(limit) + " of " +
                           stream.total().get_str() + " reductions are listed");

  builder.set_result(json{{"reduction_total", cli::big(stream.total())},
                          {"listed", reductions.size()},
                          {"reductions", std::move(reductions)}});
  std::cout << builder.render(pretty);
  return 0;
}

int run_oracle(const std::string& path, int height, std::uint64_t budget, bool pretty) {
  const Input input = read_input(path);
  ReportBuilder builder("oracle", input.digest);
  builder.set_options(json{{"height", height}, {"budget", budget}});
  const TreeShiftSpec spec = load_pruned_spec(input, builder);
  const Snre snre = build_snre(spec);

  BruteForceOptions brute_opts;
  brute_opts.enumeration_budget = budget;
  const auto exact = height >= 2 ? evaluate_exact(snre, height - 1) :
                                   std::vector<std::vector<mpz_class>>{};

  json heights = json::array();
  bool all_match = true;
  for (int h = 1; h <= height; ++h) {
    const auto counts = brute_force_count(spec, h, brute_opts);
    json row{{"height", h}};
    json brute = json::array();
    for (const auto& count : counts) brute.push_back(cli::big(count));
    row["brute"] = std::move(brute);
    if (h >= 2) {
      const auto& level = exact[static_cast<std::size_t>(h - 2)];
      json rec = json::array();
      for (const auto& count : level) rec.push_back(cli::big(count));
      const bool match = std::equal(counts.begin(), counts.end(), level.begin(), level.end());
      row["recursion"] = std::move(rec);
      row["match"] = match;
      all_match = all_match && match;
    }
    heights.push_back(std::move(row));
  }

  builder.set_result(json{{"alphabet", spec.alphabet().names()},
                          {"heights", std::move(heights)},
                          {"all_match", all_match}});
  std::cout << builder.render(pretty);
  return all_match ? 0 : 1;
}

int run_perron(const std::string& path, bool pretty) {
  const Input input = read_input(path);
  ReportBuilder builder("perron", input.digest);
  builder.set_options(json::object());
  const IntMatrix m = parse_matrix(input.text);
  const PerronAnalysis analysis = perron_analysis(m);

  json result{{"dimension", m.size()}, {"perron", cli::perron_json(analysis)}};
  const auto scc = scc_decompose(m);
  json components = json::array();
  for (std::size_t c = 0; c < scc.components.size(); ++c)
    components.push_back(
        json{{"vertices", scc.components[c]}, {"nontrivial", static_cast<bool>(scc.nontrivial[c])}});
  result["components"] = std::move(components);
  if (!analysis.characteristic.empty()) {
    if (const auto root = largest_real_root(analysis.characteristic, analysis.rho))
      result["char_poly_root"] = cli::finite(*root);
  }

  builder.set_result(std::move(result));
  std::cout << builder.render(pretty);
  return 0;
}

int run_realize(const std::string& path, bool verify, double spectral_tol, double estimator_tol,
                int estimator_level, std::uint64_t cap, bool pretty) {
  const Input input = read_input(path);
  ReportBuilder builder("realize", input.digest);
  builder.set_options(json{{"verify", verify},
                           {"spectral_tol", cli::finite(spectral_tol)},
                           {"estimator_tol", cli::finite(estimator_tol)},
                           {"estimator_level", estimator_level},
                           {"cap", cap}});
  const IntMatrix m = parse_matrix(input.text);
  const RealizationPlan plan = realize_tsft(m);
  builder.diagnostic("monomial-degree-convention",
                     "each base tuple reads its multiplicities from the extended matrix row: "
                     "the sink appears d minus the input row sum many times");
  if (!plan.zero_rows.empty())
    builder.diagnostic("zero-rows",
                       "zero rows of the input collapse onto the sink tuple, so the allowed "
                       "pattern count drops below 2k+1");

  json patterns = json::array();
  for (const auto& pattern : plan.allowed_patterns)
    patterns.push_back(cli::pattern_json(plan.spec.alphabet(), pattern));

  json result{{"arity", plan.arity},
              {"alphabet", plan.spec.alphabet().names()},
              {"input", cli::matrix_json(plan.input)},
              {"extended", cli::matrix_json(plan.extended)},
              {"allowed_patterns", std::move(patterns)},
              {"pattern_count", plan.allowed_patterns.size()},
              {"zero_rows", plan.zero_rows},
              {"expected_rho", cli::finite(plan.expected_rho)},
              {"expected_entropy", cli::finite(plan.expected_entropy)},
              {"spec", json::parse(serialize_spec(plan.spec))}};

  bool verify_pass = true;
  if (verify) {
    RealizationCheckOptions opts;
    opts.spectral_tol = spectral_tol;
    opts.estimator_tol = estimator_tol;
    opts.estimator_level = estimator_level;
    opts.reduction_cap = cap;
    const RealizationCheck check = verify_realization(m, opts);
    verify_pass = check.pass;
    result["verify"] =
        json{{"pass", check.pass},
             {"entropy", cli::finite(check.entropy)},
             {"expected", cli::finite(check.expected)},
             {"spectral_diff", cli::finite(check.spectral_diff)},
             {"spectral_ok", check.spectral_ok},
             {"estimator_tail", cli::finite(check.estimator_tail)},
             {"estimator_diff", cli::finite(check.estimator_diff)},
             {"estimator_ok", check.estimator_ok},
             {"essential_block_ok", check.essential_block_ok},
             {"notes", check.notes},
             {"report", cli::entropy_report_json(check.report, check.plan.snre.alphabet,
                                                 EstimatorVariant::SumCounts, true)}};
  }

  builder.set_result(std::move(result));
  std::cout << builder.render(pretty);
  return verify_pass ? 0 : 1;
}

json drop_json(const DropAnalysis& analysis, const Alphabet& alphabet,
               EstimatorVariant variant, bool witness) {
  return json{{"removed", cli::pattern_json(alphabet, analysis.removed)},
              {"h_x", cli::finite(analysis.h_x)},
              {"h_y", cli::finite(analysis.h_y)},
              {"saving_x", analysis.saving_x},
              {"inessential_y", analysis.inessential_y},
              {"y_pruned", analysis.y_pruned},
              {"y_empty", analysis.y_empty},
              {"h1", analysis.h1},
              {"h2", analysis.h2},
              {"x_all_essential", analysis.x_all_essential},
              {"hypotheses_ok", analysis.hypotheses_ok},
              {"predicted_drop", analysis.predicted_drop},
              {"observed_drop", analysis.observed_drop},
              {"consistent", analysis.consistent},
              {"out_of_hypothesis", analysis.out_of_hypothesis},
              {"drop_bound", cli::finite(analysis.drop_bound)},
              {"tolerance", cli::finite(analysis.tolerance)},
              {"report_x", cli::entropy_report_json(analysis.report_x, alphabet, variant, witness)},
              {"report_y", analysis.y_empty
                               ? json(nullptr)
                               : cli::entropy_report_json(analysis.report_y, alphabet, variant,
                                                          witness)}};
}

int run_minimality(const std::string& path, const std::string& pattern_text, bool scan,
                   const EntropyFlags& flags, bool pretty) {
  const Input input = read_input(path);
  ReportBuilder builder("minimality", input.digest);
  json options = flags.echo();
  options["scan"] = scan;
  if (!pattern_text.empty()) options["pattern"] = pattern_text;
  builder.set_options(std::move(options));
  const TreeShiftSpec spec = load_pruned_spec(input, builder);
  const Alphabet& alphabet = spec.alphabet();

  json saving = json::array();
  const auto saving_flags = saving_symbols(spec);
  for (SymbolId i = 0; i < spec.symbol_count(); ++i)
    if (saving_flags[static_cast<std::size_t>(i)]) saving.push_back(alphabet.name(i));

  json result{{"saving", std::move(saving)}};

  if (!pattern_text.empty() || scan)
    builder.diagnostic("h2-operationalization",
                       "hypothesis H2 is checked as pruning stability plus root-or-child "
                       "occurrence of every symbol in the reduced shift");

  if (!pattern_text.empty()) {
    json parsed;
    try {
      parsed = json::parse(pattern_text);
    } catch (const json::exception& err) {
      throw_parse(std::string("--pattern is not valid JSON: ") + err.what());
    }
    if (!parsed.is_array() || parsed.size() != 2 || !parsed[0].is_string() ||
        !parsed[1].is_array())
      throw_parse("--pattern must look like [\"root\", [\"child1\", …]]");
    Pattern2 pattern;
    const auto root = alphabet.find(parsed[0].get<std::string>());
    if (!root) throw_parse("--pattern root is not an alphabet symbol");
    pattern.root = *root;
    for (const auto& entry : parsed[1]) {
      if (!entry.is_string()) throw_parse("--pattern children must be symbol names");
      const auto child = alphabet.find(entry.get<std::string>());
      if (!child) throw_parse("--pattern child is not an alphabet symbol");
      pattern.children.push_back(*child);
    }
    result["drop"] = drop_json(entropy_drop_analysis(spec, pattern, flags.options()), alphabet,
                               flags.options().estimator_variant, flags.witness);
  } else if (scan) {
    json drops = json::array();
    bool all_consistent = true;
    int graded = 0;
    for (SymbolId root = 0; root < spec.symbol_count(); ++root) {
      for (const auto& tuple : spec.allowed(root)) {
        const DropAnalysis analysis =
            entropy_drop_analysis(spec, Pattern2{root, tuple}, flags.options());
        drops.push_back(json{{"removed", cli::pattern_json(alphabet, analysis.removed)},
                             {"h_x", cli::finite(analysis.h_x)},
                             {"h_y", cli::finite(analysis.h_y)},
                             {"y_empty", analysis.y_empty},
                             {"hypotheses_ok", analysis.hypotheses_ok},
                             {"predicted_drop", analysis.predicted_drop},
                             {"observed_drop", analysis.observed_drop},
                             {"consistent", analysis.consistent},
                             {"out_of_hypothesis", analysis.out_of_hypothesis}});
        if (analysis.hypotheses_ok) {
          ++graded;
          all_consistent = all_consistent && analysis.consistent;
        }
      }
    }
    result["scan"] = json{{"drops", std::move(drops)},
                          {"graded", graded},
                          {"all_consistent", all_consistent}};
  } else {
    const FullEntropyCheck check = full_entropy_check(spec, flags.options());
    result["full_entropy"] =
        json{{"all_essential", check.all_essential},
             {"entropy", cli::finite(check.entropy)},
             {"log_arity", cli::finite(check.log_arity)},
             {"implication_ok", check.implication_ok},
             {"tolerance", cli::finite(check.tolerance)},
             {"report", cli::entropy_report_json(check.report, alphabet,
                                                 flags.options().estimator_variant, flags.witness)}};
  }

  builder.set_result(std::move(result));
  std::cout << builder.render(pretty);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropy toolkit for tree-shifts of finite type"};
  app.set_version_flag("--version", treeshift::kVersionString);
  app.require_subcommand(1);

  std::string format = "pretty";
  app.add_option("--format", format, "report rendering")
      ->check(CLI::IsMember({"pretty", "compact"}));

  // entropy
  auto* entropy_cmd = app.add_subcommand("entropy", "topological entropy of a tree-shift");
  std::string entropy_path;
  entropy_cmd->add_option("spec", entropy_path, "spec file (\"-\" for stdin)")->required();
  EntropyFlags entropy_flags;
  entropy_flags.attach(*entropy_cmd);

  // snre
  auto* snre_cmd = app.add_subcommand("snre", "counting system and trajectories");
  std::string snre_path;
  int exact_levels = 0, log_levels = 0;
  std::int64_t digit_budget = ExactEvalOptions{}.digit_budget;
  snre_cmd->add_option("spec", snre_path, "spec file (\"-\" for stdin)")->required();
  snre_cmd->add_option("--exact-levels", exact_levels, "levels of exact counts to print")
      ->check(CLI::Range(0, 1000));
  snre_cmd->add_option("--log-levels", log_levels, "levels of log counts to print")
      ->check(CLI::Range(0, 100000));
  snre_cmd->add_option("--digit-budget", digit_budget, "digit cap for exact counts");

  // reduce
  auto* reduce_cmd = app.add_subcommand("reduce", "enumerate reductions");
  std::string reduce_path;
  std::uint64_t reduce_limit = 64;
  reduce_cmd->add_option("spec", reduce_path, "spec file (\"-\" for stdin)")->required();
  reduce_cmd->add_option("--limit", reduce_limit, "maximum reductions to list");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force block counts vs the recursion");
  std::string oracle_path;
  int oracle_height = 3;
  std::uint64_t oracle_budget = BruteForceOptions{}.enumeration_budget;
  oracle_cmd->add_option("spec", oracle_path, "spec file (\"-\" for stdin)")->required();
  oracle_cmd->add_option("--height", oracle_height, "largest tree height to enumerate")
      ->check(CLI::Range(1, 12));
  oracle_cmd->add_option("--budget", oracle_budget, "labeling enumeration budget");

  // perron
  auto* perron_cmd = app.add_subcommand("perron", "spectral analysis of an integer matrix");
  std::string perron_path;
  perron_cmd->add_option("matrix", perron_path, "matrix file (\"-\" for stdin)")->required();

  // realize
  auto* realize_cmd = app.add_subcommand("realize", "tree-shift with entropy ln rho(M)");
  std::string realize_path;
  bool realize_verify = false;
  RealizationCheckOptions realize_defaults;
  double spectral_tol = realize_defaults.spectral_tol;
  double estimator_tol = realize_defaults.estimator_tol;
  int estimator_level = realize_defaults.estimator_level;
  std::uint64_t realize_cap = realize_defaults.reduction_cap;
  realize_cmd->add_option("matrix", realize_path, "matrix file (\"-\" for stdin)")->required();
  realize_cmd->add_flag("--verify", realize_verify, "run the full pipeline on the result");
  realize_cmd->add_option("--spectral-tol", spectral_tol, "entropy/ln rho tolerance");
  realize_cmd->add_option("--estimator-tol", estimator_tol, "estimator tail tolerance");
  realize_cmd->add_option("--estimator-level", estimator_level, "estimator level")
      ->check(CLI::Range(1, 100000));
  realize_cmd->add_option("--cap", realize_cap, "reduction scan cap for verification");

  // minimality
  auto* minimality_cmd = app.add_subcommand("minimality", "saving symbols and entropy drops");
  std::string minimality_path;
  std::string pattern_text;
  bool scan = false;
  minimality_cmd->add_option("spec", minimality_path, "spec file (\"-\" for stdin)")->required();
  minimality_cmd->add_option("--pattern", pattern_text,
                             "pattern to remove, as [\"root\", [\"child1\", …]]");
  minimality_cmd->add_flag("--scan", scan, "analyze the removal of every allowed pattern");
  EntropyFlags minimality_flags;
  minimality_flags.attach(*minimality_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }

  const bool pretty = format != "compact";
  try {
    if (entropy_cmd->parsed()) return run_entropy(entropy_path, entropy_flags, pretty);
    if (snre_cmd->parsed())
      return run_snre(snre_path, exact_levels, log_levels, digit_budget, pretty);
    if (reduce_cmd->parsed()) return run_reduce(reduce_path, reduce_limit, pretty);
    if (oracle_cmd->parsed()) return run_oracle(oracle_path, oracle_height, oracle_budget, pretty);
    if (perron_cmd->parsed()) return run_perron(perron_path, pretty);
    if (realize_cmd->parsed())
      return run_realize(realize_path, realize_verify, spectral_tol, estimator_tol,
                         estimator_level, realize_cap, pretty);
    if (minimality_cmd->parsed())
      return run_minimality(minimality_path, pattern_text, scan, minimality_flags, pretty);
  } catch (const treeshift::Error& err) {
    std::cerr << "treeshift: " << err.what() << "\n";
    switch (err.kind()) {
      case treeshift::ErrorKind::Parse: return 2;
      case treeshift::ErrorKind::Domain: return 1;
      case treeshift::ErrorKind::Budget: return 3;
    }
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "treeshift: " << err.what() << "\n";
    return 1;
  }
  return 2;
}
