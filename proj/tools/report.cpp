#include "report.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>

#include "treeshift/version.hpp"

namespace treeshift::cli {

// ── scalar encoders ──────────────────────────────────────────────────────────

json finite(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return json(std::strtod(buffer, nullptr));
}

json big(const mpz_class& value) { return json(value.get_str()); }

std::string fnv1a64_digest(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char byte : bytes) {
    hash ^= byte;
    hash *= 0x100000001b3ull;
  }
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "fnv1a64:%016" PRIx64, hash);
  return buffer;
}

// ── structure encoders ───────────────────────────────────────────────────────

json tuple_json(const Alphabet& alphabet, const ChildTuple& tuple) {
  json out = json::array();
  for (SymbolId child : tuple) out.push_back(alphabet.name(child));
  return out;
}

json pattern_json(const Alphabet& alphabet, const Pattern2& pattern) {
  return json::array({alphabet.name(pattern.root), tuple_json(alphabet, pattern.children)});
}

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (const auto& row : m.to_rows()) {
    json cells = json::array();
    for (std::int64_t cell : row) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

json poly_json(const std::vector<mpz_class>& coefficients) {
  json out = json::array();
  for (const auto& c : coefficients) out.push_back(big(c));
  return out;
}

json perron_json(const PerronAnalysis& analysis, const std::vector<std::string>* vertex_names) {
  json component = json::array();
  for (int v : analysis.dominant_component) {
    if (vertex_names)
      component.push_back((*vertex_names)[static_cast<std::size_t>(v)]);
    else
      component.push_back(v);
  }
  json out{{"verdict", to_string(analysis.verdict)},
           {"rho", finite(analysis.rho)},
           {"period", analysis.period},
           {"second_modulus", finite(analysis.second_modulus)},
           {"degenerate_power_bound", analysis.degenerate_power_bound},
           {"dominant_component", std::move(component)},
           {"notes", analysis.notes}};
  if (!analysis.characteristic.empty()) out["char_poly"] = poly_json(analysis.characteristic);
  return out;
}

json estimator_json(const EstimatorResult& estimator, EstimatorVariant variant) {
  json values = json::array();
  for (double v : estimator.values) values.push_back(finite(v));
  return json{{"variant", variant == EstimatorVariant::SumCounts ? "sum-counts" : "sum-logs"},
              {"levels", estimator.values.size()},
              {"tail", finite(estimator.values.empty() ? 0.0 : estimator.values.back())},
              {"degenerate", estimator.degenerate},
              {"values", std::move(values)}};
}

json entropy_report_json(const EntropyReport& report, const Alphabet& alphabet,
                         EstimatorVariant variant, bool witness_detail) {
  json support = json::array();
  for (int v : report.support_component) support.push_back(alphabet.name(v));

  std::vector<std::string> support_names;
  for (int v : report.support_component) support_names.push_back(alphabet.name(v));

  json out{{"entropy", finite(report.entropy)},
           {"rho_effective", finite(report.rho_effective)},
           {"rho_raw", finite(report.rho_raw)},
           {"reduction_total", big(report.reduction_total)},
           {"evaluated", report.evaluated},
           {"exhaustive", report.exhaustive},
           {"lower_bound_only", report.lower_bound_only},
           {"agreement", report.agreement},
           {"estimator_tail", finite(report.estimator_tail)},
           {"estimator", estimator_json(report.estimator, variant)},
           {"support_component", std::move(support)},
           {"perron", perron_json(report.perron, support_names.empty() ? nullptr : &support_names)}};

  if (witness_detail) {
    json choice = json::object();
    for (SymbolId i = 0; i < report.witness.symbol_count(); ++i)
      choice[alphabet.name(i)] = tuple_json(alphabet, report.witness.choice[static_cast<std::size_t>(i)]);
    json witness{{"choice", std::move(choice)}, {"matrix", matrix_json(report.witness_matrix)}};
    if (!report.witness_char_poly.empty())
      witness["char_poly"] = poly_json(report.witness_char_poly);
    out["witness"] = std::move(witness);
  }
  return out;
}

// ── envelope ─────────────────────────────────────────────────────────────────

void ReportBuilder::diagnostic(std::string code, std::string message) {
  diagnostics_.emplace_back(std::move(code), std::move(message));
}

std::string ReportBuilder::render(bool pretty) const {
  json diagnostics = json::array();
  for (const auto& [code, message] : diagnostics_)
    diagnostics.push_back(json{{"code", code}, {"message", message}});
  const json document{{"command", command_},
                      {"version", kVersionString},
                      {"input_digest", digest_},
                      {"options", options_},
                      {"diagnostics", std::move(diagnostics)},
                      {"result", result_}};
  return pretty ? document.dump(2) + "\n" : document.dump() + "\n";
}

}  // namespace treeshift::cli
