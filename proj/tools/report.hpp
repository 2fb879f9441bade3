#ifndef TREESHIFT_TOOLS_REPORT_HPP
#define TREESHIFT_TOOLS_REPORT_HPP

// JSON report assembly for the treeshift CLI.
//
// Every subcommand emits one JSON document:
//
//   {
//     "command":     "entropy",
//     "version":     "treeshift 0.1.0",
//     "input_digest": "fnv1a64:…",       // over the raw input bytes
//     "options":     { … },              // the effective knob settings
//     "diagnostics": [ {"code": …, "message": …}, … ],
//     "result":      { … }
//   }
//
// Determinism rules: object keys are sorted (nlohmann's default map), floats
// pass through a %.12g round-trip so reports do not carry representation
// noise, and arbitrary-precision integers are emitted as decimal strings.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "treeshift/reduction.hpp"
#include "treeshift/spectral.hpp"

namespace treeshift::cli {

using nlohmann::json;

// ── scalar encoders ──────────────────────────────────────────────────────────

json finite(double value);               // %.12g round-trip
json big(const mpz_class& value);        // decimal string
std::string fnv1a64_digest(std::string_view bytes);

// ── structure encoders ───────────────────────────────────────────────────────

json tuple_json(const Alphabet& alphabet, const ChildTuple& tuple);
json pattern_json(const Alphabet& alphabet, const Pattern2& pattern);
json matrix_json(const IntMatrix& m);
json poly_json(const std::vector<mpz_class>& coefficients);

// `vertex_names`, when given, relabels component indices (index i → names[i]).
json perron_json(const PerronAnalysis& analysis,
                 const std::vector<std::string>* vertex_names = nullptr);

json estimator_json(const EstimatorResult& estimator, EstimatorVariant variant);

json entropy_report_json(const EntropyReport& report, const Alphabet& alphabet,
                         EstimatorVariant variant, bool witness_detail);

// ── envelope ─────────────────────────────────────────────────────────────────

class ReportBuilder {
public:
  ReportBuilder(std::string command, std::string input_digest)
      : command_(std::move(command)), digest_(std::move(input_digest)) {}

  void diagnostic(std::string code, std::string message);
  void set_options(json options) { options_ = std::move(options); }
  void set_result(json result) { result_ = std::move(result); }

  std::string render(bool pretty) const;

private:
  std::string command_;
  std::string digest_;
  json options_ = json::object();
  json result_ = json::object();
  std::vector<std::pair<std::string, std::string>> diagnostics_;
};

}  // namespace treeshift::cli

#endif  // TREESHIFT_TOOLS_REPORT_HPP
