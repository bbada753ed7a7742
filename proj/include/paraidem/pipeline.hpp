#pragma once

// Declarative construction pipelines: {"ring": ..., "steps": [{"op", "args", "bind"}]}.
// Each step may reference earlier bindings by name; "name.q" style suffixes
// select parts of compound results (cleared forms, Hadamard reports).

#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "paraidem/constructors.hpp"

namespace paraidem {

using Value = std::variant<PolyMatrix, IdempotentSet, ClearedForm, HadamardReport, VerificationReport, LaurentPoly, std::vector<std::size_t>>;

/// Ring from {"kind": ...} or a shorthand string: "rational", "cyclotomic:8", "prime:7".
Ring parse_ring(const nlohmann::json& j);

std::string value_kind(const Value& v);
nlohmann::json value_to_json(const Value& v);

struct StepResult {
  std::string bind;
  std::string op;
  Value value;
  nlohmann::json checks = nlohmann::json::object();
};

struct PipelineResult {
  Ring ring;
  std::vector<StepResult> steps;
  std::map<std::string, Value> env;

  [[nodiscard]] const Value& at(const std::string& name) const;
  /// True when every recorded check passed.
  [[nodiscard]] bool all_checks_ok() const;
  [[nodiscard]] nlohmann::json to_json() const;
};

/// Names of the supported operations.
std::vector<std::string> pipeline_ops();

/// Executes the steps in order. With `verify`, every matrix or set result is
/// re-checked (paraunitary / pseudo-paraunitary / verify_set) and recorded.
/// Throws InvalidPipeline, UnknownBinding, or the failing step's error.
PipelineResult run_pipeline(const nlohmann::json& pipeline, bool verify = true);

}  // namespace paraidem
