#pragma once

// Full pipeline over curve specs and the structured/text reports.

#include "nilsect/curve.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nilsect {

enum class Check { adjunction, delta2, theorem, alb, lemma_injectivity };

std::optional<Check> parse_check(const std::string& name);
std::string to_string(Check c);
std::vector<Check> all_checks();

enum class Format { json, text };

struct RunConfig {
  std::vector<std::string> inputs;
  std::vector<Check> checks = all_checks();
  Format format = Format::json;
  std::uint64_t seed = 0;
  int verbosity = 0;
  /// Report destination; empty writes nothing.
  std::string out;
  /// Directory for per-spec plot data; empty disables it.
  std::string plot_dir;
};

enum class ExitCode : int { ok = 0, check_failed = 1, input_error = 2 };

struct RunResult {
  ExitCode exit_code = ExitCode::ok;
  nlohmann::ordered_json report;
  std::string rendered;
};

/// Report for one spec: status is "pass", "fail" or "hypothesis not met".
nlohmann::ordered_json analyze(const CurveSpec& spec, const std::vector<Check>& checks, std::uint64_t seed,
                               int verbosity = 0);

RunResult run(const RunConfig& config);

std::string render_text(const nlohmann::ordered_json& report);

/// "0", "e1", "e1+e3", ... for F_2 coordinates.
std::string class_label(const F2Vector& bits);

}  // namespace nilsect
