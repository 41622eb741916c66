#pragma once

// Reading and writing curve specs as JSON. Integers may be JSON numbers or
// decimal strings of any length.

#include "nilsect/curve.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>

namespace nilsect {

/// Malformed spec file; `where` is a line/column or a field path such as pieces[1].tau[0][2].
class SpecParseError : public std::runtime_error {
 public:
  SpecParseError(std::string where, const std::string& message)
      : std::runtime_error(where + ": " + message), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

CurveSpec parse_curve_spec(const nlohmann::ordered_json& j);
/// `source` names the input in diagnostics.
CurveSpec parse_curve_spec(const std::string& text, const std::string& source);
CurveSpec load_curve_spec(const std::string& path);

nlohmann::ordered_json to_json(const CurveSpec& spec);
std::string emit_curve_spec(const CurveSpec& spec);

nlohmann::ordered_json integer_json(const Integer& x);
nlohmann::ordered_json vector_json(const IntVector& v);

}  // namespace nilsect
