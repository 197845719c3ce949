#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace rrlab::tools {

// Validates against the subset of JSON Schema the config schema uses: type,
// enum, required, properties, additionalProperties (boolean), minimum,
// maximum, minLength, items. Returns one message per violation.
std::vector<std::string> schema_errors(const nlohmann::json& schema, const nlohmann::json& doc);

}  // namespace rrlab::tools
