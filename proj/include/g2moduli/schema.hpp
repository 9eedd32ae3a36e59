#pragma once

#include <string>

#include <json.hpp>

namespace g2moduli {

// structural validator for the subset of JSON Schema the shipped schemas use:
// type, properties, required, items, enum, additionalProperties (boolean)
bool validate_against_schema(const nlohmann::json& value, const nlohmann::json& schema,
                             std::string* error);

nlohmann::json load_schema(const std::string& name);  // from the shipped schemas dir

}  // namespace g2moduli
