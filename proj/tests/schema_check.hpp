#pragma once

// Minimal structural validator for the schema subset shipped under schemas/:
// type (possibly a union), required, properties, items, enum.

#include <nlohmann/json.hpp>

#include <fstream>
#include <string>

namespace testsupport {

using nlohmann::json;

inline bool type_matches(const json& value, const std::string& type) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "integer") return value.is_number_integer();
  if (type == "number") return value.is_number();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  return false;
}

inline bool validate_schema(const json& value, const json& schema, std::string* error,
                            const std::string& path = "$") {
  if (schema.contains("type")) {
    const json& t = schema["type"];
    bool ok = false;
    if (t.is_string()) ok = type_matches(value, t.get<std::string>());
    else
      for (const auto& alt : t) ok = ok || type_matches(value, alt.get<std::string>());
    if (!ok) {
      *error = path + ": type mismatch";
      return false;
    }
  }
  if (value.is_null()) return true;  // nullable fields skip structural checks
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& alt : schema["enum"]) ok = ok || alt == value;
    if (!ok) {
      *error = path + ": not in enum";
      return false;
    }
  }
  if (schema.contains("required")) {
    for (const auto& key : schema["required"]) {
      if (!value.contains(key.get<std::string>())) {
        *error = path + ": missing required field '" + key.get<std::string>() + "'";
        return false;
      }
    }
  }
  if (schema.contains("properties") && value.is_object()) {
    for (const auto& [key, sub] : schema["properties"].items())
      if (value.contains(key) && !validate_schema(value[key], sub, error, path + "." + key))
        return false;
  }
  if (schema.contains("items") && value.is_array()) {
    for (size_t i = 0; i < value.size(); ++i)
      if (!validate_schema(value[i], schema["items"], error,
                           path + "[" + std::to_string(i) + "]"))
        return false;
  }
  return true;
}

inline json load_schema(const std::string& name) {
  std::ifstream in(std::string(GROUPWALK_SCHEMA_DIR) + "/" + name);
  json schema;
  in >> schema;
  return schema;
}

}  // namespace testsupport
