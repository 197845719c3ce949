#include "schema_check.hpp"

namespace rrlab::tools {

namespace {

using nlohmann::json;

bool has_type(const json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  return false;
}

void walk(const json& schema, const json& v, const std::string& at, std::vector<std::string>& errs) {
  auto where = [&] { return at.empty() ? std::string("<root>") : at; };

  if (schema.contains("type")) {
    const json& t = schema["type"];
    bool ok = false;
    if (t.is_string()) {
      ok = has_type(v, t.get<std::string>());
    } else {
      for (const auto& alt : t) ok = ok || has_type(v, alt.get<std::string>());
    }
    if (!ok) {
      errs.push_back(where() + ": expected type " + t.dump() + ", got " + v.type_name());
      return;
    }
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& e : schema["enum"]) found = found || e == v;
    if (!found) errs.push_back(where() + ": " + v.dump() + " is not one of " + schema["enum"].dump());
  }
  if (v.is_number()) {
    if (schema.contains("minimum") && v.get<double>() < schema["minimum"].get<double>())
      errs.push_back(where() + ": " + v.dump() + " is below the minimum " + schema["minimum"].dump());
    if (schema.contains("maximum") && v.get<double>() > schema["maximum"].get<double>())
      errs.push_back(where() + ": " + v.dump() + " is above the maximum " + schema["maximum"].dump());
  }
  if (v.is_string() && schema.contains("minLength") &&
      v.get<std::string>().size() < schema["minLength"].get<std::size_t>())
    errs.push_back(where() + ": string shorter than " + schema["minLength"].dump());
  if (v.is_array() && schema.contains("items")) {
    for (std::size_t i = 0; i < v.size(); ++i) walk(schema["items"], v[i], at + "[" + std::to_string(i) + "]", errs);
  }
  if (v.is_object()) {
    if (schema.contains("required")) {
      for (const auto& r : schema["required"])
        if (!v.contains(r.get<std::string>())) errs.push_back(where() + ": missing required field " + r.dump());
    }
    const json empty = json::object();
    const json& props = schema.contains("properties") ? schema["properties"] : empty;
    bool closed = schema.contains("additionalProperties") && schema["additionalProperties"] == false;
    for (auto it = v.begin(); it != v.end(); ++it) {
      std::string sub = at.empty() ? it.key() : at + "." + it.key();
      if (props.contains(it.key())) {
        walk(props[it.key()], it.value(), sub, errs);
      } else if (closed) {
        errs.push_back(sub + ": unknown field");
      }
    }
  }
}

}  // namespace

std::vector<std::string> schema_errors(const nlohmann::json& schema, const nlohmann::json& doc) {
  std::vector<std::string> errs;
  walk(schema, doc, "", errs);
  return errs;
}

}  // namespace rrlab::tools
