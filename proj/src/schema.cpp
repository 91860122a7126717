// SPDX-License-Identifier: Apache-2.0

#include "subsetx/schema.hpp"

namespace subsetx {
namespace schema {

namespace {

bool type_matches(const nlohmann::json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "number") return v.is_number();
  if (t == "integer") return v.is_number_integer();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  return false;
}

std::string check(const nlohmann::json& v, const nlohmann::json& s, const std::string& path) {
  if (s.contains("type")) {
    const auto& t = s["type"];
    bool ok = t.is_array() ? [&] {
      for (const auto& alt : t)
        if (type_matches(v, alt.get<std::string>())) return true;
      return false;
    }()
                           : type_matches(v, t.get<std::string>());
    if (!ok) return path + ": expected type " + t.dump();
  }
  if (s.contains("enum")) {
    bool ok = false;
    for (const auto& alt : s["enum"]) ok = ok || alt == v;
    if (!ok) return path + ": value not in enum";
  }
  if (v.is_object()) {
    if (s.contains("required"))
      for (const auto& key : s["required"])
        if (!v.contains(key.get<std::string>()))
          return path + ": missing required key " + key.get<std::string>();
    if (s.contains("properties"))
      for (auto it = s["properties"].begin(); it != s["properties"].end(); ++it)
        if (v.contains(it.key())) {
          std::string err = check(v[it.key()], it.value(), path + "/" + it.key());
          if (!err.empty()) return err;
        }
  }
  if (v.is_array() && s.contains("items")) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::string err = check(v[i], s["items"], path + "/" + std::to_string(i));
      if (!err.empty()) return err;
    }
  }
  return "";
}

}  // namespace

std::string validate(const nlohmann::json& value, const nlohmann::json& schema) {
  return check(value, schema, "$");
}

}  // namespace schema
}  // namespace subsetx
