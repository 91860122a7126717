// SPDX-License-Identifier: Apache-2.0

#ifndef SUBSETX_SCHEMA_HPP
#define SUBSETX_SCHEMA_HPP

#include <string>

#include <json.hpp>

namespace subsetx {
namespace schema {

/// Validates `value` against a small JSON Schema subset: "type",
/// "properties", "required", "items", "enum".  Returns an empty string on
/// success, otherwise the first violation found (path: message).
std::string validate(const nlohmann::json& value, const nlohmann::json& schema);

}  // namespace schema
}  // namespace subsetx

#endif
