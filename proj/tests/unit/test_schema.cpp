// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <fstream>

#include <json.hpp>

#include "subsetx/schema.hpp"

using nlohmann::json;
using subsetx::schema::validate;

TEST_SUITE("schema") {

TEST_CASE("type, required, enum, and items checks") {
  json sch = json::parse(R"({
    "type": "object",
    "required": ["name", "values"],
    "properties": {
      "name": {"type": "string"},
      "status": {"enum": ["ok", "bad"]},
      "values": {"type": "array", "items": {"type": "number"}}
    }
  })");

  CHECK(validate(json::parse(R"({"name":"a","values":[1,2.5]})"), sch).empty());
  CHECK(validate(json::parse(R"({"name":"a","values":[1],"status":"ok"})"), sch).empty());

  CHECK_FALSE(validate(json::parse(R"({"values":[1]})"), sch).empty());
  CHECK_FALSE(validate(json::parse(R"({"name":3,"values":[1]})"), sch).empty());
  CHECK_FALSE(validate(json::parse(R"({"name":"a","values":["x"]})"), sch).empty());
  CHECK_FALSE(validate(json::parse(R"({"name":"a","values":[1],"status":"huh"})"), sch).empty());
}

TEST_CASE("violation message names the offending path") {
  json sch = json::parse(R"({"type":"object","properties":{"a":{"type":"integer"}}})");
  std::string msg = validate(json::parse(R"({"a": 1.5})"), sch);
  CHECK(msg.find("a") != std::string::npos);
}

TEST_CASE("checked-in schemas are themselves valid json and well formed") {
  for (const char* name : {"solve_result", "eval_report", "scenario"}) {
    std::ifstream in(std::string(SUBSETX_SCHEMA_DIR) + "/" + name + ".schema.json");
    REQUIRE(in.good());
    json sch = json::parse(in);
    CHECK(sch.contains("type"));
    CHECK(sch.contains("required"));
  }
}

}  // TEST_SUITE
