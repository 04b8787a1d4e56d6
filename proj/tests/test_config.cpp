#include <gtest/gtest.h>

#include "mssh/config.hpp"

using namespace mssh;

namespace {

const char* kInterfaceConfig = R"({
  "theta": -1.5707963267948966,
  "regions": [
    { "to": 0, "phi_a": 1.5, "phi_b": 2.5 },
    { "from": 1, "phi_a": 2.356194490192345, "phi_b": 0.0 }
  ],
  "steps": 200
})";

std::string error_path(const std::string& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<no error>";
}

}  // namespace

TEST(ParseConfig, InterfaceConfigIsValid) {
  const auto cfg = parse_config(std::string(kInterfaceConfig));
  EXPECT_EQ(cfg.walk.n_record, 200);
  ASSERT_EQ(cfg.walk.profile.regions.size(), 2u);
  EXPECT_EQ(cfg.walk.profile.phases_at(0), std::make_pair(1.5, 2.5));
  EXPECT_EQ(cfg.walk.profile.phases_at(1).second, 0.0);
  EXPECT_EQ(cfg.walk.inject_cell, 0);
  EXPECT_EQ(cfg.walk.inject_subsite, Subsite::a);
  EXPECT_EQ(cfg.walk.inject_direction, Direction::right);
}

TEST(ParseConfig, EdgeLengthDefaultsFromConvention) {
  const auto cfg = parse_config(std::string(R"({"regions":[{"phi_a":0,"phi_b":0}]})"));
  EXPECT_EQ(cfg.walk.internal_length, default_convention().internal_length);
  EXPECT_EQ(cfg.walk.external_length, 3);
  EXPECT_DOUBLE_EQ(cfg.walk.theta, kImaginaryTheta);
  EXPECT_FALSE(cfg.walk.half_length.has_value());
}

TEST(ParseConfig, ExplicitFields) {
  const auto cfg = parse_config(std::string(R"({
    "half_length": 12, "regions": [{"from": -12, "to": 12, "phi_a": 0.1, "phi_b": 0.2}],
    "edge_lengths": {"internal": 2, "external": 1}, "substeps_per_record": 4,
    "injection": {"cell": -3, "subsite": "b", "direction": "left"}})"));
  EXPECT_EQ(*cfg.walk.half_length, 12);
  EXPECT_EQ(cfg.walk.external_length, 1);
  EXPECT_EQ(cfg.walk.cadence(), 4);
  EXPECT_EQ(cfg.walk.inject_cell, -3);
  EXPECT_EQ(cfg.walk.inject_subsite, Subsite::b);
  EXPECT_EQ(cfg.walk.inject_direction, Direction::left);
}

TEST(ParseConfig, SchemaErrorsCarryFieldPath) {
  EXPECT_EQ(error_path(R"({"regions":[{"phi_a":"abc","phi_b":0}]})"), "regions[0].phi_a");
  EXPECT_EQ(error_path(R"({"regions":[{"phi_a":0,"phi_b":0}],"colour":1})"), "colour");
  EXPECT_EQ(error_path(R"({"regions":[{"phi_a":0,"phi_b":0,"phi_c":1}]})"), "regions[0].phi_c");
  EXPECT_EQ(error_path(R"({"regions":[{"phi_a":0,"phi_b":0}],"edge_lengths":{"internal":1.5}})"),
            "edge_lengths.internal");
  EXPECT_EQ(error_path(R"({"regions":[{"phi_a":0,"phi_b":0}],"steps":-1})"), "steps");
  EXPECT_EQ(error_path(R"({"regions":[{"phi_a":0,"phi_b":0}],"injection":{"subsite":"c"}})"), "injection.subsite");
  EXPECT_EQ(error_path(R"({"theta":0})"), "regions");
  EXPECT_EQ(error_path(R"([1,2])"), "");
}

TEST(ParseConfig, CoverageAndRange) {
  EXPECT_THROW(parse_config(std::string(R"({"half_length":3,"regions":[{"from":-2,"to":3,"phi_a":0,"phi_b":0}]})")),
               ConfigError);
  EXPECT_THROW(parse_config(std::string(R"({"half_length":3,"regions":[{"phi_a":0,"phi_b":0}],
                                              "injection":{"cell":4}})")),
               ConfigError);
}

TEST(ParseConfig, MalformedJson) { EXPECT_THROW(parse_config(std::string("{\"regions\": [")), ConfigError); }

TEST(ParseConfig, MissingFile) { EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError); }
