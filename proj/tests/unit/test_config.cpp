#include <gtest/gtest.h>

#include "waxfront/config.hpp"

using namespace waxfront;
using config::parse_document;

TEST(Config, MinimalDocumentFillsDefaults) {
  const auto cfg = config::solver_config(parse_document(R"({"k": 2, "eps": 0.1, "c": 0})"));
  EXPECT_EQ(cfg.n_x, 161);
  EXPECT_EQ(cfg.t_end, 20.0);
  EXPECT_EQ(resolved_delta(cfg), 1e-3);
  EXPECT_EQ(cfg.safety, 0.4);
  EXPECT_EQ(cfg.steady_tol, 0.01);
}

TEST(Config, RejectsInadmissibleValues) {
  EXPECT_THROW(config::solver_config(parse_document(R"({"k": 1})")), InvalidConfig);
  try {
    config::solver_config(parse_document(R"({"k": 0.9})"));
  } catch (const InvalidConfig& e) {
    EXPECT_NE(std::string(e.what()).find("k > 1"), std::string::npos) << e.what();
  }
  EXPECT_THROW(config::solver_config(parse_document(R"({"c": -4})")), InvalidConfig);
  EXPECT_THROW(config::solver_config(parse_document(R"({"eps": 0})")), InvalidConfig);
  EXPECT_THROW(config::solver_config(parse_document(R"({"n_x": 2})")), InvalidConfig);
}

TEST(Config, ParseErrorsCarryLineAndField) {
  try {
    parse_document("{\n  \"k\": 2,\n  \"eps\": ,\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    config::solver_config(parse_document("{\n  \"k\": 2,\n  \"n_x\": \"many\"\n}"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.field(), "n_x");
  }
  try {
    config::solver_config(parse_document("{\n\n  \"colour\": 1\n}"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.field(), "colour");
  }
  EXPECT_THROW(config::solver_config(parse_document(R"({"n_x": 40.5})")), ParseError);
  EXPECT_THROW(parse_document("[1, 2]"), ParseError);
}

TEST(Config, Overrides) {
  auto doc = parse_document(R"({"k": 2})");
  config::apply_overrides(doc, {"k=10", "eps=0.5", "probe_times=[0.1,0.2]"});
  const auto cfg = config::solver_config(doc);
  EXPECT_EQ(cfg.k, 10.0);
  EXPECT_EQ(cfg.eps, 0.5);
  EXPECT_EQ(cfg.probe_times.size(), 2u);
  EXPECT_THROW(config::apply_overrides(doc, {"novalue"}), ParseError);
  config::apply_overrides(doc, {"c=abc"});
  EXPECT_THROW(config::solver_config(doc), ParseError);
}

TEST(Config, TabulatedConductivity) {
  const auto cfg = config::solver_config(
      parse_document(R"({"conductivity": {"family": "tabulated", "points": [[0, 1], [0.5, 1.5], [1, 1]]}})"));
  EXPECT_NEAR(cfg.model.D(0.5), 1.5, 1e-14);
  EXPECT_THROW(
      config::solver_config(parse_document(R"({"c": 1, "conductivity": {"family": "quadratic", "c": 1}})")),
      ParseError);
  const auto q = config::solver_config(
      parse_document(R"({"conductivity": {"family": "quadratic", "c": 2}})"));
  EXPECT_DOUBLE_EQ(q.model.D(0.5), 1.5);
  EXPECT_THROW(config::solver_config(parse_document(R"({"conductivity": {"family": "cubic"}})")),
               ParseError);
  EXPECT_THROW(config::solver_config(parse_document(
                   R"({"conductivity": {"family": "quadratic", "c": -5}})")),
               InvalidConfig);
}

TEST(Config, ResolvedRoundTripKeepsHash) {
  for (const char* text :
       {R"({"k": 10, "eps": 0.5, "c": -2, "n_x": 81})",
        R"({"conductivity": {"family": "tabulated", "points": [[0, 0.8], [0.3, 1.2], [1, 1]]},
            "probe_times": [0.5]})"}) {
    const auto cfg = config::solver_config(parse_document(text));
    const auto j = config::resolved_json(cfg);
    const auto again = config::solver_config(parse_document(j.dump(2)));
    EXPECT_EQ(config::config_hash(cfg), config::config_hash(again));
    EXPECT_EQ(config::resolved_json(again), j);
  }
  const auto a = config::solver_config(parse_document(R"({"k": 2})"));
  const auto b = config::solver_config(parse_document(R"({"k": 2, "n_x": 81})"));
  EXPECT_NE(config::config_hash(a), config::config_hash(b));
  EXPECT_EQ(config::config_hash(a).size(), 16u);
}

TEST(Config, Manifest) {
  const auto m = config::make_manifest(nlohmann::json{{"k", 2}}, {"a.csv"});
  const auto j = m.to_json();
  EXPECT_EQ(j["tool_version"], config::kToolVersion);
  EXPECT_EQ(j["config_hash"], config::hash_json(nlohmann::json{{"k", 2}}));
  EXPECT_EQ(j["artifacts"][0], "a.csv");
}
