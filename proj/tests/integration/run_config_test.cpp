#include "arena_cli/run_config.hpp"

#include <gtest/gtest.h>

#include <string>

using namespace arena;
using namespace arena::cli;

TEST(RunConfig, DefaultsValidate) { EXPECT_NO_THROW(RunConfig{}.validate()); }

TEST(RunConfig, TextAndJsonAgree) {
  const RunConfig text = load_run_config(ARENA_CONFIG_DIR "/figure2_low_noise.cfg");
  const RunConfig json = load_run_config(ARENA_CONFIG_DIR "/figure2_low_noise.json");
  EXPECT_EQ(text.params, json.params);
  EXPECT_EQ(text.bounds.k2_variant, PredatorConstants::Corrected);
  EXPECT_EQ(json.bounds.k2_variant, PredatorConstants::Corrected);
  EXPECT_EQ(text.levels_z2, json.levels_z2);
  EXPECT_EQ(text.orders_p, json.orders_p);
  EXPECT_EQ(text.out_dir, json.out_dir);
}

TEST(RunConfig, TextRoundTrip) {
  RunConfig rc;
  rc.params = ModelParams::figure2(1.5, 1.3);
  rc.n_paths = 1234;
  rc.seed_base = 77;
  rc.levels_z1 = {0.5, 1.5};
  rc.bounds.k2_variant = PredatorConstants::Corrected;
  const RunConfig back = run_config_from(KeyValueConfig::parse(to_config_text(rc)));
  EXPECT_EQ(back.params, rc.params);
  EXPECT_EQ(back.n_paths, 1234u);
  EXPECT_EQ(back.seed_base, 77u);
  EXPECT_EQ(back.levels_z1, rc.levels_z1);
  EXPECT_EQ(back.bounds.k2_variant, PredatorConstants::Corrected);
}

TEST(RunConfig, UnknownKeyNamesItsLine) {
  try {
    run_config_from(KeyValueConfig::parse("a1 = 1\nsigma3 = 2\n", "x.cfg"));
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("sigma3"), std::string::npos);
  }
}

TEST(RunConfig, InconsistentFieldsRejected) {
  EXPECT_THROW(run_config_from(KeyValueConfig::parse("horizon = 1\ndt = 2\n")), ConfigError);
  EXPECT_THROW(run_config_from(KeyValueConfig::parse("k2_variant = maybe\n")), ConfigError);
  EXPECT_THROW(run_config_from(KeyValueConfig::parse("n_paths = 1\n")), ConfigError);
  EXPECT_THROW(run_config_from(KeyValueConfig::parse("bounds.z1 = 1, -2\n")), ConfigError);
}

TEST(RunConfig, JsonRejectsNestedObjects) {
  EXPECT_THROW(parse_json_config(R"({"a1": {"x": 1}})"), ConfigError);
  EXPECT_THROW(parse_json_config("[1, 2]"), ConfigError);
  EXPECT_THROW(parse_json_config("{not json"), ConfigError);
  const KeyValueConfig cfg = parse_json_config(R"({"bounds.t": [0.5, 1], "seed_base": 3})");
  EXPECT_EQ(cfg.get("bounds.t"), "0.5,1");
  EXPECT_EQ(cfg.get("seed_base"), "3");
}
