#include "arena/params_io.hpp"

#include <gtest/gtest.h>

#include <clocale>
#include <string>

using namespace arena;

TEST(KeyValueConfig, ParsesCommentsAndSeparators) {
  const auto cfg = KeyValueConfig::parse(
      "# header\n"
      "a1 = 1.5\n"
      "\n"
      "b1: 0.2   # trailing\n"
      "  sigma1=0.75\n");
  EXPECT_EQ(cfg.get("a1"), "1.5");
  EXPECT_DOUBLE_EQ(cfg.get_double("b1", 0.0), 0.2);
  EXPECT_DOUBLE_EQ(cfg.get_double("sigma1", 0.0), 0.75);
  EXPECT_DOUBLE_EQ(cfg.get_double("missing", 4.0), 4.0);
}

TEST(KeyValueConfig, ErrorsCarryLineNumbers) {
  try {
    KeyValueConfig::parse("a1 = 1\nthis line is junk\n", "demo.cfg");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("demo.cfg"), std::string::npos);
  }
}

TEST(KeyValueConfig, RejectsDuplicatesAndEmptyValues) {
  EXPECT_THROW(KeyValueConfig::parse("a1 = 1\na1 = 2\n"), ConfigError);
  EXPECT_THROW(KeyValueConfig::parse("a1 =\n"), ConfigError);
  EXPECT_THROW(KeyValueConfig::parse("1abc = 2\n"), ConfigError);
}

TEST(KeyValueConfig, BadNumberPointsAtItsLine) {
  const auto cfg = KeyValueConfig::parse("x0 = 1\n\ny0 = 1,5\n");
  try {
    params_from_config(cfg);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(KeyValueConfig, DoubleLists) {
  const auto cfg = KeyValueConfig::parse("levels = 0.5, 1, 2.25\n");
  const auto v = cfg.get_doubles("levels");
  ASSERT_EQ(v.size(), 3u);
  EXPECT_DOUBLE_EQ(v[2], 2.25);
}

TEST(ParseDecimal, WholeStringOnly) {
  EXPECT_EQ(parse_decimal("1e-3"), 1e-3);
  EXPECT_EQ(parse_decimal("-2.5"), -2.5);
  EXPECT_FALSE(parse_decimal("2.5x").has_value());
  EXPECT_FALSE(parse_decimal("").has_value());
}

TEST(ParseDecimal, IgnoresGlobalLocale) {
  const char* old = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = old ? old : "C";
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") == nullptr) {
    GTEST_SKIP() << "de_DE locale not installed";
  }
  EXPECT_EQ(parse_decimal("0.25"), 0.25);
  EXPECT_EQ(format_decimal(0.25), "0.25");
  std::setlocale(LC_NUMERIC, saved.c_str());
}

TEST(ParamsConfig, RoundTrip) {
  ModelParams p = ModelParams::figure2(1.5, 1.3);
  p.x0 = 0.1 + 0.2;  // not exactly representable in short form
  p.c2 = 1.0 / 3.0;
  const ModelParams back = params_from_config(KeyValueConfig::parse(to_config_text(p)));
  EXPECT_EQ(back, p);
}

TEST(ParamsConfig, MissingKeysKeepDefaults) {
  const ModelParams d = ModelParams::figure2(0.5, 0.3);
  const ModelParams p = params_from_config(KeyValueConfig::parse("sigma1 = 1.5\n"), d);
  EXPECT_EQ(p.sigma1, 1.5);
  EXPECT_EQ(p.a2, d.a2);
}

TEST(ParamsConfig, InvalidValuesRejected) {
  EXPECT_THROW(params_from_config(KeyValueConfig::parse("beta = 0\n")), ConfigError);
}
