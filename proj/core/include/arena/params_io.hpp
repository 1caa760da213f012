#pragma once

// Flat text key-value configuration.
//
// Grammar, one entry per line:
//   line    := blank | comment | entry
//   comment := '#' anything
//   entry   := key ws* ('=' | ':') ws* value ws* ('#' anything)?
//   key     := [A-Za-z_][A-Za-z0-9_.-]*
// Numeric values are '.'-decimal literals parsed independently of locale.

#include "arena/model.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace arena {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, std::size_t line, const std::string& what);

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::string_view text, std::string source = "<config>");
  static KeyValueConfig load(const std::string& path);

  void set(const std::string& key, std::string value, std::size_t line = 0);
  bool contains(const std::string& key) const { return entries_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;

  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  std::vector<double> get_doubles(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }
  const std::string& source() const { return source_; }

  /// Throws ConfigError pointing at the line that defined `key`.
  [[noreturn]] void fail(const std::string& key, const std::string& what) const;

 private:
  std::string source_;
  std::map<std::string, std::string> entries_;
  std::map<std::string, std::size_t> lines_;
};

/// Locale-independent decimal parse of the whole string; nullopt on junk.
std::optional<double> parse_decimal(std::string_view s);

/// Shortest round-trip decimal representation.
std::string format_decimal(double v);

/// Keys a1 b1 c1 a2 b2 c2 beta sigma1 sigma2 x0 y0; missing keys keep the
/// values in `defaults`. The result is validated.
ModelParams params_from_config(const KeyValueConfig& cfg, const ModelParams& defaults = {});

/// Writes all eleven keys so that params_from_config(parse(text)) == p.
std::string to_config_text(const ModelParams& p);

}  // namespace arena
