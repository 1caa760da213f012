#include "arena/params_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace arena {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_key(std::string_view k) {
  if (k.empty()) return false;
  const auto head = static_cast<unsigned char>(k.front());
  if (!(std::isalpha(head) || k.front() == '_')) return false;
  for (char c : k) {
    const auto u = static_cast<unsigned char>(c);
    if (!(std::isalnum(u) || c == '_' || c == '.' || c == '-')) return false;
  }
  return true;
}

}  // namespace

ConfigError::ConfigError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
      line_(line) {}

KeyValueConfig KeyValueConfig::parse(std::string_view text, std::string source) {
  KeyValueConfig cfg;
  cfg.source_ = std::move(source);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto sep = line.find_first_of("=:");
    if (sep == std::string_view::npos) {
      throw ConfigError(cfg.source_, line_no, "expected 'key = value', got '" + std::string(line) + "'");
    }
    const std::string_view key = trim(line.substr(0, sep));
    const std::string_view value = trim(line.substr(sep + 1));
    if (!valid_key(key)) {
      throw ConfigError(cfg.source_, line_no, "invalid key '" + std::string(key) + "'");
    }
    if (value.empty()) {
      throw ConfigError(cfg.source_, line_no, "missing value for '" + std::string(key) + "'");
    }
    if (cfg.contains(std::string(key))) {
      throw ConfigError(cfg.source_, line_no, "duplicate key '" + std::string(key) + "'");
    }
    cfg.set(std::string(key), std::string(value), line_no);
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

void KeyValueConfig::set(const std::string& key, std::string value, std::size_t line) {
  entries_[key] = std::move(value);
  lines_[key] = line;
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void KeyValueConfig::fail(const std::string& key, const std::string& what) const {
  const auto it = lines_.find(key);
  throw ConfigError(source_, it == lines_.end() ? 0 : it->second, "key '" + key + "': " + what);
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  const auto d = parse_decimal(*v);
  if (!d) fail(key, "expected a decimal number, got '" + *v + "'");
  return *d;
}

long long KeyValueConfig::get_int(const std::string& key, long long fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  long long out = 0;
  const char* first = v->data();
  const char* last = v->data() + v->size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) fail(key, "expected an integer, got '" + *v + "'");
  return out;
}

std::vector<double> KeyValueConfig::get_doubles(const std::string& key) const {
  std::vector<double> out;
  const auto v = get(key);
  if (!v) return out;
  std::string_view rest(*v);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    const auto d = parse_decimal(item);
    if (!d) fail(key, "expected a comma-separated list of numbers, got '" + *v + "'");
    out.push_back(*d);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

std::optional<double> parse_decimal(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return out;
}

std::string format_decimal(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

ModelParams params_from_config(const KeyValueConfig& cfg, const ModelParams& defaults) {
  ModelParams p = defaults;
  p.a1 = cfg.get_double("a1", p.a1);
  p.b1 = cfg.get_double("b1", p.b1);
  p.c1 = cfg.get_double("c1", p.c1);
  p.a2 = cfg.get_double("a2", p.a2);
  p.b2 = cfg.get_double("b2", p.b2);
  p.c2 = cfg.get_double("c2", p.c2);
  p.beta = cfg.get_double("beta", p.beta);
  p.sigma1 = cfg.get_double("sigma1", p.sigma1);
  p.sigma2 = cfg.get_double("sigma2", p.sigma2);
  p.x0 = cfg.get_double("x0", p.x0);
  p.y0 = cfg.get_double("y0", p.y0);
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(cfg.source(), 0, e.what());
  }
  return p;
}

std::string to_config_text(const ModelParams& p) {
  std::string out;
  const auto put = [&out](const char* key, double v) {
    out += key;
    out += " = ";
    out += format_decimal(v);
    out += '\n';
  };
  put("a1", p.a1);
  put("b1", p.b1);
  put("c1", p.c1);
  put("a2", p.a2);
  put("b2", p.b2);
  put("c2", p.c2);
  put("beta", p.beta);
  put("sigma1", p.sigma1);
  put("sigma2", p.sigma2);
  put("x0", p.x0);
  put("y0", p.y0);
  return out;
}

}  // namespace arena
