#include "kostlan/config.hpp"

#include <algorithm>
#include <cctype>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cstdlib>
#include <fmt/format.h>
#include <sstream>

#include "kostlan/error.hpp"

namespace kostlan {
namespace {

std::string unquote(std::string s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  long double v;
  in >> v;
  if (!in || !(in >> std::ws).eof()) throw ConfigError(fmt::format("{}: '{}' is not a number", key, text));
  if (v != static_cast<long double>(static_cast<long long>(v))) {
    throw ConfigError(fmt::format("{}: '{}' is not an integer", key, text));
  }
  if constexpr (std::is_unsigned_v<T>) {
    if (v < 0) throw ConfigError(fmt::format("{}: must be nonnegative", key));
    std::istringstream again(text);
    unsigned long long u;
    again >> u;
    return static_cast<T>(u);
  } else {
    return static_cast<T>(v);
  }
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError(fmt::format("{}: '{}' is not a boolean", key, text));
}

void assign(AppConfig& cfg, const std::string& key, const std::string& raw, Origin origin) {
  const std::string v = unquote(raw);
  if (key == "seed") cfg.seed.set(parse_number<std::uint64_t>(key, v), origin);
  else if (key == "n") cfg.n.set(parse_number<int>(key, v), origin);
  else if (key == "samples") cfg.samples.set(parse_number<int>(key, v), origin);
  else if (key == "out") cfg.out.set(v, origin);
  else if (key == "threads") cfg.threads.set(parse_number<int>(key, v), origin);
  else if (key == "quick") cfg.quick.set(parse_bool(key, v), origin);
  else if (key == "record_timing") cfg.record_timing.set(parse_bool(key, v), origin);
  else if (key == "max_iterations") cfg.max_iterations.set(parse_number<int>(key, v), origin);
  else if (key == "grid_points") cfg.grid_points.set(parse_number<int>(key, v), origin);
  else throw ConfigError(fmt::format("unknown configuration key '{}'", key));
}

}  // namespace

std::string_view to_string(Origin o) {
  switch (o) {
    case Origin::default_value: return "default";
    case Origin::file: return "file";
    case Origin::env: return "env";
    case Origin::flag: return "flag";
  }
  return "default";
}

AppConfig default_config(std::string_view sub) {
  if (std::find(std::begin(kSubcommands), std::end(kSubcommands), sub) == std::end(kSubcommands)) {
    throw ConfigError(fmt::format("unknown subcommand '{}'", sub));
  }
  AppConfig c;
  c.subcommand = std::string(sub);
  c.seed.value = 20240611;
  c.n.value = 200;
  c.samples.value = 1000;
  c.out.value = "out";
  c.threads.value = 1;
  c.quick.value = false;
  c.record_timing.value = true;
  c.max_iterations.value = 2000;
  c.grid_points.value = 40;
  if (sub == "sample") {
    c.n.value = 100;
    c.samples.value = 1;
  } else if (sub == "kacrice") {
    c.n.value = 100;
    c.samples.value = 2000;
  }
  return c;
}

void apply_file(AppConfig& cfg, const std::string& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(fmt::format("cannot read config {}: {}", path, e.message()));
  }
  for (const auto& [key, node] : tree) {
    if (!node.empty()) throw ConfigError(fmt::format("sections are not supported ('{}')", key));
    std::string value = node.data();
    // Trailing comments.
    const auto hash = value.find(" #");
    if (hash != std::string::npos) value.erase(hash);
    while (!value.empty() && std::isspace(static_cast<unsigned char>(value.back()))) value.pop_back();
    assign(cfg, key, value, Origin::file);
  }
}

void apply_env(AppConfig& cfg, const std::function<const char*(const char*)>& getenv_fn) {
  auto get = getenv_fn ? getenv_fn : [](const char* k) -> const char* { return std::getenv(k); };
  if (const char* v = get("KOSTLAN_OUT_DIR"); v && *v) cfg.out.set(v, Origin::env);
  if (const char* v = get("KOSTLAN_THREADS"); v && *v) {
    cfg.threads.set(parse_number<int>("KOSTLAN_THREADS", v), Origin::env);
  }
}

void apply_flags(AppConfig& cfg, const FlagOverrides& f) {
  if (f.seed) cfg.seed.set(*f.seed, Origin::flag);
  if (f.n) cfg.n.set(*f.n, Origin::flag);
  if (f.samples) cfg.samples.set(*f.samples, Origin::flag);
  if (f.out) cfg.out.set(*f.out, Origin::flag);
  if (f.threads) cfg.threads.set(*f.threads, Origin::flag);
  if (f.quick) cfg.quick.set(*f.quick, Origin::flag);
}

void AppConfig::validate() const {
  if (n.value < 1) throw ConfigError(fmt::format("n = {} is out of range (need n >= 1)", n.value));
  if (n.value > 20000) throw ConfigError(fmt::format("n = {} is out of range (need n <= 20000)", n.value));
  if (samples.value < 1) throw ConfigError(fmt::format("samples = {} is out of range (need >= 1)", samples.value));
  if (threads.value < 1 || threads.value > 1024) {
    throw ConfigError(fmt::format("threads = {} is out of range (need 1..1024)", threads.value));
  }
  if (max_iterations.value < 0) throw ConfigError("max_iterations is out of range (need >= 0)");
  if (grid_points.value < 3) throw ConfigError("grid_points is out of range (need >= 3)");
  if (out.value.empty()) throw ConfigError("out must not be empty");
}

std::vector<AppConfig::Entry> AppConfig::entries() const {
  return {
      {"seed", std::to_string(seed.value), seed.origin},
      {"n", std::to_string(n.value), n.origin},
      {"samples", std::to_string(samples.value), samples.origin},
      {"out", out.value, out.origin},
      {"threads", std::to_string(threads.value), threads.origin},
      {"quick", quick.value ? "true" : "false", quick.origin},
      {"record_timing", record_timing.value ? "true" : "false", record_timing.origin},
      {"max_iterations", std::to_string(max_iterations.value), max_iterations.origin},
      {"grid_points", std::to_string(grid_points.value), grid_points.origin},
  };
}

std::string AppConfig::echo() const {
  std::string s;
  for (const auto& e : entries()) {
    s += fmt::format("{:<15} = {:<20} ({})\n", e.key, e.value, to_string(e.origin));
  }
  return s;
}

AppConfig parse_config(std::string_view sub, const std::optional<std::string>& path,
                       const FlagOverrides& flags,
                       const std::function<const char*(const char*)>& getenv_fn) {
  AppConfig cfg = default_config(sub);
  if (path) apply_file(cfg, *path);
  apply_env(cfg, getenv_fn);
  apply_flags(cfg, flags);
  cfg.validate();
  return cfg;
}

}  // namespace kostlan
