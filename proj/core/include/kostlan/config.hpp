#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kostlan {

enum class Origin { default_value, file, env, flag };
std::string_view to_string(Origin o);

template <class T>
struct Setting {
  T value{};
  Origin origin = Origin::default_value;

  void set(T v, Origin o) {
    value = std::move(v);
    origin = o;
  }
};

/// Values given on the command line; unset members leave lower layers alone.
struct FlagOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> n;
  std::optional<int> samples;
  std::optional<std::string> out;
  std::optional<int> threads;
  std::optional<bool> quick;
};

struct AppConfig {
  std::string subcommand;
  Setting<std::uint64_t> seed;
  Setting<int> n;
  Setting<int> samples;
  Setting<std::string> out;
  Setting<int> threads;
  Setting<bool> quick;
  Setting<bool> record_timing;
  Setting<int> max_iterations;
  Setting<int> grid_points;

  struct Entry {
    std::string key;
    std::string value;
    Origin origin;
  };
  std::vector<Entry> entries() const;
  /// One "key = value  (origin)" line per field.
  std::string echo() const;
  /// Throws ConfigError naming the first out-of-range field.
  void validate() const;
};

inline constexpr std::string_view kSubcommands[] = {"sample",   "mc",       "constants",
                                                     "kacrice",  "minimize", "verify"};

AppConfig default_config(std::string_view subcommand);

/// Flat `key = value` file; `#` comments; unknown keys are rejected.
void apply_file(AppConfig& cfg, const std::string& path);
/// KOSTLAN_OUT_DIR and KOSTLAN_THREADS.
void apply_env(AppConfig& cfg, const std::function<const char*(const char*)>& getenv_fn);
void apply_flags(AppConfig& cfg, const FlagOverrides& flags);

/// default < file < env < flag, then validate.
AppConfig parse_config(std::string_view subcommand, const std::optional<std::string>& path,
                       const FlagOverrides& flags,
                       const std::function<const char*(const char*)>& getenv_fn = {});

}  // namespace kostlan
