#pragma once
// Flat dotted-key configuration: values come from a config file and/or CLI
// flags (flags win), are validated against a per-subcommand registry, and are
// echoed into every output's metadata together with a stable hash.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fluxknot/errors.hpp"

namespace fluxknot {

inline constexpr const char* kToolName = "fluxknot";
inline constexpr const char* kToolVersion = "0.1.0";

enum class ParamType { real, integer, text, toggle };

struct ParamSpec {
  std::string key;   // dotted config key ("curve.a")
  ParamType type = ParamType::real;
  std::string default_value;  // empty + required -> must be provided
  bool required = false;
  std::string help;
  std::string flag;  // explicit CLI flag; empty derives "--<key tail>"
};

class RunConfig {
 public:
  // Parse "key = value" lines; '#' starts a comment.
  static std::map<std::string, std::string> parse_file(const std::string& path);

  // Merge file values and overrides (overrides win), then validate against
  // the registry: unknown keys are an error listing them, missing required
  // keys are an error naming them, defaults fill the rest.
  static RunConfig build(const std::vector<ParamSpec>& registry,
                         const std::map<std::string, std::string>& file_values,
                         const std::map<std::string, std::string>& overrides);

  bool has(const std::string& key) const;
  double real(const std::string& key) const;
  long integer(const std::string& key) const;
  const std::string& text(const std::string& key) const;
  bool toggle(const std::string& key) const;

  const std::map<std::string, std::string>& items() const { return values_; }
  std::string canonical() const;  // "k=v;k=v;..." in key order
  std::uint64_t hash() const;     // FNV-1a over canonical()

 private:
  std::map<std::string, std::string> values_;
};

// Shortest round-trip-safe decimal form (17 significant digits).
std::string format_full(double v);

}  // namespace fluxknot
