#include "fluxknot/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace fluxknot {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::map<std::string, std::string> RunConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error(path + ":" + std::to_string(lineno) +
                         ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) throw config_error(path + ":" + std::to_string(lineno) +
                                        ": empty key");
    out[key] = val;
  }
  return out;
}

RunConfig RunConfig::build(const std::vector<ParamSpec>& registry,
                           const std::map<std::string, std::string>& file_values,
                           const std::map<std::string, std::string>& overrides) {
  std::map<std::string, std::string> merged = file_values;
  for (const auto& [k, v] : overrides) merged[k] = v;

  std::string unknown;
  for (const auto& [k, v] : merged) {
    bool known = false;
    for (const auto& spec : registry) known = known || spec.key == k;
    if (!known) unknown += (unknown.empty() ? "" : ", ") + k;
  }
  if (!unknown.empty()) throw config_error("unknown config keys: " + unknown);

  RunConfig cfg;
  for (const auto& spec : registry) {
    const auto it = merged.find(spec.key);
    if (it != merged.end()) {
      cfg.values_[spec.key] = it->second;
    } else if (spec.required) {
      const std::string flag = spec.flag.empty() ? "" : " (" + spec.flag + ")";
      throw config_error("missing required option: " + spec.key + flag);
    } else {
      cfg.values_[spec.key] = spec.default_value;
    }
  }

  // Fail fast on malformed numerics.
  for (const auto& spec : registry) {
    if (spec.type == ParamType::real) cfg.real(spec.key);
    if (spec.type == ParamType::integer) cfg.integer(spec.key);
    if (spec.type == ParamType::toggle) cfg.toggle(spec.key);
  }
  return cfg;
}

bool RunConfig::has(const std::string& key) const {
  const auto it = values_.find(key);
  return it != values_.end() && !it->second.empty();
}

double RunConfig::real(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw config_error("no such option: " + key);
  try {
    size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw config_error(key + ": expected a real number, got '" + it->second + "'");
  }
}

long RunConfig::integer(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw config_error("no such option: " + key);
  try {
    size_t pos = 0;
    const long v = std::stol(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw config_error(key + ": expected an integer, got '" + it->second + "'");
  }
}

const std::string& RunConfig::text(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw config_error("no such option: " + key);
  return it->second;
}

bool RunConfig::toggle(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw config_error("no such option: " + key);
  if (it->second == "true" || it->second == "1" || it->second == "on") return true;
  if (it->second == "false" || it->second == "0" || it->second == "off" ||
      it->second.empty())
    return false;
  throw config_error(key + ": expected a boolean, got '" + it->second + "'");
}

std::string RunConfig::canonical() const {
  std::string out;
  for (const auto& [k, v] : values_) {
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  }
  return out;
}

std::uint64_t RunConfig::hash() const {
  // FNV-1a, 64-bit.
  std::uint64_t h = 1469598103934665603ULL;
  for (const char c : canonical()) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace fluxknot
