#include "hiervec/config.hpp"

#include <filesystem>
#include <fstream>

#include "hiervec/error.hpp"

namespace hiervec {

namespace {

std::string trim(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

bool RunConfig::has(const std::string& key) const {
  return values.count(key) > 0;
}

std::string RunConfig::get(const std::string& key,
                           const std::string& fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

int RunConfig::get_int(const std::string& key, int fallback) const {
  auto it = values.find(key);
  if (it == values.end()) return fallback;
  try {
    return std::stoi(it->second);
  } catch (const std::exception&) {
    throw Error("config: key '" + key + "' is not an integer: " + it->second);
  }
}

uint64_t RunConfig::get_seed() const {
  auto it = values.find("seed");
  if (it == values.end())
    throw Error("config: 'seed' is required for stochastic steps");
  try {
    return std::stoull(it->second);
  } catch (const std::exception&) {
    throw Error("config: 'seed' is not an integer: " + it->second);
  }
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const {
  auto it = values.find(key);
  if (it == values.end()) return fallback;
  const std::string& v = it->second;
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw Error("config: key '" + key + "' is not a boolean: " + v);
}

std::vector<std::string> RunConfig::get_list(const std::string& key) const {
  std::vector<std::string> out;
  std::string cur;
  for (char c : get(key)) {
    if (c == ',') {
      if (!trim(cur).empty()) out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path);
  RunConfig cfg;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("config line " + std::to_string(line_no) +
                  " is not key = value: " + line);
    const std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw Error("config line " + std::to_string(line_no) + ": empty key");
    cfg.values[key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

void apply_overrides(RunConfig* cfg,
                     const std::vector<std::string>& overrides) {
  for (const auto& ov : overrides) {
    const size_t eq = ov.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error("override is not key=value: " + ov);
    cfg->values[trim(ov.substr(0, eq))] = trim(ov.substr(eq + 1));
  }
}

void validate_config(const RunConfig& cfg,
                     const std::vector<std::string>& required,
                     const std::vector<std::string>& required_paths) {
  std::string problems;
  for (const auto& key : required) {
    if (!cfg.has(key) || cfg.get(key).empty())
      problems += "  missing key: " + key + "\n";
  }
  for (const auto& key : required_paths) {
    if (!cfg.has(key) || cfg.get(key).empty()) {
      problems += "  missing key: " + key + "\n";
    } else if (!std::filesystem::exists(cfg.get(key))) {
      problems += "  path does not exist: " + key + " = " + cfg.get(key) + "\n";
    }
  }
  if (!problems.empty()) throw Error("invalid configuration:\n" + problems);
}

}  // namespace hiervec
