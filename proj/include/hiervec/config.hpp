#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hiervec {

// Flat key-value run configuration. File lines are `key = value`; '#'
// starts a comment. Flag overrides win over file values.
struct RunConfig {
  std::map<std::string, std::string> values;

  bool has(const std::string& key) const;
  std::string get(const std::string& key,
                  const std::string& fallback = "") const;
  int get_int(const std::string& key, int fallback) const;
  uint64_t get_seed() const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<std::string> get_list(const std::string& key) const;  // comma
};

RunConfig load_config(const std::string& path);

// Applies key=value override strings on top of the file values.
void apply_overrides(RunConfig* cfg,
                     const std::vector<std::string>& overrides);

// Checks that every key in `required` is present and that every key in
// `required_paths` names an existing path; throws one Error listing all
// problems at once.
void validate_config(const RunConfig& cfg,
                     const std::vector<std::string>& required,
                     const std::vector<std::string>& required_paths);

}  // namespace hiervec
