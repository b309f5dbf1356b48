#pragma once

#include <map>
#include <string>
#include <vector>

namespace fho {

// Parsed command line: one subcommand plus validated string parameters.
// Numeric conversion and domain checks happen at dispatch time so usage,
// type, and precondition failures keep distinct exit codes (2, 3, 4).
struct RunConfig {
  std::string subcommand;
  std::map<std::string, std::string> params;
  bool print_config = false;

  bool has(const std::string& key) const { return params.count(key) > 0; }
  const std::string& get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
};

// args excludes the program name. `--config file` merges key=value lines
// from the file, command-line flags winning. Unknown subcommands or flags
// raise usage errors naming the offender.
RunConfig parse_args(const std::vector<std::string>& args);

// Canonical flag form; feeding it back through parse_args reproduces the
// identical RunConfig.
std::string print_config(const RunConfig& cfg);

}  // namespace fho
