#include "fho/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fho/errors.hpp"

namespace fho {

namespace {

const std::map<std::string, std::vector<std::string>>& registry() {
  static const std::map<std::string, std::vector<std::string>> reg = {
      {"propagate", {"dim", "beta", "t", "route", "u0", "max-degree", "out"}},
      {"decay-scan", {"dim", "beta", "p", "q", "max-degree", "out"}},
      {"solve",
       {"dim", "beta", "gamma", "p", "u0", "t-end", "dt", "max-degree", "out",
        "seed"}},
      {"strichartz", {"dim", "beta", "r", "t-end", "count", "max-degree", "out"}},
      {"subcheck", {"t", "eps", "nodes"}},
      {"selftest", {}},
  };
  return reg;
}

bool key_allowed(const std::string& sub, const std::string& key) {
  if (key == "config" || key == "threads") return true;
  const auto& allowed = registry().at(sub);
  return std::find(allowed.begin(), allowed.end(), key) != allowed.end();
}

void merge_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw io_error("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw usage_error("config file " + path + ":" + std::to_string(lineno) +
                        ": expected key=value");
    std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    if (!key_allowed(cfg.subcommand, key))
      throw usage_error("config file key '" + key + "' is not valid for '" +
                        cfg.subcommand + "'");
    // command line wins over the file
    cfg.params.emplace(key, value);
  }
}

}  // namespace

const std::string& RunConfig::get(const std::string& key,
                                  const std::string& fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    std::size_t pos = 0;
    double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw type_error("flag --" + key + " expects a number, got '" + it->second + "'");
  }
}

int RunConfig::get_int(const std::string& key, int fallback) const {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    std::size_t pos = 0;
    int v = std::stoi(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw type_error("flag --" + key + " expects an integer, got '" + it->second + "'");
  }
}

RunConfig parse_args(const std::vector<std::string>& args) {
  if (args.empty())
    throw usage_error(
        "missing subcommand (propagate, decay-scan, solve, strichartz, "
        "subcheck, selftest)");
  RunConfig cfg;
  cfg.subcommand = args[0];
  if (registry().find(cfg.subcommand) == registry().end())
    throw usage_error("unknown subcommand '" + cfg.subcommand + "'");

  std::string config_file;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0)
      throw usage_error("expected a --flag, got '" + a + "'");
    std::string key = a.substr(2);
    if (key == "print-config") {
      cfg.print_config = true;
      continue;
    }
    if (!key_allowed(cfg.subcommand, key))
      throw usage_error("unknown flag --" + key + " for '" + cfg.subcommand + "'");
    if (i + 1 >= args.size())
      throw usage_error("flag --" + key + " needs a value");
    std::string value = args[++i];
    if (key == "config")
      config_file = value;
    else
      cfg.params[key] = value;
  }
  if (!config_file.empty()) merge_config_file(cfg, config_file);
  return cfg;
}

std::string print_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << cfg.subcommand;
  for (const auto& [k, v] : cfg.params) os << " --" << k << " " << v;
  return os.str();
}

}  // namespace fho
