#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "speclab/report.hpp"

namespace speclab {

struct ConfigKey {
  std::string name;
  std::string default_value;
  std::string help;
};

/// Every accepted configuration key with its default, in documentation order.
const std::vector<ConfigKey>& config_keys();

// Resolved configuration: defaults, then a key=value file, then flags.
class RunConfig {
 public:
  RunConfig();
  /// Lines "key = value"; '#' starts a comment. Unknown keys are rejected.
  void load_file(const std::string& path);
  void load_text(const std::string& text, const std::string& origin);
  void set(const std::string& key, const std::string& value);

  const std::string& str(const std::string& key) const;
  double num(const std::string& key) const;
  long long integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::vector<double> list(const std::string& key) const;
  bool is_auto(const std::string& key) const { return str(key) == "auto"; }

  Json to_json() const;

 private:
  std::map<std::string, std::string> values_;
};

/// Exit codes: 0 ok, 1 certified inequality violated, 2 invalid input or
/// configuration, 3 numerical failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace speclab
