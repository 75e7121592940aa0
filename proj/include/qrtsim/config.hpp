#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qrtsim/model.hpp"

namespace qrtsim {

// INI-style configuration:
//   [model]     omega_a, n_th, gamma_phi, omega
//   [ensemble]  rates = v1,v2,...   weights = w1,w2,...
//               -- or --            gamma0, b, a (or alpha), n
//   [run]       free-form parameters consumed per command
// '#' and ';' start comments; keys may not repeat within a section.
// All parse errors carry "<name>:<line>:".
class ConfigFile {
 public:
  static ConfigFile parse(std::istream& in, const std::string& name);
  static ConfigFile parse_file(const std::string& path);

  const std::string& name() const { return name_; }
  bool has(const std::string& section, const std::string& key) const;

  double require_double(const std::string& section,
                        const std::string& key) const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  int get_int(const std::string& section, const std::string& key,
              int fallback) const;
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  std::string require_string(const std::string& section,
                             const std::string& key) const;
  std::vector<double> require_list(const std::string& section,
                                   const std::string& key) const;

 private:
  struct Value {
    std::string text;
    int line = 0;
  };
  const Value* find(const std::string& section, const std::string& key) const;
  [[noreturn]] void fail(const Value& v, const std::string& message) const;

  std::string name_;
  std::map<std::string, std::map<std::string, Value>> sections_;
};

// Builds the physical model from [model] and [ensemble]; exactly one ensemble
// form must be present.
TlsModel build_model(const ConfigFile& cfg);

}  // namespace qrtsim
