#include "qrtsim/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qrtsim {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v)) {
    throw ValidationError(where + ": expected a number, got '" + text + "'");
  }
  return v;
}

}  // namespace

ConfigFile ConfigFile::parse(std::istream& in, const std::string& name) {
  static const std::map<std::string, std::vector<std::string>> known = {
      {"model", {"omega_a", "n_th", "gamma_phi", "omega"}},
      {"ensemble", {"rates", "weights", "gamma0", "b", "a", "alpha", "n"}},
      {"run", {}},  // validated per command
  };
  ConfigFile cfg;
  cfg.name_ = name;
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = name + ":" + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ValidationError(where + ": unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (known.find(section) == known.end()) {
        throw ValidationError(where + ": unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(where + ": expected key = value");
    }
    if (section.empty()) {
      throw ValidationError(where + ": key outside any section");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ValidationError(where + ": empty key");
    const auto& allowed = known.at(section);
    if (!allowed.empty() &&
        std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ValidationError(where + ": unknown key '" + key + "' in [" +
                            section + "]");
    }
    auto& sec = cfg.sections_[section];
    if (sec.count(key)) {
      throw ValidationError(where + ": duplicate key '" + key + "'");
    }
    sec[key] = Value{value, lineno};
  }
  return cfg;
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  return parse(in, path);
}

const ConfigFile::Value* ConfigFile::find(const std::string& section,
                                          const std::string& key) const {
  const auto sec = sections_.find(section);
  if (sec == sections_.end()) return nullptr;
  const auto it = sec->second.find(key);
  return it == sec->second.end() ? nullptr : &it->second;
}

void ConfigFile::fail(const Value& v, const std::string& message) const {
  throw ValidationError(name_ + ":" + std::to_string(v.line) + ": " + message);
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

double ConfigFile::require_double(const std::string& section,
                                  const std::string& key) const {
  const Value* v = find(section, key);
  if (!v) {
    throw ValidationError(name_ + ": missing required key '" + key + "' in [" +
                          section + "]");
  }
  return parse_double(v->text,
                      name_ + ":" + std::to_string(v->line));
}

double ConfigFile::get_double(const std::string& section,
                              const std::string& key, double fallback) const {
  return find(section, key) ? require_double(section, key) : fallback;
}

int ConfigFile::get_int(const std::string& section, const std::string& key,
                        int fallback) const {
  const Value* v = find(section, key);
  if (!v) return fallback;
  const double d = require_double(section, key);
  const int i = static_cast<int>(d);
  if (double(i) != d) fail(*v, "expected an integer, got '" + v->text + "'");
  return i;
}

std::string ConfigFile::get_string(const std::string& section,
                                   const std::string& key,
                                   const std::string& fallback) const {
  const Value* v = find(section, key);
  return v ? v->text : fallback;
}

std::string ConfigFile::require_string(const std::string& section,
                                       const std::string& key) const {
  const Value* v = find(section, key);
  if (!v) {
    throw ValidationError(name_ + ": missing required key '" + key + "' in [" +
                          section + "]");
  }
  return v->text;
}

std::vector<double> ConfigFile::require_list(const std::string& section,
                                             const std::string& key) const {
  const Value* v = find(section, key);
  if (!v) {
    throw ValidationError(name_ + ": missing required key '" + key + "' in [" +
                          section + "]");
  }
  const std::string where = name_ + ":" + std::to_string(v->line);
  std::vector<double> out;
  std::stringstream ss(v->text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(item, where));
  if (out.empty()) fail(*v, "expected a comma-separated list");
  return out;
}

TlsModel build_model(const ConfigFile& cfg) {
  TlsModel model;
  model.omega_a = cfg.get_double("model", "omega_a", 0.0);
  model.n_th = cfg.get_double("model", "n_th", 0.0);
  model.gamma_phi = cfg.get_double("model", "gamma_phi", 0.0);
  model.omega = cfg.get_double("model", "omega", 0.0);
  if (model.n_th < 0.0) throw ValidationError("n_th must be >= 0");
  if (model.gamma_phi < 0.0) throw ValidationError("gamma_phi must be >= 0");

  const bool listed = cfg.has("ensemble", "rates") ||
                      cfg.has("ensemble", "weights");
  const bool generated = cfg.has("ensemble", "gamma0") ||
                         cfg.has("ensemble", "b") ||
                         cfg.has("ensemble", "a") ||
                         cfg.has("ensemble", "alpha") ||
                         cfg.has("ensemble", "n");
  if (listed && generated) {
    throw ValidationError(cfg.name() +
                          ": [ensemble] mixes listed rates with exponential "
                          "parameters; give exactly one form");
  }
  if (listed) {
    model.ensemble = make_ensemble(cfg.require_list("ensemble", "rates"),
                                   cfg.require_list("ensemble", "weights"));
  } else if (generated) {
    const double gamma0 = cfg.require_double("ensemble", "gamma0");
    const double b = cfg.require_double("ensemble", "b");
    double a = 0.0;
    if (cfg.has("ensemble", "a") == cfg.has("ensemble", "alpha")) {
      throw ValidationError(cfg.name() +
                            ": exponential ensemble needs exactly one of 'a' "
                            "or 'alpha'");
    }
    a = cfg.has("ensemble", "a") ? cfg.require_double("ensemble", "a")
                                 : cfg.require_double("ensemble", "alpha") * b;
    const int n = cfg.get_int("ensemble", "n", 0);
    model.ensemble = exponential_ensemble(gamma0, b, a, n);
  } else {
    throw ValidationError(cfg.name() + ": missing [ensemble] definition");
  }
  return model;
}

}  // namespace qrtsim
