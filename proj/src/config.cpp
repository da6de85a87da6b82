#include <algorithm>
#include <sstream>

#include "horoeq/cli.hpp"

namespace horoeq::cli {

namespace {

struct KeySpec {
  const char* key;
  const char* def;
};

using Schema = std::vector<KeySpec>;

const Schema& experiment_schema(const std::string& type) {
  static const std::map<std::string, Schema> schemas = {
      {"equidistribute",
       {{"group", "psl2z"},
        {"alpha", "sqrt2"},
        {"nu", "1"},
        {"c", "1"},
        {"schedule", "1000"},
        {"delta", "0"},
        {"include_zero", "false"},
        {"weight", "none"},
        {"weight_lo", "0"},
        {"weight_hi", "1"},
        {"weight_half_width", "1"}}},
      {"horocycle", {{"group", "psl2z"}, {"heights", "0.0001"}, {"n_quad", "200000"}, {"modes", "0"}}},
      {"paircorr",
       {{"alpha", "sqrt2"},
        {"schedule", "1000"},
        {"forms", "sharp"},
        {"intervals", "0:1"},
        {"random_intervals", "0"}}},
      {"counterexample", {{"group", "psl2z"}, {"nu", "2"}, {"levels", "2"}, {"samples", "1"}}},
      {"diophantine",
       {{"alpha", "sqrt2"},
        {"depth", "20"},
        {"N1", "1"},
        {"schedule", "100, 1000"},
        {"M", "1e9"},
        {"fit_M", "100"}}},
      {"heights",
       {{"group", "psl2z"}, {"report", "heights"}, {"samples", "500"}, {"word_length", "6"}}},
  };
  const auto it = schemas.find(type);
  if (it == schemas.end()) throw std::out_of_range(type);
  return it->second;
}

const Schema& common_schema() {
  static const Schema s = {{"type", ""}, {"seed", "0"}, {"output", ""}};
  return s;
}

const Schema& test_function_schema() {
  static const Schema s = {{"kind", "one"},         {"x_lo", "-inf"},     {"x_hi", "inf"},
                           {"y_lo", "0"},           {"y_hi", "inf"},      {"epsilon", "0"},
                           {"gamma", "0"},          {"v", "0"},           {"psi", "bump"},
                           {"psi_half_width", "1"}, {"psi_table", ""},    {"n_mc", "100000"},
                           {"reflected", "false"}};
  return s;
}

const Schema& window_schema() {
  static const Schema s = {{"g", "fejer"},      {"g_scale", "1"},          {"g_spacing", "1"},
                           {"g_table", ""},     {"psi", "bump"},           {"psi_half_width", "1"},
                           {"psi_table", ""}};
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool has_key(const Schema& s, const std::string& k) {
  return std::any_of(s.begin(), s.end(), [&](const KeySpec& ks) { return k == ks.key; });
}

void fill_defaults(Section& sec, const Schema& schema) {
  for (const auto& ks : schema)
    if (!sec.entries.count(ks.key)) sec.entries[ks.key] = Entry{ks.def, 0};
}

void check_keys(const std::string& source, const Section& sec, const Schema& schema,
                const Schema* extra, const std::string& what) {
  for (const auto& [k, e] : sec.entries)
    if (!has_key(schema, k) && !(extra && has_key(*extra, k)))
      throw ConfigError(source, e.line, k,
                        "unknown key '" + k + "' in [" + sec.name + "]" + what);
}

void dump(std::ostringstream& os, const Section& sec, const Schema& a, const Schema* b) {
  os << "[" << sec.name << "]\n";
  for (const Schema* s : {&a, b}) {
    if (!s) continue;
    for (const auto& ks : *s) os << ks.key << " = " << sec.entries.at(ks.key).value << "\n";
  }
}

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& key,
                         const std::string& msg)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) +
                         ": " + msg),
      line_(line),
      key_(key) {}

std::string ExperimentConfig::canonical() const {
  std::ostringstream os;
  dump(os, experiment, common_schema(), &experiment_schema(type));
  for (const auto& tf : test_functions) dump(os, tf, test_function_schema(), nullptr);
  if (window) dump(os, *window, window_schema(), nullptr);
  return os.str();
}

ExperimentConfig parse_config(const std::string& text, const std::string& source,
                              const RunOptions& opts) {
  std::vector<Section> sections;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty() || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(source, line_no, "", "unterminated section header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name != "experiment" && name != "test_function" && name != "window")
        throw ConfigError(source, line_no, name, "unknown section [" + name + "]");
      if (name != "test_function")
        for (const auto& s : sections)
          if (s.name == name)
            throw ConfigError(source, line_no, name, "section [" + name + "] appears twice");
      sections.push_back(Section{name, line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source, line_no, "", "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(source, line_no, "", "empty key");
    if (sections.empty())
      throw ConfigError(source, line_no, key, "key '" + key + "' outside any section");
    auto& entries = sections.back().entries;
    if (entries.count(key))
      throw ConfigError(source, line_no, key, "duplicate key '" + key + "'");
    entries[key] = Entry{value, line_no};
  }

  ExperimentConfig cfg;
  cfg.source = source;
  bool have_experiment = false;
  for (auto& s : sections) {
    if (s.name == "experiment") {
      cfg.experiment = s;
      have_experiment = true;
    } else if (s.name == "test_function") {
      cfg.test_functions.push_back(s);
    } else {
      cfg.window = s;
    }
  }
  if (!have_experiment) cfg.experiment = Section{"experiment", 0, {}};

  for (const auto& ov : opts.overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--set", 0, ov, "override '" + ov + "' must be key=value");
    std::string key = trim(ov.substr(0, eq));
    const std::string value = trim(ov.substr(eq + 1));
    std::string sec = "experiment";
    if (const auto dot = key.find('.'); dot != std::string::npos) {
      sec = key.substr(0, dot);
      key = key.substr(dot + 1);
    }
    if (sec == "experiment") {
      cfg.experiment.entries[key] = Entry{value, 0};
    } else if (sec == "test_function") {
      if (cfg.test_functions.empty()) cfg.test_functions.push_back(Section{"test_function", 0, {}});
      for (auto& tf : cfg.test_functions) tf.entries[key] = Entry{value, 0};
    } else if (sec == "window") {
      if (!cfg.window) cfg.window = Section{"window", 0, {}};
      cfg.window->entries[key] = Entry{value, 0};
    } else {
      throw ConfigError("--set", 0, key, "unknown section '" + sec + "' in override");
    }
  }
  if (opts.seed) cfg.experiment.entries["seed"] = Entry{std::to_string(*opts.seed), 0};

  const auto type_it = cfg.experiment.entries.find("type");
  std::string type = type_it != cfg.experiment.entries.end() ? type_it->second.value : "";
  if (!opts.subcommand.empty()) {
    if (!type.empty() && type != opts.subcommand)
      throw ConfigError(source, type_it->second.line, "type",
                        "config type '" + type + "' does not match subcommand '" +
                            opts.subcommand + "'");
    type = opts.subcommand;
  }
  if (type.empty()) throw ConfigError(source, 0, "type", "missing [experiment] type");
  const Schema* schema = nullptr;
  try {
    schema = &experiment_schema(type);
  } catch (const std::out_of_range&) {
    throw ConfigError(source, type_it != cfg.experiment.entries.end() ? type_it->second.line : 0,
                      "type", "unknown experiment type '" + type + "'");
  }
  cfg.type = type;
  cfg.experiment.entries["type"] = Entry{type, type_it != cfg.experiment.entries.end() ? type_it->second.line : 0};
  check_keys(source, cfg.experiment, common_schema(), schema, " for type " + type);
  fill_defaults(cfg.experiment, common_schema());
  fill_defaults(cfg.experiment, *schema);
  for (auto& tf : cfg.test_functions) {
    check_keys(source, tf, test_function_schema(), nullptr, "");
    fill_defaults(tf, test_function_schema());
  }
  if (cfg.window) {
    check_keys(source, *cfg.window, window_schema(), nullptr, "");
    fill_defaults(*cfg.window, window_schema());
  }
  return cfg;
}

}  // namespace horoeq::cli
