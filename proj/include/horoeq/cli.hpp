#pragma once

// Experiment runner: a sectioned key=value config in, deterministic CSV out.
//
//   [experiment]
//   type = equidistribute
//   alpha = sqrt2
//   schedule = 1000, 10000
//   [test_function]
//   kind = cell
//   y_lo = 2
//
// Unknown keys, sections and malformed values are rejected with the line and
// key named (exit 2). Numeric guard trips exit 3.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace horoeq::cli {

inline constexpr const char* kVersion = "horoeq 0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitGuard = 3;

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& key, const std::string& msg);
  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

struct Entry {
  std::string value;
  int line = 0;  // 0 for defaults and overrides
};

struct Section {
  std::string name;
  int line = 0;
  std::map<std::string, Entry> entries;
};

/// A validated config with defaults filled in. Sections appear in file order;
/// [test_function] may repeat.
struct ExperimentConfig {
  std::string source;
  std::string type;
  Section experiment;
  std::vector<Section> test_functions;
  std::optional<Section> window;

  /// Canonical text: every section with all its keys in schema order.
  std::string canonical() const;
};

struct RunOptions {
  std::string subcommand;               // empty: take the type from the config
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;    // overrides [experiment] seed
  std::vector<std::string> overrides;   // "section.key=value" or "key=value"
};

/// Parses and validates. Throws ConfigError.
ExperimentConfig parse_config(const std::string& text, const std::string& source,
                              const RunOptions& opts = {});

/// Runs the experiment, writing CSV to out and diagnostics to err. Returns
/// the process exit code.
int run(const std::string& config_text, const std::string& source, const RunOptions& opts,
        std::ostream& out, std::ostream& err);

/// Reads the file and calls run.
int run_file(const std::string& path, const RunOptions& opts, std::ostream& out,
             std::ostream& err);

/// The output path named by the config, if any (after overrides).
std::optional<std::string> configured_output(const std::string& config_text,
                                             const std::string& source, const RunOptions& opts);

/// 17 significant digits, '.' decimal point.
std::string format_real(double v);

}  // namespace horoeq::cli
