#pragma once

// Scenario description shared by the CLI subcommands, read from `key = value`
// files with `[section]` headers or dotted keys.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "duopoly/engine.hpp"
#include "duopoly/models.hpp"

namespace duopoly::cli {

enum class OutputFormat { kCsv, kTable };

OutputFormat parse_format(std::string_view name);

struct LinearSpec {
  LinearDuopolyParams params{};
  LinearDomain domain = LinearDomain::kZeroLevelBox;
};

struct Scenario {
  std::string model_id = "linear-particular";
  std::optional<LinearSpec> linear;
  std::optional<CournotLinearParams> cournot;
  std::optional<double> norm_p;

  /// Concatenated coordinates of x then y; empty means the model's default start.
  std::vector<double> start;

  StoppingRule rule = StoppingRule::a_posteriori(1e-6);
  std::optional<double> k_override;
  bool clamp = false;

  std::vector<double> eps = {0.1, 0.01, 0.001, 0.0001, 0.00001};
  std::size_t samples = 100'000;
  std::uint64_t seed = 42;
  unsigned threads = 0;
  std::size_t grid = 0;

  OutputFormat format = OutputFormat::kCsv;

  ResponseModel build_model() const;
  State resolve_start(const ResponseModel& model) const;
};

/// Flattened `section.key` -> (value, line) view of a config file.
struct ConfigEntry {
  std::string value;
  int line = 0;
};
using ConfigMap = std::map<std::string, ConfigEntry>;

/// Throws Error(kConfigParse) with "source:line: ..." diagnostics.
ConfigMap parse_config_text(std::string_view text, const std::string& source);

/// Applies entries to a scenario; unknown keys and bad values are errors.
void apply_config(const ConfigMap& entries, const std::string& source, Scenario& scenario);

Scenario load_scenario(const std::filesystem::path& path);

/// Numbers separated by commas, semicolons, spaces or parentheses.
std::vector<double> parse_number_list(std::string_view text, const std::string& field);

double parse_real(std::string_view text, const std::string& field);
std::uint64_t parse_count(std::string_view text, const std::string& field);

}  // namespace duopoly::cli
