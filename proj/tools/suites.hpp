#pragma once

#include "qbfs/serialization.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qbfs::cli {

struct RunConfig {
  std::string suite;
  std::string norm;
  std::uint64_t seed = 1;
  /// 0 selects the suite default.
  std::size_t samples = 0;
  std::string out;
  std::string format = "json";
  std::size_t n = 1;
  std::string a_grid = "0.1:1.0:0.1";
  /// 0 selects the suite default.
  double eps = 0.0;
  std::string input;
  bool trace = false;
  int refine = 0;
  int value_grid = 2;
  std::string generator = "geometric:ratio=0.25";
  int prefix = -1;
  double tolerance = 1e-9;
};

struct Assertion {
  std::string id;
  std::string anchor;
  bool passed = true;
  /// Distance to failure; negative when the assertion fails.
  double margin = 0.0;
  std::size_t cases = 0;
  std::string witness;
};

struct Report {
  std::string suite;
  std::vector<Assertion> assertions;
  Json data = Json::object();
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;

  bool passed() const;
};

const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for bad configuration.
Report run_suite(const RunConfig& config);

/// Applies key=value lines (flag names without dashes; '#' starts a comment).
void load_config_file(const std::string& path, RunConfig& config);

Json report_json(const Report& report, const RunConfig& config);
std::string report_csv(const Report& report);

}  // namespace qbfs::cli
