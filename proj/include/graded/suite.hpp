#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "graded/field.hpp"
#include "graded/heat.hpp"
#include "graded/quadrature.hpp"
#include "graded/report.hpp"
#include "json.hpp"

namespace graded {

// One experiment: where, with which kernel and quadrature, what to run.
struct ExperimentConfig {
  std::string group = "R1";
  std::vector<double> grid_lo{-20};
  std::vector<double> grid_hi{20};
  std::vector<std::size_t> grid_count{4096};
  std::string heat = "euclidean_explicit";
  QuadratureConfig quad;
  std::string operation = "verify";
  nlohmann::json params = nlohmann::json::object();
  std::string out_dir = "out";
  std::uint64_t seed = 2024;

  Grid grid() const;
  GroupPtr group_ptr() const;
  HeatModel heat_model() const;

  nlohmann::json to_json() const;
  // Unknown or mistyped keys raise ParseError naming the key.
  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig parse(const std::string& text);
  std::string emit() const;
  bool operator==(const ExperimentConfig& o) const { return to_json() == o.to_json(); }
};

nlohmann::json quadrature_to_json(const QuadratureConfig& q);
QuadratureConfig quadrature_from_json(const nlohmann::json& j);

// Resolution and family sizes of the verification suite.
struct SuiteSettings {
  std::uint64_t seed = 2024;
  QuadratureConfig quad;
  std::size_t r1_count = 4096;
  double r1_half = 20;
  std::size_t r2_count = 256;
  std::size_t h1_count = 64;
  int g_alpha_pad = 16;
  std::size_t r1_family = 6;
  std::size_t h1_family = 10;
  std::size_t shifts = 20;
  std::string cache_dir;  // H1 kernel cache, empty disables

  // Reads the `verify` parameters of a config (missing keys keep defaults).
  static SuiteSettings from_config(const ExperimentConfig& c);
};

struct SuiteCheck {
  std::string name;
  int criterion = 0;  // acceptance criterion number, 0 for auxiliary checks
  std::string description;
  std::function<std::vector<VerificationReport>(const SuiteSettings&)> run;
};

const std::vector<SuiteCheck>& suite_checks();
const SuiteCheck& find_check(const std::string& name);
const SuiteCheck& check_for_criterion(int criterion);

struct CheckOutcome {
  std::string check;
  int criterion = 0;
  std::vector<VerificationReport> reports;
  bool pass() const;
};

// Runs checks by name ("all" selects every check) in the listed order.
std::vector<CheckOutcome> run_checks(const std::vector<std::string>& names, const SuiteSettings& s,
                                     std::ostream* log = nullptr);
// One row per (check, report, sample) and one summary row per report.
void write_rows_csv(std::ostream& out, const std::vector<CheckOutcome>& res);
void write_summary_csv(std::ostream& out, const std::vector<CheckOutcome>& res);

std::string csv_escape(const std::string& s);

}  // namespace graded
