#pragma once

// Sweeps, figure presets and CSV output.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cogd2d/config.hpp"

namespace cogd2d {

struct CsvRow {
  std::string sweep_var;
  double value = 0.0;
  AccessPolicy policy = AccessPolicy::Rsa;
  LinkSide cd_side = LinkSide::Downlink;
  double p_s, p_f, p_t, O_D, O_D_tot;
  double O_B_cd, O_B_other, O_B_avg, O_B_tot;
  std::string source;   // engine, plus the cellular variant when not standard
  double ci_halfwidth;  // NaN for analytic rows
};

struct PresetInfo {
  std::string name;
  std::string description;
  ExperimentConfig config;
};

const std::vector<PresetInfo>& list_presets();

/// Throws ConfigError for an unknown name.
ExperimentConfig preset_config(std::string_view name);

/// One row per (sweep value, scenario, variant, engine), in that order.
/// Numeric failures at a point produce a row of NaNs whose source ends in
/// "-error"; the message goes to `log` when it is non-null.
std::vector<CsvRow> run_experiment(const ExperimentConfig& cfg, std::ostream* log = nullptr);

std::string csv_header();
std::string format_row(const CsvRow& row);
void write_csv(std::ostream& out, const std::vector<CsvRow>& rows);

}  // namespace cogd2d
