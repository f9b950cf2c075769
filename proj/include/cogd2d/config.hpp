#pragma once

// Experiment configuration in human units and its text format.
//
// File format: `[section]` headers followed by `key = value` lines; `#`
// starts a comment.  Lists are comma separated.  Sections and keys:
//
//   [network]  lambda_B, lambda_U, lambda_D (per km^2), users_per_bs
//              (if > 0, lambda_U = users_per_bs * lambda_B), P_B, rho_b,
//              rho_d, sigma2, gamma (dBm), a, alpha, beta, d_o (m), tau (dB)
//   [channels] n_channels, n_uplink (or "auto": floor(n_channels/2)),
//              policies (rsa, psa), cd_sides (dl, ul),
//              kappa_basis (whole, subset, subset-rsa)
//   [sweep]    variable, values (list) or range = start:stop:step
//   [run]      engines (analytic, mc, both), variants (standard, no-d2d,
//              non-cognitive, cognitive)
//   [mc]       window_side, iterations, seed, sensing (faded, meandisc),
//              boundary (torus, central), harvest_radius, d2d_radius,
//              cellular_radius, workers
//   [output]   path

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cogd2d/mcsim.hpp"
#include "cogd2d/params.hpp"

namespace cogd2d {

/// Invalid configuration; the message starts with the offending field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Engines { Analytic, Mc, Both };

/// D2D activity assumed when evaluating cellular outage.
enum class CellularVariant { Standard, NoD2D, NonCognitive, Cognitive };

std::string_view to_string(Engines e);
std::string_view to_string(CellularVariant v);

struct ExperimentConfig {
  std::string name = "custom";

  double lambda_B = 1.0;   // per km^2
  double lambda_U = 10.0;
  double lambda_D = 20.0;
  double users_per_bs = 0.0;
  double P_B = 37.0;       // dBm
  double rho_b = -70.0;
  double rho_d = -70.0;
  double sigma2 = -104.0;
  double gamma = -60.0;
  double a = 1.0;
  double alpha = 4.0;
  double beta = 3.0;
  double d_o = 10.0;       // m
  double tau = 0.0;        // dB

  int n_channels = 10;
  int n_uplink = -1;       // -1: floor(n_channels / 2)
  std::vector<AccessPolicy> policies{AccessPolicy::Rsa};
  std::vector<LinkSide> cd_sides{LinkSide::Downlink};
  KappaBasis kappa_basis = KappaBasis::WholeSet;

  std::string sweep_var = "gamma";
  std::vector<double> sweep_values{-60.0};

  Engines engines = Engines::Analytic;
  std::vector<CellularVariant> variants{CellularVariant::Standard};
  McSettings mc;

  std::string output;

  /// Throws ConfigError naming the field.
  void validate() const;
};

/// Variables a sweep may range over.
const std::vector<std::string>& sweep_variables();

/// Copy of `cfg` with the sweep variable set to `value`.
ExperimentConfig with_sweep_value(const ExperimentConfig& cfg, double value);

NetworkParams to_params(const ExperimentConfig& cfg);
ChannelPlan to_plan(const ExperimentConfig& cfg, AccessPolicy policy, LinkSide side);

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);
std::string emit_config(const ExperimentConfig& cfg);

AccessPolicy parse_policy(std::string_view s);
LinkSide parse_side(std::string_view s);
Engines parse_engines(std::string_view s);

}  // namespace cogd2d
