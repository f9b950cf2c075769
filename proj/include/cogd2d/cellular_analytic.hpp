#pragma once

// Cellular SINR outage per channel, channel-averaged and overall.
// Interference-limited with alpha == beta; noise is never included here,
// whatever params.sigma_z2 holds.

#include <span>
#include <vector>

#include "cogd2d/params.hpp"

namespace cogd2d {

struct ChannelOutage {
  LinkSide kind;
  bool is_cd;
  double q_hat;   // usage probability of this channel at a BS
  double outage;
};

struct CellularMetrics {
  double outage_cd;
  double outage_other;      // usage-weighted over every channel except c_d
  double outage_other_dl;   // NaN when there is no such channel
  double outage_other_ul;
  double outage_avg;
  double outage_tot;
  double K2_cd;
  double K2_other;
  double K3;
  std::vector<ChannelOutage> channels;
};

double cellular_K2(const NetworkParams& params, double q_hat);
double cellular_K3(const NetworkParams& params, bool is_cd, double p_s, double p_f);

/// Outage on one channel.  q_hat is q_c for an ordinary channel and q_d for
/// the D2D channel.  Throws std::domain_error unless alpha == beta.
double cellular_sinr_outage(const NetworkParams& params, LinkSide channel_kind, bool is_cd,
                            double p_s, double p_f, double q_hat);

/// Weighted by q_hat (expected usage); equal weights if nothing is used.
double cellular_avg_outage(std::span<const ChannelOutage> channels);

/// Blocking counts as outage.
double cellular_total_outage(double q_f, double outage_avg);

/// All channels of the plan with the given D2D activity (p_s, p_f).
CellularMetrics evaluate_cellular(const NetworkParams& params, const ChannelPlan& plan,
                                  double p_s, double p_f);

}  // namespace cogd2d
