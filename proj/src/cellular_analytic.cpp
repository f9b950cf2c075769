#include "cogd2d/cellular_analytic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cogd2d/spectrum.hpp"
#include "cogd2d/specfun.hpp"

namespace cogd2d {

namespace {

constexpr double kPi = std::numbers::pi;

void require_equal_exponents(const NetworkParams& params) {
  if (std::abs(params.alpha - params.beta) > 1e-12) {
    throw std::domain_error("cellular outage requires alpha == beta");
  }
  if (!(params.alpha > 2.0)) throw std::domain_error("cellular outage requires alpha > 2");
}

}  // namespace

double cellular_K2(const NetworkParams& params, double q_hat) {
  const double alpha = params.alpha;
  const double tau = params.tau;
  if (tau == 0.0 || q_hat == 0.0) return 0.0;
  return 2.0 * q_hat / (alpha - 2.0) * hyper_g(std::pow(tau, -1.0 / alpha), alpha) *
         std::pow(tau, 2.0 / alpha);
}

double cellular_K3(const NetworkParams& params, bool is_cd, double p_s, double p_f) {
  if (!is_cd) return 0.0;
  const double beta = params.beta;
  return 2.0 * kPi * kPi * p_s * p_f * params.lambda_D * params.d_o * params.d_o /
         (beta * std::sin(2.0 * kPi / beta)) * std::pow(params.tau, 2.0 / beta);
}

double cellular_sinr_outage(const NetworkParams& params, LinkSide channel_kind, bool is_cd,
                            double p_s, double p_f, double q_hat) {
  require_equal_exponents(params);
  const double k2 = cellular_K2(params, q_hat);
  const double k3 = cellular_K3(params, is_cd, p_s, p_f);
  const double two_over_beta = 2.0 / params.beta;
  if (channel_kind == LinkSide::Downlink) {
    const double base = kPi * params.lambda_B;
    const double d2d = std::pow(params.rho_d / params.P_B, two_over_beta) * k3;
    return 1.0 - base / (base * (1.0 + k2) + d2d);
  }
  return -std::expm1(-(k2 + std::pow(params.rho_d / params.rho_b, two_over_beta) * k3));
}

double cellular_avg_outage(std::span<const ChannelOutage> channels) {
  if (channels.empty()) throw std::invalid_argument("cellular_avg_outage: no channels");
  double weight = 0.0;
  double acc = 0.0;
  for (const auto& c : channels) {
    weight += c.q_hat;
    acc += c.q_hat * c.outage;
  }
  if (weight > 0.0) return acc / weight;
  for (const auto& c : channels) acc += c.outage;
  return acc / static_cast<double>(channels.size());
}

double cellular_total_outage(double q_f, double outage_avg) { return 1.0 - q_f + q_f * outage_avg; }

CellularMetrics evaluate_cellular(const NetworkParams& params, const ChannelPlan& plan,
                                  double p_s, double p_f) {
  params.validate();
  plan.validate();
  require_equal_exponents(params);
  const AccessProbs ap = access_probs(CellLoadDist(params.mean_load()), plan.total(), plan.policy);

  CellularMetrics m{};
  m.K2_cd = cellular_K2(params, ap.q_d);
  m.K2_other = cellular_K2(params, ap.q_c);
  m.K3 = cellular_K3(params, true, p_s, p_f);
  m.outage_cd = cellular_sinr_outage(params, plan.d2d_side, true, p_s, p_f, ap.q_d);

  for (LinkSide side : {LinkSide::Downlink, LinkSide::Uplink}) {
    const int n = plan.side_count(side);
    for (int i = 0; i < n; ++i) {
      const bool is_cd = side == plan.d2d_side && i == 0;
      const double q_hat = is_cd ? ap.q_d : ap.q_c;
      const double outage =
          is_cd ? m.outage_cd : cellular_sinr_outage(params, side, false, p_s, p_f, q_hat);
      m.channels.push_back({side, is_cd, q_hat, outage});
    }
  }

  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<ChannelOutage> others;
  m.outage_other_dl = nan;
  m.outage_other_ul = nan;
  for (const auto& c : m.channels) {
    if (c.is_cd) continue;
    others.push_back(c);
    (c.kind == LinkSide::Downlink ? m.outage_other_dl : m.outage_other_ul) = c.outage;
  }
  m.outage_other = others.empty() ? nan : cellular_avg_outage(others);
  m.outage_avg = cellular_avg_outage(m.channels);
  m.outage_tot = cellular_total_outage(ap.q_f, m.outage_avg);
  return m;
}

}  // namespace cogd2d
