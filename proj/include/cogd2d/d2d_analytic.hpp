#pragma once

// Closed-form D2D quantities: protection geometry, free-channel and
// sufficient-energy probabilities, SINR outage and overall outage.
//
// The D2D receiver always sits exactly d_o from its transmitter.

#include "cogd2d/params.hpp"
#include "cogd2d/spectrum.hpp"

namespace cogd2d {

struct Kappas {
  double kappa1;  // downlink harvesting scale, W^(2/alpha)
  double kappa2;  // uplink harvesting scale
  double kappa3;  // kappa1 + kappa2
};

struct D2DMetrics {
  double p_s;
  double p_f;
  double p_t;
  double O_D;
  double O_D_tot;
  double kappa1;
  double kappa2;
  double kappa3;
  double theta;
  double r_bar_P;
  AccessProbs access;
};

/// Mean radius of the sensing protection disc around a D2D transmitter.
double protection_radius(const NetworkParams& params, const ChannelPlan& plan);

/// Expected number of active D2D-channel transmitters in the protection
/// region per unit usage probability.
double theta(const NetworkParams& params, const ChannelPlan& plan);

double p_free(const NetworkParams& params, const ChannelPlan& plan, double q_d);

/// Per-channel usage probability assigned to the given subset when
/// computing harvesting intensity, according to plan.kappa_basis.
double subset_usage(const NetworkParams& params, const ChannelPlan& plan, LinkSide subset);

Kappas kappas(const NetworkParams& params, const ChannelPlan& plan);

/// P[P_H > tx_power] for aggregate harvested power with Laplace transform
/// exp(-kappa3 s^(2/alpha)), by direct quadrature of the inversion integral.
/// Falls back to the Zolotarev form when the oscillatory integrand would
/// lose precision to cancellation (2 < alpha < 4, strong harvesting).
double harvest_sufficiency_quadrature(double kappa3, double tx_power, double alpha);

/// alpha = 4 special case: erf(kappa3 / (2 sqrt(tx_power))).
double harvest_sufficiency_erf(double kappa3, double tx_power);

/// Dispatches to the erf form when |alpha - 4| < 1e-12.
double p_sufficient(const NetworkParams& params, const ChannelPlan& plan);

/// Mean power scale of interferers on the D2D channel: P_B on a downlink
/// channel, rho_b / (pi lambda_B)^(alpha/2) on an uplink one.
double mean_interferer_power(const NetworkParams& params, const ChannelPlan& plan);

double d2d_sinr_outage(const NetworkParams& params, const ChannelPlan& plan, double p_s,
                       double p_f, double q_d);

double d2d_total_outage(double p_t, double O_D);

/// BS density above which an uplink D2D channel beats a downlink one.
double lambda_ref(const NetworkParams& params);

D2DMetrics evaluate_d2d(const NetworkParams& params, const ChannelPlan& plan);

}  // namespace cogd2d
