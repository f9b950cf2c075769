#include "cogd2d/d2d_analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cogd2d/specfun.hpp"

namespace cogd2d {

namespace {

constexpr double kPi = std::numbers::pi;

AccessProbs whole_set_access(const NetworkParams& params, const ChannelPlan& plan) {
  return access_probs(CellLoadDist(params.mean_load()), plan.total(), plan.policy);
}

}  // namespace

double protection_radius(const NetworkParams& params, const ChannelPlan& plan) {
  const double alpha = params.alpha;
  const double g = gamma_fn((alpha + 1.0) / alpha);
  if (plan.d2d_side == LinkSide::Downlink) {
    return std::pow(params.P_B / params.gamma_sense, 1.0 / alpha) * g;
  }
  return std::pow(params.rho_b / params.gamma_sense, 1.0 / alpha) * g /
         (2.0 * std::sqrt(params.lambda_B));
}

double theta(const NetworkParams& params, const ChannelPlan& plan) {
  const double alpha = params.alpha;
  const double g = gamma_fn((alpha + 2.0) / alpha);
  if (plan.d2d_side == LinkSide::Downlink) {
    return kPi * params.lambda_B * std::pow(params.P_B / params.gamma_sense, 2.0 / alpha) * g;
  }
  return std::pow(params.rho_b / params.gamma_sense, 2.0 / alpha) * g;
}

double p_free(const NetworkParams& params, const ChannelPlan& plan, double q_d) {
  if (!(q_d >= 0.0 && q_d <= 1.0)) throw std::domain_error("p_free: q_d must lie in [0, 1]");
  return std::exp(-theta(params, plan) * q_d);
}

double subset_usage(const NetworkParams& params, const ChannelPlan& plan, LinkSide subset) {
  const int n = plan.side_count(subset);
  if (n == 0) return 0.0;
  switch (plan.kappa_basis) {
    case KappaBasis::WholeSet: {
      const AccessProbs ap = whole_set_access(params, plan);
      if (subset != plan.d2d_side) return ap.q_c;
      return ((n - 1) * ap.q_c + ap.q_d) / n;
    }
    case KappaBasis::SubsetPolicy: {
      const CellLoadDist dist(params.mean_load());
      if (plan.policy == AccessPolicy::Psa && n >= 2) return q_psa(dist, n).q_c;
      return q_c_rsa(dist, n);
    }
    case KappaBasis::SubsetRsa:
      return q_c_rsa(CellLoadDist(params.mean_load()), n);
  }
  throw std::logic_error("subset_usage: unknown basis");
}

Kappas kappas(const NetworkParams& params, const ChannelPlan& plan) {
  const double alpha = params.alpha;
  if (!(alpha > 2.0)) throw std::domain_error("kappas: alpha must exceed 2");
  const double delta = 2.0 / alpha;

  double kappa1 = 0.0;
  if (plan.n_downlink > 0) {
    // sum_{k=1}^{|C_D|} Gamma(k - 1 + delta) / (k - 1)!
    double sum = 0.0;
    for (int k = 1; k <= plan.n_downlink; ++k) {
      sum += std::exp(log_gamma(k - 1.0 + delta) - log_gamma(k));
    }
    kappa1 = 2.0 * kPi * subset_usage(params, plan, LinkSide::Downlink) * params.lambda_B *
             std::pow(params.a * params.P_B, delta) * gamma_fn((alpha - 2.0) / alpha) / alpha * sum;
  }
  double kappa2 = 0.0;
  if (plan.n_uplink > 0) {
    kappa2 = 2.0 * kPi * subset_usage(params, plan, LinkSide::Uplink) * plan.n_uplink *
             std::pow(params.a * params.rho_b, delta) / (alpha * std::sin(2.0 * kPi / alpha));
  }
  return {kappa1, kappa2, kappa1 + kappa2};
}

double harvest_sufficiency_erf(double kappa3, double tx_power) {
  if (kappa3 <= 0.0) return 0.0;
  if (tx_power <= 0.0) return 1.0;
  return erf(kappa3 / (2.0 * std::sqrt(tx_power)));
}

double harvest_sufficiency_quadrature(double kappa3, double tx_power, double alpha) {
  if (!(alpha > 2.0)) throw std::domain_error("p_sufficient: alpha must exceed 2");
  if (kappa3 <= 0.0) return 0.0;
  if (tx_power <= 0.0) return 1.0;

  const double half = alpha / 2.0;
  const double angle = 2.0 * kPi / alpha;
  const double cs = std::cos(angle);
  const double sn = std::sin(angle);
  // Scale-free threshold: P_H / kappa3^(alpha/2) is standard positive stable.
  const double t = tx_power * std::pow(kappa3, -half);
  if (t == 0.0) return 1.0;
  if (!std::isfinite(t)) return 0.0;

  // Exponent of the integrand envelope: -t u^(alpha/2) - u cos(angle).
  auto exponent = [&](double u) { return -t * std::pow(u, half) - u * cs; };

  double peak_u = 0.0;
  if (cs < 0.0) {
    peak_u = std::pow(-cs / (t * half), 1.0 / (half - 1.0));
    if (exponent(peak_u) > 15.0) return positive_stable_sf(2.0 / alpha, t);
  }

  // Envelope cutoff where the exponent reaches -36.
  double lo = peak_u;
  double hi = std::max(1.0, 2.0 * peak_u);
  while (exponent(hi) > -36.0) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (exponent(mid) > -36.0 ? lo : hi) = mid;
  }
  const double upper = hi;
  if (upper * sn / (2.0 * kPi) > 2e4) return positive_stable_sf(2.0 / alpha, t);

  auto integrand = [&](double u) {
    if (u <= 0.0) return sn;
    return std::exp(exponent(u)) * std::sin(u * sn) / u;
  };
  QuadratureSpec spec;
  spec.rel_tol = 1e-11;
  spec.abs_tol = 1e-13;
  spec.max_subdivisions = 200000;
  const double value = alpha / (2.0 * kPi) * integrate_to_infinity(integrand, spec, upper);
  return std::clamp(value, 0.0, 1.0);
}

double p_sufficient(const NetworkParams& params, const ChannelPlan& plan) {
  const Kappas k = kappas(params, plan);
  const double tx_power = params.d2d_tx_power();
  if (std::abs(params.alpha - 4.0) < 1e-12) return harvest_sufficiency_erf(k.kappa3, tx_power);
  return harvest_sufficiency_quadrature(k.kappa3, tx_power, params.alpha);
}

double mean_interferer_power(const NetworkParams& params, const ChannelPlan& plan) {
  if (plan.d2d_side == LinkSide::Downlink) return params.P_B;
  return params.rho_b / std::pow(kPi * params.lambda_B, params.alpha / 2.0);
}

double d2d_sinr_outage(const NetworkParams& params, const ChannelPlan& plan, double p_s,
                       double p_f, double q_d) {
  const double alpha = params.alpha;
  const double beta = params.beta;
  if (!(alpha > 2.0) || !(beta > 2.0)) {
    throw std::domain_error("d2d_sinr_outage: path-loss exponents must exceed 2");
  }
  const double tau = params.tau;
  if (tau == 0.0) return 0.0;

  const double noise = tau * params.sigma_z2 / params.rho_d;
  const double d2d = 2.0 * kPi * kPi * params.d_o * params.d_o * p_s * p_f * params.lambda_D /
                     (beta * std::sin(2.0 * kPi / beta)) * std::pow(tau, 2.0 / beta);
  double cellular = 0.0;
  if (q_d > 0.0) {
    const double y = std::pow(params.rho_d / (params.gamma_sense * tau), 1.0 / alpha) *
                     gamma_fn((alpha + 1.0) / alpha);
    cellular = 2.0 * kPi * q_d * params.lambda_B / (alpha - 2.0) * hyper_g(y, alpha) *
               std::pow(mean_interferer_power(params, plan) / params.rho_d * tau, 2.0 / alpha);
  }
  return -std::expm1(-(noise + d2d + cellular));
}

double d2d_total_outage(double p_t, double O_D) { return 1.0 - p_t + p_t * O_D; }

double lambda_ref(const NetworkParams& params) {
  return std::pow(params.rho_b / params.P_B, 2.0 / params.alpha) / kPi;
}

D2DMetrics evaluate_d2d(const NetworkParams& params, const ChannelPlan& plan) {
  params.validate();
  plan.validate();
  D2DMetrics m{};
  m.access = whole_set_access(params, plan);
  const Kappas k = kappas(params, plan);
  m.kappa1 = k.kappa1;
  m.kappa2 = k.kappa2;
  m.kappa3 = k.kappa3;
  m.theta = theta(params, plan);
  m.r_bar_P = protection_radius(params, plan);
  m.p_s = p_sufficient(params, plan);
  m.p_f = p_free(params, plan, m.access.q_d);
  m.p_t = m.p_s * m.p_f;
  m.O_D = d2d_sinr_outage(params, plan, m.p_s, m.p_f, m.access.q_d);
  m.O_D_tot = d2d_total_outage(m.p_t, m.O_D);
  return m;
}

}  // namespace cogd2d
