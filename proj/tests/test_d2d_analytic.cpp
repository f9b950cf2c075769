#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>

#include "cogd2d/d2d_analytic.hpp"
#include "cogd2d/specfun.hpp"

using namespace cogd2d;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("protection geometry at the baseline") {
  const NetworkParams p;
  const ChannelPlan dl;
  CHECK(protection_radius(p, dl) == Approx(241.168778496522343).epsilon(1e-13));
  CHECK(theta(p, dl) == Approx(0.197103716571258940).epsilon(1e-13));
  CHECK(p_free(p, dl, 1.0) == Approx(0.821105466652494107).epsilon(1e-13));
  CHECK(p_free(p, dl, 0.0) == 1.0);
  CHECK_THROWS_AS(p_free(p, dl, 1.5), std::domain_error);
}

TEST_CASE("uplink protection geometry") {
  NetworkParams p;
  ChannelPlan ul;
  ul.d2d_side = LinkSide::Uplink;
  const double r = std::pow(p.rho_b / p.gamma_sense, 0.25) * std::tgamma(1.25) / (2.0 * std::sqrt(p.lambda_B));
  CHECK(protection_radius(p, ul) == Approx(r).epsilon(1e-13));
  // Uplink theta does not depend on the BS density.
  const double t = theta(p, ul);
  p.lambda_B *= 7.0;
  CHECK(theta(p, ul) == Approx(t).epsilon(1e-14));
}

TEST_CASE("crossover density") {
  const NetworkParams p;
  CHECK(lambda_ref(p) == Approx(1.42183803377739842e-6).epsilon(1e-12));
  // Downlink and uplink theta coincide there.
  NetworkParams q = p;
  q.lambda_B = lambda_ref(p);
  ChannelPlan dl, ul;
  ul.d2d_side = LinkSide::Uplink;
  CHECK(theta(q, dl) == Approx(theta(q, ul)).epsilon(1e-12));
}

TEST_CASE("kappa1 closed form via the partial-sum identity") {
  // sum_{k=0}^{n-1} Gamma(k + d) / k! = Gamma(n + d) / (d (n - 1)!)
  for (double alpha : {2.5, 3.0, 4.0, 5.5}) {
    NetworkParams p;
    p.alpha = alpha;
    p.a = 0.6;
    ChannelPlan plan;
    plan.n_downlink = 7;
    plan.n_uplink = 4;
    plan.kappa_basis = KappaBasis::SubsetRsa;
    const double d = 2.0 / alpha;
    const int n = plan.n_downlink;
    const double q = q_c_rsa(CellLoadDist(p.mean_load()), n);
    const double sum = std::exp(std::lgamma(n + d) - std::lgamma(n)) / d;
    const double k1 = 2.0 * kPi * q * p.lambda_B * std::pow(p.a * p.P_B, d) *
                      std::tgamma((alpha - 2.0) / alpha) / alpha * sum;
    const double q_u = q_c_rsa(CellLoadDist(p.mean_load()), plan.n_uplink);
    const double k2 = 2.0 * kPi * q_u * plan.n_uplink * std::pow(p.a * p.rho_b, d) /
                      (alpha * std::sin(2.0 * kPi / alpha));
    const Kappas k = kappas(p, plan);
    CAPTURE(alpha);
    CHECK(k.kappa1 == Approx(k1).epsilon(1e-12));
    CHECK(k.kappa2 == Approx(k2).epsilon(1e-12));
    CHECK(k.kappa3 == Approx(k1 + k2).epsilon(1e-12));
  }
}

TEST_CASE("kappa bases") {
  NetworkParams p;
  ChannelPlan plan = ChannelPlan::even_split(15, LinkSide::Downlink, AccessPolicy::Rsa);
  const AccessProbs ap = access_probs(CellLoadDist(p.mean_load()), 15, AccessPolicy::Rsa);
  plan.kappa_basis = KappaBasis::WholeSet;
  CHECK(subset_usage(p, plan, LinkSide::Downlink) == Approx(ap.q_c));
  CHECK(subset_usage(p, plan, LinkSide::Uplink) == Approx(ap.q_c));

  plan.policy = AccessPolicy::Psa;
  const AccessProbs psa = access_probs(CellLoadDist(p.mean_load()), 15, AccessPolicy::Psa);
  const int n = plan.n_downlink;
  CHECK(subset_usage(p, plan, LinkSide::Downlink) == Approx(((n - 1) * psa.q_c + psa.q_d) / n));
  CHECK(subset_usage(p, plan, LinkSide::Uplink) == Approx(psa.q_c));

  plan.kappa_basis = KappaBasis::SubsetPolicy;
  CHECK(subset_usage(p, plan, LinkSide::Uplink) == Approx(q_psa(CellLoadDist(10.0), plan.n_uplink).q_c));
  plan.kappa_basis = KappaBasis::SubsetRsa;
  CHECK(subset_usage(p, plan, LinkSide::Uplink) == Approx(q_c_rsa(CellLoadDist(10.0), plan.n_uplink)));

  ChannelPlan dl_only;
  dl_only.n_uplink = 0;
  CHECK(kappas(p, dl_only).kappa2 == 0.0);
}

TEST_CASE("sufficient-energy quadrature reduces to erf at alpha = 4") {
  const double tx = 1e-7;
  for (double ratio : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0}) {
    const double kappa3 = ratio * 2.0 * std::sqrt(tx);
    CAPTURE(ratio);
    CHECK(std::abs(harvest_sufficiency_quadrature(kappa3, tx, 4.0) - std::erf(ratio)) < 1e-6);
    CHECK(harvest_sufficiency_erf(kappa3, tx) == Approx(std::erf(ratio)).epsilon(1e-15));
  }
}

TEST_CASE("sufficient-energy quadrature matches the stable-law form") {
  // With kappa3 = 1 the threshold t equals the tx power.
  for (double alpha : {3.0, 3.5, 4.5, 5.0, 6.0}) {
    for (double t : {0.3, 1.0, 5.0}) {
      CAPTURE(alpha);
      CAPTURE(t);
      CHECK(harvest_sufficiency_quadrature(1.0, t, alpha) ==
            Approx(positive_stable_sf(2.0 / alpha, t)).epsilon(1e-6));
    }
  }
  CHECK(harvest_sufficiency_quadrature(1.0, 1.0, 3.0) == Approx(0.47374).epsilon(1e-4));
  CHECK(harvest_sufficiency_quadrature(1.0, 5.0, 6.0) == Approx(0.36910).epsilon(1e-4));
}

TEST_CASE("sufficient-energy edge cases and monotonicity") {
  CHECK(harvest_sufficiency_quadrature(0.0, 1.0, 3.0) == 0.0);
  CHECK(harvest_sufficiency_quadrature(1.0, 0.0, 3.0) == 1.0);
  CHECK_THROWS_AS(harvest_sufficiency_quadrature(1.0, 1.0, 2.0), std::domain_error);
  for (double alpha : {3.0, 4.0, 5.0}) {
    double prev = 0.0;
    for (double k = 1e-3; k < 1e3; k *= 2.0) {
      const double v = harvest_sufficiency_quadrature(k, 1.0, alpha);
      CHECK(v >= prev - 1e-9);
      CHECK(v <= 1.0);
      prev = v;
    }
  }
}

TEST_CASE("p_sufficient vanishes without cellular users") {
  NetworkParams p;
  p.lambda_U = 0.0;
  CHECK(p_sufficient(p, ChannelPlan{}) == 0.0);
}

TEST_CASE("SINR outage reduces to noise only") {
  NetworkParams p;
  p.lambda_D = 0.0;
  const ChannelPlan plan;
  const double o = d2d_sinr_outage(p, plan, 0.3, 0.9, 0.0);
  CHECK(o == Approx(-std::expm1(-p.tau * p.sigma_z2 / p.rho_d)).epsilon(1e-14));
  p.tau = 0.0;
  CHECK(d2d_sinr_outage(p, plan, 0.3, 0.9, 0.5) == 0.0);
}

TEST_CASE("SINR outage closed form at alpha = 4") {
  NetworkParams p;
  p.tau = 2.0;
  const ChannelPlan plan;
  const double p_s = 0.2, p_f = 0.8, q_d = 0.6;
  const double y = std::pow(p.rho_d / (p.gamma_sense * p.tau), 0.25) * std::tgamma(1.25);
  const double k1 = p.tau * p.sigma_z2 / p.rho_d +
                    2.0 * kPi * kPi * p.d_o * p.d_o * p_s * p_f * p.lambda_D /
                        (3.0 * std::sin(2.0 * kPi / 3.0)) * std::pow(p.tau, 2.0 / 3.0) +
                    kPi * q_d * p.lambda_B * std::atan(1.0 / (y * y)) *
                        std::sqrt(p.P_B * p.tau / p.rho_d);
  CHECK(d2d_sinr_outage(p, plan, p_s, p_f, q_d) == Approx(1.0 - std::exp(-k1)).epsilon(1e-12));
}

TEST_CASE("SINR outage monotonicity") {
  const ChannelPlan plan;
  NetworkParams p;
  double prev = 0.0;
  for (double tau = 0.1; tau < 20.0; tau *= 1.5) {
    p.tau = tau;
    const double o = d2d_sinr_outage(p, plan, 0.2, 0.8, 0.6);
    CHECK(o >= prev);
    CHECK(o <= 1.0);
    prev = o;
  }
  p = NetworkParams{};
  prev = 1.0;
  for (double g = -90.0; g <= -40.0; g += 5.0) {
    p.gamma_sense = dbm_to_watts(g);
    // A lower threshold protects more, so outage grows with gamma.
    const double o = d2d_sinr_outage(p, plan, 0.2, 0.8, 0.6);
    if (g > -90.0) CHECK(o >= prev);
    prev = o;
  }
}

TEST_CASE("evaluate_d2d composition") {
  const NetworkParams p;
  for (auto side : {LinkSide::Downlink, LinkSide::Uplink}) {
    for (auto policy : {AccessPolicy::Rsa, AccessPolicy::Psa}) {
      const ChannelPlan plan = ChannelPlan::even_split(15, side, policy);
      const D2DMetrics m = evaluate_d2d(p, plan);
      CHECK(m.p_t == Approx(m.p_s * m.p_f).epsilon(1e-15));
      CHECK(m.O_D_tot == Approx(1.0 - m.p_t + m.p_t * m.O_D).epsilon(1e-15));
      CHECK(m.p_f == Approx(std::exp(-m.theta * m.access.q_d)).epsilon(1e-15));
      CHECK(m.access.n_channels == 15);
    }
  }
}

TEST_CASE("PSA lowers D2D outage") {
  const NetworkParams p;
  for (auto side : {LinkSide::Downlink, LinkSide::Uplink}) {
    for (int C = 3; C <= 30; C += 3) {
      const double rsa = evaluate_d2d(p, ChannelPlan::even_split(C, side, AccessPolicy::Rsa)).O_D;
      const double psa = evaluate_d2d(p, ChannelPlan::even_split(C, side, AccessPolicy::Psa)).O_D;
      CHECK(psa < rsa);
    }
  }
}
