// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.  Usage: acceptance [--iterations N] [--only K]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "cogd2d/cellular_analytic.hpp"
#include "cogd2d/config.hpp"
#include "cogd2d/d2d_analytic.hpp"
#include "cogd2d/harness.hpp"
#include "cogd2d/mcsim.hpp"
#include "cogd2d/spectrum.hpp"

using namespace cogd2d;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int g_iters = 10000;

Outcome identities() {
  double worst1 = 0.0, worst2 = 0.0;
  for (int m = 1; m <= 30; ++m) {
    const CellLoadDist dist(m);
    for (int C = 2; C <= 30; ++C) {
      const AccessProbs rsa = access_probs(dist, C, AccessPolicy::Rsa);
      const AccessProbs psa = access_probs(dist, C, AccessPolicy::Psa);
      double partial = 0.0;
      for (int n = 0; n < C; ++n) partial += static_cast<double>(n) / C * dist.pmf(n);
      const double dd = rsa.q_d - psa.q_d;
      worst1 = std::max(worst1, std::abs(dd - partial));
      worst2 = std::max(worst2, std::abs((psa.q_c - rsa.q_c) * (C - 1) - dd));
    }
  }
  return {worst1 < 1e-10 && worst2 < 1e-10,
          fmt("max errors %.2e, %.2e over 30 x 29 grid", worst1, worst2)};
}

Outcome erf_consistency() {
  const NetworkParams p;
  const double tx = p.rho_d * std::pow(p.d_o, p.beta);
  double worst = 0.0;
  for (double x : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0}) {
    const double k3 = 2.0 * x * std::sqrt(tx);
    worst = std::max(worst, std::abs(harvest_sufficiency_quadrature(k3, tx, 4.0) - std::erf(x)));
  }
  return {worst <= 1e-6, fmt("max |quadrature - erf| = %.2e", worst)};
}

Outcome crossover() {
  const double ref = per_m2_to_per_km2(lambda_ref(NetworkParams{}));
  return {std::abs(ref - 1.42) <= 0.01, fmt("lambda_ref = %.4f per km^2", ref)};
}

Outcome baseline() {
  NetworkParams p;
  p.beta = 4.0;
  p.tau = 1.0;
  const double want = (kPi / 4.0) / (1.0 + kPi / 4.0);
  const double analytic = cellular_sinr_outage(p, LinkSide::Downlink, false, 0.0, 0.0, 1.0);

  p.lambda_D = 0.0;
  p.sigma_z2 = 0.0;
  McSettings s;
  s.n_iters = g_iters;
  s.saturated_downlink = true;
  s.cellular_radius = 2000.0;
  const auto t0 = std::chrono::steady_clock::now();
  const McResult r = estimate_metrics(p, ChannelPlan{}, s);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const Estimate& mc = r.O_B_channel[0];
  const bool ok = std::abs(analytic - want) < 1e-12 && std::abs(mc.mean - want) <= mc.ci_halfwidth;
  return {ok, fmt("analytic %.15f (err %.1e), MC %.5f +/- %.5f over %d iterations (%.0f s)",
                  analytic, std::abs(analytic - want), mc.mean, mc.ci_halfwidth, r.n_iters, secs)};
}

ExperimentConfig base_config(int n_channels) {
  ExperimentConfig c;
  c.n_channels = n_channels;
  c.tau = 0.0;
  c.rho_d = -70.0;
  c.gamma = -60.0;
  return c;
}

Outcome channel_policy_values() {
  struct Case {
    LinkSide side;
    AccessPolicy policy;
    double want;
  };
  const Case cases[] = {{LinkSide::Downlink, AccessPolicy::Rsa, 0.43},
                        {LinkSide::Downlink, AccessPolicy::Psa, 0.17},
                        {LinkSide::Uplink, AccessPolicy::Rsa, 0.55},
                        {LinkSide::Uplink, AccessPolicy::Psa, 0.24}};
  ExperimentConfig c = base_config(15);
  bool ok = true;
  std::string detail;
  for (const auto& k : cases) {
    const double o = evaluate_d2d(to_params(c), to_plan(c, k.policy, k.side)).O_D;
    ok = ok && std::abs(o - k.want) <= 0.05;
    detail += fmt("%s-%s %.3f (want %.2f); ", std::string(to_string(k.side)).c_str(),
                  std::string(to_string(k.policy)).c_str(), o, k.want);
  }
  int violations = 0;
  for (double g = -90.0; g <= -40.0 + 1e-9; g += 0.5) {
    c.gamma = g;
    for (auto side : {LinkSide::Downlink, LinkSide::Uplink}) {
      const NetworkParams p = to_params(c);
      const double rsa = evaluate_d2d(p, to_plan(c, AccessPolicy::Rsa, side)).O_D;
      const double psa = evaluate_d2d(p, to_plan(c, AccessPolicy::Psa, side)).O_D;
      violations += !(psa < rsa);
    }
  }
  ok = ok && violations == 0;
  detail += fmt("PSA < RSA violations over gamma in [-90, -40]: %d", violations);
  return {ok, detail};
}

Outcome channel_thresholds() {
  const ExperimentConfig c11 = base_config(11);
  const double psa11 =
      evaluate_d2d(to_params(c11), to_plan(c11, AccessPolicy::Psa, LinkSide::Uplink)).O_D;
  int first = -1;
  for (int n = 2; n <= 60 && first < 0; ++n) {
    const ExperimentConfig c = base_config(n);
    if (evaluate_d2d(to_params(c), to_plan(c, AccessPolicy::Rsa, LinkSide::Uplink)).O_D < 0.3) {
      first = n;
    }
  }
  const bool ok = psa11 < 0.3 && first >= 20;
  return {ok, fmt("UL-PSA O_D at |C|=11: %.3f (want < 0.3); UL-RSA first below 0.3 at |C|=%d "
                  "(want >= 20)",
                  psa11, first)};
}

Outcome mc_agreement() {
  const NetworkParams p;
  const ChannelPlan plan;
  const D2DMetrics a = evaluate_d2d(p, plan);
  McSettings s;
  s.n_iters = g_iters;
  const auto t0 = std::chrono::steady_clock::now();
  const McResult r = estimate_metrics(p, plan, s);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double se_f = r.p_f.ci_halfwidth / 1.96;
  const double se_o = r.O_D.ci_halfwidth / 1.96;
  const bool ok_f = std::abs(r.p_f.mean - a.p_f) <= 3.0 * se_f + 0.01;
  const bool ok_s = std::abs(r.p_s.mean - a.p_s) <= 0.02;
  const bool ok_o = std::abs(r.O_D.mean - a.O_D) <= 3.0 * se_o + 0.03;
  const bool ok_tv = r.load_tv_distance <= 0.03;
  return {ok_f && ok_s && ok_o && ok_tv,
          fmt("p_f MC %.4f vs %.4f [%s]; p_s MC %.4f vs %.4f [%s]; O_D MC %.4f vs %.4f [%s]; "
              "load TV %.4f [%s]; %d iterations, %.0f s",
              r.p_f.mean, a.p_f, ok_f ? "ok" : "off", r.p_s.mean, a.p_s, ok_s ? "ok" : "off",
              r.O_D.mean, a.O_D, ok_o ? "ok" : "off", r.load_tv_distance, ok_tv ? "ok" : "off",
              r.n_iters, secs)};
}

Outcome cognition_protection() {
  const ExperimentConfig c = preset_config("fig8");
  const auto rows = run_experiment(c);
  // key: (value, side) -> source -> O_B_avg
  std::map<std::pair<double, int>, std::map<std::string, double>> table;
  for (const auto& r : rows) table[{r.value, static_cast<int>(r.cd_side)}][r.source] = r.O_B_avg;
  int violations = 0, checked = 0;
  for (const auto& [key, v] : table) {
    const double none = v.at("analytic-no-d2d");
    const double cog = v.at("analytic-cognitive");
    const double non = v.at("analytic-non-cognitive");
    ++checked;
    violations += !(none <= cog && cog <= non);
  }
  return {violations == 0 && checked == 2 * 26,
          fmt("%d of %d (|C|, side) points violate no-D2D <= cognitive <= non-cognitive",
              violations, checked)};
}

Outcome sensitivity_shape() {
  const ExperimentConfig c = preset_config("fig7");
  const auto rows = run_experiment(c);
  std::map<std::string, std::vector<double>> curves;
  for (const auto& r : rows) {
    curves[std::string(to_string(r.cd_side)) + "-" + std::string(to_string(r.policy))].push_back(
        r.O_D_tot);
  }
  bool ok = true;
  std::string detail;
  for (const auto& [name, y] : curves) {
    int changes = 0, prev = 0;
    std::size_t argmin = 0;
    for (std::size_t i = 1; i < y.size(); ++i) {
      if (y[i] < y[argmin]) argmin = i;
      const double d = y[i] - y[i - 1];
      const int sign = d > 0 ? 1 : (d < 0 ? -1 : 0);
      if (sign == 0) continue;
      if (prev != 0 && sign != prev) ++changes;
      prev = sign;
    }
    const bool interior = argmin > 0 && argmin + 1 < y.size();
    const bool good = changes == 1 && interior;
    ok = ok && good;
    detail += fmt("%s: %d sign change(s), min %.3f at rho_d=%g; ", name.c_str(), changes,
                  y[argmin], c.sweep_values[argmin]);
  }
  return {ok && curves.size() == 4, detail};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--iterations") g_iters = std::atoi(argv[i + 1]);
    else if (flag == "--only") only = std::atoi(argv[i + 1]);
  }
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"channel usage identities", identities},
      {"erf special case of harvesting quadrature", erf_consistency},
      {"uplink/downlink crossover density", crossover},
      {"classical downlink outage baseline", baseline},
      {"D2D outage by channel side and policy", channel_policy_values},
      {"uplink channel-count thresholds", channel_thresholds},
      {"MC vs analytic at default parameters", mc_agreement},
      {"cellular protection ordering", cognition_protection},
      {"overall D2D outage unimodal in rho_d", sensitivity_shape},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %zu (%s): %s - %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL",
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
