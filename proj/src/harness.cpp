#include "cogd2d/harness.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "cogd2d/cellular_analytic.hpp"
#include "cogd2d/d2d_analytic.hpp"
#include "cogd2d/mcsim.hpp"

namespace cogd2d {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> range(double start, double stop, double step) {
  std::vector<double> v;
  const auto n = static_cast<int>(std::floor((stop - start) / step + 1e-9));
  for (int i = 0; i <= n; ++i) v.push_back(start + i * step);
  return v;
}

std::vector<PresetInfo> build_presets() {
  const std::vector<AccessPolicy> both_policies{AccessPolicy::Rsa, AccessPolicy::Psa};
  const std::vector<LinkSide> both_sides{LinkSide::Downlink, LinkSide::Uplink};
  const std::vector<double> bs_grid{0.1, 0.2, 0.3, 0.5, 0.7, 1.0, 1.5, 2.0, 3.0, 5.0, 7.0, 10.0};

  std::vector<PresetInfo> out;

  ExperimentConfig fig3;
  fig3.name = "fig3";
  fig3.users_per_bs = 10.0;
  fig3.rho_d = -80.0;
  fig3.policies = both_policies;
  fig3.cd_sides = both_sides;
  fig3.sweep_var = "lambda_B";
  fig3.sweep_values = bs_grid;
  out.push_back({"fig3", "transmission probability p_t vs BS density (per km^2), all four scenarios; "
                         "rho_d = -80 dBm, d_o = 10 m, gamma = -60 dBm, lambda_U = 10 lambda_B",
                 fig3});

  ExperimentConfig fig4 = fig3;
  fig4.name = "fig4";
  fig4.policies = {AccessPolicy::Psa};
  fig4.cd_sides = {LinkSide::Downlink};
  out.push_back({"fig4", "p_s, p_f and p_t vs BS density (per km^2), downlink D2D channel with PSA; "
                         "rho_d = -80 dBm, d_o = 10 m, gamma = -60 dBm, lambda_U = 10 lambda_B",
                 fig4});

  ExperimentConfig fig5;
  fig5.name = "fig5";
  fig5.n_channels = 15;
  fig5.policies = both_policies;
  fig5.cd_sides = both_sides;
  fig5.sweep_var = "gamma";
  fig5.sweep_values = range(-90.0, -40.0, 2.5);
  out.push_back({"fig5", "D2D SINR outage O_D vs sensing threshold gamma (dBm); "
                         "|C| = 15, rho_d = -70 dBm, d_o = 10 m",
                 fig5});

  ExperimentConfig fig6;
  fig6.name = "fig6";
  fig6.policies = both_policies;
  fig6.cd_sides = both_sides;
  fig6.sweep_var = "n_channels";
  fig6.sweep_values = range(2.0, 40.0, 1.0);
  out.push_back({"fig6", "D2D SINR outage O_D vs number of channels |C|; "
                         "rho_d = -70 dBm, d_o = 10 m, gamma = -60 dBm",
                 fig6});

  ExperimentConfig fig7;
  fig7.name = "fig7";
  fig7.users_per_bs = 5.0;
  fig7.policies = both_policies;
  fig7.cd_sides = both_sides;
  fig7.sweep_var = "rho_d";
  fig7.sweep_values = range(-100.0, -40.0, 2.0);
  out.push_back({"fig7", "overall D2D outage O_D_tot vs receiver sensitivity rho_d (dBm); "
                         "lambda_U = 5 lambda_B, gamma = -60 dBm, |C| = 10",
                 fig7});

  ExperimentConfig fig8;
  fig8.name = "fig8";
  fig8.rho_d = -60.0;
  fig8.beta = 4.0;
  fig8.d_o = 15.0;
  fig8.policies = {AccessPolicy::Rsa};
  fig8.cd_sides = both_sides;
  fig8.variants = {CellularVariant::NoD2D, CellularVariant::Cognitive,
                   CellularVariant::NonCognitive};
  fig8.sweep_var = "n_channels";
  fig8.sweep_values = range(5.0, 30.0, 1.0);
  out.push_back({"fig8", "cellular SINR outage O_B vs number of channels |C| with RSA, "
                         "without D2D, with cognitive D2D and with non-cognitive D2D; "
                         "rho_d = -60 dBm, beta = 4, d_o = 15 m, gamma = -60 dBm",
                 fig8});
  return out;
}

std::string source_name(std::string_view engine, CellularVariant v) {
  if (v == CellularVariant::Standard) return std::string(engine);
  return std::string(engine) + "-" + std::string(to_string(v));
}

CsvRow blank_row(const ExperimentConfig& cfg, double value, const ChannelPlan& plan) {
  CsvRow r;
  r.sweep_var = cfg.sweep_var;
  r.value = value;
  r.policy = plan.policy;
  r.cd_side = plan.d2d_side;
  r.p_s = r.p_f = r.p_t = r.O_D = r.O_D_tot = kNaN;
  r.O_B_cd = r.O_B_other = r.O_B_avg = r.O_B_tot = kNaN;
  r.ci_halfwidth = kNaN;
  return r;
}

bool equal_exponents(const NetworkParams& p) { return std::abs(p.alpha - p.beta) <= 1e-12; }

void analytic_row(CsvRow& row, const NetworkParams& params, const ChannelPlan& plan,
                  CellularVariant variant) {
  double p_s = 0.0;
  double p_f = 0.0;
  if (variant == CellularVariant::Standard) {
    const D2DMetrics m = evaluate_d2d(params, plan);
    row.p_s = m.p_s;
    row.p_f = m.p_f;
    row.p_t = m.p_t;
    row.O_D = m.O_D;
    row.O_D_tot = m.O_D_tot;
    p_s = m.p_s;
    p_f = m.p_f;
  } else if (variant == CellularVariant::NonCognitive) {
    p_s = p_f = 1.0;
  } else if (variant == CellularVariant::Cognitive) {
    const AccessProbs ap = access_probs(CellLoadDist(params.mean_load()), plan.total(), plan.policy);
    p_s = 1.0;
    p_f = p_free(params, plan, ap.q_d);
  }
  if (!equal_exponents(params)) return;
  const CellularMetrics c = evaluate_cellular(params, plan, p_s, p_f);
  row.O_B_cd = c.outage_cd;
  row.O_B_other = c.outage_other;
  row.O_B_avg = c.outage_avg;
  row.O_B_tot = c.outage_tot;
}

void mc_row(CsvRow& row, NetworkParams params, const ChannelPlan& plan, McSettings settings,
            CellularVariant variant, std::ostream* log) {
  switch (variant) {
    case CellularVariant::Standard: break;
    case CellularVariant::NoD2D: params.lambda_D = 0.0; break;
    case CellularVariant::NonCognitive:
      settings.assume_energy = true;
      settings.skip_sensing = true;
      break;
    case CellularVariant::Cognitive: settings.assume_energy = true; break;
  }
  const McResult r = estimate_metrics(params, plan, settings);
  if (variant == CellularVariant::Standard) {
    row.p_s = r.p_s.mean;
    row.p_f = r.p_f.mean;
    row.p_t = r.p_t.mean;
    row.O_D = r.O_D.mean;
    row.O_D_tot = r.O_D_tot.mean;
  }
  row.O_B_cd = r.O_B_cd.mean;
  row.O_B_other = r.O_B_other.mean;
  row.O_B_avg = r.O_B_avg.mean;
  row.O_B_tot = r.O_B_tot.mean;
  row.ci_halfwidth = r.max_ci();
  if (r.low_count && log) {
    *log << "note: " << row.sweep_var << "=" << row.value << " " << to_string(plan.d2d_side) << "-"
         << to_string(plan.policy) << ": some MC estimates rest on fewer than 5 events\n";
  }
}

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

const std::vector<PresetInfo>& list_presets() {
  static const std::vector<PresetInfo> presets = build_presets();
  return presets;
}

ExperimentConfig preset_config(std::string_view name) {
  for (const auto& p : list_presets()) {
    if (p.name == name) return p.config;
  }
  throw ConfigError("preset: unknown preset '" + std::string(name) + "'");
}

std::vector<CsvRow> run_experiment(const ExperimentConfig& cfg, std::ostream* log) {
  cfg.validate();
  const bool analytic = cfg.engines != Engines::Mc;
  const bool mc = cfg.engines != Engines::Analytic;
  bool noted_exponents = false;

  std::vector<CsvRow> rows;
  for (const double value : cfg.sweep_values) {
    const ExperimentConfig point = with_sweep_value(cfg, value);
    const NetworkParams params = to_params(point);
    for (const LinkSide side : cfg.cd_sides) {
      for (const AccessPolicy policy : cfg.policies) {
        for (const CellularVariant variant : cfg.variants) {
          for (int engine = 0; engine < 2; ++engine) {
            if ((engine == 0 && !analytic) || (engine == 1 && !mc)) continue;
            const std::string_view engine_name = engine == 0 ? "analytic" : "mc";
            ChannelPlan plan;
            plan.policy = policy;
            plan.d2d_side = side;
            CsvRow row = blank_row(cfg, value, plan);
            row.source = source_name(engine_name, variant);
            try {
              plan = to_plan(point, policy, side);
              params.validate();
              plan.validate();
              if (engine == 0) {
                analytic_row(row, params, plan, variant);
                if (!equal_exponents(params) && !noted_exponents && log) {
                  *log << "note: analytic cellular outage needs alpha == beta; O_B columns are nan\n";
                  noted_exponents = true;
                }
              } else {
                mc_row(row, params, plan, point.mc, variant, log);
              }
            } catch (const std::exception& e) {
              row = blank_row(cfg, value, plan);
              row.source = source_name(engine_name, variant) + "-error";
              if (log) {
                *log << "error: " << cfg.sweep_var << "=" << num(value) << " " << to_string(side)
                     << "-" << to_string(policy) << " " << row.source << ": " << e.what() << "\n";
              }
            }
            rows.push_back(std::move(row));
          }
        }
      }
    }
  }
  return rows;
}

std::string csv_header() {
  return "sweep_var,value,policy,cd_side,p_s,p_f,p_t,O_D,O_D_tot,O_B_cd,O_B_other,O_B_avg,"
         "O_B_tot,source,ci_halfwidth";
}

std::string format_row(const CsvRow& r) {
  std::string s = r.sweep_var + "," + num(r.value) + "," + std::string(to_string(r.policy)) + "," +
                  std::string(to_string(r.cd_side));
  for (double v : {r.p_s, r.p_f, r.p_t, r.O_D, r.O_D_tot, r.O_B_cd, r.O_B_other, r.O_B_avg, r.O_B_tot}) {
    s += "," + num(v);
  }
  s += "," + r.source + ",";
  if (!std::isnan(r.ci_halfwidth)) s += num(r.ci_halfwidth);
  return s;
}

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows) {
  out << csv_header() << '\n';
  for (const auto& r : rows) out << format_row(r) << '\n';
}

}  // namespace cogd2d
