#include "cogd2d/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace cogd2d {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    const auto item = trim(s.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

double to_double(std::string_view field, std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ConfigError(std::string(field) + ": not a number: '" + std::string(s) + "'");
  }
  return v;
}

int to_int(std::string_view field, std::string_view s) {
  const double v = to_double(field, s);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw ConfigError(std::string(field) + ": not an integer: '" + std::string(s) + "'");
  }
  return static_cast<int>(v);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T, class F>
std::string join(const std::vector<T>& items, F&& f) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += f(items[i]);
  }
  return out;
}

std::vector<double> parse_range(std::string_view field, std::string_view s) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto colon = s.find(':');
    parts.push_back(trim(s.substr(0, colon)));
    if (colon == std::string_view::npos) break;
    s.remove_prefix(colon + 1);
  }
  if (parts.size() != 3) throw ConfigError(std::string(field) + ": expected start:stop:step");
  const double start = to_double(field, parts[0]);
  const double stop = to_double(field, parts[1]);
  const double step = to_double(field, parts[2]);
  if (!(step > 0.0) || stop < start) throw ConfigError(std::string(field) + ": empty range");
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  if (n > 100000) throw ConfigError(std::string(field) + ": range too long");
  std::vector<double> out;
  for (long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

SensingMode parse_sensing(std::string_view s) {
  if (s == "faded") return SensingMode::Faded;
  if (s == "meandisc") return SensingMode::MeanDisc;
  throw ConfigError("mc.sensing: expected faded or meandisc");
}

Boundary parse_boundary(std::string_view s) {
  if (s == "torus") return Boundary::Torus;
  if (s == "central") return Boundary::Central;
  throw ConfigError("mc.boundary: expected torus or central");
}

KappaBasis parse_basis(std::string_view s) {
  if (s == "whole") return KappaBasis::WholeSet;
  if (s == "subset") return KappaBasis::SubsetPolicy;
  if (s == "subset-rsa") return KappaBasis::SubsetRsa;
  throw ConfigError("channels.kappa_basis: expected whole, subset or subset-rsa");
}

CellularVariant parse_variant(std::string_view s) {
  if (s == "standard") return CellularVariant::Standard;
  if (s == "no-d2d") return CellularVariant::NoD2D;
  if (s == "non-cognitive") return CellularVariant::NonCognitive;
  if (s == "cognitive") return CellularVariant::Cognitive;
  throw ConfigError("run.variants: unknown variant '" + std::string(s) + "'");
}

using Setter = std::function<void(ExperimentConfig&, std::string_view)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto num = [&t](const char* key, double ExperimentConfig::*field) {
      t[key] = [key, field](ExperimentConfig& c, std::string_view v) { c.*field = to_double(key, v); };
    };
    num("network.lambda_B", &ExperimentConfig::lambda_B);
    num("network.lambda_U", &ExperimentConfig::lambda_U);
    num("network.lambda_D", &ExperimentConfig::lambda_D);
    num("network.users_per_bs", &ExperimentConfig::users_per_bs);
    num("network.P_B", &ExperimentConfig::P_B);
    num("network.rho_b", &ExperimentConfig::rho_b);
    num("network.rho_d", &ExperimentConfig::rho_d);
    num("network.sigma2", &ExperimentConfig::sigma2);
    num("network.gamma", &ExperimentConfig::gamma);
    num("network.a", &ExperimentConfig::a);
    num("network.alpha", &ExperimentConfig::alpha);
    num("network.beta", &ExperimentConfig::beta);
    num("network.d_o", &ExperimentConfig::d_o);
    num("network.tau", &ExperimentConfig::tau);

    t["channels.n_channels"] = [](ExperimentConfig& c, std::string_view v) {
      c.n_channels = to_int("channels.n_channels", v);
    };
    t["channels.n_uplink"] = [](ExperimentConfig& c, std::string_view v) {
      c.n_uplink = v == "auto" ? -1 : to_int("channels.n_uplink", v);
    };
    t["channels.policies"] = [](ExperimentConfig& c, std::string_view v) {
      c.policies.clear();
      for (auto item : split_list(v)) c.policies.push_back(parse_policy(item));
    };
    t["channels.cd_sides"] = [](ExperimentConfig& c, std::string_view v) {
      c.cd_sides.clear();
      for (auto item : split_list(v)) c.cd_sides.push_back(parse_side(item));
    };
    t["channels.kappa_basis"] = [](ExperimentConfig& c, std::string_view v) {
      c.kappa_basis = parse_basis(v);
    };

    t["sweep.variable"] = [](ExperimentConfig& c, std::string_view v) { c.sweep_var = v; };
    t["sweep.values"] = [](ExperimentConfig& c, std::string_view v) {
      c.sweep_values.clear();
      for (auto item : split_list(v)) c.sweep_values.push_back(to_double("sweep.values", item));
    };
    t["sweep.range"] = [](ExperimentConfig& c, std::string_view v) {
      c.sweep_values = parse_range("sweep.range", v);
    };

    t["run.name"] = [](ExperimentConfig& c, std::string_view v) { c.name = v; };
    t["run.engines"] = [](ExperimentConfig& c, std::string_view v) { c.engines = parse_engines(v); };
    t["run.variants"] = [](ExperimentConfig& c, std::string_view v) {
      c.variants.clear();
      for (auto item : split_list(v)) c.variants.push_back(parse_variant(item));
    };

    t["mc.window_side"] = [](ExperimentConfig& c, std::string_view v) {
      c.mc.window_side = to_double("mc.window_side", v);
    };
    t["mc.iterations"] = [](ExperimentConfig& c, std::string_view v) {
      c.mc.n_iters = to_int("mc.iterations", v);
    };
    t["mc.seed"] = [](ExperimentConfig& c, std::string_view v) {
      std::uint64_t seed = 0;
      const auto res = std::from_chars(v.data(), v.data() + v.size(), seed);
      if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
        throw ConfigError("mc.seed: not an unsigned integer");
      }
      c.mc.seed = seed;
    };
    t["mc.sensing"] = [](ExperimentConfig& c, std::string_view v) { c.mc.sensing = parse_sensing(v); };
    t["mc.boundary"] = [](ExperimentConfig& c, std::string_view v) { c.mc.boundary = parse_boundary(v); };
    t["mc.harvest_radius"] = [](ExperimentConfig& c, std::string_view v) {
      c.mc.harvest_radius = to_double("mc.harvest_radius", v);
    };
    t["mc.d2d_radius"] = [](ExperimentConfig& c, std::string_view v) {
      c.mc.d2d_radius = to_double("mc.d2d_radius", v);
    };
    t["mc.cellular_radius"] = [](ExperimentConfig& c, std::string_view v) {
      c.mc.cellular_radius = to_double("mc.cellular_radius", v);
    };
    t["mc.workers"] = [](ExperimentConfig& c, std::string_view v) {
      c.mc.workers = to_int("mc.workers", v);
    };
    t["output.path"] = [](ExperimentConfig& c, std::string_view v) { c.output = v; };
    return t;
  }();
  return table;
}

}  // namespace

std::string_view to_string(Engines e) {
  switch (e) {
    case Engines::Analytic: return "analytic";
    case Engines::Mc: return "mc";
    case Engines::Both: return "both";
  }
  return "?";
}

std::string_view to_string(CellularVariant v) {
  switch (v) {
    case CellularVariant::Standard: return "standard";
    case CellularVariant::NoD2D: return "no-d2d";
    case CellularVariant::NonCognitive: return "non-cognitive";
    case CellularVariant::Cognitive: return "cognitive";
  }
  return "?";
}

AccessPolicy parse_policy(std::string_view s) {
  if (s == "rsa") return AccessPolicy::Rsa;
  if (s == "psa") return AccessPolicy::Psa;
  throw ConfigError("policy: expected rsa or psa, got '" + std::string(s) + "'");
}

LinkSide parse_side(std::string_view s) {
  if (s == "dl") return LinkSide::Downlink;
  if (s == "ul") return LinkSide::Uplink;
  throw ConfigError("cd_side: expected dl or ul, got '" + std::string(s) + "'");
}

Engines parse_engines(std::string_view s) {
  if (s == "analytic") return Engines::Analytic;
  if (s == "mc") return Engines::Mc;
  if (s == "both") return Engines::Both;
  throw ConfigError("engines: expected analytic, mc or both, got '" + std::string(s) + "'");
}

const std::vector<std::string>& sweep_variables() {
  static const std::vector<std::string> vars{
      "lambda_B", "lambda_U", "lambda_D", "users_per_bs", "P_B", "rho_b", "rho_d",
      "sigma2", "gamma", "a", "alpha", "beta", "d_o", "tau", "n_channels"};
  return vars;
}

void ExperimentConfig::validate() const {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  require(lambda_B > 0.0, "network.lambda_B: must be > 0");
  require(lambda_U >= 0.0, "network.lambda_U: must be >= 0");
  require(lambda_D >= 0.0, "network.lambda_D: must be >= 0");
  require(users_per_bs >= 0.0, "network.users_per_bs: must be >= 0");
  for (auto [name, v] : {std::pair{"P_B", P_B}, {"rho_b", rho_b}, {"rho_d", rho_d},
                         {"sigma2", sigma2}, {"gamma", gamma}, {"tau", tau}}) {
    require(std::isfinite(v), std::string("network.") + name + ": must be finite");
  }
  require(a > 0.0 && a <= 1.0, "network.a: must lie in (0, 1]");
  require(alpha > 2.0, "network.alpha: must be > 2");
  require(beta > 2.0, "network.beta: must be > 2");
  require(d_o > 0.0, "network.d_o: must be > 0");
  require(n_channels >= 1, "channels.n_channels: must be >= 1");
  require(n_uplink >= -1, "channels.n_uplink: must be >= 0 or auto");
  require(!policies.empty(), "channels.policies: empty");
  require(!cd_sides.empty(), "channels.cd_sides: empty");
  require(!variants.empty(), "run.variants: empty");
  bool known = false;
  for (const auto& v : sweep_variables()) known = known || v == sweep_var;
  require(known, "sweep.variable: unknown variable '" + sweep_var + "'");
  require(!sweep_values.empty(), "sweep.values: empty grid");
  for (std::size_t i = 0; i < sweep_values.size(); ++i) {
    require(std::isfinite(sweep_values[i]), "sweep.values: must be finite");
    require(i == 0 || sweep_values[i] > sweep_values[i - 1], "sweep.values: must be strictly increasing");
    if (sweep_var == "n_channels") {
      require(sweep_values[i] == std::floor(sweep_values[i]) && sweep_values[i] >= 1,
              "sweep.values: n_channels must be positive integers");
    }
  }
  const double fewest = sweep_var == "n_channels" ? sweep_values.front() : n_channels;
  require(n_uplink <= fewest, "channels.n_uplink: exceeds n_channels");
  try {
    mc.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("mc.") + e.what());
  }
}

ExperimentConfig with_sweep_value(const ExperimentConfig& cfg, double value) {
  ExperimentConfig c = cfg;
  const std::string& v = cfg.sweep_var;
  if (v == "lambda_B") c.lambda_B = value;
  else if (v == "lambda_U") c.lambda_U = value;
  else if (v == "lambda_D") c.lambda_D = value;
  else if (v == "users_per_bs") c.users_per_bs = value;
  else if (v == "P_B") c.P_B = value;
  else if (v == "rho_b") c.rho_b = value;
  else if (v == "rho_d") c.rho_d = value;
  else if (v == "sigma2") c.sigma2 = value;
  else if (v == "gamma") c.gamma = value;
  else if (v == "a") c.a = value;
  else if (v == "alpha") c.alpha = value;
  else if (v == "beta") c.beta = value;
  else if (v == "d_o") c.d_o = value;
  else if (v == "tau") c.tau = value;
  else if (v == "n_channels") c.n_channels = static_cast<int>(value);
  else throw ConfigError("sweep.variable: unknown variable '" + v + "'");
  return c;
}

NetworkParams to_params(const ExperimentConfig& cfg) {
  NetworkParams p;
  p.lambda_B = per_km2_to_per_m2(cfg.lambda_B);
  p.lambda_U = per_km2_to_per_m2(cfg.users_per_bs > 0.0 ? cfg.users_per_bs * cfg.lambda_B
                                                         : cfg.lambda_U);
  p.lambda_D = per_km2_to_per_m2(cfg.lambda_D);
  p.P_B = dbm_to_watts(cfg.P_B);
  p.rho_b = dbm_to_watts(cfg.rho_b);
  p.rho_d = dbm_to_watts(cfg.rho_d);
  p.sigma_z2 = dbm_to_watts(cfg.sigma2);
  p.gamma_sense = dbm_to_watts(cfg.gamma);
  p.a = cfg.a;
  p.alpha = cfg.alpha;
  p.beta = cfg.beta;
  p.d_o = cfg.d_o;
  p.tau = db_to_linear(cfg.tau);
  return p;
}

ChannelPlan to_plan(const ExperimentConfig& cfg, AccessPolicy policy, LinkSide side) {
  ChannelPlan plan = ChannelPlan::even_split(cfg.n_channels, side, policy);
  if (cfg.n_uplink >= 0) {
    if (cfg.n_uplink > cfg.n_channels) {
      throw ConfigError("channels.n_uplink: exceeds n_channels");
    }
    plan.n_uplink = cfg.n_uplink;
    plan.n_downlink = cfg.n_channels - cfg.n_uplink;
  }
  plan.kappa_basis = cfg.kappa_basis;
  return plan;
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::string section;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = section + "." + std::string(trim(line.substr(0, eq)));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(key + ": unknown key");
    it->second(cfg, trim(line.substr(eq + 1)));
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string emit_config(const ExperimentConfig& c) {
  std::ostringstream o;
  o << "[run]\n"
    << "name = " << c.name << "\n"
    << "engines = " << to_string(c.engines) << "\n"
    << "variants = " << join(c.variants, [](auto v) { return std::string(to_string(v)); }) << "\n"
    << "\n[network]\n"
    << "lambda_B = " << fmt(c.lambda_B) << "\n"
    << "lambda_U = " << fmt(c.lambda_U) << "\n"
    << "lambda_D = " << fmt(c.lambda_D) << "\n"
    << "users_per_bs = " << fmt(c.users_per_bs) << "\n"
    << "P_B = " << fmt(c.P_B) << "\n"
    << "rho_b = " << fmt(c.rho_b) << "\n"
    << "rho_d = " << fmt(c.rho_d) << "\n"
    << "sigma2 = " << fmt(c.sigma2) << "\n"
    << "gamma = " << fmt(c.gamma) << "\n"
    << "a = " << fmt(c.a) << "\n"
    << "alpha = " << fmt(c.alpha) << "\n"
    << "beta = " << fmt(c.beta) << "\n"
    << "d_o = " << fmt(c.d_o) << "\n"
    << "tau = " << fmt(c.tau) << "\n"
    << "\n[channels]\n"
    << "n_channels = " << c.n_channels << "\n"
    << "n_uplink = " << (c.n_uplink < 0 ? std::string("auto") : std::to_string(c.n_uplink)) << "\n"
    << "policies = " << join(c.policies, [](auto p) { return std::string(to_string(p)); }) << "\n"
    << "cd_sides = " << join(c.cd_sides, [](auto s) { return std::string(to_string(s)); }) << "\n"
    << "kappa_basis = " << to_string(c.kappa_basis) << "\n"
    << "\n[sweep]\n"
    << "variable = " << c.sweep_var << "\n"
    << "values = " << join(c.sweep_values, fmt) << "\n"
    << "\n[mc]\n"
    << "window_side = " << fmt(c.mc.window_side) << "\n"
    << "iterations = " << c.mc.n_iters << "\n"
    << "seed = " << c.mc.seed << "\n"
    << "sensing = " << to_string(c.mc.sensing) << "\n"
    << "boundary = " << to_string(c.mc.boundary) << "\n"
    << "harvest_radius = " << fmt(c.mc.harvest_radius) << "\n"
    << "d2d_radius = " << fmt(c.mc.d2d_radius) << "\n"
    << "cellular_radius = " << fmt(c.mc.cellular_radius) << "\n"
    << "workers = " << c.mc.workers << "\n";
  if (!c.output.empty()) o << "\n[output]\npath = " << c.output << "\n";
  return o.str();
}

}  // namespace cogd2d
