// Command-line front end: runs a preset or config file and writes CSV.

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "cogd2d/harness.hpp"

int main(int argc, char** argv) {
  using namespace cogd2d;
  CLI::App app{"Cognitive RF-powered D2D underlay: analytic and Monte Carlo sweeps"};

  std::string config_path, preset, out_path;
  std::optional<std::string> policy, cd_side, engines;
  std::optional<int> iterations;
  std::optional<std::uint64_t> seed;
  bool list = false, show_config = false;

  app.add_option("--config", config_path, "Config file (sectioned key = value)");
  app.add_option("--preset", preset, "Built-in preset (see --list-presets)");
  app.add_option("--policy", policy, "Restrict to one access policy")->check(CLI::IsMember({"rsa", "psa"}));
  app.add_option("--cd-side", cd_side, "Restrict to one D2D channel side")->check(CLI::IsMember({"dl", "ul"}));
  app.add_option("--engines", engines, "Engines to run")->check(CLI::IsMember({"analytic", "mc", "both"}));
  app.add_option("--iterations", iterations, "Monte Carlo iterations")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Monte Carlo base seed");
  app.add_option("--out", out_path, "Output CSV path (default: stdout)");
  app.add_flag("--list-presets", list, "List presets and exit");
  app.add_flag("--show-config", show_config, "Print the effective config and exit");
  CLI11_PARSE(app, argc, argv);

  try {
    if (list) {
      for (const auto& p : list_presets()) {
        std::cout << p.name << "  [sweep: " << p.config.sweep_var << "]  " << p.description << "\n";
      }
      return 0;
    }
    if (!config_path.empty() && !preset.empty()) {
      std::cerr << "error: --config and --preset are mutually exclusive\n";
      return 2;
    }
    ExperimentConfig cfg;
    if (!preset.empty()) cfg = preset_config(preset);
    else if (!config_path.empty()) cfg = load_config(config_path);
    if (policy) cfg.policies = {parse_policy(*policy)};
    if (cd_side) cfg.cd_sides = {parse_side(*cd_side)};
    if (engines) cfg.engines = parse_engines(*engines);
    if (iterations) cfg.mc.n_iters = *iterations;
    if (seed) cfg.mc.seed = *seed;
    if (!out_path.empty()) cfg.output = out_path;
    cfg.validate();

    if (show_config) {
      std::cout << emit_config(cfg);
      return 0;
    }
    const auto rows = run_experiment(cfg, &std::cerr);
    if (cfg.output.empty()) {
      write_csv(std::cout, rows);
    } else {
      std::ofstream out(cfg.output, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write '" << cfg.output << "'\n";
        return 1;
      }
      write_csv(out, rows);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
