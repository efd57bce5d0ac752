#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "epe/backward.hpp"
#include "epe/bidirectional.hpp"
#include "epe/errors.hpp"
#include "epe/forward.hpp"
#include "epe/harness.hpp"
#include "epe/instance_gen.hpp"
#include "epe/instance_io.hpp"

namespace {

// Writes to path, or stdout when path is empty or "-".
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  fn(out);
}

std::vector<epe::TrialRecord> read_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return epe::read_csv(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Policy evaluation sample-complexity experiments"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Emit a random instance as JSON");
  epe::EnsembleSpec spec;
  std::string cost_model = "mixed", rule = "constant", gen_out;
  double gen_alpha = 0.9;
  std::uint64_t gen_seed = 0;
  gen->add_option("-S,--states", spec.states, "Number of states")->required();
  gen->add_option("-p,--density", spec.p, "Expected nonzeros per row (constant rule)");
  gen->add_option("--rule", rule, "constant | quartic_root | square_root");
  gen->add_option("--cost", cost_model, "mixed | binary");
  gen->add_option("-H,--ones", spec.ones, "Ones in the binary cost vector");
  gen->add_option("--alpha", gen_alpha, "Discount factor");
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("-o,--output", gen_out, "Output path (default stdout)");

  // run
  auto* run = app.add_subcommand("run", "Run an experiment config and write trial CSV");
  std::string config_path, preset_name, run_out;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::size_t> trials_override;
  std::size_t threads = 0;
  auto* cfg_opt = run->add_option("-c,--config", config_path, "Config JSON");
  run->add_option("--preset", preset_name, "fig1 | fig1-alt | fig2")->excludes(cfg_opt);
  run->add_option("--seed", seed_override, "Override master_seed");
  run->add_option("--trials", trials_override, "Override trial count");
  run->add_option("--threads", threads, "Worker threads (default EPE_THREADS or all cores)");
  run->add_option("-o,--output", run_out, "Output CSV (default: config output, else stdout)");

  // summarize
  auto* sum = app.add_subcommand("summarize", "Aggregate trial CSV per (S, p, algorithm)");
  std::string sum_in, sum_out, fits_out;
  sum->add_option("input", sum_in, "Trial CSV")->required();
  sum->add_option("-o,--output", sum_out, "Summary CSV (default stdout)");
  sum->add_option("--fits", fits_out, "Write log-log scaling fits here");

  // bounds
  auto* bnd = app.add_subcommand("bounds", "Compare encountered-set sizes with the a priori bound");
  std::string bnd_in, bnd_config, bnd_preset, bnd_out;
  bnd->add_option("input", bnd_in, "Trial CSV")->required();
  auto* bcfg = bnd->add_option("-c,--config", bnd_config, "Config used for the run");
  bnd->add_option("--preset", bnd_preset, "Preset used for the run")->excludes(bcfg);
  bnd->add_option("-o,--output", bnd_out, "Output CSV (default stdout)");

  // calc
  auto* calc = app.add_subcommand("calc", "Print sample sizes for given accuracy targets");
  double c_eps = 0.1, c_delta = 0.1, c_alpha = 0.9, c_cost = 1.0, c_rel = 0.1, c_abs = 0.1,
         c_qmin = 0.0;
  std::size_t c_states = 100;
  calc->add_option("--epsilon", c_eps, "Backward accuracy epsilon");
  calc->add_option("--delta", c_delta, "Failure probability");
  calc->add_option("--alpha", c_alpha, "Discount factor");
  calc->add_option("--cost-inf", c_cost, "||c||_inf");
  calc->add_option("-S,--states", c_states, "Number of states");
  calc->add_option("--eps-rel", c_rel, "Relative accuracy (bidirectional)");
  calc->add_option("--eps-abs", c_abs, "Absolute accuracy (bidirectional)");
  calc->add_option("--q-min", c_qmin, "Smallest positive transition probability");

  // preset
  auto* pre = app.add_subcommand("preset", "Print a built-in config as JSON");
  std::string pre_name;
  pre->add_option("name", pre_name, "fig1 | fig1-alt | fig2")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      spec.cost_model = epe::parse_cost_model(cost_model);
      spec.rule = epe::parse_density_rule(rule);
      const auto instance = epe::generate_instance(spec, gen_alpha, gen_seed);
      with_output(gen_out, [&](std::ostream& os) { os << epe::instance_to_json(instance).dump(1) << '\n'; });
    } else if (*run) {
      if (config_path.empty() && preset_name.empty())
        throw epe::ContractViolation("run needs --config or --preset");
      epe::ExperimentConfig config =
          preset_name.empty() ? epe::load_config(config_path) : epe::preset(preset_name);
      if (seed_override) config.master_seed = *seed_override;
      if (trials_override) config.trials = *trials_override;
      const auto records = epe::run_experiment(config, threads);
      const std::string path = run_out.empty() ? config.output : run_out;
      with_output(path, [&](std::ostream& os) { epe::write_csv(records, os); });
    } else if (*sum) {
      const auto summary = epe::summarize(read_records(sum_in));
      with_output(sum_out, [&](std::ostream& os) { epe::write_summary_csv(summary, os); });
      if (!fits_out.empty())
        with_output(fits_out, [&](std::ostream& os) { epe::write_fits_csv(summary, os); });
    } else if (*bnd) {
      if (bnd_config.empty() && bnd_preset.empty())
        throw epe::ContractViolation("bounds needs --config or --preset");
      const auto config =
          bnd_preset.empty() ? epe::load_config(bnd_config) : epe::preset(bnd_preset);
      const auto cells = epe::bound_report(read_records(bnd_in), config);
      with_output(bnd_out, [&](std::ostream& os) { epe::write_bounds_csv(cells, os); });
    } else if (*calc) {
      nlohmann::json out;
      out["n_backward"] = epe::sample_size_backward(c_eps, c_delta, c_alpha, c_cost, c_states);
      const auto fwd = epe::sample_size_forward(c_eps, c_delta, c_alpha, c_cost, c_states);
      out["forward_T"] = fwd.horizon;
      out["forward_m"] = fwd.trajectories;
      out["n_F"] = epe::sample_size_forward_bd(c_eps, c_rel, c_abs, c_delta, c_states);
      if (c_qmin > 0.0)
        out["n_B"] = epe::sample_size_backward_bd(c_rel, c_abs, c_delta, c_alpha, c_cost,
                                                  c_states, c_qmin);
      std::cout << out.dump(1) << '\n';
    } else if (*pre) {
      std::cout << epe::config_to_json(epe::preset(pre_name)).dump(1) << '\n';
    }
  } catch (const epe::ContractViolation& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
