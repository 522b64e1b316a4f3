// Command-line front end for the secure-sum simulator: run / sweep /
// leakage / report subcommands over a shared key=value config file.
//
// Exit codes: 0 success, 2 configuration or usage error, 3 infeasible
// parameters, 4 I/O failure.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "drss/commands.hpp"
#include "drss/config_file.hpp"
#include "drss/errors.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint32_t batch = 0;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* trials_opt = nullptr;
  CLI::Option* batch_opt = nullptr;

  void attach(CLI::App& cmd) {
    cmd.add_option("--config", config_path,
                   "key=value configuration file (see README)");
    cmd.add_option("--out", out_dir, "output directory")
        ->capture_default_str();
    seed_opt = cmd.add_option("--seed", seed, "root seed (overrides config)");
    trials_opt = cmd.add_option("--trials", trials,
                                "Monte Carlo trials (overrides config)");
    batch_opt =
        cmd.add_option("--batch", batch, "runs per batch (overrides config)");
  }

  drss::ResolvedOptions resolve() const {
    drss::ParsedConfig parsed;
    if (!config_path.empty()) {
      parsed = drss::read_config_file(config_path);
    }
    if (seed_opt->count() > 0) parsed.seed = seed;
    if (trials_opt->count() > 0) parsed.trials = trials;
    if (batch_opt->count() > 0) parsed.batch_size = batch;
    return drss::resolve_options(parsed);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"secure-sum protocol simulator and analysis toolkit"};
  app.require_subcommand(1);

  CLI::App* run_cmd = app.add_subcommand(
      "run", "one batch of the configured protocol; writes runs.csv");
  CommonArgs run_args;
  run_args.attach(*run_cmd);

  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "batch per swept value; writes sweep CSV and chart");
  CommonArgs sweep_args;
  sweep_args.attach(*sweep_cmd);
  bool case1 = false, case2 = false, case3 = false;
  std::string sweep_param;
  std::vector<std::uint32_t> sweep_values;
  sweep_cmd->add_flag("--case1", case1, "grow the party count (n 2..8)");
  sweep_cmd->add_flag("--case2", case2, "grow packets per party (t_pk 3..5)");
  sweep_cmd->add_flag("--case3", case3, "grow the anonymizer count (m 5..8)");
  sweep_cmd->add_option("--param", sweep_param,
                        "custom sweep parameter: n, t_pk or m");
  sweep_cmd->add_option("--values", sweep_values,
                        "custom sweep values (space separated)");

  CLI::App* leakage_cmd = app.add_subcommand(
      "leakage", "analytic + Monte Carlo compromise probabilities");
  CommonArgs leakage_args;
  leakage_args.attach(*leakage_cmd);
  std::vector<std::uint32_t> l_values, k_values, m_values;
  leakage_cmd->add_option("--l-values", l_values,
                          "colluding anonymizer counts (default: colluders)");
  leakage_cmd->add_option("--k-values", k_values,
                          "packets-per-party grid (default: 1..6)");
  leakage_cmd->add_option("--m-values", m_values,
                          "anonymizer-count grid (excludes --k-values)");

  CLI::App* report_cmd = app.add_subcommand(
      "report", "rebuild report.md and charts from stored CSVs");
  std::string report_dir = ".";
  report_cmd->add_option("--out", report_dir, "directory holding the CSVs")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (run_cmd->parsed()) {
      drss::cmd_run(run_args.resolve(), run_args.out_dir, std::cout);
    } else if (sweep_cmd->parsed()) {
      const drss::ResolvedOptions options = sweep_args.resolve();
      const int cases = int(case1) + int(case2) + int(case3);
      drss::SweepSpec spec;
      if (cases == 1 && sweep_param.empty() && sweep_values.empty()) {
        const int which = case1 ? 1 : case2 ? 2 : 3;
        spec = drss::sweep_case_preset(which, options.config.seed,
                                       options.batch_size);
      } else if (cases == 0 && !sweep_param.empty() && !sweep_values.empty()) {
        spec.name = "custom";
        spec.base.parties = options.config.parties;
        spec.base.packets_per_party = options.config.packets_per_party;
        if (options.anonymizers_explicit) {
          spec.base.anonymizers = options.config.anonymizers;
        }
        if (options.capacity_explicit) {
          spec.base.capacity = options.config.anonymizer_capacity;
        }
        spec.base.seed = options.config.seed;
        spec.base.batch_size = options.batch_size;
        spec.values = sweep_values;
        if (sweep_param == "n") {
          spec.param = drss::SweepParam::Parties;
        } else if (sweep_param == "t_pk") {
          spec.param = drss::SweepParam::PacketsPerParty;
        } else if (sweep_param == "m") {
          spec.param = drss::SweepParam::Anonymizers;
        } else {
          throw drss::ConfigError("--param must be n, t_pk or m, got '" +
                                  sweep_param + "'");
        }
      } else {
        throw drss::ConfigError(
            "sweep needs exactly one of --case1/--case2/--case3 or both "
            "--param and --values");
      }
      drss::cmd_sweep(options, spec, sweep_args.out_dir, std::cout);
    } else if (leakage_cmd->parsed()) {
      const drss::ResolvedOptions options = leakage_args.resolve();
      drss::LeakageGrid grid = drss::default_leakage_grid(options);
      if (!k_values.empty() && !m_values.empty()) {
        throw drss::ConfigError(
            "--k-values and --m-values are mutually exclusive");
      }
      if (!l_values.empty()) grid.colluding_values = l_values;
      if (!k_values.empty()) {
        grid.axis = drss::LeakageGrid::Axis::PacketsPerParty;
        grid.axis_values = k_values;
      } else if (!m_values.empty()) {
        grid.axis = drss::LeakageGrid::Axis::Anonymizers;
        grid.axis_values = m_values;
      }
      drss::cmd_leakage(options, grid, leakage_args.out_dir, std::cout);
    } else if (report_cmd->parsed()) {
      drss::cmd_report(report_dir, std::cout);
    }
  } catch (const drss::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const drss::InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const drss::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
