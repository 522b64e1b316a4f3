#ifndef DRSS_COMMANDS_HPP
#define DRSS_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "drss/config_file.hpp"
#include "drss/sim.hpp"

namespace drss {

// Experiment commands behind the command-line front end. Each command
// composes every output file in memory first and only then writes, each
// file atomically; a failure mid-write removes the files this invocation
// already produced, so an output directory never holds a partial result.
//
// All CSV outputs carry a schema tag column, echo the full effective
// configuration per row, and mark inherently non-deterministic columns
// with a "_nondet" header suffix. Everything else is byte-deterministic
// given the seed.

// One sweep to execute: either a named case preset or a custom
// parameter/value-list pair.
struct SweepSpec {
  std::string name;  // "case1", "case2", "case3" or "custom"
  SweepBase base;
  SweepParam param = SweepParam::Parties;
  std::vector<std::uint32_t> values;
};

// The three canned sweeps mirroring the experiment tables: case 1 grows
// the party count, case 2 grows packets per party, case 3 grows the
// anonymizer count. case_number in {1,2,3}.
SweepSpec sweep_case_preset(int case_number, std::uint64_t seed,
                            std::uint32_t batch_size);

// Leakage grid: colluding-set sizes crossed with one varying axis, either
// packets-per-party or anonymizer count.
struct LeakageGrid {
  enum class Axis { PacketsPerParty, Anonymizers };
  std::vector<std::uint32_t> colluding_values;
  Axis axis = Axis::PacketsPerParty;
  std::vector<std::uint32_t> axis_values;
};

// Default grid: packets-per-party 1..6 at the configured colluder count.
LeakageGrid default_leakage_grid(const ResolvedOptions& options);

// run: one batch of the configured protocol; prints the summary, writes
// runs.csv (one row per run).
void cmd_run(const ResolvedOptions& options,
             const std::filesystem::path& out_dir, std::ostream& out);

// sweep: one batch per swept value; writes <name>.csv derived from
// spec.name (sweep.csv for "custom", sweep_caseN.csv for presets) plus a
// matching SVG chart.
void cmd_sweep(const ResolvedOptions& options, const SweepSpec& spec,
               const std::filesystem::path& out_dir, std::ostream& out);

// leakage: analytic probabilities plus a Monte Carlo estimate per grid
// row; writes leakage.csv and leakage.svg.
void cmd_leakage(const ResolvedOptions& options, const LeakageGrid& grid,
                 const std::filesystem::path& out_dir, std::ostream& out);

// report: reads whichever output CSVs exist in the directory and rebuilds
// report.md (tables) plus the SVG charts from the stored data. Errors if
// no known CSV is present.
void cmd_report(const std::filesystem::path& dir, std::ostream& out);

}  // namespace drss

#endif  // DRSS_COMMANDS_HPP
