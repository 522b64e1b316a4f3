#include "drss/commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <ostream>
#include <string_view>
#include <system_error>
#include <utility>

#include "drss/baselines.hpp"
#include "drss/csv.hpp"
#include "drss/errors.hpp"
#include "drss/leakage.hpp"
#include "drss/rng.hpp"
#include "drss/svg.hpp"

namespace drss {

namespace {

// Collects (filename, contents) pairs and writes them in one go. If any
// write fails, files already written by this commit are removed again, so
// a command either delivers all of its outputs or none.
class StagedOutputs {
 public:
  explicit StagedOutputs(std::filesystem::path dir) : dir_(std::move(dir)) {}

  void add(std::string filename, std::string contents) {
    files_.emplace_back(std::move(filename), std::move(contents));
  }

  std::vector<std::filesystem::path> commit() {
    if (!dir_.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(dir_, ec);
      if (ec) {
        throw IoError("cannot create output directory " + dir_.string() +
                      ": " + ec.message());
      }
    }
    std::vector<std::filesystem::path> written;
    try {
      for (const auto& [name, contents] : files_) {
        const std::filesystem::path path = dir_ / name;
        write_file_atomic(path, contents);
        written.push_back(path);
      }
    } catch (...) {
      for (const std::filesystem::path& path : written) {
        std::error_code ec;
        std::filesystem::remove(path, ec);
      }
      throw;
    }
    return written;
  }

 private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

std::string_view protocol_name(ProtocolChoice protocol) {
  switch (protocol) {
    case ProtocolChoice::Drss: return "drss";
    case ProtocolChoice::SingleMask: return "single_mask";
    case ProtocolChoice::Ring: return "ring";
  }
  throw ProtocolError("unhandled protocol choice");
}

std::string_view param_name(SweepParam param) {
  switch (param) {
    case SweepParam::Parties: return "n";
    case SweepParam::PacketsPerParty: return "t_pk";
    case SweepParam::Anonymizers: return "m";
  }
  throw ProtocolError("unhandled sweep parameter");
}

std::string_view param_label(SweepParam param) {
  switch (param) {
    case SweepParam::Parties: return "parties (n)";
    case SweepParam::PacketsPerParty: return "packets per party (t_pk)";
    case SweepParam::Anonymizers: return "anonymizers (m)";
  }
  throw ProtocolError("unhandled sweep parameter");
}

// The ring baseline has no anonymizers; its cost chain is serial: each
// party adds its input to the running partial and passes it on, then the
// initiator unmasks and announces (the one finalize-like operation).
RunMetrics ring_run_metrics(std::uint32_t parties, const CostModel& model) {
  RunMetrics metrics;
  metrics.messages_total = std::uint64_t(parties) + 1;  // passes + announce
  metrics.makespan =
      double(parties) * (model.send_cost + model.pool_cost) + model.ttp_cost;
  metrics.max_anonymizer_load = 0;
  return metrics;
}

// Batch loop for the two baseline protocols, mirroring batch_metrics'
// seed/input derivation so runs.csv rows line up across protocols.
std::vector<RunMetrics> baseline_metrics(const ResolvedOptions& options,
                                         const CostModel& model) {
  const ProtocolConfig& cfg = options.config;
  std::vector<RunMetrics> per_run(options.batch_size);
  for (std::uint32_t r = 0; r < options.batch_size; ++r) {
    const std::uint64_t run_seed = derive_seed(cfg.seed, Stream::BatchRun, r);
    SplitMix64 input_rng(derive_seed(run_seed, Stream::Inputs));
    std::vector<SecretInput> inputs(cfg.parties);
    for (std::uint32_t p = 0; p < cfg.parties; ++p) {
      inputs[p] = SecretInput{p, input_rng.next() & 0xffffffffu};
    }
    const auto start = std::chrono::steady_clock::now();
    if (options.protocol == ProtocolChoice::SingleMask) {
      const RunTranscript transcript = run_single_mask(
          inputs, cfg.anonymizers, cfg.anonymizer_capacity, run_seed);
      per_run[r] = simulate_makespan(transcript, model);
    } else {
      const RingTranscript transcript = run_ring_sum(inputs, run_seed);
      (void)transcript;
      per_run[r] = ring_run_metrics(cfg.parties, model);
    }
    const auto stop = std::chrono::steady_clock::now();
    per_run[r].wall_time_s = std::chrono::duration<double>(stop - start).count();
  }
  return per_run;
}

void print_summary(std::ostream& out, std::string_view protocol,
                   const BatchSummary& s) {
  const ProtocolConfig& c = s.config;
  out << "protocol=" << protocol << " runs=" << s.runs << "\n"
      << "config: n=" << c.parties << " m=" << c.anonymizers
      << " t_pk=" << c.packets_per_party << " m_x=" << c.anonymizer_capacity
      << " seed=" << c.seed << "\n"
      << "mean_makespan=" << format_double(s.mean_makespan)
      << " min=" << format_double(s.min_makespan)
      << " max=" << format_double(s.max_makespan) << "\n"
      << "mean_max_load=" << format_double(s.mean_max_load)
      << " messages_total=" << s.messages_total << "\n"
      << "mean_wall_time_s=" << format_double(s.mean_wall_time_s) << "\n";
}

std::size_t column_index(const CsvTable& table, std::string_view name,
                         std::string_view file) {
  const auto& header = table.header();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw IoError("column '" + std::string(name) + "' missing in " +
                std::string(file));
}

double cell_double(const std::string& cell, std::string_view file) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw IoError("cell '" + cell + "' in " + std::string(file) +
                  " is not a number");
  }
  return value;
}

// Chart builders take the CSV table (fresh or re-read from disk) so a
// report regenerates byte-identical figures from stored data.
LineChart sweep_chart(const CsvTable& table, std::string_view file) {
  const std::size_t value_col = column_index(table, "swept_value", file);
  const std::size_t makespan_col = column_index(table, "mean_makespan", file);
  const std::size_t param_col = column_index(table, "param", file);
  const std::size_t sweep_col = column_index(table, "sweep", file);
  if (table.rows().empty()) {
    throw IoError(std::string(file) + " has no data rows");
  }

  LineChart chart;
  const std::string& param = table.rows()[0][param_col];
  chart.title = "mean makespan vs " + param + " (" +
                table.rows()[0][sweep_col] + ")";
  chart.x_label = param;
  chart.y_label = "mean makespan (cost units)";
  ChartSeries series;
  series.label = "mean makespan";
  for (const auto& row : table.rows()) {
    series.x.push_back(cell_double(row[value_col], file));
    series.y.push_back(cell_double(row[makespan_col], file));
  }
  chart.series.push_back(std::move(series));
  return chart;
}

LineChart leakage_chart(const CsvTable& table, std::string_view file) {
  const std::size_t l_col = column_index(table, "l", file);
  const std::size_t k_col = column_index(table, "k", file);
  const std::size_t m_col = column_index(table, "m", file);
  const std::size_t ind_col = column_index(table, "p_independent", file);
  const std::size_t exact_col = column_index(table, "p_exact", file);
  const std::size_t emp_col = column_index(table, "p_empirical", file);
  if (table.rows().empty()) {
    throw IoError(std::string(file) + " has no data rows");
  }

  // The varying axis is whichever of k / m is not constant; ties (single
  // row grids) default to k.
  const auto& rows = table.rows();
  bool k_varies = false;
  for (const auto& row : rows) k_varies |= row[k_col] != rows[0][k_col];
  const std::size_t axis_col = k_varies ? k_col : m_col;

  std::vector<std::string> l_values;
  for (const auto& row : rows) l_values.push_back(row[l_col]);
  std::sort(l_values.begin(), l_values.end());
  l_values.erase(std::unique(l_values.begin(), l_values.end()),
                 l_values.end());

  LineChart chart;
  chart.title = std::string("compromise probability vs ") +
                (k_varies ? "packets per party" : "anonymizers");
  chart.x_label = k_varies ? "packets per party (t_pk)" : "anonymizers (m)";
  chart.y_label = "compromise probability";

  if (l_values.size() == 1) {
    // One colluding-set size: show all three estimates.
    const std::pair<std::string_view, std::size_t> kinds[] = {
        {"independent model", ind_col},
        {"exact", exact_col},
        {"empirical", emp_col},
    };
    for (const auto& [label, col] : kinds) {
      ChartSeries series;
      series.label = std::string(label);
      for (const auto& row : rows) {
        series.x.push_back(cell_double(row[axis_col], file));
        series.y.push_back(cell_double(row[col], file));
      }
      chart.series.push_back(std::move(series));
    }
  } else {
    // A family of exact curves, one per colluding-set size.
    for (const std::string& l : l_values) {
      ChartSeries series;
      series.label = "exact, l=" + l;
      for (const auto& row : rows) {
        if (row[l_col] != l) continue;
        series.x.push_back(cell_double(row[axis_col], file));
        series.y.push_back(cell_double(row[exact_col], file));
      }
      chart.series.push_back(std::move(series));
    }
  }
  return chart;
}

}  // namespace

SweepSpec sweep_case_preset(int case_number, std::uint64_t seed,
                            std::uint32_t batch_size) {
  SweepSpec spec;
  spec.base.seed = seed;
  spec.base.batch_size = batch_size;
  switch (case_number) {
    case 1:
      // Growing party count at t_pk=3; the requested m=5 is below 2*t_pk
      // and gets raised per point. Capacity 12 keeps every swept point's
      // load bounded by the party count alone.
      spec.name = "case1";
      spec.base.packets_per_party = 3;
      spec.base.anonymizers = 5;
      spec.base.capacity = 12;
      spec.param = SweepParam::Parties;
      spec.values = {2, 3, 4, 5, 6, 7, 8};
      break;
    case 2:
      // Growing packet count at n=3, again with the undersized m=5
      // recomputed per point (m must reach 2*t_pk).
      spec.name = "case2";
      spec.base.parties = 3;
      spec.base.anonymizers = 5;
      spec.param = SweepParam::PacketsPerParty;
      spec.values = {3, 4, 5};
      break;
    case 3:
      // Growing anonymizer count at n=3, t_pk=3.
      spec.name = "case3";
      spec.base.parties = 3;
      spec.base.packets_per_party = 3;
      spec.param = SweepParam::Anonymizers;
      spec.values = {5, 6, 7, 8};
      break;
    default:
      throw ConfigError("sweep case must be 1, 2 or 3");
  }
  return spec;
}

LeakageGrid default_leakage_grid(const ResolvedOptions& options) {
  LeakageGrid grid;
  grid.colluding_values = {options.colluders};
  grid.axis = LeakageGrid::Axis::PacketsPerParty;
  grid.axis_values = {1, 2, 3, 4, 5, 6};
  return grid;
}

void cmd_run(const ResolvedOptions& options,
             const std::filesystem::path& out_dir, std::ostream& out) {
  const CostModel model;
  ProtocolConfig effective = options.config;
  if (options.protocol == ProtocolChoice::SingleMask) {
    effective.packets_per_party = 1;  // the degenerate pipeline's shape
  }

  const std::vector<RunMetrics> per_run =
      options.protocol == ProtocolChoice::Drss
          ? batch_metrics(options.config, options.batch_size, model)
          : baseline_metrics(options, model);
  const BatchSummary summary = summarize_batch(per_run, effective);

  CsvTable csv({"schema", "protocol", "run", "n", "m", "t_pk", "m_x", "seed",
                "batch_size", "makespan", "messages_total",
                "max_anonymizer_load", "wall_time_s_nondet"});
  const std::string proto(protocol_name(options.protocol));
  for (std::uint32_t r = 0; r < per_run.size(); ++r) {
    const RunMetrics& m = per_run[r];
    csv.add_row({"runs-v1", proto, format_u64(r), format_u64(effective.parties),
                 format_u64(effective.anonymizers),
                 format_u64(effective.packets_per_party),
                 format_u64(effective.anonymizer_capacity),
                 format_u64(effective.seed), format_u64(options.batch_size),
                 format_double(m.makespan), format_u64(m.messages_total),
                 format_u64(m.max_anonymizer_load),
                 format_double(m.wall_time_s)});
  }

  StagedOutputs stage(out_dir);
  stage.add("runs.csv", csv.to_text());
  const auto written = stage.commit();

  print_summary(out, proto, summary);
  for (const auto& path : written) out << "wrote " << path.string() << "\n";
}

void cmd_sweep(const ResolvedOptions& options, const SweepSpec& spec,
               const std::filesystem::path& out_dir, std::ostream& out) {
  const std::vector<SweepPoint> points =
      sweep_parameter(spec.base, spec.param, spec.values);

  CsvTable csv({"schema", "sweep", "param", "swept_value", "n", "m", "t_pk",
                "m_x", "seed", "batch_size", "m_requested", "m_adjusted",
                "mean_makespan", "min_makespan", "max_makespan",
                "mean_max_load", "messages_total",
                "mean_wall_time_s_nondet"});
  for (const SweepPoint& point : points) {
    const ProtocolConfig& c = point.config;
    const BatchSummary& s = point.summary;
    csv.add_row({"sweep-v1", spec.name, std::string(param_name(spec.param)),
                 format_u64(point.swept_value), format_u64(c.parties),
                 format_u64(c.anonymizers), format_u64(c.packets_per_party),
                 format_u64(c.anonymizer_capacity), format_u64(c.seed),
                 format_u64(s.runs),
                 point.requested_anonymizers
                     ? format_u64(*point.requested_anonymizers)
                     : std::string(),
                 format_flag(point.anonymizers_adjusted),
                 format_double(s.mean_makespan),
                 format_double(s.min_makespan), format_double(s.max_makespan),
                 format_double(s.mean_max_load), format_u64(s.messages_total),
                 format_double(s.mean_wall_time_s)});
  }

  const std::string base_name =
      spec.name == "custom" ? "sweep" : "sweep_" + spec.name;
  const std::string csv_name = base_name + ".csv";
  const LineChart chart = sweep_chart(csv, csv_name);

  StagedOutputs stage(out_dir);
  stage.add(csv_name, csv.to_text());
  stage.add(base_name + ".svg", chart.to_svg());
  const auto written = stage.commit();

  for (const SweepPoint& point : points) {
    out << param_name(spec.param) << "=" << point.swept_value
        << " mean_makespan=" << format_double(point.summary.mean_makespan)
        << " messages_total=" << point.summary.messages_total
        << (point.anonymizers_adjusted ? " (m adjusted to " +
                                             format_u64(point.config.anonymizers) +
                                             ")"
                                       : "")
        << "\n";
  }
  for (const auto& path : written) out << "wrote " << path.string() << "\n";
}

void cmd_leakage(const ResolvedOptions& options, const LeakageGrid& grid,
                 const std::filesystem::path& out_dir, std::ostream& out) {
  if (grid.colluding_values.empty() || grid.axis_values.empty()) {
    throw ConfigError("leakage grid requires at least one l and one axis value");
  }
  const ProtocolConfig& cfg = options.config;
  const bool packets_axis = grid.axis == LeakageGrid::Axis::PacketsPerParty;

  // For a packets-per-party grid the anonymizer count stays fixed across
  // rows (the curve is read at constant m). A defaulted m is enlarged to
  // host the largest grid point; an explicit one must already do so.
  std::uint32_t fixed_m = cfg.anonymizers;
  if (packets_axis) {
    const std::uint32_t k_max =
        *std::max_element(grid.axis_values.begin(), grid.axis_values.end());
    if (options.anonymizers_explicit) {
      if (fixed_m < 2 * k_max) {
        throw InfeasibleError(
            "m=" + std::to_string(fixed_m) + " cannot place 2*t_pk=" +
            std::to_string(2 * k_max) +
            " distinct packets; raise m or shrink the grid");
      }
    } else {
      fixed_m = std::max(fixed_m, 2 * k_max);
    }
  }

  CsvTable csv({"schema", "l", "k", "m", "n", "m_x", "seed", "trials",
                "p_independent", "p_exact", "p_empirical", "std_error",
                "p_single_mask"});
  for (const std::uint32_t l : grid.colluding_values) {
    for (const std::uint32_t axis_value : grid.axis_values) {
      const std::uint32_t k = packets_axis ? axis_value : cfg.packets_per_party;
      const std::uint32_t m = packets_axis ? fixed_m : axis_value;
      if (k == 0) {
        throw InfeasibleError("t_pk grid values must be at least 1");
      }
      if (l > m) {
        throw InfeasibleError("colluders l=" + std::to_string(l) +
                              " cannot exceed m=" + std::to_string(m));
      }

      // Total capacity must cover the row's packet volume; a defaulted
      // capacity is enlarged, an explicit one is a hard constraint.
      const std::uint64_t packets = std::uint64_t(2) * cfg.parties * k;
      const std::uint32_t needed_capacity =
          std::uint32_t((packets + m - 1) / m);
      std::uint32_t m_x = cfg.anonymizer_capacity;
      if (options.capacity_explicit) {
        if (std::uint64_t(m) * m_x < packets) {
          throw InfeasibleError(
              "m*m_x = " + std::to_string(std::uint64_t(m) * m_x) +
              " cannot host " + std::to_string(packets) + " packets");
        }
      } else {
        m_x = std::max(m_x, needed_capacity);
      }

      const double p_independent = leakage_independent(l, m, k);
      const double p_exact = leakage_exact(l, m, k);
      const double p_single = single_mask_exact_probability(l, m);

      CollusionScenario scenario;
      scenario.config = ProtocolConfig{cfg.parties, m, k, m_x, cfg.seed};
      validate_structural(scenario.config);
      scenario.colluders.resize(l);
      for (std::uint32_t i = 0; i < l; ++i) scenario.colluders[i] = i;
      const LeakageEstimate estimate =
          leakage_monte_carlo(scenario, options.trials);

      csv.add_row({"leakage-v1", format_u64(l), format_u64(k), format_u64(m),
                   format_u64(cfg.parties), format_u64(m_x),
                   format_u64(cfg.seed), format_u64(options.trials),
                   format_double(p_independent), format_double(p_exact),
                   format_double(estimate.p_empirical),
                   format_double(estimate.std_error),
                   format_double(p_single)});
      out << "l=" << l << " k=" << k << " m=" << m
          << " p_independent=" << format_double(p_independent)
          << " p_exact=" << format_double(p_exact)
          << " p_empirical=" << format_double(estimate.p_empirical) << "\n";
    }
  }

  const LineChart chart = leakage_chart(csv, "leakage.csv");
  StagedOutputs stage(out_dir);
  stage.add("leakage.csv", csv.to_text());
  stage.add("leakage.svg", chart.to_svg());
  const auto written = stage.commit();
  for (const auto& path : written) out << "wrote " << path.string() << "\n";
}

namespace {

std::string markdown_table(const CsvTable& table) {
  std::string md;
  auto emit = [&md](const std::vector<std::string>& cells) {
    md += '|';
    for (const std::string& cell : cells) {
      md += ' ';
      md += cell.empty() ? "-" : cell;
      md += " |";
    }
    md += '\n';
  };
  emit(table.header());
  md += '|';
  for (std::size_t i = 0; i < table.header().size(); ++i) md += " --- |";
  md += '\n';
  for (const auto& row : table.rows()) emit(row);
  return md;
}

}  // namespace

void cmd_report(const std::filesystem::path& dir, std::ostream& out) {
  struct Section {
    std::string file;
    std::string title;
    enum class Kind { Runs, Sweep, Leakage } kind;
  };
  const Section known[] = {
      {"runs.csv", "Batch runs", Section::Kind::Runs},
      {"sweep_case1.csv", "Sweep: parties", Section::Kind::Sweep},
      {"sweep_case2.csv", "Sweep: packets per party", Section::Kind::Sweep},
      {"sweep_case3.csv", "Sweep: anonymizers", Section::Kind::Sweep},
      {"sweep.csv", "Sweep: custom", Section::Kind::Sweep},
      {"leakage.csv", "Leakage", Section::Kind::Leakage},
  };

  std::string report = "# Secure-sum simulation report\n";
  StagedOutputs stage(dir);
  bool found = false;

  for (const Section& section : known) {
    const std::filesystem::path path = dir / section.file;
    std::error_code ec;
    if (!std::filesystem::exists(path, ec) || ec) continue;
    found = true;
    const CsvTable table = read_csv_file(path);
    report += "\n## " + section.title + " (" + section.file + ")\n\n";

    switch (section.kind) {
      case Section::Kind::Runs: {
        // Per-run rows are too many to inline; summarize them instead.
        const std::size_t makespan_col =
            column_index(table, "makespan", section.file);
        const std::size_t proto_col =
            column_index(table, "protocol", section.file);
        if (table.rows().empty()) {
          throw IoError(section.file + " has no data rows");
        }
        double sum = 0.0, lo = 0.0, hi = 0.0;
        for (std::size_t r = 0; r < table.rows().size(); ++r) {
          const double v =
              cell_double(table.rows()[r][makespan_col], section.file);
          sum += v;
          lo = r == 0 ? v : std::min(lo, v);
          hi = r == 0 ? v : std::max(hi, v);
        }
        const double mean = sum / double(table.rows().size());
        report += "protocol " + table.rows()[0][proto_col] + ", " +
                  std::to_string(table.rows().size()) + " runs; makespan mean " +
                  format_double(mean) + ", min " + format_double(lo) +
                  ", max " + format_double(hi) + ".\n";
        break;
      }
      case Section::Kind::Sweep: {
        report += markdown_table(table) + "\n";
        const std::string svg_name =
            section.file.substr(0, section.file.size() - 4) + ".svg";
        stage.add(svg_name, sweep_chart(table, section.file).to_svg());
        report += "![" + section.title + "](" + svg_name + ")\n";
        break;
      }
      case Section::Kind::Leakage: {
        report += markdown_table(table) + "\n";
        stage.add("leakage.svg",
                  leakage_chart(table, section.file).to_svg());
        report += "![Leakage](leakage.svg)\n";
        break;
      }
    }
  }

  if (!found) {
    throw IoError("no output csv files found in " +
                  (dir.empty() ? std::string(".") : dir.string()));
  }

  stage.add("report.md", report);
  const auto written = stage.commit();
  for (const auto& path : written) out << "wrote " << path.string() << "\n";
}

}  // namespace drss
