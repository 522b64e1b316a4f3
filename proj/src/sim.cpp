#include "drss/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "drss/errors.hpp"
#include "drss/rng.hpp"

namespace drss {

void CostModel::validate() const {
  const double costs[] = {split_cost,   mask_cost, send_cost,
                          forward_cost, pool_cost, ttp_cost};
  const char* names[] = {"split_cost",   "mask_cost", "send_cost",
                         "forward_cost", "pool_cost", "ttp_cost"};
  for (int i = 0; i < 6; ++i) {
    if (!std::isfinite(costs[i]) || costs[i] <= 0.0) {
      throw ConfigError(std::string(names[i]) + " must be positive");
    }
  }
}

RunMetrics simulate_makespan(const RunTranscript& transcript,
                             const CostModel& model) {
  model.validate();
  const ProtocolConfig& cfg = transcript.config;
  const double per_party = double(cfg.packets_per_party);
  const std::uint32_t max_load = transcript.plan.max_load();

  RunMetrics metrics;
  metrics.messages_total =
      std::uint64_t(2) * cfg.parties * cfg.packets_per_party +
      transcript.op_counts.anonymizer_forwards;
  metrics.max_anonymizer_load = max_load;
  metrics.makespan = per_party * (model.split_cost + model.mask_cost) +
                     2.0 * per_party * model.send_cost +
                     double(max_load) * (model.forward_cost + model.pool_cost) +
                     model.ttp_cost;
  return metrics;
}

namespace {

// One complete run with its own derived seed and fresh uniform 32-bit
// inputs. Pure function of (root config, run index); wall time is the only
// measured quantity.
RunMetrics batch_run(const ProtocolConfig& root, std::uint32_t run,
                     const CostModel& model) {
  ProtocolConfig cfg = root;
  cfg.seed = derive_seed(root.seed, Stream::BatchRun, run);

  SplitMix64 input_rng(derive_seed(cfg.seed, Stream::Inputs));
  std::vector<SecretInput> inputs(cfg.parties);
  for (std::uint32_t p = 0; p < cfg.parties; ++p) {
    inputs[p] = SecretInput{p, input_rng.next() & 0xffffffffu};
  }

  const auto start = std::chrono::steady_clock::now();
  const RunTranscript transcript = run_drss(cfg, inputs);
  RunMetrics metrics = simulate_makespan(transcript, model);
  const auto stop = std::chrono::steady_clock::now();
  metrics.wall_time_s = std::chrono::duration<double>(stop - start).count();
  return metrics;
}

}  // namespace

std::vector<RunMetrics> batch_metrics(const ProtocolConfig& config,
                                      std::uint32_t batch_size,
                                      const CostModel& model, Execution exec) {
  validate_structural(config);
  model.validate();
  if (batch_size == 0) {
    throw ConfigError("batch size must be at least 1");
  }

  // Fill a pre-sized per-run array; safe to parallelize because runs are
  // independent and write disjoint slots.
  std::vector<RunMetrics> per_run(batch_size);
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < std::int64_t(batch_size); ++r) {
      per_run[std::size_t(r)] = batch_run(config, std::uint32_t(r), model);
    }
  } else {
    for (std::uint32_t r = 0; r < batch_size; ++r) {
      per_run[r] = batch_run(config, r, model);
    }
  }
  return per_run;
}

BatchSummary summarize_batch(std::span<const RunMetrics> per_run,
                             const ProtocolConfig& config) {
  if (per_run.empty()) {
    throw ConfigError("batch summary requires at least one run");
  }
  BatchSummary summary;
  summary.runs = std::uint32_t(per_run.size());
  summary.config = config;
  summary.messages_total = per_run[0].messages_total;
  summary.min_makespan = per_run[0].makespan;
  summary.max_makespan = per_run[0].makespan;
  double makespan_sum = 0.0;
  double load_sum = 0.0;
  double wall_sum = 0.0;
  for (const RunMetrics& m : per_run) {
    makespan_sum += m.makespan;
    load_sum += double(m.max_anonymizer_load);
    wall_sum += m.wall_time_s;
    summary.min_makespan = std::min(summary.min_makespan, m.makespan);
    summary.max_makespan = std::max(summary.max_makespan, m.makespan);
  }
  summary.mean_makespan = makespan_sum / double(summary.runs);
  summary.mean_max_load = load_sum / double(summary.runs);
  summary.mean_wall_time_s = wall_sum / double(summary.runs);
  return summary;
}

BatchSummary run_batch(const ProtocolConfig& config, std::uint32_t batch_size,
                       const CostModel& model, Execution exec) {
  const std::vector<RunMetrics> per_run =
      batch_metrics(config, batch_size, model, exec);
  return summarize_batch(per_run, config);
}

std::vector<SweepPoint> sweep_parameter(const SweepBase& base,
                                        SweepParam param,
                                        std::span<const std::uint32_t> values,
                                        const CostModel& model,
                                        Execution exec) {
  if (values.empty()) {
    throw ConfigError("sweep requires at least one value");
  }
  model.validate();

  std::vector<SweepPoint> points;
  points.reserve(values.size());
  for (std::uint32_t value : values) {
    std::uint32_t parties = base.parties;
    std::uint32_t packets = base.packets_per_party;
    std::optional<std::uint32_t> requested = base.anonymizers;
    switch (param) {
      case SweepParam::Parties:
        parties = value;
        break;
      case SweepParam::PacketsPerParty:
        packets = value;
        break;
      case SweepParam::Anonymizers:
        requested = value;
        break;
    }
    if (parties < 2) {
      throw InfeasibleError("sweep point rejected: n must be at least 2, got " +
                            std::to_string(parties));
    }
    if (packets < 3) {
      throw InfeasibleError(
          "sweep point rejected: t_pk must be at least 3, got " +
          std::to_string(packets));
    }
    if (requested && *requested < 4) {
      throw InfeasibleError("sweep point rejected: m must be at least 4, got " +
                            std::to_string(*requested));
    }
    const std::uint32_t capacity =
        base.capacity ? *base.capacity : 2 * packets;
    if (capacity == 0) {
      throw InfeasibleError("sweep point rejected: m_x must be at least 1");
    }

    // A requested anonymizer count that cannot host the point's packets is
    // raised to the resolved minimum and flagged, not treated as an error.
    const std::uint32_t resolved =
        resolved_anonymizer_count(parties, packets, capacity);
    const std::uint32_t effective =
        requested ? std::max(*requested, resolved) : resolved;

    SweepPoint point;
    point.swept_value = value;
    point.requested_anonymizers = requested;
    point.anonymizers_adjusted = requested && effective != *requested;
    point.config =
        ProtocolConfig{parties, effective, packets, capacity, base.seed};
    validate_structural(point.config);
    point.summary = run_batch(point.config, base.batch_size, model, exec);
    points.push_back(std::move(point));
  }
  return points;
}

}  // namespace drss
