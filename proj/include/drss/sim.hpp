#ifndef DRSS_SIM_HPP
#define DRSS_SIM_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "drss/config.hpp"
#include "drss/leakage.hpp"
#include "drss/protocol.hpp"

namespace drss {

// Deterministic cost model replacing wall-clock measurement: every
// elementary protocol action has a fixed cost, parties work concurrently,
// anonymizers work concurrently, so the anonymizer phase is bounded by the
// most loaded anonymizer. Wall time is still measured and reported, but
// all asserted trends come from the model.
struct CostModel {
  double split_cost = 1.0;    // per segment produced
  double mask_cost = 1.0;     // per mask drawn
  double send_cost = 1.0;     // per packet sent by a party
  double forward_cost = 1.0;  // per anonymizer forward
  double pool_cost = 1.0;     // per pool addition
  double ttp_cost = 1.0;      // per finalize operation

  // All coefficients must be positive.
  void validate() const;
};

struct RunMetrics {
  std::uint64_t messages_total = 0;  // party sends + anonymizer forwards
  double makespan = 0.0;             // cost units under the model
  double wall_time_s = 0.0;          // measured; reported, never asserted
  std::uint32_t max_anonymizer_load = 0;
};

// makespan = t_pk*(split+mask) + 2*t_pk*send        (party phase, parallel)
//          + max_load*(forward+pool)                (anonymizer phase)
//          + ttp                                    (single finalize)
// Best case for the anonymizer phase is a perfectly balanced plan
// (max_load = ceil(2*n*t_pk/m)); worst case is a saturated anonymizer
// (max_load = m_x).
RunMetrics simulate_makespan(const RunTranscript& transcript,
                             const CostModel& model);

struct BatchSummary {
  std::uint32_t runs = 0;
  double mean_makespan = 0.0;
  double min_makespan = 0.0;
  double max_makespan = 0.0;
  double mean_max_load = 0.0;
  std::uint64_t messages_total = 0;  // identical for every run of a config
  double mean_wall_time_s = 0.0;     // non-deterministic
  ProtocolConfig config;
};

// batch_size independent runs with per-run derived seeds and fresh uniform
// 32-bit inputs; one RunMetrics per run, in run order. Runs are
// independent, so the parallel mode fills the same array as the serial one.
std::vector<RunMetrics> batch_metrics(const ProtocolConfig& config,
                                      std::uint32_t batch_size,
                                      const CostModel& model = {},
                                      Execution exec = Execution::Parallel);

// Serial fold of per-run metrics in index order, so the summary (wall time
// aside) is one fixed value for a given root seed regardless of execution
// mode or thread count.
BatchSummary summarize_batch(std::span<const RunMetrics> per_run,
                             const ProtocolConfig& config);

// batch_metrics + summarize_batch.
BatchSummary run_batch(const ProtocolConfig& config, std::uint32_t batch_size,
                       const CostModel& model = {},
                       Execution exec = Execution::Parallel);

enum class SweepParam { Parties, PacketsPerParty, Anonymizers };

// Base configuration for a sweep. Unset anonymizer count is resolved per
// point with max(4, 2*t_pk, ceil(2*n*t_pk/m_x)); a set value that is below
// what the point requires is raised to that resolution and the point is
// flagged. Unset capacity defaults to 2*t_pk per point.
struct SweepBase {
  std::uint32_t parties = 10;
  std::uint32_t packets_per_party = 3;
  std::optional<std::uint32_t> anonymizers;
  std::optional<std::uint32_t> capacity;
  std::uint64_t seed = 1;
  std::uint32_t batch_size = 500;
};

struct SweepPoint {
  std::uint32_t swept_value = 0;
  ProtocolConfig config;  // effective, after resolution
  std::optional<std::uint32_t> requested_anonymizers;
  bool anonymizers_adjusted = false;
  BatchSummary summary;
};

// One batch per value, in order. Swept or base values that violate the
// protocol minimums (n >= 2, t_pk >= 3, m >= 4 when given) abort the sweep
// with the violated constraint named.
std::vector<SweepPoint> sweep_parameter(const SweepBase& base,
                                        SweepParam param,
                                        std::span<const std::uint32_t> values,
                                        const CostModel& model = {},
                                        Execution exec = Execution::Parallel);

}  // namespace drss

#endif  // DRSS_SIM_HPP
