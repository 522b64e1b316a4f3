// Times the serial reference implementations against the OpenMP kernels
// and verifies that both produce identical results. Exits nonzero when the
// outputs diverge; the speedup column is informational only.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <vector>

#include "drss/leakage.hpp"
#include "drss/sim.hpp"

using namespace drss;

namespace {

template <typename F>
double time_seconds(F&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

void print_row(const char* name, double serial_s, double parallel_s,
               bool identical) {
  std::printf("%-24s %10.3f s %10.3f s %8.2fx %s\n", name, serial_s,
              parallel_s, serial_s / parallel_s,
              identical ? "identical" : "DIFFERENT");
}

}  // namespace

int main() {
  int divergences = 0;
  std::printf("%-24s %12s %12s %9s %s\n", "kernel", "serial", "parallel",
              "speedup", "results");

  {
    CollusionScenario scenario;
    scenario.config.parties = 2;
    scenario.config.anonymizers = 8;
    scenario.config.packets_per_party = 3;
    scenario.config.anonymizer_capacity = 12;
    scenario.config.seed = 7;
    scenario.colluders = {0, 1, 2, 3, 4, 5};
    const std::uint64_t trials = 20000;

    LeakageEstimate serial_est, parallel_est;
    const double serial_s = time_seconds([&] {
      serial_est = leakage_monte_carlo(scenario, trials, Execution::Serial);
    });
    const double parallel_s = time_seconds([&] {
      parallel_est =
          leakage_monte_carlo(scenario, trials, Execution::Parallel);
    });
    const bool identical =
        serial_est.trials == parallel_est.trials &&
        serial_est.p_empirical == parallel_est.p_empirical &&
        serial_est.std_error == parallel_est.std_error;
    print_row("leakage_monte_carlo", serial_s, parallel_s, identical);
    if (!identical) ++divergences;
  }

  {
    ProtocolConfig cfg;
    cfg.parties = 6;
    cfg.anonymizers = 8;
    cfg.packets_per_party = 3;
    cfg.anonymizer_capacity = 6;
    cfg.seed = 7;
    const std::uint64_t runs = 2000;

    std::vector<RunMetrics> serial_runs, parallel_runs;
    const double serial_s = time_seconds([&] {
      serial_runs = batch_metrics(cfg, runs, CostModel{}, Execution::Serial);
    });
    const double parallel_s = time_seconds([&] {
      parallel_runs =
          batch_metrics(cfg, runs, CostModel{}, Execution::Parallel);
    });
    bool identical = serial_runs.size() == parallel_runs.size();
    for (std::size_t i = 0; identical && i < serial_runs.size(); ++i) {
      identical = serial_runs[i].messages_total ==
                      parallel_runs[i].messages_total &&
                  serial_runs[i].makespan == parallel_runs[i].makespan &&
                  serial_runs[i].max_anonymizer_load ==
                      parallel_runs[i].max_anonymizer_load;
    }
    const BatchSummary serial_sum = summarize_batch(serial_runs, cfg);
    const BatchSummary parallel_sum = summarize_batch(parallel_runs, cfg);
    identical = identical &&
                serial_sum.mean_makespan == parallel_sum.mean_makespan &&
                serial_sum.messages_total == parallel_sum.messages_total;
    print_row("batch_metrics", serial_s, parallel_s, identical);
    if (!identical) ++divergences;
  }

  if (divergences != 0) {
    std::printf("%d kernel(s) diverged from the serial reference\n",
                divergences);
  }
  return divergences;
}
