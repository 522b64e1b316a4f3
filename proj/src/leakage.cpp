#include "drss/leakage.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "drss/errors.hpp"
#include "drss/rng.hpp"

namespace drss {

void CollusionScenario::validate() const {
  std::vector<bool> seen(config.anonymizers, false);
  for (const std::uint32_t id : colluders) {
    if (id >= config.anonymizers)
      throw InfeasibleError("colluder id " + std::to_string(id) +
                            " out of range [0, m)");
    if (seen[id])
      throw InfeasibleError("duplicate colluder id " + std::to_string(id));
    seen[id] = true;
  }
}

namespace {

// base^exp by repeated multiplication. Exact while the integer result fits
// a double (all values in the analysis range do), so small-ratio results
// are correctly rounded.
double ipow(double base, std::uint32_t exp) {
  double r = 1.0;
  for (std::uint32_t i = 0; i < exp; ++i) r *= base;
  return r;
}

void check_domain(std::uint32_t l, std::uint32_t m, std::uint32_t k) {
  if (m == 0) throw InfeasibleError("m must be at least 1");
  if (l > m)
    throw InfeasibleError("colluding anonymizers l=" + std::to_string(l) +
                          " cannot exceed m=" + std::to_string(m));
  if (k == 0) throw InfeasibleError("t_pk must be at least 1");
}

}  // namespace

double leakage_independent(std::uint32_t l, std::uint32_t m,
                           std::uint32_t k) {
  check_domain(l, m, k);
  return ipow(double(l), 2 * k) / ipow(double(m), 2 * k);
}

double leakage_exact(std::uint32_t l, std::uint32_t m, std::uint32_t k) {
  check_domain(l, m, k);
  if (m < 2 * k)
    throw InfeasibleError("m=" + std::to_string(m) +
                          " cannot place 2*t_pk=" + std::to_string(2 * k) +
                          " distinct packets");
  if (l < 2 * k) return 0.0;
  double p = 1.0;
  for (std::uint32_t j = 0; j < 2 * k; ++j)
    p *= double(l - j) / double(m - j);
  return p;
}

std::optional<Residue> attempt_reconstruction(
    const RunTranscript& t, std::span<const std::uint8_t> colluders,
    std::uint32_t target_party) {
  const std::uint32_t per_party = t.config.packets_per_party_total();
  const std::size_t base = std::size_t(target_party) * per_party;
  for (std::uint32_t s = 0; s < per_party; ++s) {
    const std::uint32_t a = t.plan.target[base + s];
    if (!colluders[a]) return std::nullopt;
  }
  // Colluders hold the full packet set: masks cancel segment by segment.
  Residue value = 0;
  for (std::uint32_t j = 0; j < t.config.packets_per_party; ++j) {
    const Packet& masked = t.packets[base + 2 * j];
    const Packet& mask = t.packets[base + 2 * j + 1];
    value = add_mod(value, sub_mod(masked.payload, mask.payload));
  }
  return value;
}

std::optional<Residue> attempt_reconstruction(
    const RunTranscript& t, std::span<const std::uint32_t> colluder_ids,
    std::uint32_t target_party) {
  std::vector<std::uint8_t> mask(t.config.anonymizers, 0);
  for (const std::uint32_t id : colluder_ids) mask[id] = 1;
  return attempt_reconstruction(t, mask, target_party);
}

namespace {

// One trial: fresh inputs, full run, count compromised parties.
std::uint64_t run_trial(const ProtocolConfig& base,
                        std::span<const std::uint8_t> colluders,
                        std::uint64_t trial_seed) {
  ProtocolConfig cfg = base;
  cfg.seed = trial_seed;
  SplitMix64 input_rng(derive_seed(trial_seed, Stream::Inputs));
  std::vector<SecretInput> inputs(cfg.parties);
  for (std::uint32_t i = 0; i < cfg.parties; ++i)
    inputs[i] = {i, input_rng.next()};
  const RunTranscript t = run_drss(cfg, inputs);
  std::uint64_t compromised = 0;
  for (std::uint32_t p = 0; p < cfg.parties; ++p) {
    if (attempt_reconstruction(t, colluders, p)) ++compromised;
  }
  return compromised;
}

}  // namespace

LeakageEstimate leakage_monte_carlo(const CollusionScenario& scenario,
                                    std::uint64_t trials, Execution exec) {
  if (trials == 0) throw InfeasibleError("trials must be at least 1");
  validate_structural(scenario.config);
  scenario.validate();

  std::vector<std::uint8_t> colluders(scenario.config.anonymizers, 0);
  for (const std::uint32_t id : scenario.colluders) colluders[id] = 1;

  const ProtocolConfig& cfg = scenario.config;
  std::uint64_t compromised = 0;

  if (exec == Execution::Parallel) {
    const std::int64_t n = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(static) reduction(+ : compromised)
    for (std::int64_t i = 0; i < n; ++i) {
      compromised += run_trial(
          cfg, colluders,
          derive_seed(cfg.seed, Stream::LeakageTrial, std::uint64_t(i)));
    }
  } else {
    for (std::uint64_t i = 0; i < trials; ++i) {
      compromised +=
          run_trial(cfg, colluders, derive_seed(cfg.seed, Stream::LeakageTrial, i));
    }
  }

  LeakageEstimate est;
  est.trials = trials;
  est.p_independent = leakage_independent(
      std::uint32_t(scenario.colluders.size()), cfg.anonymizers,
      cfg.packets_per_party);
  est.p_exact = leakage_exact(std::uint32_t(scenario.colluders.size()),
                              cfg.anonymizers, cfg.packets_per_party);
  const double pairs = double(trials) * double(cfg.parties);
  est.p_empirical = double(compromised) / pairs;
  est.std_error =
      std::sqrt(est.p_empirical * (1.0 - est.p_empirical) / pairs);
  return est;
}

}  // namespace drss
