#ifndef DRSS_LEAKAGE_HPP
#define DRSS_LEAKAGE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "drss/config.hpp"
#include "drss/protocol.hpp"

namespace drss {

// Collusion adversary model: a set of anonymizers pools everything it
// carried. A party is compromised when the colluders hold all 2*t_pk of its
// packets; with even one packet missing, the residual is uniform over the
// ring and nothing can be inferred.

struct CollusionScenario {
  ProtocolConfig config;
  std::vector<std::uint32_t> colluders;  // distinct anonymizer ids

  // Throws on out-of-range or duplicate colluder ids.
  void validate() const;
};

struct LeakageEstimate {
  double p_independent = 0.0;  // independent-placement model
  double p_exact = 0.0;        // without-replacement (ground truth)
  double p_empirical = 0.0;    // Monte Carlo over real runs
  std::uint64_t trials = 0;
  double std_error = 0.0;
};

// (l/m)^(2k): per-party compromise probability when each of the 2k packet
// placements is treated as an independent uniform choice of anonymizer.
// Throws InfeasibleError for m == 0, l > m, or k == 0.
double leakage_independent(std::uint32_t colluding, std::uint32_t anonymizers,
                           std::uint32_t packets_per_party);

// C(l,2k)/C(m,2k): the same probability under the real constraint that one
// party's packets occupy 2k distinct anonymizers. Zero whenever l < 2k.
// Additionally requires m >= 2k (otherwise no run can place the packets).
// Never exceeds leakage_independent for the same arguments.
double leakage_exact(std::uint32_t colluding, std::uint32_t anonymizers,
                     std::uint32_t packets_per_party);

// If the colluders hold every packet of target_party, reconstructs its
// input by summing (masked segment - mask) over all indices; otherwise
// returns nullopt. `colluders` must be a membership mask of size m.
std::optional<Residue> attempt_reconstruction(
    const RunTranscript& transcript, std::span<const std::uint8_t> colluders,
    std::uint32_t target_party);

// Convenience overload taking the scenario's id list.
std::optional<Residue> attempt_reconstruction(
    const RunTranscript& transcript,
    std::span<const std::uint32_t> colluder_ids, std::uint32_t target_party);

enum class Execution { Serial, Parallel };

// `trials` full protocol executions with fresh inputs, each trial seeded
// from (config.seed, trial index) so the result is one fixed value for a
// given scenario regardless of execution mode or thread count. Counts
// compromised (run, party) pairs; std_error = sqrt(p*(1-p)/(trials*n)).
LeakageEstimate leakage_monte_carlo(const CollusionScenario& scenario,
                                    std::uint64_t trials,
                                    Execution exec = Execution::Parallel);

}  // namespace drss

#endif  // DRSS_LEAKAGE_HPP
