#include "drss/baselines.hpp"

#include <numeric>
#include <string>

#include "drss/errors.hpp"
#include "drss/leakage.hpp"
#include "drss/rng.hpp"

namespace drss {

RingTranscript run_ring_sum(std::span<const SecretInput> inputs,
                            std::uint64_t seed) {
  if (inputs.size() < 2)
    throw InfeasibleError("ring protocol needs at least 2 parties");
  for (std::uint32_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i].party != i)
      throw ConfigError("inputs must be ordered by party id");
  }

  const std::uint32_t n = std::uint32_t(inputs.size());
  SplitMix64 rng(derive_seed(seed, Stream::Ring));

  RingTranscript t;
  t.order.resize(n);
  std::iota(t.order.begin(), t.order.end(), 0u);
  rng.shuffle(t.order);
  t.initiator_random = rng.next();
  t.value_in.assign(n, 0);
  t.value_out.assign(n, 0);

  Residue partial = t.initiator_random;
  for (std::uint32_t pos = 0; pos < n; ++pos) {
    const std::uint32_t party = t.order[pos];
    t.value_in[party] = partial;
    partial = add_mod(partial, inputs[party].value);
    t.value_out[party] = partial;
    ++t.op_counts.party_ops;
  }
  // Initiator strips its offset and announces; one more party-side op.
  t.announced_sum = sub_mod(partial, t.initiator_random);
  ++t.op_counts.party_ops;
  return t;
}

Residue ring_neighbor_attack(const RingTranscript& t, std::uint32_t target) {
  if (target >= t.value_in.size())
    throw ConfigError("target party out of range");
  return sub_mod(t.value_out[target], t.value_in[target]);
}

RunTranscript run_single_mask(std::span<const SecretInput> inputs,
                              std::uint32_t anonymizers,
                              std::uint32_t anonymizer_capacity,
                              std::uint64_t seed) {
  if (inputs.size() < 2)
    throw InfeasibleError("single-mask protocol needs at least 2 parties");
  ProtocolConfig cfg;
  cfg.parties = std::uint32_t(inputs.size());
  cfg.anonymizers = anonymizers;
  cfg.packets_per_party = 1;
  cfg.anonymizer_capacity = anonymizer_capacity;
  cfg.seed = seed;
  validate_structural(cfg);
  return run_drss(cfg, inputs);
}

double single_mask_exact_probability(std::uint32_t colluding,
                                     std::uint32_t anonymizers) {
  return leakage_exact(colluding, anonymizers, 1);
}

}  // namespace drss
