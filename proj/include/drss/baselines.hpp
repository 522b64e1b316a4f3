#ifndef DRSS_BASELINES_HPP
#define DRSS_BASELINES_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "drss/config.hpp"
#include "drss/protocol.hpp"

namespace drss {

// Comparison protocols.
//
// Ring secure sum: parties in a one-way ring; the initiator adds a random
// offset to its input and each successor adds its own input to the running
// partial; the initiator removes the offset and announces the total. The
// transcript records every partial so the collusion oracle needs no extra
// instrumentation.
struct RingTranscript {
  std::vector<std::uint32_t> order;  // ring positions; order[0] initiates
  Residue initiator_random = 0;
  // Indexed by party id. value_in[p] is the partial entering p's addition
  // (the initiator's is its internal random offset); value_out[p] is what p
  // passes on.
  std::vector<Residue> value_in;
  std::vector<Residue> value_out;
  Residue announced_sum = 0;
  OpCounts op_counts;
};

// Requires at least two inputs, ordered by party id. Ring order and the
// offset are drawn from the seed, so transcripts replay exactly.
RingTranscript run_ring_sum(std::span<const SecretInput> inputs,
                            std::uint64_t seed);

// What the target's two ring neighbours learn by comparing the partial they
// handed it with the partial it handed on: exactly the target's input. For
// the initiator the same difference applies against its internal offset.
Residue ring_neighbor_attack(const RingTranscript& transcript,
                             std::uint32_t target);

// Single-mask variant: the full pipeline degenerated to one data segment
// and one mask per party (two packets each, distinct anonymizers). Requires
// n >= 2, m >= 2, m_x >= 1, and enough total capacity.
RunTranscript run_single_mask(std::span<const SecretInput> inputs,
                              std::uint32_t anonymizers,
                              std::uint32_t anonymizer_capacity,
                              std::uint64_t seed);

// Exact compromise probability for the single-mask variant: both of a
// party's packets at colluders, l*(l-1) / (m*(m-1)).
double single_mask_exact_probability(std::uint32_t colluding,
                                     std::uint32_t anonymizers);

}  // namespace drss

#endif  // DRSS_BASELINES_HPP
