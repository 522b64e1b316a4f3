#ifndef DRSS_PROTOCOL_HPP
#define DRSS_PROTOCOL_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "drss/config.hpp"
#include "drss/rng.hpp"

namespace drss {

// Secure-sum pipeline: each party splits its value into additive segments,
// masks every segment with a fresh random value, and ships both the masked
// segments and the raw masks through randomly chosen anonymizers into two
// accumulator pools. The aggregator recovers the sum of all inputs with a
// single pool subtraction; it never sees per-party data.
//
// A single run is sequential and deterministic in (config, inputs). Distinct
// runs share no mutable state and may execute concurrently.

struct SecretInput {
  std::uint32_t party = 0;
  Residue value = 0;

  bool operator==(const SecretInput&) const = default;
};

enum class PacketKind : std::uint8_t {
  MaskedData,  // segment + mask (mod 2^64)
  Mask,        // the raw mask value
};

struct Packet {
  std::uint32_t party = 0;
  std::uint32_t index = 0;  // segment index within the party, [0, t_pk)
  PacketKind kind = PacketKind::MaskedData;
  Residue payload = 0;

  bool operator==(const Packet&) const = default;
};

// Mapping from every packet to the anonymizer that carries it.
//
// Invariants (checked by validate):
//  - all 2*t_pk packets of one party go to pairwise distinct anonymizers,
//  - no anonymizer carries more than `capacity` packets in total,
//  - every packet is assigned exactly once.
struct AssignmentPlan {
  std::uint32_t parties = 0;
  std::uint32_t packets_per_party = 0;  // t_pk
  std::uint32_t anonymizers = 0;
  std::uint32_t capacity = 0;

  static constexpr std::uint32_t kUnassigned = 0xffffffffu;

  // Indexed by packet ordinal; value is the anonymizer id.
  std::vector<std::uint32_t> target;

  std::size_t ordinal(std::uint32_t party, std::uint32_t index,
                      PacketKind kind) const {
    return std::size_t(party) * 2 * packets_per_party + std::size_t(index) * 2 +
           (kind == PacketKind::Mask ? 1 : 0);
  }

  std::uint32_t anonymizer_of(std::uint32_t party, std::uint32_t index,
                              PacketKind kind) const {
    return target[ordinal(party, index, kind)];
  }

  std::vector<std::uint32_t> load_per_anonymizer() const;
  std::uint32_t max_load() const;

  // Throws ProtocolError on any violated invariant.
  void validate() const;

  bool operator==(const AssignmentPlan&) const = default;
};

// Running totals of the two pools. Only sums are kept; that is what lets the
// final aggregation step be a single subtraction.
struct PoolState {
  Residue data_total = 0;
  Residue mask_total = 0;
  std::uint64_t packets_seen = 0;

  bool operator==(const PoolState&) const = default;
};

// Work tallies per role. party_ops counts segment splits, mask draws and
// packet sends; ttp_ops is the number of aggregator operations, which the
// protocol keeps at exactly one per run.
struct OpCounts {
  std::uint64_t party_ops = 0;
  std::uint64_t anonymizer_forwards = 0;
  std::uint64_t pool_additions = 0;
  std::uint64_t ttp_ops = 0;

  bool operator==(const OpCounts&) const = default;
};

struct RunTranscript {
  ProtocolConfig config;
  std::vector<SecretInput> inputs;
  std::vector<Packet> packets;  // canonical order: party, index, kind
  AssignmentPlan plan;
  PoolState pools;
  Residue ttp_result = 0;
  OpCounts op_counts;

  bool operator==(const RunTranscript&) const = default;
};

// Splits value into `count` additive segments over Z_{2^64}: the first
// count-1 are uniform draws, the last balances the sum.
std::vector<Residue> split_secret(Residue value, std::uint32_t count,
                                  SplitMix64& rng);

// `count` uniform draws from the party's dedicated mask stream.
std::vector<Residue> generate_masks(std::uint32_t count, SplitMix64& rng);

// One MaskedData and one Mask packet per segment. Throws ConfigError if the
// segment and mask lists differ in length.
std::vector<Packet> build_packets(const SecretInput& input,
                                  std::span<const Residue> segments,
                                  std::span<const Residue> masks);

// Randomized constrained assignment: parties in random order, each sampling
// 2*t_pk distinct anonymizers from those with remaining capacity. A dead end
// retries the whole plan (up to 32 retries); after that a deterministic
// least-loaded repair completes the plan, so every structurally feasible
// config terminates with a valid plan. Infeasible configs are rejected
// before any sampling.
AssignmentPlan plan_assignment(const ProtocolConfig& config, SplitMix64& rng);

// Routes every packet to its pool. Totals are order-independent; an
// unassigned packet aborts the run.
PoolState deliver_and_accumulate(std::span<const Packet> packets,
                                 const AssignmentPlan& plan, PoolState pools,
                                 OpCounts& counts);

// The one aggregator operation: data_total - mask_total (mod 2^64). Throws
// ProtocolError if the pools have not seen all expected packets.
Residue ttp_finalize(const PoolState& pools, std::uint64_t expected_packets);

// Full pipeline. inputs[i].party must equal i and inputs.size() must equal
// config.parties. Deterministic in (config.seed, inputs); the returned
// transcript's ttp_result is verified against the plain sum before return.
RunTranscript run_drss(const ProtocolConfig& config,
                       std::span<const SecretInput> inputs);

}  // namespace drss

#endif  // DRSS_PROTOCOL_HPP
