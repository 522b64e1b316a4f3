#include "drss/protocol.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "drss/errors.hpp"

namespace drss {

std::vector<std::uint32_t> AssignmentPlan::load_per_anonymizer() const {
  std::vector<std::uint32_t> loads(anonymizers, 0);
  for (const std::uint32_t a : target) {
    if (a != kUnassigned) ++loads[a];
  }
  return loads;
}

std::uint32_t AssignmentPlan::max_load() const {
  const auto loads = load_per_anonymizer();
  return loads.empty() ? 0 : *std::max_element(loads.begin(), loads.end());
}

void AssignmentPlan::validate() const {
  const std::size_t expected =
      std::size_t(parties) * 2 * packets_per_party;
  if (target.size() != expected)
    throw ProtocolError("assignment plan does not cover all packets");

  std::vector<std::uint32_t> loads(anonymizers, 0);
  std::vector<std::uint32_t> seen(anonymizers, kUnassigned);
  for (std::uint32_t p = 0; p < parties; ++p) {
    for (std::uint32_t s = 0; s < 2 * packets_per_party; ++s) {
      const std::uint32_t a = target[std::size_t(p) * 2 * packets_per_party + s];
      if (a == kUnassigned || a >= anonymizers)
        throw ProtocolError("packet without a valid anonymizer");
      if (seen[a] == p)
        throw ProtocolError("anonymizer " + std::to_string(a) +
                            " got two packets from party " +
                            std::to_string(p));
      seen[a] = p;
      ++loads[a];
    }
  }
  for (std::uint32_t a = 0; a < anonymizers; ++a) {
    if (loads[a] > capacity)
      throw ProtocolError("anonymizer " + std::to_string(a) +
                          " exceeds capacity " + std::to_string(capacity));
  }
}

std::vector<Residue> split_secret(Residue value, std::uint32_t count,
                                  SplitMix64& rng) {
  std::vector<Residue> segments(count);
  Residue partial = 0;
  for (std::uint32_t i = 0; i + 1 < count; ++i) {
    segments[i] = rng.next();
    partial = add_mod(partial, segments[i]);
  }
  segments[count - 1] = sub_mod(value, partial);
  return segments;
}

std::vector<Residue> generate_masks(std::uint32_t count, SplitMix64& rng) {
  std::vector<Residue> masks(count);
  for (auto& m : masks) m = rng.next();
  return masks;
}

std::vector<Packet> build_packets(const SecretInput& input,
                                  std::span<const Residue> segments,
                                  std::span<const Residue> masks) {
  if (segments.size() != masks.size())
    throw ConfigError("segment and mask counts differ (" +
                      std::to_string(segments.size()) + " vs " +
                      std::to_string(masks.size()) + ")");
  std::vector<Packet> packets;
  packets.reserve(2 * segments.size());
  for (std::uint32_t j = 0; j < segments.size(); ++j) {
    packets.push_back({input.party, j, PacketKind::MaskedData,
                       add_mod(segments[j], masks[j])});
    packets.push_back({input.party, j, PacketKind::Mask, masks[j]});
  }
  return packets;
}

namespace {

// One randomized attempt. Returns false on a dead end (some party cannot
// find 2*t_pk distinct anonymizers with remaining capacity).
bool try_random_plan(const ProtocolConfig& cfg, SplitMix64& rng,
                     AssignmentPlan& plan) {
  const std::uint32_t per_party = cfg.packets_per_party_total();
  std::fill(plan.target.begin(), plan.target.end(),
            AssignmentPlan::kUnassigned);
  std::vector<std::uint32_t> loads(cfg.anonymizers, 0);

  std::vector<std::uint32_t> order(cfg.parties);
  std::iota(order.begin(), order.end(), 0u);
  rng.shuffle(order);

  std::vector<std::uint32_t> eligible;
  eligible.reserve(cfg.anonymizers);
  for (const std::uint32_t party : order) {
    eligible.clear();
    for (std::uint32_t a = 0; a < cfg.anonymizers; ++a) {
      if (loads[a] < cfg.anonymizer_capacity) eligible.push_back(a);
    }
    if (eligible.size() < per_party) return false;
    // Partial Fisher-Yates: the first per_party entries become a uniform
    // ordered sample of distinct anonymizers.
    for (std::uint32_t s = 0; s < per_party; ++s) {
      const std::size_t j = s + rng.uniform_below(eligible.size() - s);
      std::swap(eligible[s], eligible[j]);
      const std::uint32_t a = eligible[s];
      plan.target[std::size_t(party) * per_party + s] = a;
      ++loads[a];
    }
  }
  return true;
}

// Deterministic completion: give each party's unassigned packets to the
// least-loaded anonymizers it can still use (remaining capacity, not already
// carrying one of its packets), smallest id on ties. Returns false if some
// party runs out of candidates.
bool repair_leftovers(const ProtocolConfig& cfg, AssignmentPlan& plan) {
  const std::uint32_t per_party = cfg.packets_per_party_total();
  std::vector<std::uint32_t> loads = plan.load_per_anonymizer();
  for (std::uint32_t party = 0; party < cfg.parties; ++party) {
    std::vector<bool> used(cfg.anonymizers, false);
    const std::size_t base = std::size_t(party) * per_party;
    for (std::uint32_t s = 0; s < per_party; ++s) {
      const std::uint32_t a = plan.target[base + s];
      if (a != AssignmentPlan::kUnassigned) used[a] = true;
    }
    for (std::uint32_t s = 0; s < per_party; ++s) {
      if (plan.target[base + s] != AssignmentPlan::kUnassigned) continue;
      std::uint32_t best = AssignmentPlan::kUnassigned;
      for (std::uint32_t a = 0; a < cfg.anonymizers; ++a) {
        if (used[a] || loads[a] >= cfg.anonymizer_capacity) continue;
        if (best == AssignmentPlan::kUnassigned || loads[a] < loads[best])
          best = a;
      }
      if (best == AssignmentPlan::kUnassigned) return false;
      plan.target[base + s] = best;
      used[best] = true;
      ++loads[best];
    }
  }
  return true;
}

// Full deterministic rebuild: each party takes the 2*t_pk least-loaded
// anonymizers. Selecting exact least-loaded sets keeps all loads within one
// of each other, so the maximum ends at ceil(total/m) <= m_x and this always
// succeeds on a structurally feasible config.
void balanced_rebuild(const ProtocolConfig& cfg, AssignmentPlan& plan) {
  const std::uint32_t per_party = cfg.packets_per_party_total();
  std::fill(plan.target.begin(), plan.target.end(),
            AssignmentPlan::kUnassigned);
  std::vector<std::uint32_t> loads(cfg.anonymizers, 0);
  std::vector<std::uint32_t> ids(cfg.anonymizers);
  for (std::uint32_t party = 0; party < cfg.parties; ++party) {
    std::iota(ids.begin(), ids.end(), 0u);
    std::stable_sort(ids.begin(), ids.end(),
                     [&](std::uint32_t a, std::uint32_t b) {
                       return loads[a] < loads[b];
                     });
    for (std::uint32_t s = 0; s < per_party; ++s) {
      const std::uint32_t a = ids[s];
      plan.target[std::size_t(party) * per_party + s] = a;
      ++loads[a];
    }
  }
}

}  // namespace

AssignmentPlan plan_assignment(const ProtocolConfig& cfg, SplitMix64& rng) {
  validate_structural(cfg);

  AssignmentPlan plan;
  plan.parties = cfg.parties;
  plan.packets_per_party = cfg.packets_per_party;
  plan.anonymizers = cfg.anonymizers;
  plan.capacity = cfg.anonymizer_capacity;
  plan.target.assign(cfg.total_packets(), AssignmentPlan::kUnassigned);

  constexpr int kMaxRetries = 32;
  for (int attempt = 0; attempt <= kMaxRetries; ++attempt) {
    if (try_random_plan(cfg, rng, plan)) {
      plan.validate();
      return plan;
    }
  }
  if (!repair_leftovers(cfg, plan)) balanced_rebuild(cfg, plan);
  plan.validate();
  return plan;
}

PoolState deliver_and_accumulate(std::span<const Packet> packets,
                                 const AssignmentPlan& plan, PoolState pools,
                                 OpCounts& counts) {
  for (const Packet& pkt : packets) {
    const std::uint32_t a = plan.anonymizer_of(pkt.party, pkt.index, pkt.kind);
    if (a == AssignmentPlan::kUnassigned || a >= plan.anonymizers)
      throw ProtocolError("packet from party " + std::to_string(pkt.party) +
                          " has no assigned anonymizer");
    ++counts.anonymizer_forwards;
    if (pkt.kind == PacketKind::MaskedData)
      pools.data_total = add_mod(pools.data_total, pkt.payload);
    else
      pools.mask_total = add_mod(pools.mask_total, pkt.payload);
    ++counts.pool_additions;
    ++pools.packets_seen;
  }
  return pools;
}

Residue ttp_finalize(const PoolState& pools, std::uint64_t expected_packets) {
  if (pools.packets_seen != expected_packets)
    throw ProtocolError("pools incomplete: saw " +
                        std::to_string(pools.packets_seen) + " of " +
                        std::to_string(expected_packets) + " packets");
  return sub_mod(pools.data_total, pools.mask_total);
}

RunTranscript run_drss(const ProtocolConfig& cfg,
                       std::span<const SecretInput> inputs) {
  validate_structural(cfg);
  if (inputs.size() != cfg.parties)
    throw ConfigError("expected " + std::to_string(cfg.parties) +
                      " inputs, got " + std::to_string(inputs.size()));
  for (std::uint32_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i].party != i)
      throw ConfigError("inputs must be ordered by party id");
  }

  RunTranscript t;
  t.config = cfg;
  t.inputs.assign(inputs.begin(), inputs.end());
  t.packets.reserve(cfg.total_packets());

  Residue plain_sum = 0;
  for (const SecretInput& input : inputs) {
    SplitMix64 split_rng(
        derive_seed(cfg.seed, Stream::PartySplit, input.party));
    SplitMix64 mask_rng(derive_seed(cfg.seed, Stream::PartyMask, input.party));
    const auto segments = split_secret(input.value, cfg.packets_per_party,
                                       split_rng);
    const auto masks = generate_masks(cfg.packets_per_party, mask_rng);
    const auto packets = build_packets(input, segments, masks);
    t.packets.insert(t.packets.end(), packets.begin(), packets.end());
    // split + mask + send per packet
    t.op_counts.party_ops += std::uint64_t(4) * cfg.packets_per_party;
    plain_sum = add_mod(plain_sum, input.value);
  }

  SplitMix64 plan_rng(derive_seed(cfg.seed, Stream::Assignment));
  t.plan = plan_assignment(cfg, plan_rng);

  t.pools = deliver_and_accumulate(t.packets, t.plan, PoolState{},
                                   t.op_counts);
  t.ttp_result = ttp_finalize(t.pools, cfg.total_packets());
  t.op_counts.ttp_ops = 1;

  if (t.ttp_result != plain_sum)
    throw ProtocolError("aggregated result does not match the input sum");
  return t;
}

}  // namespace drss
