#ifndef DRSS_CONFIG_HPP
#define DRSS_CONFIG_HPP

#include <cstdint>

namespace drss {

// All payload arithmetic happens in the ring Z_{2^64}; native unsigned
// wrapping is the modular reduction.
using Residue = std::uint64_t;

inline Residue add_mod(Residue a, Residue b) { return a + b; }
inline Residue sub_mod(Residue a, Residue b) { return a - b; }

// Parameter bundle governing one protocol run.
//
// Two validation levels exist on purpose:
//  - validate_structural: what a run mechanically requires (enough distinct
//    anonymizers for one party's packets, enough total capacity). The run
//    engine enforces this, and analysis code may construct degenerate
//    configurations (a single party, one packet per party) that satisfy it.
//  - validate_protocol_minimums: the documented minimums for user-facing
//    configurations (n >= 2, m >= 4, t_pk >= 3), enforced wherever a config
//    enters from a file or the command line.
struct ProtocolConfig {
  std::uint32_t parties = 0;            // n
  std::uint32_t anonymizers = 0;        // m
  std::uint32_t packets_per_party = 0;  // t_pk; each party also sends one
                                        // mask packet per data packet
  std::uint32_t anonymizer_capacity = 0;  // m_x, max packets per anonymizer
  std::uint64_t seed = 0;

  static constexpr int modulus_bits = 64;

  // Total packets one party emits: a masked-data packet and a mask packet
  // per segment.
  std::uint32_t packets_per_party_total() const { return 2 * packets_per_party; }
  std::uint64_t total_packets() const {
    return std::uint64_t(parties) * packets_per_party_total();
  }

  bool operator==(const ProtocolConfig&) const = default;
};

// ceil(n * 2 * t_pk / m_x): smallest anonymizer count with enough capacity.
std::uint32_t capacity_minimum(std::uint32_t parties,
                               std::uint32_t packets_per_party,
                               std::uint32_t anonymizer_capacity);

// Default anonymizer count when unspecified:
// max(4, 2*t_pk, ceil(2*n*t_pk / m_x)).
std::uint32_t resolved_anonymizer_count(std::uint32_t parties,
                                        std::uint32_t packets_per_party,
                                        std::uint32_t anonymizer_capacity);

// Throws InfeasibleError naming the violated constraint.
void validate_structural(const ProtocolConfig& config);
void validate_protocol_minimums(const ProtocolConfig& config);

// Both levels.
void validate_full(const ProtocolConfig& config);

}  // namespace drss

#endif  // DRSS_CONFIG_HPP
