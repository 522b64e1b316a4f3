#include "drss/config.hpp"

#include <algorithm>
#include <string>

#include "drss/errors.hpp"

namespace drss {

std::uint32_t capacity_minimum(std::uint32_t parties,
                               std::uint32_t packets_per_party,
                               std::uint32_t anonymizer_capacity) {
  const std::uint64_t total =
      std::uint64_t(parties) * 2 * packets_per_party;
  return static_cast<std::uint32_t>(
      (total + anonymizer_capacity - 1) / anonymizer_capacity);
}

std::uint32_t resolved_anonymizer_count(std::uint32_t parties,
                                        std::uint32_t packets_per_party,
                                        std::uint32_t anonymizer_capacity) {
  return std::max({4u, 2 * packets_per_party,
                   capacity_minimum(parties, packets_per_party,
                                    anonymizer_capacity)});
}

void validate_structural(const ProtocolConfig& c) {
  if (c.parties < 1) throw InfeasibleError("n must be at least 1");
  if (c.packets_per_party < 1) throw InfeasibleError("t_pk must be at least 1");
  if (c.anonymizer_capacity < 1)
    throw InfeasibleError("m_x must be at least 1");
  if (c.anonymizers < 2 * c.packets_per_party)
    throw InfeasibleError(
        "m must be at least 2*t_pk = " +
        std::to_string(2 * c.packets_per_party) +
        " so one party's packets can go to distinct anonymizers (got m=" +
        std::to_string(c.anonymizers) + ")");
  // m >= ceil(2*n*t_pk / m_x), i.e. m*m_x >= 2*n*t_pk.
  if (std::uint64_t(c.anonymizers) * c.anonymizer_capacity <
      c.total_packets())
    throw InfeasibleError(
        "m must be at least ceil(n*2*t_pk/m_x) = " +
        std::to_string(capacity_minimum(c.parties, c.packets_per_party,
                                        c.anonymizer_capacity)) +
        " to fit all packets (got m=" + std::to_string(c.anonymizers) + ")");
}

void validate_protocol_minimums(const ProtocolConfig& c) {
  if (c.parties < 2) throw InfeasibleError("n must be at least 2");
  if (c.anonymizers < 4) throw InfeasibleError("m must be at least 4");
  if (c.packets_per_party < 3)
    throw InfeasibleError("t_pk must be at least 3");
}

void validate_full(const ProtocolConfig& c) {
  validate_protocol_minimums(c);
  validate_structural(c);
}

}  // namespace drss
