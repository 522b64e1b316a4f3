#ifndef DRSS_CONFIG_FILE_HPP
#define DRSS_CONFIG_FILE_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "drss/config.hpp"

namespace drss {

// Experiment configuration text files: one key=value pair per line,
// '#' starts a comment, blank lines ignored. Recognized keys:
//
//   n           parties                     (default 10)
//   m           anonymizers                 (default max(4, 2*t_pk,
//                                            ceil(2*n*t_pk/m_x)))
//   t_pk        data packets per party      (default 3)
//   m_x         anonymizer capacity         (default 2*t_pk)
//   seed        root seed, u64              (default 1)
//   batch_size  runs per batch              (default 500)
//   trials      Monte Carlo trials          (default 100000)
//   colluders   colluding anonymizer count  (default 2)
//   protocol    drss | single_mask | ring   (default drss)
//
// Unknown or duplicate keys and malformed values are rejected with the
// line number named.

enum class ProtocolChoice { Drss, SingleMask, Ring };

struct ParsedConfig {
  std::optional<std::uint32_t> parties;
  std::optional<std::uint32_t> anonymizers;
  std::optional<std::uint32_t> packets_per_party;
  std::optional<std::uint32_t> capacity;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> batch_size;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint32_t> colluders;
  std::optional<ProtocolChoice> protocol;
};

// Syntax only; no constraint checking. Throws ConfigError with the line
// number on malformed input.
ParsedConfig parse_config_text(const std::string& text);
ParsedConfig read_config_file(const std::filesystem::path& path);

// A parsed file with defaults applied and all constraints enforced.
struct ResolvedOptions {
  ProtocolConfig config;
  std::uint32_t batch_size = 500;
  std::uint64_t trials = 100000;
  std::uint32_t colluders = 2;
  ProtocolChoice protocol = ProtocolChoice::Drss;
  // Whether m / m_x came from the user rather than the default formula.
  // Grid commands may enlarge defaulted values to fit the grid but must
  // treat user-chosen ones as hard constraints.
  bool anonymizers_explicit = false;
  bool capacity_explicit = false;
};

// Applies the defaults above, then validates the full config (protocol
// minimums and structural feasibility) plus colluders <= m. Throws
// InfeasibleError naming the violated constraint.
ResolvedOptions resolve_options(const ParsedConfig& parsed);

}  // namespace drss

#endif  // DRSS_CONFIG_FILE_HPP
