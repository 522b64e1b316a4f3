#include "drss/config_file.hpp"

#include <charconv>
#include <string_view>

#include "drss/csv.hpp"
#include "drss/errors.hpp"

namespace drss {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line_no) + ": " + what);
}

template <typename T>
T parse_number(std::string_view value, std::size_t line_no,
               std::string_view key) {
  T out{};
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    fail(line_no, "value '" + std::string(value) + "' for key '" +
                      std::string(key) + "' is not a valid number");
  }
  return out;
}

template <typename T>
void set_once(std::optional<T>& slot, T value, std::size_t line_no,
              std::string_view key) {
  if (slot.has_value()) {
    fail(line_no, "duplicate key '" + std::string(key) + "'");
  }
  slot = value;
}

ProtocolChoice parse_protocol(std::string_view value, std::size_t line_no) {
  if (value == "drss") return ProtocolChoice::Drss;
  if (value == "single_mask") return ProtocolChoice::SingleMask;
  if (value == "ring") return ProtocolChoice::Ring;
  fail(line_no, "protocol must be drss, single_mask or ring, got '" +
                    std::string(value) + "'");
}

}  // namespace

ParsedConfig parse_config_text(const std::string& text) {
  ParsedConfig parsed;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + start, end - start);
    ++line_no;
    start = end + 1;

    if (const std::size_t hash = line.find('#');
        hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(line_no, "expected key=value, got '" + std::string(line) + "'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    if (value.empty()) {
      fail(line_no, "empty value for key '" + std::string(key) + "'");
    }

    if (key == "n") {
      set_once(parsed.parties, parse_number<std::uint32_t>(value, line_no, key),
               line_no, key);
    } else if (key == "m") {
      set_once(parsed.anonymizers,
               parse_number<std::uint32_t>(value, line_no, key), line_no, key);
    } else if (key == "t_pk") {
      set_once(parsed.packets_per_party,
               parse_number<std::uint32_t>(value, line_no, key), line_no, key);
    } else if (key == "m_x") {
      set_once(parsed.capacity,
               parse_number<std::uint32_t>(value, line_no, key), line_no, key);
    } else if (key == "seed") {
      set_once(parsed.seed, parse_number<std::uint64_t>(value, line_no, key),
               line_no, key);
    } else if (key == "batch_size") {
      set_once(parsed.batch_size,
               parse_number<std::uint32_t>(value, line_no, key), line_no, key);
    } else if (key == "trials") {
      set_once(parsed.trials, parse_number<std::uint64_t>(value, line_no, key),
               line_no, key);
    } else if (key == "colluders") {
      set_once(parsed.colluders,
               parse_number<std::uint32_t>(value, line_no, key), line_no, key);
    } else if (key == "protocol") {
      set_once(parsed.protocol, parse_protocol(value, line_no), line_no, key);
    } else {
      fail(line_no, "unknown key '" + std::string(key) + "'");
    }

    if (end == text.size()) break;
  }
  return parsed;
}

ParsedConfig read_config_file(const std::filesystem::path& path) {
  return parse_config_text(read_text_file(path));
}

ResolvedOptions resolve_options(const ParsedConfig& parsed) {
  ResolvedOptions options;
  const std::uint32_t packets = parsed.packets_per_party.value_or(3);
  const std::uint32_t parties = parsed.parties.value_or(10);
  const std::uint32_t capacity = parsed.capacity.value_or(2 * packets);
  if (capacity == 0) throw InfeasibleError("m_x must be at least 1");
  const std::uint32_t anonymizers = parsed.anonymizers.value_or(
      resolved_anonymizer_count(parties, packets, capacity));

  options.config =
      ProtocolConfig{parties, anonymizers, packets, capacity,
                     parsed.seed.value_or(1)};
  options.batch_size = parsed.batch_size.value_or(500);
  options.trials = parsed.trials.value_or(100000);
  options.colluders = parsed.colluders.value_or(2);
  options.protocol = parsed.protocol.value_or(ProtocolChoice::Drss);
  options.anonymizers_explicit = parsed.anonymizers.has_value();
  options.capacity_explicit = parsed.capacity.has_value();

  validate_full(options.config);
  if (options.batch_size == 0) {
    throw ConfigError("batch_size must be at least 1");
  }
  if (options.trials == 0) {
    throw ConfigError("trials must be at least 1");
  }
  if (options.colluders > options.config.anonymizers) {
    throw InfeasibleError(
        "colluders must not exceed m = " +
        std::to_string(options.config.anonymizers) + ", got " +
        std::to_string(options.colluders));
  }
  return options;
}

}  // namespace drss
