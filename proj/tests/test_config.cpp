#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdint>
#include <string>

#include "doctest.h"
#include "drss/config.hpp"
#include "drss/config_file.hpp"
#include "drss/errors.hpp"

using namespace drss;

namespace {

std::string error_text(const auto& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("anonymizer count resolution follows the documented formula") {
  // max(4, 2*t_pk, ceil(2*n*t_pk/m_x))
  CHECK(resolved_anonymizer_count(10, 3, 6) == 10);
  CHECK(resolved_anonymizer_count(2, 3, 12) == 6);    // 2*t_pk wins
  CHECK(resolved_anonymizer_count(2, 1, 12) == 4);    // floor of 4 wins
  CHECK(resolved_anonymizer_count(7, 3, 4) == 11);    // ceil(42/4) = 11
  CHECK(capacity_minimum(7, 3, 4) == 11);
  CHECK(capacity_minimum(1, 3, 6) == 1);
}

TEST_CASE("structural validation names the violated constraint") {
  ProtocolConfig cfg;
  cfg.parties = 3;
  cfg.packets_per_party = 3;
  cfg.anonymizers = 5;
  cfg.anonymizer_capacity = 10;
  const std::string undersized =
      error_text([&] { validate_structural(cfg); });
  CHECK(undersized.find("2*t_pk") != std::string::npos);

  cfg.anonymizers = 6;
  cfg.anonymizer_capacity = 2;
  CHECK_THROWS_AS(validate_structural(cfg), InfeasibleError);

  cfg.anonymizer_capacity = 3;  // 6*3 = 18 slots, exactly enough
  CHECK_NOTHROW(validate_structural(cfg));

  // Degenerate analysis configs pass the structural level.
  ProtocolConfig single;
  single.parties = 1;
  single.packets_per_party = 3;
  single.anonymizers = 8;
  single.anonymizer_capacity = 6;
  CHECK_NOTHROW(validate_structural(single));
  CHECK_THROWS_AS(validate_protocol_minimums(single), InfeasibleError);
}

TEST_CASE("protocol minimums reject undersized user configs") {
  ProtocolConfig cfg;
  cfg.parties = 2;
  cfg.packets_per_party = 3;
  cfg.anonymizers = 6;
  cfg.anonymizer_capacity = 6;
  CHECK_NOTHROW(validate_full(cfg));

  ProtocolConfig bad = cfg;
  bad.parties = 1;
  CHECK_THROWS_AS(validate_protocol_minimums(bad), InfeasibleError);
  bad = cfg;
  bad.packets_per_party = 2;
  bad.anonymizers = 4;
  CHECK_THROWS_AS(validate_protocol_minimums(bad), InfeasibleError);
  bad = cfg;
  bad.anonymizers = 3;
  CHECK_THROWS_AS(validate_protocol_minimums(bad), InfeasibleError);
}

TEST_CASE("defaults fill in exactly as documented") {
  // n=10, t_pk=3 with everything else defaulted: m_x = 2*3 = 6,
  // m = max(4, 6, ceil(60/6)) = 10, batch_size = 500.
  const ResolvedOptions options =
      resolve_options(parse_config_text("n=10\nt_pk=3\n"));
  CHECK(options.config.parties == 10);
  CHECK(options.config.packets_per_party == 3);
  CHECK(options.config.anonymizer_capacity == 6);
  CHECK(options.config.anonymizers == 10);
  CHECK(options.batch_size == 500);
  CHECK(options.trials == 100000);
  CHECK(options.colluders == 2);
  CHECK(options.protocol == ProtocolChoice::Drss);
  CHECK(options.config.seed == 1);
  CHECK_FALSE(options.anonymizers_explicit);
  CHECK_FALSE(options.capacity_explicit);

  const ResolvedOptions empty = resolve_options(parse_config_text(""));
  CHECK(empty.config.parties == 10);
  CHECK(empty.config.anonymizers == 10);
}

TEST_CASE("undersized parameters are rejected with the minimum named") {
  const std::string n1 = error_text(
      [] { resolve_options(parse_config_text("n=1\n")); });
  CHECK(n1.find("at least 2") != std::string::npos);

  const std::string t2 = error_text(
      [] { resolve_options(parse_config_text("t_pk=2\n")); });
  CHECK(t2.find("at least 3") != std::string::npos);

  CHECK_THROWS_AS(resolve_options(parse_config_text("m=3\nt_pk=3\nm_x=30\n")),
                  InfeasibleError);
  CHECK_THROWS_AS(resolve_options(parse_config_text("colluders=11\n")),
                  InfeasibleError);
  CHECK_THROWS_AS(resolve_options(parse_config_text("batch_size=0\n")),
                  ConfigError);
  CHECK_THROWS_AS(resolve_options(parse_config_text("trials=0\n")),
                  ConfigError);
  CHECK_THROWS_AS(resolve_options(parse_config_text("m_x=0\n")),
                  InfeasibleError);
}

TEST_CASE("explicit values propagate and are marked explicit") {
  const ResolvedOptions options = resolve_options(parse_config_text(
      "n=4\nm=12\nt_pk=3\nm_x=9\nseed=77\nbatch_size=50\ntrials=1000\n"
      "colluders=5\nprotocol=single_mask\n"));
  CHECK(options.config.anonymizers == 12);
  CHECK(options.config.anonymizer_capacity == 9);
  CHECK(options.config.seed == 77);
  CHECK(options.batch_size == 50);
  CHECK(options.trials == 1000);
  CHECK(options.colluders == 5);
  CHECK(options.protocol == ProtocolChoice::SingleMask);
  CHECK(options.anonymizers_explicit);
  CHECK(options.capacity_explicit);
}

TEST_CASE("parser reports the offending line") {
  const std::string unknown = error_text(
      [] { parse_config_text("n=4\n\nbogus_key=1\n"); });
  CHECK(unknown.find("line 3") != std::string::npos);
  CHECK(unknown.find("bogus_key") != std::string::npos);

  const std::string dup =
      error_text([] { parse_config_text("n=4\nn=5\n"); });
  CHECK(dup.find("line 2") != std::string::npos);
  CHECK(dup.find("duplicate") != std::string::npos);

  CHECK_THROWS_AS(parse_config_text("n\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("n=\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("=4\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("n=ten\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("n=10x\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("n=-3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("protocol=quantum\n"), ConfigError);
}

TEST_CASE("comments, blank lines and spacing are tolerated") {
  const ParsedConfig parsed = parse_config_text(
      "# experiment setup\n"
      "\n"
      "  n = 6   # six parties\n"
      "\tt_pk=4\r\n"
      "seed = 123\n");
  CHECK(parsed.parties == 6u);
  CHECK(parsed.packets_per_party == 4u);
  CHECK(parsed.seed == 123u);
  CHECK_FALSE(parsed.anonymizers.has_value());
}
