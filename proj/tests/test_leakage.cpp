#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "doctest.h"
#include "drss/errors.hpp"
#include "drss/leakage.hpp"
#include "drss/protocol.hpp"
#include "drss/rng.hpp"

using namespace drss;

namespace {

// Oracle: count 2k-subsets of {0..m-1} lying inside {0..l-1} by direct
// enumeration over bitmasks. Exact for the m ranges used here.
double subset_ratio_oracle(std::uint32_t l, std::uint32_t m,
                           std::uint32_t k) {
  const std::uint32_t size = 2 * k;
  std::uint64_t total = 0, inside = 0;
  for (std::uint32_t bits = 0; bits < (1u << m); ++bits) {
    if (std::uint32_t(__builtin_popcount(bits)) != size) continue;
    ++total;
    if ((bits >> l) == 0) ++inside;  // all chosen ids < l
  }
  return double(inside) / double(total);
}

ProtocolConfig small_config(std::uint32_t parties, std::uint32_t packets,
                            std::uint32_t anonymizers,
                            std::uint32_t capacity, std::uint64_t seed) {
  ProtocolConfig cfg;
  cfg.parties = parties;
  cfg.packets_per_party = packets;
  cfg.anonymizers = anonymizers;
  cfg.anonymizer_capacity = capacity;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("independent-placement probability matches closed-form values") {
  // (2/5)^(2*3) = 64/15625, exactly representable products.
  CHECK(leakage_independent(2, 5, 3) == 0.004096);
  CHECK(leakage_independent(5, 5, 3) == 1.0);
  CHECK(leakage_independent(0, 7, 2) == 0.0);
}

TEST_CASE("exact probability agrees with subset enumeration") {
  // C(6,6)/C(8,6) = 1/28.
  CHECK(leakage_exact(6, 8, 3) == doctest::Approx(1.0 / 28.0).epsilon(1e-12));
  CHECK(leakage_exact(6, 8, 3) ==
        doctest::Approx(subset_ratio_oracle(6, 8, 3)).epsilon(1e-12));

  SplitMix64 rng(1234);
  for (int i = 0; i < 200; ++i) {
    const std::uint32_t k = 1 + std::uint32_t(rng.uniform_below(3));
    const std::uint32_t m = 2 * k + std::uint32_t(rng.uniform_below(13 - 2 * k));
    const std::uint32_t l = std::uint32_t(rng.uniform_below(m + 1));
    CAPTURE(l);
    CAPTURE(m);
    CAPTURE(k);
    CHECK(leakage_exact(l, m, k) ==
          doctest::Approx(subset_ratio_oracle(l, m, k)).epsilon(1e-12));
  }

  CHECK(leakage_exact(5, 8, 3) == 0.0);  // l < 2k: some packet is missing
  CHECK(leakage_exact(0, 8, 3) == 0.0);
}

TEST_CASE("exact never exceeds the independent model") {
  for (std::uint32_t m = 2; m <= 14; ++m) {
    for (std::uint32_t l = 0; l <= m; ++l) {
      for (std::uint32_t k = 1; 2 * k <= m && k <= 6; ++k) {
        CAPTURE(l);
        CAPTURE(m);
        CAPTURE(k);
        CHECK(leakage_exact(l, m, k) <= leakage_independent(l, m, k));
      }
    }
  }
}

TEST_CASE("both probabilities fall strictly as packets per party grow") {
  // 0 < l < m: more packets means strictly smaller compromise chance.
  const std::uint32_t l = 4, m = 8;
  double prev_ind = 2.0, prev_exact = 2.0;
  for (std::uint32_t k = 1; k <= 3; ++k) {
    const double ind = leakage_independent(l, m, k);
    const double exact = leakage_exact(l, m, k);
    CHECK(ind < prev_ind);
    CHECK((exact < prev_exact || (exact == 0.0 && prev_exact == 0.0)));
    prev_ind = ind;
    prev_exact = exact;
  }
  // The exact curve reaches zero once 2k exceeds l.
  CHECK(leakage_exact(l, m, 3) == 0.0);
}

TEST_CASE("domain violations are rejected") {
  CHECK_THROWS_AS(leakage_independent(6, 5, 3), InfeasibleError);  // l > m
  CHECK_THROWS_AS(leakage_independent(2, 0, 3), InfeasibleError);
  CHECK_THROWS_AS(leakage_independent(2, 5, 0), InfeasibleError);
  CHECK_THROWS_AS(leakage_exact(2, 5, 3), InfeasibleError);  // m < 2k

  CollusionScenario scenario;
  scenario.config = small_config(1, 3, 8, 6, 1);
  scenario.colluders = {1, 1};
  CHECK_THROWS_AS(scenario.validate(), InfeasibleError);
  scenario.colluders = {8};
  CHECK_THROWS_AS(scenario.validate(), InfeasibleError);
  scenario.colluders = {0, 1};
  CHECK_NOTHROW(scenario.validate());
  CHECK_THROWS_AS(leakage_monte_carlo(scenario, 0), InfeasibleError);
}

TEST_CASE("reconstruction succeeds exactly when all packets are covered") {
  SplitMix64 rng(555);
  for (int i = 0; i < 300; ++i) {
    ProtocolConfig cfg = small_config(
        1 + std::uint32_t(rng.uniform_below(6)),
        1 + std::uint32_t(rng.uniform_below(4)), 0, 0, rng.next());
    cfg.anonymizers =
        2 * cfg.packets_per_party + std::uint32_t(rng.uniform_below(6));
    const std::uint64_t packets = cfg.total_packets();
    const std::uint32_t min_cap =
        std::uint32_t((packets + cfg.anonymizers - 1) / cfg.anonymizers);
    cfg.anonymizer_capacity = min_cap + std::uint32_t(rng.uniform_below(4));

    std::vector<SecretInput> inputs(cfg.parties);
    for (std::uint32_t p = 0; p < cfg.parties; ++p)
      inputs[p] = SecretInput{p, rng.next()};
    const RunTranscript t = run_drss(cfg, inputs);

    // Random colluding set.
    std::vector<std::uint8_t> colluders(cfg.anonymizers);
    for (auto& c : colluders) c = std::uint8_t(rng.uniform_below(2));

    for (std::uint32_t p = 0; p < cfg.parties; ++p) {
      bool covered = true;
      for (std::uint32_t s = 0; s < cfg.packets_per_party_total(); ++s) {
        const std::uint32_t a =
            t.plan.target[p * cfg.packets_per_party_total() + s];
        covered = covered && colluders[a] != 0;
      }
      const std::optional<Residue> got =
          attempt_reconstruction(t, colluders, p);
      CHECK(got.has_value() == covered);
      if (got) CHECK(*got == inputs[p].value);
    }
  }
}

TEST_CASE("full collusion reconstructs everyone; one gap hides everything") {
  const ProtocolConfig cfg = small_config(4, 3, 8, 12, 77);
  std::vector<SecretInput> inputs;
  for (std::uint32_t p = 0; p < 4; ++p)
    inputs.push_back({p, 1000 + p});
  const RunTranscript t = run_drss(cfg, inputs);

  std::vector<std::uint8_t> all(cfg.anonymizers, 1);
  for (std::uint32_t p = 0; p < 4; ++p) {
    const std::optional<Residue> got = attempt_reconstruction(t, all, p);
    REQUIRE(got.has_value());
    CHECK(*got == inputs[p].value);
  }

  // Drop exactly the anonymizer carrying one packet of party 2.
  std::vector<std::uint8_t> gap = all;
  gap[t.plan.anonymizer_of(2, 1, PacketKind::Mask)] = 0;
  CHECK_FALSE(attempt_reconstruction(t, gap, 2).has_value());
}

TEST_CASE("monte carlo is deterministic and mode-independent") {
  CollusionScenario scenario;
  scenario.config = small_config(2, 3, 8, 12, 4242);
  scenario.colluders = {0, 1, 2, 3, 4, 5};

  const LeakageEstimate serial =
      leakage_monte_carlo(scenario, 3000, Execution::Serial);
  const LeakageEstimate parallel =
      leakage_monte_carlo(scenario, 3000, Execution::Parallel);
  CHECK(serial.p_empirical == parallel.p_empirical);
  CHECK(serial.std_error == parallel.std_error);
  CHECK(serial.p_exact == parallel.p_exact);

  const LeakageEstimate repeat =
      leakage_monte_carlo(scenario, 3000, Execution::Parallel);
  CHECK(repeat.p_empirical == parallel.p_empirical);
}

TEST_CASE("monte carlo estimate is monotone in the colluder count") {
  // Same seed => identical runs; nested colluder sets can only add
  // compromised pairs.
  double prev = -1.0;
  for (const std::uint32_t l : {2u, 4u, 6u, 8u}) {
    CollusionScenario scenario;
    scenario.config = small_config(2, 3, 8, 12, 99);
    for (std::uint32_t i = 0; i < l; ++i) scenario.colluders.push_back(i);
    const double p = leakage_monte_carlo(scenario, 2000).p_empirical;
    CHECK(p >= prev);
    prev = p;
  }
  CHECK(prev == 1.0);  // l == m: every party compromised in every run
}

TEST_CASE("monte carlo converges to the exact value for a single party") {
  CollusionScenario scenario;
  scenario.config = small_config(1, 3, 8, 6, 31415);
  scenario.colluders = {0, 1, 2, 3, 4, 5};
  const LeakageEstimate est = leakage_monte_carlo(scenario, 20000);
  CHECK(est.p_exact == doctest::Approx(1.0 / 28.0).epsilon(1e-12));
  CHECK(std::abs(est.p_empirical - est.p_exact) <= 4.0 * est.std_error);
  CHECK(est.std_error > 0.0);
  CHECK(est.trials == 20000);
}
