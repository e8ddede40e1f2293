#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "ait/enumerator.hpp"
#include "ait/errors.hpp"
#include "ait/nogap.hpp"

using namespace ait;

namespace {

const std::string kData = AIT_TEST_DATA;

std::vector<NondecreasingFn> hs() {
  return {NondecreasingFn::identity(), NondecreasingFn::half(), NondecreasingFn::sqrt_ceil(),
          NondecreasingFn::log2_ceil()};
}

std::vector<OracleMachine> phis(const NondecreasingFn& h, const SequenceSource& alpha) {
  return {immediate_machine(h), linear_delay_machine(h, 3, 2), oracle_reading_machine(h, alpha)};
}

std::vector<SequenceSource> alphas() {
  return {SequenceSource::file(kData + "/alpha_a.bits"), SequenceSource::file(kData + "/alpha_b.bits"),
          SequenceSource::zeros(), SequenceSource::coin(42)};
}

// Brute-force h^-1 by scanning.
std::uint64_t inverse_scan(const NondecreasingFn& h, std::uint64_t k) {
  std::uint64_t n = 0;
  while (h(n) < k) ++n;
  return n;
}

void expect_exact_recovery(const NondecreasingFn& h, const OracleMachine& phi,
                           const SequenceSource& alpha, std::uint64_t K) {
  const InsertionSchedule s = build_schedule(h, phi, alpha, K);
  const std::uint64_t N = s.positions.back() + 1;
  const SequenceSource beta = beta_source(alpha, s, N);
  const SelectionTrace tr = selection_rule_S(beta, phi, N);
  ASSERT_EQ(tr.selected, s.positions) << h.id() << " " << phi.id << " " << alpha.id();
  ASSERT_EQ(tr.selected_bits, BitString::zeros(K));
  ASSERT_EQ(tr.stages.size(), N + 1);
  for (std::uint64_t n = 0; n <= N; ++n) ASSERT_EQ(tr.stages[n].x + tr.stages[n].k, n);
  ASSERT_EQ(tr.read, alpha.prefix(N - K));
}

}  // namespace

TEST(Nondecreasing, InverseMatchesScan) {
  for (const NondecreasingFn& h : hs()) {
    for (std::uint64_t k = 0; k <= 12; ++k) EXPECT_EQ(h.inverse(k), inverse_scan(h, k)) << h.id();
  }
  EXPECT_EQ(NondecreasingFn::sqrt_ceil()(10), 4U);
  EXPECT_EQ(NondecreasingFn::sqrt_ceil()(9), 3U);
  EXPECT_EQ(NondecreasingFn::log2_ceil()(0), 1U);
  EXPECT_EQ(NondecreasingFn::log2_ceil()(2), 2U);
  EXPECT_EQ(NondecreasingFn::log2_ceil()(3), 3U);
}

TEST(Nondecreasing, DecreaseIsDetected) {
  const NondecreasingFn bad("bad", [](std::uint64_t n) { return n == 5 ? 0 : n; });
  EXPECT_EQ(bad(4), 4U);
  EXPECT_THROW(bad(5), Error);
  EXPECT_THROW(NondecreasingFn::constant(3).inverse(4), Error);
}

TEST(Nondecreasing, DualCompose) {
  const NondecreasingFn h = dual_compose(NondecreasingFn::identity());
  const NondecreasingFn ref = NondecreasingFn::log2_ceil();
  for (std::uint64_t n = 0; n < 2000; ++n) ASSERT_EQ(h(n), ref(n));
  const NondecreasingFn flat = dual_compose(NondecreasingFn::constant(6));
  EXPECT_TRUE(flat.bounded());
  EXPECT_EQ(flat(0), 3U);
  EXPECT_EQ(flat(1000), 3U);
  for (const NondecreasingFn& hp : hs()) {
    const NondecreasingFn d = dual_compose(hp);
    for (std::uint64_t n = 1; n < 3000; ++n) ASSERT_LE(d(n - 1), d(n));
  }
  EXPECT_EQ(NondecreasingFn::by_name("dual:identity")(6), 3U);
}

TEST(Schedule, Examples) {
  const SequenceSource alpha = SequenceSource::zeros();
  const NondecreasingFn id = NondecreasingFn::identity();
  const InsertionSchedule a = build_schedule(id, immediate_machine(id), alpha, 20);
  for (std::uint64_t k = 1; k <= 20; ++k) EXPECT_EQ(a.positions[k - 1], k + 1);

  const NondecreasingFn half = NondecreasingFn::half();
  const InsertionSchedule b = build_schedule(half, oracle_reading_machine(half, alpha), alpha, 20);
  for (std::uint64_t k = 1; k <= 20; ++k) {
    EXPECT_EQ(b.t[k - 1], 2 * k + 1);
    EXPECT_EQ(b.positions[k - 1], 4 * k + 1);
  }
  EXPECT_FALSE(b.adjusted);

  OracleMachine wrong{"wrong", "one step", [id](const Oracle&, std::uint64_t k, std::uint64_t)
                                               -> std::optional<OracleResult> {
                        return OracleResult{k == 3 ? 99 : id.inverse(k), 1, 0};
                      }};
  try {
    build_schedule(id, wrong, alpha, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kOracleDisagreement);
  }
}

TEST(Schedule, KeyMismatchIsDisagreement) {
  const NondecreasingFn h = NondecreasingFn::identity();
  const OracleMachine phi = oracle_reading_machine(h, SequenceSource::zeros());
  EXPECT_THROW(build_schedule(h, phi, SequenceSource::ones(), 3), Error);
}

TEST(Schedule, NonIncreasing) {
  const NondecreasingFn flat = NondecreasingFn::constant(2);
  OracleMachine phi{"flat", "one step", [](const Oracle&, std::uint64_t k, std::uint64_t)
                                            -> std::optional<OracleResult> {
                      return OracleResult{k <= 2 ? 0 : 1, 1, 0};
                    }};
  try {
    build_schedule(flat, phi, SequenceSource::zeros(), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNonIncreasingSchedule);
  }
}

TEST(Insert, Examples) {
  InsertionSchedule empty;
  const SequenceSource alpha = SequenceSource::coin(4);
  EXPECT_EQ(insert_zeros(alpha, empty, 50), alpha.prefix(50));

  InsertionSchedule s;
  s.positions = {0, 2, 4};
  EXPECT_EQ(insert_zeros(SequenceSource::ones(), s, 10), BitString("0101011111"));
}

TEST(Insert, RoundTrip) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const SequenceSource alpha = SequenceSource::coin(rng());
    InsertionSchedule s;
    std::uint64_t pos = rng() % 5;
    const std::uint64_t N = 20 + rng() % 200;
    while (pos < N) {
      s.positions.push_back(pos);
      pos += 1 + rng() % 7;
    }
    const BitString beta = insert_zeros(alpha, s, N);
    ASSERT_EQ(beta.size(), N);
    ASSERT_EQ(delete_positions(beta, s), alpha.prefix(N - s.count_below(N)));
    for (std::uint64_t p : s.positions) ASSERT_FALSE(beta[p]);
  }
}

TEST(Oracle, UseSoundness) {
  const SequenceSource alpha = SequenceSource::file(kData + "/alpha_b.bits");
  for (const NondecreasingFn& h : hs()) {
    for (const OracleMachine& phi : phis(h, alpha)) {
      for (std::uint64_t k = 1; k < 40; ++k) {
        ASSERT_TRUE(use_sound(phi, oracle_of(alpha), k, 1000)) << phi.id << " " << k;
      }
    }
  }
  const OracleMachine reading = oracle_reading_machine(NondecreasingFn::identity(), alpha);
  EXPECT_FALSE(reading.run(oracle_of(alpha.prefix(9)), 5, 1000).has_value());
  EXPECT_FALSE(reading.run(oracle_of(alpha), 5, 10).has_value());
  EXPECT_TRUE(reading.run(oracle_of(alpha), 5, 11).has_value());
}

TEST(Selection, MatrixExactRecovery) {
  for (const SequenceSource& alpha : alphas()) {
    for (const NondecreasingFn& h : hs()) {
      for (const OracleMachine& phi : phis(h, alpha)) {
        const std::uint64_t K = h.id() == "log" ? 9 : 60;
        expect_exact_recovery(h, phi, alpha, K);
      }
    }
  }
}

TEST(Selection, RandomizedConfigurations) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<NondecreasingFn> all = hs();
    // dual(log) starts at 2, so h^-1(1) = h^-1(2) and a constant-time Phi
    // cannot separate them; it is left out.
    const NondecreasingFn h = rng() % 5 == 0 ? dual_compose(all[rng() % 3]) : all[rng() % 4];
    const SequenceSource alpha = SequenceSource::coin(rng());
    OracleMachine phi = immediate_machine(h);
    switch (rng() % 3) {
      case 1:
        phi = linear_delay_machine(h, rng() % 5, 1 + rng() % 6);
        break;
      case 2:
        phi = oracle_reading_machine(h, alpha);
        break;
      default:
        break;
    }
    const bool slow = h.id() == "log" || h.id().rfind("dual", 0) == 0;
    expect_exact_recovery(h, phi, alpha, slow ? 1 + rng() % 7 : 1 + rng() % 40);
  }
}

TEST(Selection, PaddingRepairsNonMonotoneTime) {
  const NondecreasingFn h = NondecreasingFn::identity();
  OracleMachine jumpy{"jumpy", "5 steps on odd inputs, 1 on even",
                      [h](const Oracle&, std::uint64_t k, std::uint64_t budget)
                          -> std::optional<OracleResult> {
                        const std::uint64_t t = k % 2 ? 5 : 1;
                        if (t > budget) return std::nullopt;
                        return OracleResult{h.inverse(k), t, 0};
                      }};
  const SequenceSource alpha = SequenceSource::coin(8);
  const InsertionSchedule s = build_schedule(h, jumpy, alpha, 30);
  EXPECT_TRUE(s.adjusted);
  const std::uint64_t N = s.positions.back() + 1;
  const SequenceSource beta = beta_source(alpha, s, N);
  EXPECT_EQ(selection_rule_S(beta, pad_monotone(jumpy), N).selected, s.positions);
  EXPECT_NE(selection_rule_S(beta, jumpy, N).selected, s.positions);
}

TEST(Selection, NeverHaltingSelectsNothing) {
  OracleMachine never{"never", "diverges", [](const Oracle&, std::uint64_t, std::uint64_t)
                                               -> std::optional<OracleResult> { return std::nullopt; }};
  const SequenceSource xi = SequenceSource::coin(17);
  const SelectionTrace tr = selection_rule_S(xi, never, 300);
  EXPECT_TRUE(tr.selected.empty());
  EXPECT_EQ(tr.read, xi.prefix(300));
  const BiasReport b = bias_report(tr);
  EXPECT_TRUE(b.no_selection);
  EXPECT_EQ(b.frequency_of_ones, "none");
}

TEST(Selection, Deterministic) {
  const SequenceSource alpha = SequenceSource::file(kData + "/alpha_a.bits");
  const NondecreasingFn h = NondecreasingFn::sqrt_ceil();
  const InsertionSchedule s = build_schedule(h, oracle_reading_machine(h, alpha), alpha, 40);
  const SequenceSource beta = beta_source(alpha, s, 500);
  const OracleMachine phi = oracle_reading_machine(h, alpha);
  EXPECT_EQ(selection_rule_S(beta, phi, 500).serialize(), selection_rule_S(beta, phi, 500).serialize());
  EXPECT_EQ(s.serialize(), build_schedule(h, phi, alpha, 40).serialize());
}

TEST(Bias, MatchedAndUnmodified) {
  const SequenceSource alpha = SequenceSource::file(kData + "/alpha_b.bits");
  const NondecreasingFn h = NondecreasingFn::half();
  const OracleMachine phi = linear_delay_machine(h, 3, 2);
  const InsertionSchedule s = build_schedule(h, phi, alpha, 100);
  const std::uint64_t N = s.positions.back() + 1;
  const BiasReport matched = bias_report(selection_rule_S(beta_source(alpha, s, N), phi, N));
  EXPECT_EQ(matched.ones, 0U);
  EXPECT_EQ(matched.zeros, 100U);
  EXPECT_EQ(matched.frequency_of_ones, "0/100");

  // On alpha itself the rule fires at the same kind of positions but the
  // bits there are alpha's: roughly balanced rather than all zero.
  const BiasReport raw = bias_report(selection_rule_S(alpha, phi, N));
  EXPECT_FALSE(raw.no_selection);
  EXPECT_GT(raw.ones, 0U);
  EXPECT_NE(raw.csv(selection_rule_S(alpha, phi, N)).str().find("frequency_of_ones"), std::string::npos);
}

TEST(Consistency, ConstantHAndDeterminism) {
  Enumeration e(MachineProfile::standard());
  e.advance(22);
  const SequenceSource alpha = SequenceSource::coin(12);
  const NondecreasingFn big = NondecreasingFn::constant(1000);
  const DeficiencyReport r = complexity_consistency(alpha, e, big, 30);
  for (const DeficiencyRow& row : r.rows) {
    if (row.statistic) EXPECT_LE(*row.statistic, 0);
  }

  const NondecreasingFn h = NondecreasingFn::identity();
  const OracleMachine phi = immediate_machine(h);
  const InsertionSchedule s = build_schedule(h, phi, alpha, 20);
  const SequenceSource beta = beta_source(alpha, s, 40);
  EXPECT_EQ(complexity_consistency(beta, e, h, 40).csv().str(),
            complexity_consistency(beta, e, h, 40).csv().str());
}

TEST(Consistency, ScheduleSlack) {
  for (const NondecreasingFn& h : hs()) {
    const SequenceSource alpha = SequenceSource::zeros();
    for (const OracleMachine& phi : phis(h, alpha)) {
      const InsertionSchedule s = build_schedule(h, phi, alpha, h.id() == "log" ? 8 : 50);
      const std::uint64_t N = s.positions.back() + 10;
      std::int64_t worst = INT64_MIN;
      for (std::uint64_t n = 0; n <= N; ++n) {
        std::int64_t below = 0;
        for (std::uint64_t p : s.positions) below += p < n ? 1 : 0;
        worst = std::max(worst, below - static_cast<std::int64_t>(h(n)));
      }
      EXPECT_EQ(schedule_slack(s, h, N), worst);
      // n_k > h^-1(k), so n_k < n forces k <= h(n - 1) <= h(n).
      EXPECT_LE(worst, 0) << h.id() << " " << phi.id;
    }
  }
}

TEST(Settling, StageZeroAndRefinement) {
  Enumeration zero(MachineProfile::standard());
  EXPECT_TRUE(settling_schedule(zero, 10).settle.empty());
  EXPECT_EQ(settling_schedule(zero, 10).absent, 10U);

  std::map<std::uint64_t, SettlingSchedule> by_stage;
  Enumeration e(MachineProfile::standard());
  for (std::uint64_t s : {12, 16, 20, 22}) {
    e.advance(s);
    by_stage.emplace(s, settling_schedule(e, 30));
  }
  const SettlingSchedule& last = by_stage.at(22);
  EXPECT_EQ(last.settle.size(), 22U);
  EXPECT_EQ(last.absent, 8U);
  for (bool u : last.schedule.unstable) EXPECT_TRUE(u);
  for (std::size_t i = 1; i < last.schedule.positions.size(); ++i) {
    EXPECT_LT(last.schedule.positions[i - 1], last.schedule.positions[i]);
  }
  for (auto it = by_stage.begin(); std::next(it) != by_stage.end(); ++it) {
    const SettlingSchedule& a = it->second;
    const SettlingSchedule& b = std::next(it)->second;
    for (std::size_t n = 0; n < a.settle.size(); ++n) EXPECT_LE(a.settle[n], b.settle[n]);
  }
}
