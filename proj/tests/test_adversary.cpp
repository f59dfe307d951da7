#include <doctest.h>

#include "nomauth/adversary.hpp"
#include "nomauth/auth.hpp"
#include "nomauth/seedgen.hpp"

using namespace nomauth;

namespace {

Codebook small_codebook(std::uint64_t seed, int n = 4, int k = 6) {
  RngStream rng(seed);
  return build_codebook(n, k, 0.0, alphabet_by_name("default"), rng);
}

AdversaryProfile make_profile(Strategy s, Knowledge kn, std::uint64_t seed) {
  AdversaryProfile p;
  p.strategy = s;
  p.knowledge = kn;
  p.own_codebook = small_codebook(seed);
  p.victim_id = 2;
  p.sequence_candidates = 4;
  return p;
}

}  // namespace

TEST_CASE("always-on attacker is flagged exactly at the zero bits") {
  const auto cb = small_codebook(1);
  const auto own = small_codebook(2);
  auto prof = make_profile(Strategy::AlwaysOn, Knowledge::OwnCodebook, 2);
  const AccessSchedule victim_sched{parse_bits("1001110"), 2};

  RngStream rng(77);
  CostCounters cost;
  int slot_mismatches = 0, transmissions = 0;
  for (int l = 0; l < 7; ++l) {
    auto inj = plan_attack(prof, l, cb.entries.col(2), rng);
    REQUIRE(inj.has_value());  // always on
    ++transmissions;
    Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1> erased =
        Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1>::Zero(4);
    const auto out = check_transmission(
        inj->sequence, erased, cb.entries.col(2),
        victim_sched.bits[static_cast<std::size_t>(l)], kSequenceTol, cost);
    if (out.reason == AuthReason::SlotMismatch) ++slot_mismatches;
    CHECK_FALSE(out.pass);  // different codebook: never authenticated
  }
  CHECK(transmissions == 7);
  // flag count at the slot step equals the zero bits in the schedule
  CHECK(slot_mismatches == 3);
}

TEST_CASE("random-access attacker transmits about half the slots") {
  auto prof = make_profile(Strategy::RandomAccess, Knowledge::VictimColumn, 3);
  const auto cb = small_codebook(1);
  RngStream rng(123);
  int sent = 0;
  const int slots = 4000;
  for (int l = 0; l < slots; ++l)
    if (plan_attack(prof, l % 7, cb.entries.col(2), rng)) ++sent;
  CHECK(static_cast<double>(sent) / slots == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("column knowledge guesses land on candidate shifts") {
  auto prof = make_profile(Strategy::AlwaysOn, Knowledge::VictimColumn, 4);
  const auto cb = small_codebook(1);
  RngStream rng(9);
  for (int l = 0; l < 50; ++l) {
    const auto inj = plan_attack(prof, l, cb.entries.col(2), rng);
    REQUIRE(inj.has_value());
    bool is_candidate = false;
    for (int s = 0; s < 4; ++s)
      if (inj->sequence == candidate_column(cb, 2, s)) is_candidate = true;
    CHECK(is_candidate);
  }
}

TEST_CASE("attack planning sees only public inputs") {
  // The planner's determinism in (profile, rng) is the information-flow
  // check: schedules, pools and seeds do not enter the signature at all,
  // so two environments with different secrets produce identical attacks.
  auto prof_a = make_profile(Strategy::RandomAccess, Knowledge::OwnCodebook, 5);
  auto prof_b = make_profile(Strategy::RandomAccess, Knowledge::OwnCodebook, 5);
  const auto cb = small_codebook(1);
  RngStream rng_a(55), rng_b(55);
  for (int l = 0; l < 200; ++l) {
    const auto ia = plan_attack(prof_a, l % 7, cb.entries.col(2), rng_a);
    const auto ib = plan_attack(prof_b, l % 7, cb.entries.col(2), rng_b);
    CHECK(ia.has_value() == ib.has_value());
    if (ia && ib) {
      CHECK(ia->sequence == ib->sequence);
      CHECK(ia->symbol == ib->symbol);
    }
  }
}

namespace {

struct WindowSim {
  AccessSchedule sched;
  int rotation = 0;
};

WindowSim window_from_bits(const Bits& seed_bits, const MonicPolynomial& poly,
                           int P) {
  WindowSim w;
  const auto st = lfsr_init(seed_bits, poly);
  w.sched.bits = generate_bits(st, poly, 7);
  w.rotation = window_rotation(seed_bits, P);
  return w;
}

}  // namespace

TEST_CASE("replay succeeds inside a window and dies at refresh") {
  const auto poly = MonicPolynomial::from_string("1101");
  const auto cb = small_codebook(5, 6, 8);
  const int P = 4;
  const int victim = 1;
  RngStream rng(2024);
  const auto alpha = alphabet_by_name("default");

  int detected_after_refresh = 0;
  int trials = 0;
  const int target = 3000;

  while (trials < target) {
    // window 1 from a random seed, window 2 via a seed refresh from the
    // tagged pool, exactly as the campaign engine drives it.
    WindowSim w1;
    for (;;) {
      Bits init(13);
      for (auto& b : init) b = static_cast<std::uint8_t>(rng.below(2));
      try {
        w1 = window_from_bits(init, poly, P);
        break;
      } catch (const AllZeroSeed&) {
      }
    }

    Pool pool(7);
    for (auto& v : pool) v = alpha[rng.below(alpha.size())];
    AccessSchedule s1 = w1.sched;
    s1.device_id = victim;
    WindowSim w2;
    try {
      const auto r = refresh_cycle(tag_pool(pool, s1), poly, 7,
                                   SeedVariant::full, 13);
      w2 = window_from_bits(r.seed_bits, poly, P);
    } catch (const Error&) {
      continue;
    }
    ++trials;

    auto prof = make_profile(Strategy::Replay, Knowledge::OwnCodebook, 7);
    prof.victim_id = victim;

    // scan phase: observe the victim through window 1
    for (int l = 0; l < 7; ++l)
      if (w1.sched.bits[static_cast<std::size_t>(l)])
        observe_transmission(prof, l,
                             candidate_column(cb, victim,
                                              (l + w1.rotation) % P));

    // replay inside window 1: every replayed slot passes both steps
    for (int l = 0; l < 7; ++l) {
      const auto it = prof.observed_cur.find(l);
      if (it == prof.observed_cur.end()) continue;
      CHECK(w1.sched.bits[static_cast<std::size_t>(l)] == 1);
      CHECK(it->second == candidate_column(cb, victim, (l + w1.rotation) % P));
    }

    advance_window(prof);

    // window 2: replay against the refreshed schedule and pool selection
    bool caught = false;
    CostCounters cost;
    for (int l = 0; l < 7; ++l) {
      const auto inj = plan_attack(prof, l, cb.entries.col(victim), rng);
      if (!inj) continue;
      Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1> erased =
          Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1>::Zero(6);
      const auto out = check_transmission(
          inj->sequence, erased,
          candidate_column(cb, victim, (l + w2.rotation) % P),
          w2.sched.bits[static_cast<std::size_t>(l)], kSequenceTol, cost);
      if (!out.pass) caught = true;
    }
    if (caught) ++detected_after_refresh;
  }

  const double detection =
      static_cast<double>(detected_after_refresh) / static_cast<double>(trials);
  // Enumeration bound: the replay survives only if schedule and rotation
  // both repeat, so detection stays above 1 - 2^-mu.
  CHECK(detection >= 1.0 - 1.0 / 8.0);
}
