#include <doctest.h>

#include <algorithm>
#include <random>

#include "nomauth/errors.hpp"
#include "nomauth/metrics.hpp"
#include "nomauth/rng.hpp"

using namespace nomauth;

namespace {

AuthIndicator indicator(int k, int j) { return AuthIndicator(k, j); }

ActivityTruth truth_for(int k, int j, int trials = 1) {
  ActivityTruth t;
  t.k_devices = k;
  t.slots = j;
  t.trials = trials;
  t.legit.setZero(k, j);
  return t;
}

}  // namespace

TEST_CASE("false alarm rate") {
  SUBCASE("all legitimate actives pass") {
    auto ind = indicator(4, 2);
    auto tr = truth_for(4, 2);
    for (int k = 0; k < 4; ++k)
      for (int j = 0; j < 2; ++j) {
        tr.legit(k, j) = 1;
        ind.gamma(k, j) = 1;
      }
    const auto r = false_alarm_rate(ind, tr);
    CHECK(r.paper == 0.0);
    CHECK(r.conditional == 0.0);
  }
  SUBCASE("all actives flagged with S = K gives 1 in both variants") {
    auto ind = indicator(3, 2);
    auto tr = truth_for(3, 2);
    tr.legit.setOnes();
    const auto r = false_alarm_rate(ind, tr);
    CHECK(r.paper == 1.0);
    CHECK(r.conditional == 1.0);
  }
  SUBCASE("S of 20 in K of 200 with half the actives flagged") {
    auto ind = indicator(200, 1);
    auto tr = truth_for(200, 1);
    // direct counting oracle: 20 active, 10 flagged
    for (int k = 0; k < 20; ++k) {
      tr.legit(k, 0) = 1;
      ind.gamma(k, 0) = (k % 2) ? 1 : 0;
    }
    const auto r = false_alarm_rate(ind, tr);
    CHECK(r.paper == doctest::Approx(10.0 / 200.0));
    CHECK(r.conditional == doctest::Approx(0.5));
    CHECK(r.events == 10);
    CHECK(r.opportunities == 20);
  }
}

TEST_CASE("misdetection rate") {
  SUBCASE("adversary never passes") {
    auto ind = indicator(5, 3);
    auto tr = truth_for(5, 3);
    for (int j = 0; j < 3; ++j) tr.adversary.push_back({j, 2});
    const auto r = misdetection_rate(ind, tr);
    CHECK(r.paper == 0.0);
    CHECK(r.conditional == 0.0);
  }
  SUBCASE("always-passing adversary, one per slot, K=200, J=7") {
    auto ind = indicator(200, 7);
    auto tr = truth_for(200, 7);
    for (int j = 0; j < 7; ++j) {
      tr.adversary.push_back({j, 5});
      ind.gamma(5, j) = 1;
    }
    const auto r = misdetection_rate(ind, tr);
    CHECK(r.paper == doctest::Approx(7.0 / 200.0));
    CHECK(r.conditional == doctest::Approx(1.0));
  }
  SUBCASE("no adversary present") {
    auto ind = indicator(5, 3);
    auto tr = truth_for(5, 3);
    const auto r = misdetection_rate(ind, tr);
    CHECK(r.paper == 0.0);
    CHECK(r.opportunities == 0);
  }
}

TEST_CASE("collision counting") {
  SUBCASE("distinct entries collide with nobody") {
    SlotUsage u;
    u.used = {{0, {1, 1}}, {1, {1, -1}}, {2, {-3, 1}}};
    CHECK(colliding_count(u) == 0);
  }
  SUBCASE("a constructed identical pair counts both devices") {
    SlotUsage u;
    u.used = {{0, {1, 1}}, {1, {1, 1}}, {2, {-3, 1}}};
    CHECK(colliding_count(u) == 2);
  }
  SUBCASE("rate averages per slot and normalizes by K") {
    SlotUsage a, b;
    a.used = {{0, {1, 1}}, {1, {1, 1}}};  // 2 colliding
    b.used = {{0, {1, 1}}, {1, {1, -1}}};  // none
    CHECK(collision_rate({a, b}, 10) == doctest::Approx(0.1));
  }
}

TEST_CASE("rates are invariant to device relabeling") {
  RngStream rng(66);
  const int K = 12, J = 5;
  auto ind = indicator(K, J);
  auto tr = truth_for(K, J);
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < J; ++j) {
      tr.legit(k, j) = rng.below(2) ? 1 : 0;
      ind.gamma(k, j) = tr.legit(k, j) && rng.below(4) ? 1 : 0;
    }
  for (int j = 0; j < J; ++j)
    tr.adversary.push_back({j, static_cast<int>(rng.below(K))});
  for (auto& ev : tr.adversary)
    ind.gamma(ev.claimed, ev.slot) |= rng.below(2);

  std::vector<int> perm(K);
  for (int i = 0; i < K; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), std::mt19937{7});

  auto ind2 = indicator(K, J);
  auto tr2 = truth_for(K, J);
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < J; ++j) {
      tr2.legit(perm[k], j) = tr.legit(k, j);
      ind2.gamma(perm[k], j) = ind.gamma(k, j);
    }
  for (auto ev : tr.adversary) tr2.adversary.push_back({ev.slot, perm[ev.claimed]});

  const auto fa1 = false_alarm_rate(ind, tr);
  const auto fa2 = false_alarm_rate(ind2, tr2);
  CHECK(fa1.paper == fa2.paper);
  CHECK(fa1.conditional == fa2.conditional);
  const auto md1 = misdetection_rate(ind, tr);
  const auto md2 = misdetection_rate(ind2, tr2);
  CHECK(md1.paper == md2.paper);
  CHECK(md1.conditional == md2.conditional);
}

TEST_CASE("entropy in bits") {
  CHECK(entropy_bits({0.5}) == 1.0);
  CHECK(entropy_bits({0.0}) == 0.0);
  CHECK(entropy_bits({1.0}) == 0.0);
  CHECK(entropy_bits({0.25}) == doctest::Approx(0.811278).epsilon(1e-6));
  CHECK(entropy_bits({0.5, 0.5, 0.5}) == doctest::Approx(3.0));

  SUBCASE("symmetric around one half") {
    RngStream rng(3);
    for (int i = 0; i < 50; ++i) {
      const double p = rng.u01();
      CHECK(std::abs(entropy_bits({p}) - entropy_bits({1.0 - p})) <= 1e-12);
    }
  }
  SUBCASE("less biased bits carry strictly more entropy") {
    RngStream rng(4);
    for (int i = 0; i < 100; ++i) {
      const double p1 = rng.u01(), p2 = rng.u01();
      if (std::abs(p1 - 0.5) < std::abs(p2 - 0.5))
        CHECK(entropy_bits({p1}) > entropy_bits({p2}));
    }
  }
  SUBCASE("out-of-range probabilities are rejected") {
    CHECK_THROWS_AS(entropy_bits({1.5}), OutOfRangeProbability);
    CHECK_THROWS_AS(entropy_bits({-0.1}), OutOfRangeProbability);
  }
}

TEST_CASE("key space table") {
  const std::pair<int, std::pair<std::uint64_t, std::uint64_t>> rows[] = {
      {9, {512, 8192}},
      {11, {2048, 32768}},
      {13, {8192, 131072}},
      {15, {32768, 524288}},
      {17, {131072, 2097152}},
  };
  for (const auto& [r, expect] : rows) {
    const auto phys = key_space(r, KeyScheme::physical);
    const auto prop = key_space(r, KeyScheme::proposed);
    CHECK(phys.value == expect.first);
    CHECK(prop.value == expect.second);
    CHECK_FALSE(phys.extrapolated);
    CHECK_FALSE(prop.extrapolated);
  }
  SUBCASE("constant ratio of 16 for any length") {
    for (int r = 1; r <= 30; ++r)
      CHECK(key_space(r, KeyScheme::proposed).value ==
            16 * key_space(r, KeyScheme::physical).value);
  }
  SUBCASE("lengths outside the published table are flagged") {
    CHECK(key_space(1, KeyScheme::proposed).extrapolated);
    CHECK(key_space(1, KeyScheme::physical).value == 2);
    CHECK(key_space(1, KeyScheme::proposed).value == 32);
    CHECK(key_space(10, KeyScheme::physical).extrapolated);
  }
}

TEST_CASE("cost report") {
  SUBCASE("zero authentications produce an empty report") {
    const auto r = cost_report(CostCounters{});
    CHECK(r.empty);
    CHECK(r.proposed_per_auth == 0.0);
  }
  SUBCASE("per-authentication amortization") {
    CostCounters c;
    c.auth_events = 10;
    c.bit_comparisons = 10;
    c.entry_comparisons = 1000;
    c.baseline_auth_events = 10;
    c.threshold_steps = 4000;
    const auto r = cost_report(c);
    CHECK_FALSE(r.empty);
    CHECK(r.proposed_per_auth == doctest::Approx(101.0));
    CHECK(r.baseline_per_auth == doctest::Approx(400.0));
  }
}

TEST_CASE("counter merging is associative on the totals") {
  CostCounters a, b;
  a.bit_comparisons = 3;
  a.entry_comparisons = 7;
  b.complex_mults = 2;
  b.auth_events = 5;
  CostCounters ab = a;
  ab += b;
  CostCounters ba = b;
  ba += a;
  CHECK(ab.proposed_total() == ba.proposed_total());
  CHECK(ab.auth_events == ba.auth_events);
}
