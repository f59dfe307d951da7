#include <doctest.h>

#include <limits>

#include "nomauth/campaign.hpp"
#include "nomauth/emit.hpp"

using namespace nomauth;

namespace {

SimConfig desk_config() {
  SimConfig cfg;
  cfg.devices = 30;
  cfg.resources = 16;
  cfg.active = 6;
  cfg.slots = 7;
  cfg.schedule_len = 7;
  cfg.trials = 40;
  cfg.snr_db = {10.0};
  cfg.adversaries = 0;
  cfg.workers = 1;
  return cfg;
}

std::string csv_of(const CampaignResult& r) {
  ResultSet set;
  set.campaigns.push_back(r);
  return to_csv(set);
}

}  // namespace

TEST_CASE("soundness: no adversary, perfect CSI, zero false alarms") {
  auto cfg = desk_config();
  cfg.snr_db = {std::numeric_limits<double>::infinity(), 0.0};
  cfg.trials = 25;
  const auto res = run_campaign(cfg);
  REQUIRE(res.points.size() == 2);
  for (const auto& p : res.points) {
    CHECK(p.fa.events == 0);
    CHECK(p.fa.paper == 0.0);
    CHECK(p.fa.conditional == 0.0);
    CHECK(p.md.opportunities == 0);
    CHECK(p.no_adversary);
    CHECK(p.trials_skipped == 0);
    CHECK(p.fa.opportunities > 0);  // things actually transmitted
  }
}

TEST_CASE("reproducibility and worker independence") {
  auto cfg = desk_config();
  cfg.adversaries = 1;
  cfg.strategy = "random";
  cfg.baseline_enabled = true;
  cfg.trials = 24;

  const auto csv1 = csv_of(run_campaign(cfg));
  const auto csv2 = csv_of(run_campaign(cfg));
  CHECK(csv1 == csv2);

  cfg.workers = 4;
  const auto csv4 = csv_of(run_campaign(cfg));
  CHECK(csv1 == csv4);

  SUBCASE("different seeds move the numbers") {
    cfg.master_seed = 999;
    CHECK(csv_of(run_campaign(cfg)) != csv1);
  }
}

TEST_CASE("a campaign splits into trial ranges and merges exactly") {
  auto cfg = desk_config();
  cfg.adversaries = 1;
  cfg.trials = 30;
  const auto whole = run_campaign(cfg);

  auto first = cfg;
  first.trials = 18;
  auto second = cfg;
  second.trials = 12;
  second.trial_offset = 18;
  const auto a = run_campaign(first);
  const auto b = run_campaign(second);

  const auto& w = whole.points[0];
  CHECK(w.fa.events == a.points[0].fa.events + b.points[0].fa.events);
  CHECK(w.fa.opportunities ==
        a.points[0].fa.opportunities + b.points[0].fa.opportunities);
  CHECK(w.md.events == a.points[0].md.events + b.points[0].md.events);
  CHECK(w.collision_events ==
        a.points[0].collision_events + b.points[0].collision_events);
  CHECK(w.cost.proposed_total() ==
        a.points[0].cost.proposed_total() + b.points[0].cost.proposed_total());
}

TEST_CASE("refresh keeps windows synchronized across many windows") {
  auto cfg = desk_config();
  cfg.slots = 28;  // four windows of L = 7
  cfg.trials = 10;
  cfg.snr_db = {std::numeric_limits<double>::infinity()};
  const auto res = run_campaign(cfg);
  const auto& p = res.points[0];
  // every transmission in every window authenticates: refresh stayed in sync
  CHECK(p.fa.events == 0);
  CHECK(p.fa.opportunities > 0);
  CHECK(p.trials_skipped + p.trials_done == 10);
}

TEST_CASE("always-on adversary against a known schedule complement") {
  auto cfg = desk_config();
  cfg.adversaries = 1;
  cfg.strategy = "always";
  cfg.adversary_knowledge = "own";
  cfg.trials = 30;
  cfg.snr_db = {std::numeric_limits<double>::infinity()};
  const auto res = run_campaign(cfg);
  const auto& p = res.points[0];
  // one transmission per slot, none authenticated (wrong codebook)
  CHECK(p.md.opportunities == p.slot_instances);
  CHECK(p.md.events == 0);
}

TEST_CASE("replay adversary passes inside the scanned window only") {
  auto cfg = desk_config();
  cfg.devices = 10;
  cfg.resources = 8;
  cfg.active = 10;  // victim transmits whenever scheduled
  cfg.adversaries = 1;
  cfg.strategy = "replay";
  cfg.slots = 14;  // window 0 scan, window 1 replay
  cfg.trials = 60;
  cfg.snr_db = {std::numeric_limits<double>::infinity()};
  const auto res = run_campaign(cfg);
  const auto& p = res.points[0];
  CHECK(p.md.opportunities > 0);  // it did replay in window 1
  // most replays die at the refreshed schedule/pool; enumeration bounds the
  // survival chance by roughly 1/28 per trial
  CHECK(p.md.conditional < 0.5);
}

TEST_CASE("configuration knobs run end to end") {
  SUBCASE("lite seed variant performs no squaring anywhere") {
    auto cfg = desk_config();
    cfg.seed_variant = "lite";
    cfg.slots = 21;  // force refreshes
    cfg.trials = 8;
    const auto res = run_campaign(cfg);
    CHECK(res.points[0].fa.events == 0);
    CHECK(res.points[0].cost.complex_mults == 0);

    cfg.seed_variant = "full";
    const auto full = run_campaign(cfg);
    CHECK(full.points[0].cost.complex_mults > 0);
  }
  SUBCASE("correlated adversary channels do not help against the two-step check") {
    auto cfg = desk_config();
    cfg.adversaries = 1;
    cfg.adversary_channel_corr = 0.9;
    cfg.adversary_knowledge = "own";
    cfg.trials = 20;
    cfg.snr_db = {std::numeric_limits<double>::infinity()};
    const auto res = run_campaign(cfg);
    CHECK(res.points[0].fa.events == 0);
    CHECK(res.points[0].md.events == 0);  // sequence check still decides
  }
  SUBCASE("CSI estimation noise breaks the exact-extraction guarantee") {
    auto cfg = desk_config();
    cfg.csi_noise_var = 0.5;  // large against path-loss-scaled channels
    cfg.trials = 15;
    cfg.snr_db = {20.0};
    const auto noisy = run_campaign(cfg);
    CHECK(noisy.points[0].fa.events > 0);

    cfg.csi_noise_var = 0.0;
    const auto clean = run_campaign(cfg);
    CHECK(clean.points[0].fa.events == 0);
  }
}

TEST_CASE("verdict export carries one row per check") {
  auto cfg = desk_config();
  cfg.trials = 3;
  cfg.adversaries = 1;
  cfg.verdicts_path = "unused.csv";  // collection trigger; file written later
  const auto res = run_campaign(cfg);
  CHECK_FALSE(res.verdicts.empty());
  std::uint64_t checks = 0;
  for (const auto& p : res.points)
    checks += p.fa.opportunities + p.md.opportunities;
  CHECK(res.verdicts.size() == checks);
  for (const auto& v : res.verdicts) {
    CHECK(v.device >= 0);
    CHECK(v.device < cfg.devices);
    CHECK((v.gamma == 0 || v.gamma == 1));
  }
}
