#pragma once

#include <string>
#include <vector>

#include "nomauth/auth.hpp"
#include "nomauth/config.hpp"
#include "nomauth/metrics.hpp"

namespace nomauth {

// One authentication check as exported to the verdicts CSV.
struct VerdictRow {
  int trial = 0;
  int slot = 0;
  int device = 0;
  std::uint8_t gamma = 0;
  AuthReason reason = AuthReason::NotChecked;
};

struct CampaignResult {
  SimConfig config;
  std::string campaign_id;
  std::vector<std::string> warnings;
  std::vector<MetricsReport> points;        // one per SNR value
  std::vector<VerdictRow> verdicts;         // filled when requested
};

// Runs the Monte Carlo campaign: for every SNR point, `trials` independent
// trials; within a trial, J slots of draw-activity / evolve-channel /
// plan-adversary / synthesize / detect / extract / authenticate / gate, with
// schedule+seed refresh every L slots. Trial t uses the substream
// mix(master_seed, trial_offset + t), so identical configurations give
// byte-identical reports at any worker count, and a campaign can be split
// into trial ranges and merged without changing any counter.
CampaignResult run_campaign(const SimConfig& cfg);

std::string campaign_id_for(const SimConfig& cfg);

}  // namespace nomauth
