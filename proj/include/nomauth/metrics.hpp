#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "nomauth/auth.hpp"
#include "nomauth/codebook.hpp"
#include "nomauth/counters.hpp"
#include "nomauth/detect.hpp"

namespace nomauth {

// Every rate is reported twice: normalized by the device population K
// (which couples the rate to the cell size), and conditional per
// opportunity, which is what the confidence interval is attached to.
struct RatePair {
  double paper = 0.0;
  double conditional = 0.0;
  std::uint64_t events = 0;
  std::uint64_t opportunities = 0;
  double ci95 = 0.0;
};

// 95% half-width (normal approximation) for an empirical proportion.
double ci95_halfwidth(std::uint64_t events, std::uint64_t opportunities);

// Ground truth for one campaign point, in per-slot resolution.
struct ActivityTruth {
  int k_devices = 0;
  int slots = 0;    // total slot instances (trials * J)
  int trials = 1;
  // legit(k, j) = 1 when legitimate device k transmitted in slot instance j.
  Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> legit;

  struct AdversaryEvent {
    int slot = 0;
    int claimed = 0;
  };
  std::vector<AdversaryEvent> adversary;
};

// rho_fa: legitimate transmitting devices with Gamma = 0. The K-normalized
// variant is the per-slot count over K averaged across slot instances.
RatePair false_alarm_rate(const AuthIndicator& gamma,
                          const ActivityTruth& truth);

// rho_md: adversary transmissions with Gamma = 1. The K-normalized variant
// follows the campaign convention: total passes per trial window, divided by
// K and averaged over trials.
RatePair misdetection_rate(const AuthIndicator& gamma,
                           const ActivityTruth& truth);

// One slot's record of which authenticated devices used which pool entry.
struct SlotUsage {
  std::vector<std::pair<int, cdouble>> used;  // (device, in-use pool entry)
};

// rho_sc: authenticated devices sharing their in-use spreading-pool entry
// with another authenticated device in the same slot, counted per device,
// normalized by K and averaged over slot instances. Entry values within one
// campaign share provenance (one codebook, one scale), so exact complex
// equality is the collision predicate.
double collision_rate(const std::vector<SlotUsage>& usages, int k_devices);

// Number of devices in one slot whose entry value is shared.
std::size_t colliding_count(const SlotUsage& usage);

// Sum over bits of the binary entropy -p log2 p - (1-p) log2 (1-p), with
// 0 log 0 = 0. Throws OutOfRangeProbability.
double entropy_bits(const std::vector<double>& p);

enum class KeyScheme { physical, proposed };

struct KeySpace {
  std::uint64_t value = 0;
  // The proposed-scheme rule (16 * 2^R) is fitted to the five published key
  // lengths {9,11,13,15,17}; anything else is an extrapolation and says so.
  bool extrapolated = false;
};

KeySpace key_space(int key_length, KeyScheme scheme);

struct CostReport {
  bool empty = false;
  std::uint64_t proposed_total = 0;
  std::uint64_t baseline_total = 0;
  std::uint64_t auth_events = 0;
  std::uint64_t baseline_auth_events = 0;
  double proposed_per_auth = 0.0;
  double baseline_per_auth = 0.0;
};

CostReport cost_report(const CostCounters& counters);

// Campaign-level result for one configuration point.
struct MetricsReport {
  double snr_db = 0.0;
  RatePair fa;
  RatePair md;
  bool no_adversary = false;  // md == 0 because nothing attacked
  double rho_sc = 0.0;
  std::uint64_t collision_events = 0;
  std::uint64_t slot_instances = 0;
  CostCounters cost;
  bool baseline_enabled = false;
  RatePair baseline_fa;
  RatePair baseline_md;
  std::uint64_t trials_done = 0;
  std::uint64_t trials_skipped = 0;
  DetectStats detect;
};

}  // namespace nomauth
