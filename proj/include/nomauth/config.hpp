#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nomauth/lfsr.hpp"

namespace nomauth {

// Full campaign configuration. Defaults reproduce the reference setup:
// K = 200 potential devices over N = 100 resources (overloading factor
// 200%), S = 20 active per slot, J = 7 slots, QPSK, SNR swept 0..25 dB,
// 1000 Monte Carlo trials.
struct SimConfig {
  int devices = 200;        // K
  int resources = 100;      // N
  int active = 20;          // S
  int slots = 7;            // J
  int schedule_len = 7;     // L
  std::string poly = "1101";  // ascending coefficients, 1 + x + x^3
  std::vector<double> snr_db = {0, 5, 10, 15, 20, 25};  // inf = noise-free
  int trials = 1000;
  std::uint64_t master_seed = 1;
  double sparsity = 0.1;
  double zeta = 0.9;

  std::string strategy = "random";   // random | always | replay
  int adversaries = 1;
  std::string adversary_knowledge = "own";  // own | column
  double adversary_transmit_prob = 0.5;
  double adversary_channel_corr = 0.0;

  std::string seed_variant = "full";  // full | lite
  int seed_width = 13;
  int candidates = 4;                 // P sequence variants per device
  std::string alphabet = "default";   // default | quad4

  bool baseline_enabled = false;
  int baseline_taps = 4;
  int calibration_size = 200;  // statistics per hypothesis

  double csi_noise_var = 0.0;   // 0 = perfect CSI at the AP
  double sequence_tol = 1e-6;
  double dist_min_km = 0.05;
  double dist_max_km = 1.0;
  double slot_duration_s = 1e-3;  // axis labeling only

  std::string output;            // empty = stdout
  std::string format = "csv";    // csv | json
  std::string verdicts_path;     // per-check CSV dump when set

  int workers = 0;      // 0 = hardware concurrency; never changes results
  int trial_offset = 0; // first trial substream index

  // Derived.
  int mu() const { return polynomial().degree; }
  double overloading_factor() const {
    return 100.0 * static_cast<double>(devices) /
           static_cast<double>(resources);
  }
  MonicPolynomial polynomial() const;
  bool noise_free(double snr) const;

  // Throws ValidationError with field-level messages; returns warnings
  // (currently only non-primitive polynomial notices).
  std::vector<std::string> validate() const;
};

// Reads a JSON config file; unknown keys are rejected so typos surface.
// Values not present keep the caller-provided defaults.
SimConfig load_config(const std::string& path, const SimConfig& defaults = {});

// Parses a comma-separated SNR list; "inf" entries mean noise-free.
std::vector<double> parse_snr_list(const std::string& csv);

std::string config_to_json(const SimConfig& cfg);

}  // namespace nomauth
