#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "nomauth/codebook.hpp"
#include "nomauth/rng.hpp"

namespace nomauth {

// Gray-mapped unit-energy QPSK: 00 -> (+1+i)/sqrt2, 01 -> (-1+i)/sqrt2,
// 11 -> (-1-i)/sqrt2, 10 -> (+1-i)/sqrt2.
cdouble modulate(std::uint8_t b0, std::uint8_t b1);

// 128.1 + 37.6 log10(d), d in km. Throws NonPositiveDistance.
double path_loss_db(double d_km);

// Temporally correlated Rayleigh fading for all K device columns. Each entry
// follows h(j) = zeta h(j-1) + sqrt((1-zeta^2) sigma_k^2) u with u ~ CN(0,1);
// sigma_k folds in the path loss once, at initialization, so the process is
// stationary at the per-device receive level.
struct ChannelState {
  Eigen::MatrixXcd H;        // N x K
  double zeta = 0.9;
  Eigen::VectorXd amp;       // per-device stationary std dev (path loss applied)
  Eigen::VectorXd distances; // km
};

ChannelState init_channel(int n_resources, const Eigen::VectorXd& distances_km,
                          double zeta, double subpath_var, RngStream& rng);

// Advances every entry by one slot.
void evolve_channel(ChannelState& state, RngStream& rng);

// Advances a single column by `gap` slots in one exact jump:
// h <- zeta^gap h + sqrt((1 - zeta^2gap) sigma^2) u. Same law as `gap`
// single steps; used by the campaign engine to skip idle devices.
void evolve_column_gap(ChannelState& state, int device, int gap,
                       RngStream& rng);

// One uplink transmission as the AP can attribute it: a claimed identity,
// the channel it actually traveled through, and the spreading sequence and
// symbol it carried.
struct TransmitRecord {
  int claimed_id = 0;
  Eigen::VectorXcd channel;   // N
  Eigen::VectorXcd sequence;  // N
  cdouble symbol{0.0, 0.0};
  bool adversarial = false;
};

struct SlotFrame {
  int slot_index = 0;
  std::vector<TransmitRecord> records;  // legitimate transmitters first
  Eigen::VectorXcd y;                   // N
  Eigen::MatrixXcd G;                   // N x records, columns h .* c
  double noise_var = 0.0;
};

// y = sum_records (h .* c) x + w. `snr_db` sets the noise variance relative
// to `ref_symbol_energy` (average received symbol energy per subcarrier);
// +inf disables noise but still consumes the same number of rng draws so
// streams stay aligned across SNR points.
SlotFrame synthesize_slot(int slot_index,
                          const std::vector<TransmitRecord>& records,
                          int n_resources, double snr_db,
                          double ref_symbol_energy, RngStream& rng);

}  // namespace nomauth
