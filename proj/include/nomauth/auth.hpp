#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "nomauth/counters.hpp"
#include "nomauth/detect.hpp"
#include "nomauth/lfsr.hpp"

namespace nomauth {

enum class AuthReason : std::uint8_t {
  Pass,
  SlotMismatch,
  SequenceMismatch,
  NotChecked,
};

const char* auth_reason_name(AuthReason r);

// K x J verdict matrix Gamma with per-check provenance.
// gamma(k, j) == 1 exactly when reasons(k, j) == Pass.
struct AuthIndicator {
  Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> gamma;
  std::vector<AuthReason> reasons;  // row-major K x J

  AuthIndicator() = default;
  AuthIndicator(int k_devices, int slots)
      : gamma(Eigen::Matrix<std::uint8_t, Eigen::Dynamic,
                            Eigen::Dynamic>::Zero(k_devices, slots)),
        reasons(static_cast<std::size_t>(k_devices) *
                    static_cast<std::size_t>(slots),
                AuthReason::NotChecked) {}

  AuthReason& reason(int k, int j) {
    return reasons[static_cast<std::size_t>(k) *
                       static_cast<std::size_t>(gamma.cols()) +
                   static_cast<std::size_t>(j)];
  }
  AuthReason reason(int k, int j) const {
    return reasons[static_cast<std::size_t>(k) *
                       static_cast<std::size_t>(gamma.cols()) +
                   static_cast<std::size_t>(j)];
  }
};

struct CheckOutcome {
  bool pass = false;
  AuthReason reason = AuthReason::NotChecked;
};

constexpr double kSequenceTol = 1e-6;

// Two-step check for a single piece of transmit evidence.
// Step 1 (access time slot): evidence in a slot whose expected schedule bit
// is 0 fails immediately and the sequence is never compared.
// Step 2 (spreading sequence): the extracted column must match the expected
// sequence entrywise within `tol` (relative to max(|expected|, 1)) on the
// non-erased entries. A column that is mostly erasures fails conservatively.
CheckOutcome check_transmission(
    const Eigen::Ref<const Eigen::VectorXcd>& extracted_col,
    const Eigen::Ref<const Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1>>&
        erased_col,
    const Eigen::Ref<const Eigen::VectorXcd>& expected_seq,
    std::uint8_t schedule_bit, double tol, CostCounters& counters);

// Per-device expected sequence provider for a given window position.
using ExpectedSeqFn = std::function<Eigen::VectorXcd(int device)>;

// Whole-slot verdict column (Algorithm lines 4-19): devices with transmit
// evidence run the two-step check, everyone else records NotChecked. `l` is
// the position inside the current schedule window; past-the-window calls are
// the caller's bug (refresh first), hence WindowExhausted.
std::vector<CheckOutcome> authenticate_slot(
    const Extracted& extracted, const std::vector<AccessSchedule>& schedules,
    const ExpectedSeqFn& expected, const std::vector<bool>& evidence, int l,
    double tol, CostCounters& counters);

// x_tilde = x_hat (.) gamma: zero out symbol estimates of rejected devices.
Eigen::VectorXcd gate_data(
    const Eigen::VectorXcd& x_hat,
    const Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1>& gamma_col);

}  // namespace nomauth
