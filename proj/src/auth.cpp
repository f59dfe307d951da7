#include "nomauth/auth.hpp"

#include "nomauth/codebook.hpp"
#include "nomauth/errors.hpp"

namespace nomauth {

const char* auth_reason_name(AuthReason r) {
  switch (r) {
    case AuthReason::Pass: return "Pass";
    case AuthReason::SlotMismatch: return "SlotMismatch";
    case AuthReason::SequenceMismatch: return "SequenceMismatch";
    case AuthReason::NotChecked: return "NotChecked";
  }
  return "?";
}

CheckOutcome check_transmission(
    const Eigen::Ref<const Eigen::VectorXcd>& extracted_col,
    const Eigen::Ref<const Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1>>&
        erased_col,
    const Eigen::Ref<const Eigen::VectorXcd>& expected_seq,
    std::uint8_t schedule_bit, double tol, CostCounters& counters) {
  counters.auth_events += 1;

  // Step 1: access time slot check.
  counters.bit_comparisons += 1;
  if (schedule_bit == 0) return {false, AuthReason::SlotMismatch};

  // Step 2: spreading sequence check.
  const Eigen::Index n = expected_seq.size();
  Eigen::Index erased = 0;
  bool mismatch = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (erased_col(i)) {
      ++erased;
      continue;
    }
    counters.entry_comparisons += 1;
    const double scale = std::max(std::abs(expected_seq(i)), 1.0);
    if (std::abs(extracted_col(i) - expected_seq(i)) > tol * scale)
      mismatch = true;
  }
  if (mismatch || 2 * erased > n)  // mostly erased: no usable evidence
    return {false, AuthReason::SequenceMismatch};
  return {true, AuthReason::Pass};
}

std::vector<CheckOutcome> authenticate_slot(
    const Extracted& extracted, const std::vector<AccessSchedule>& schedules,
    const ExpectedSeqFn& expected, const std::vector<bool>& evidence, int l,
    double tol, CostCounters& counters) {
  const int k_devices = static_cast<int>(extracted.values.cols());
  if (static_cast<int>(schedules.size()) != k_devices ||
      static_cast<int>(evidence.size()) != k_devices)
    throw DimensionMismatch("per-device inputs disagree in K");

  std::vector<CheckOutcome> out(static_cast<std::size_t>(k_devices));
  for (int k = 0; k < k_devices; ++k) {
    const auto& sched = schedules[static_cast<std::size_t>(k)];
    if (l < 0 || static_cast<std::size_t>(l) >= sched.bits.size())
      throw WindowExhausted("window position " + std::to_string(l) +
                            " outside schedule of length " +
                            std::to_string(sched.bits.size()));
    if (!evidence[static_cast<std::size_t>(k)]) {
      out[static_cast<std::size_t>(k)] = {false, AuthReason::NotChecked};
      continue;
    }
    out[static_cast<std::size_t>(k)] = check_transmission(
        extracted.values.col(k), extracted.erased.col(k), expected(k),
        sched.bits[static_cast<std::size_t>(l)], tol, counters);
  }
  return out;
}

Eigen::VectorXcd gate_data(
    const Eigen::VectorXcd& x_hat,
    const Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1>& gamma_col) {
  if (x_hat.size() != gamma_col.size())
    throw DimensionMismatch("gate inputs differ in length");
  Eigen::VectorXcd out(x_hat.size());
  for (Eigen::Index k = 0; k < x_hat.size(); ++k)
    out(k) = gamma_col(k) ? x_hat(k) : cdouble{0.0, 0.0};
  return out;
}

}  // namespace nomauth
