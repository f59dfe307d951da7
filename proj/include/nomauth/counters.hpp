#pragma once

#include <cstdint>

namespace nomauth {

// Operation-cost instrumentation. Counters merge by addition, so per-trial
// instances can be combined in any grouping with the same totals.
struct CostCounters {
  std::uint64_t bit_comparisons = 0;      // schedule-bit checks
  std::uint64_t entry_comparisons = 0;    // spreading-sequence entry checks
  std::uint64_t complex_mults = 0;        // seed squaring etc.
  std::uint64_t threshold_steps = 0;      // baseline grid-search comparisons
  std::uint64_t statistic_ops = 0;        // baseline statistic evaluations
  std::uint64_t auth_events = 0;          // proposed-scheme authentications
  std::uint64_t baseline_auth_events = 0;

  std::uint64_t proposed_total() const {
    return bit_comparisons + entry_comparisons + complex_mults;
  }
  std::uint64_t baseline_total() const {
    return threshold_steps + statistic_ops;
  }

  CostCounters& operator+=(const CostCounters& o) {
    bit_comparisons += o.bit_comparisons;
    entry_comparisons += o.entry_comparisons;
    complex_mults += o.complex_mults;
    threshold_steps += o.threshold_steps;
    statistic_ops += o.statistic_ops;
    auth_events += o.auth_events;
    baseline_auth_events += o.baseline_auth_events;
    return *this;
  }
};

}  // namespace nomauth
