#pragma once

#include <functional>
#include <string>
#include <vector>

namespace nomauth {

// One acceptance criterion outcome. `detail` carries the measured numbers so
// a failing line is diagnosable without rerunning.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  // Quick mode shrinks the Monte Carlo sizes for a smoke run; the shipped
  // tolerances are calibrated for the full sizes, so only a full run is the
  // acceptance gate.
  bool quick = false;
  int workers = 0;  // 0 = hardware concurrency
};

using CriterionCallback = std::function<void(const CriterionResult&)>;

// Runs all acceptance criteria in order, invoking the callback as each one
// finishes. Returns the full list.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& options, const CriterionCallback& on_done = {});

}  // namespace nomauth
