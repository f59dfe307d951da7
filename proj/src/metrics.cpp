#include "nomauth/metrics.hpp"

#include <cmath>

#include "nomauth/errors.hpp"

namespace nomauth {

double ci95_halfwidth(std::uint64_t events, std::uint64_t opportunities) {
  if (opportunities == 0) return 0.0;
  const double n = static_cast<double>(opportunities);
  const double p = static_cast<double>(events) / n;
  return 1.96 * std::sqrt(p * (1.0 - p) / n);
}

RatePair false_alarm_rate(const AuthIndicator& gamma,
                          const ActivityTruth& truth) {
  if (gamma.gamma.rows() != truth.legit.rows() ||
      gamma.gamma.cols() != truth.legit.cols())
    throw DimensionMismatch("gamma and truth shapes disagree");

  RatePair r;
  double paper_sum = 0.0;
  for (int j = 0; j < truth.slots; ++j) {
    std::uint64_t flagged = 0;
    for (int k = 0; k < truth.k_devices; ++k) {
      if (!truth.legit(k, j)) continue;
      r.opportunities += 1;
      if (gamma.gamma(k, j) == 0) {
        r.events += 1;
        ++flagged;
      }
    }
    paper_sum += static_cast<double>(flagged) /
                 static_cast<double>(truth.k_devices);
  }
  r.paper = truth.slots ? paper_sum / static_cast<double>(truth.slots) : 0.0;
  r.conditional = r.opportunities
                      ? static_cast<double>(r.events) /
                            static_cast<double>(r.opportunities)
                      : 0.0;
  r.ci95 = ci95_halfwidth(r.events, r.opportunities);
  return r;
}

RatePair misdetection_rate(const AuthIndicator& gamma,
                           const ActivityTruth& truth) {
  RatePair r;
  for (const auto& ev : truth.adversary) {
    r.opportunities += 1;
    if (gamma.gamma(ev.claimed, ev.slot)) r.events += 1;
  }
  const double trials = static_cast<double>(std::max(1, truth.trials));
  r.paper = static_cast<double>(r.events) /
            (static_cast<double>(truth.k_devices) * trials);
  r.conditional = r.opportunities
                      ? static_cast<double>(r.events) /
                            static_cast<double>(r.opportunities)
                      : 0.0;
  r.ci95 = ci95_halfwidth(r.events, r.opportunities);
  return r;
}

std::size_t colliding_count(const SlotUsage& usage) {
  const std::size_t m = usage.used.size();
  std::size_t n = 0;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b) continue;
      if (usage.used[a].second == usage.used[b].second) {
        ++n;
        break;
      }
    }
  }
  return n;
}

double collision_rate(const std::vector<SlotUsage>& usages, int k_devices) {
  if (usages.empty() || k_devices < 1) return 0.0;
  double sum = 0.0;
  for (const auto& u : usages)
    sum += static_cast<double>(colliding_count(u)) /
           static_cast<double>(k_devices);
  return sum / static_cast<double>(usages.size());
}

double entropy_bits(const std::vector<double>& p) {
  double total = 0.0;
  for (double v : p) {
    if (!(v >= 0.0 && v <= 1.0))
      throw OutOfRangeProbability("probability " + std::to_string(v) +
                                  " outside [0, 1]");
    auto term = [](double q) {
      return q > 0.0 ? -q * std::log2(q) : 0.0;
    };
    total += term(v) + term(1.0 - v);
  }
  return total;
}

KeySpace key_space(int key_length, KeyScheme scheme) {
  if (key_length < 1 || key_length > 58)
    throw ValidationError("key length must be in [1, 58]");
  KeySpace ks;
  const std::uint64_t base = std::uint64_t{1} << key_length;
  ks.value = scheme == KeyScheme::physical ? base : 16 * base;
  ks.extrapolated = !(key_length == 9 || key_length == 11 ||
                      key_length == 13 || key_length == 15 ||
                      key_length == 17);
  return ks;
}

CostReport cost_report(const CostCounters& c) {
  CostReport r;
  r.auth_events = c.auth_events;
  r.baseline_auth_events = c.baseline_auth_events;
  r.proposed_total = c.proposed_total();
  r.baseline_total = c.baseline_total();
  if (c.auth_events == 0 && c.baseline_auth_events == 0) {
    r.empty = true;
    return r;
  }
  if (c.auth_events)
    r.proposed_per_auth = static_cast<double>(r.proposed_total) /
                          static_cast<double>(c.auth_events);
  if (c.baseline_auth_events)
    r.baseline_per_auth = static_cast<double>(r.baseline_total) /
                          static_cast<double>(c.baseline_auth_events);
  return r;
}

}  // namespace nomauth
