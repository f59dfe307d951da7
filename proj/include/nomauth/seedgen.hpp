#pragma once

#include "nomauth/codebook.hpp"
#include "nomauth/counters.hpp"
#include "nomauth/lfsr.hpp"

namespace nomauth {

// The lite variant keeps the preliminary value and skips the squaring step,
// trading key length for one less multiplication per refresh.
enum class SeedVariant { full, lite };

struct Seed {
  double theta = 0.0;  // preliminary seed
  double value = 0.0;  // theta^2 (full) or theta (lite)
  SeedVariant variant = SeedVariant::full;
};

// Shared-seed derivation from a tagged pool:
//   1. take the tags, 2. complement every tag, 3. zero the entries under
//   complemented-tag 0, 4. theta = |sum of the surviving entries|,
//   5. value = theta^2 (full) or theta (lite).
// Runs identically on the AP and device side; no reconciliation exists
// anywhere downstream, so bit-equality here is what the whole scheme
// rests on. Throws DegenerateSelection when nothing survives or the
// surviving sum is exactly zero.
Seed derive_seed(const TaggedPool& pool, SeedVariant variant,
                 CostCounters* counters = nullptr);

// Fixed-point encoding: round(value * 2^(width/2)) clamped to width bits,
// emitted most-significant-first. Saturates instead of failing; a result of
// all zeros surfaces later as AllZeroSeed in lfsr_init.
Bits binarize_seed(const Seed& seed, int width);

struct RefreshResult {
  Seed seed;
  Bits seed_bits;
  AccessSchedule schedule;
};

// Which of the P candidate sequences a window uses: a mixed hash of the seed
// bits, so the selection stays near-uniform even when the binarized seed has
// structured low bits. Shared by the AP and device sides.
int window_rotation(const Bits& seed_bits, int candidates);

// One full refresh: derive -> binarize -> fold into the register -> clock out
// the next L schedule bits. Propagates DegenerateSelection / AllZeroSeed.
RefreshResult refresh_cycle(const TaggedPool& pool, const MonicPolynomial& poly,
                            std::size_t schedule_len, SeedVariant variant,
                            int seed_width, CostCounters* counters = nullptr);

}  // namespace nomauth
