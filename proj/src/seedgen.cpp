#include "nomauth/seedgen.hpp"

#include <cmath>

#include "nomauth/errors.hpp"
#include "nomauth/rng.hpp"

namespace nomauth {

Seed derive_seed(const TaggedPool& pool, SeedVariant variant,
                 CostCounters* counters) {
  if (pool.entries.empty())
    throw DegenerateSelection("tagged pool is empty");

  cdouble sum{0.0, 0.0};
  bool any = false;
  for (const auto& e : pool.entries) {
    const std::uint8_t complemented = e.tag ^ 1u;
    if (complemented) {
      sum += e.value;
      any = true;
    }
  }
  if (!any)
    throw DegenerateSelection("no entry survives tag complementation");

  const double theta = std::abs(sum);
  if (theta == 0.0)
    throw DegenerateSelection("surviving entries sum to zero");

  Seed s;
  s.theta = theta;
  s.variant = variant;
  if (variant == SeedVariant::full) {
    s.value = theta * theta;
    if (counters) counters->complex_mults += 1;
  } else {
    s.value = theta;  // squaring skipped by design of the lite variant
  }
  return s;
}

Bits binarize_seed(const Seed& seed, int width) {
  if (width < 1 || width > 62)
    throw ValidationError("seed width must be in [1, 62]");
  if (!(seed.value >= 0.0))
    throw ValidationError("seed value must be nonnegative");

  const double scale =
      static_cast<double>(std::uint64_t{1} << (width / 2));
  const double scaled = seed.value * scale;
  const std::uint64_t max_val = (std::uint64_t{1} << width) - 1;
  std::uint64_t x;
  if (scaled >= static_cast<double>(max_val)) {
    x = max_val;
  } else {
    x = static_cast<std::uint64_t>(std::llround(scaled));
    if (x > max_val) x = max_val;
  }

  Bits out(static_cast<std::size_t>(width));
  for (int i = 0; i < width; ++i)
    out[static_cast<std::size_t>(i)] =
        static_cast<std::uint8_t>((x >> (width - 1 - i)) & 1u);
  return out;
}

int window_rotation(const Bits& seed_bits, int candidates) {
  if (candidates < 1) throw ValidationError("candidates must be >= 1");
  const std::uint64_t h = RngStream::mix(bits_to_u64(seed_bits), 0x526f7461);
  return static_cast<int>(h % static_cast<std::uint64_t>(candidates));
}

RefreshResult refresh_cycle(const TaggedPool& pool, const MonicPolynomial& poly,
                            std::size_t schedule_len, SeedVariant variant,
                            int seed_width, CostCounters* counters) {
  RefreshResult r;
  r.seed = derive_seed(pool, variant, counters);
  r.seed_bits = binarize_seed(r.seed, seed_width);
  const LfsrState state = lfsr_init(r.seed_bits, poly);
  r.schedule.bits = generate_bits(state, poly, schedule_len);
  r.schedule.device_id = pool.device_id;
  return r;
}

}  // namespace nomauth
