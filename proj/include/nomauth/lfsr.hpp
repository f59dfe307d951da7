#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "nomauth/bits.hpp"

namespace nomauth {

// Generating polynomial C_0 + C_1 x + ... + C_mu x^mu with C_0 = C_mu = 1,
// stored as the ascending coefficient vector ("1101" is 1 + x + x^3).
struct MonicPolynomial {
  int degree = 0;       // mu
  Bits coeffs;          // size mu + 1

  static MonicPolynomial from_string(const std::string& ascending_bits);
  void validate() const;
};

// Fibonacci register contents b_1..b_mu. The all-zero state is absorbing and
// therefore rejected everywhere.
struct LfsrState {
  Bits bits;
};

// Pseudo-random transmission schedule for one device: l_1..l_L.
struct AccessSchedule {
  Bits bits;
  int device_id = 0;
};

// Folds an arbitrary-width seed into a mu-bit register state: consecutive
// mu-bit chunks are XOR-ed together, the final chunk zero-padded on the
// right. Throws EmptySeed / AllZeroSeed.
LfsrState lfsr_init(const Bits& seed_bits, const MonicPolynomial& poly);

// Clocks the register `count` times. The output bit per clock is the last
// register bit b_mu; the feedback into b_1 is the XOR of b_i over tap
// positions i with C_i = 1 (1 <= i <= mu). Pure: equal inputs give
// bit-identical output, which is what lets the AP and a device regenerate
// the same schedule independently.
Bits generate_bits(const LfsrState& state, const MonicPolynomial& poly,
                   std::size_t count);

// Cycle length of the state orbit starting from 0...01, capped at 2^mu.
std::uint64_t measure_period(const MonicPolynomial& poly);

// Primitivity decided by period measurement; nullopt when mu > max_degree
// (the check is exponential in mu).
std::optional<bool> is_primitive(const MonicPolynomial& poly,
                                 int max_degree = 16);

// Ships a known-primitive polynomial for each degree in [2, 16].
MonicPolynomial default_polynomial(int degree);

}  // namespace nomauth
