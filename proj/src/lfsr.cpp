#include "nomauth/lfsr.hpp"

#include <array>

#include "nomauth/errors.hpp"

namespace nomauth {

MonicPolynomial MonicPolynomial::from_string(const std::string& ascending_bits) {
  MonicPolynomial p;
  p.coeffs = parse_bits(ascending_bits);
  p.degree = static_cast<int>(p.coeffs.size()) - 1;
  p.validate();
  return p;
}

void MonicPolynomial::validate() const {
  if (degree < 1) throw ValidationError("polynomial degree must be >= 1");
  if (coeffs.size() != static_cast<std::size_t>(degree) + 1)
    throw ValidationError("polynomial needs exactly degree+1 coefficients");
  if (coeffs.front() != 1 || coeffs.back() != 1)
    throw ValidationError("polynomial requires C_0 = 1 and C_mu = 1");
}

LfsrState lfsr_init(const Bits& seed_bits, const MonicPolynomial& poly) {
  poly.validate();
  if (seed_bits.empty()) throw EmptySeed("seed bit vector is empty");

  const std::size_t mu = static_cast<std::size_t>(poly.degree);
  Bits state(mu, 0);
  for (std::size_t pos = 0; pos < seed_bits.size(); pos += mu) {
    for (std::size_t i = 0; i < mu; ++i) {
      const std::size_t idx = pos + i;
      if (idx < seed_bits.size()) state[i] ^= seed_bits[idx];
    }
  }
  if (all_zero(state))
    throw AllZeroSeed("seed folds to the all-zero register state");
  return LfsrState{std::move(state)};
}

namespace {

inline void clock_once(Bits& reg, const MonicPolynomial& poly,
                       std::uint8_t& out) {
  const std::size_t mu = reg.size();
  out = reg[mu - 1];
  std::uint8_t fb = 0;
  for (std::size_t i = 1; i <= mu; ++i) {
    if (poly.coeffs[i]) fb ^= reg[i - 1];
  }
  for (std::size_t i = mu - 1; i >= 1; --i) reg[i] = reg[i - 1];
  reg[0] = fb;
}

}  // namespace

Bits generate_bits(const LfsrState& state, const MonicPolynomial& poly,
                   std::size_t count) {
  poly.validate();
  if (state.bits.size() != static_cast<std::size_t>(poly.degree))
    throw ValidationError("state width does not match polynomial degree");
  if (all_zero(state.bits))
    throw ValidationError("all-zero register state is forbidden");
  if (count < 1) throw ValidationError("bit count must be >= 1");

  Bits reg = state.bits;
  Bits out(count);
  for (std::size_t t = 0; t < count; ++t) clock_once(reg, poly, out[t]);
  return out;
}

std::uint64_t measure_period(const MonicPolynomial& poly) {
  poly.validate();
  const std::size_t mu = static_cast<std::size_t>(poly.degree);
  Bits reg(mu, 0);
  reg[mu - 1] = 1;
  const Bits start = reg;
  const std::uint64_t cap = std::uint64_t{1} << mu;
  std::uint8_t dump;
  for (std::uint64_t t = 1; t <= cap; ++t) {
    clock_once(reg, poly, dump);
    if (reg == start) return t;
  }
  return cap;  // never returned to the start state
}

std::optional<bool> is_primitive(const MonicPolynomial& poly, int max_degree) {
  if (poly.degree > max_degree) return std::nullopt;
  const std::uint64_t full = (std::uint64_t{1} << poly.degree) - 1;
  return measure_period(poly) == full;
}

MonicPolynomial default_polynomial(int degree) {
  // Ascending coefficients of one primitive polynomial per degree.
  static const std::array<const char*, 17> table = {
      "", "",
      "111",                // 1 + x + x^2
      "1101",               // 1 + x + x^3
      "11001",              // 1 + x + x^4
      "101001",             // 1 + x^2 + x^5
      "1100001",            // 1 + x + x^6
      "10010001",           // 1 + x^3 + x^7
      "101110001",          // 1 + x^2 + x^3 + x^4 + x^8
      "1000100001",         // 1 + x^4 + x^9
      "10010000001",        // 1 + x^3 + x^10
      "101000000001",       // 1 + x^2 + x^11
      "1100101000001",      // 1 + x + x^4 + x^6 + x^12
      "11011000000001",     // 1 + x + x^3 + x^4 + x^13
      "110000100010001",    // 1 + x + x^6 + x^10 + x^14
      "1100000000000001",   // 1 + x + x^15
      "11010000000010001",  // 1 + x + x^3 + x^12 + x^16
  };
  if (degree < 2 || degree > 16)
    throw ValidationError("no default polynomial for degree " +
                          std::to_string(degree));
  return MonicPolynomial::from_string(table[static_cast<std::size_t>(degree)]);
}

}  // namespace nomauth
