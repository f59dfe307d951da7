#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nomauth/errors.hpp"

namespace nomauth {

// Bit vectors are plain byte vectors holding 0/1 values, lowest index first.
using Bits = std::vector<std::uint8_t>;

inline Bits parse_bits(const std::string& s) {
  Bits out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '0' || c == '1') {
      out.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (c == ' ' || c == '_') {
      continue;
    } else {
      throw ValidationError("bit string may contain only 0/1, got '" +
                            std::string(1, c) + "'");
    }
  }
  return out;
}

inline std::string bits_to_string(const Bits& b) {
  std::string s;
  s.reserve(b.size());
  for (auto v : b) s.push_back(v ? '1' : '0');
  return s;
}

inline bool all_zero(const Bits& b) {
  for (auto v : b)
    if (v) return false;
  return true;
}

inline std::size_t count_ones(const Bits& b) {
  std::size_t n = 0;
  for (auto v : b) n += v;
  return n;
}

// Interprets the bits most-significant-first, as produced by binarize_seed.
inline std::uint64_t bits_to_u64(const Bits& b) {
  std::uint64_t x = 0;
  for (auto v : b) x = (x << 1) | (v ? 1u : 0u);
  return x;
}

}  // namespace nomauth
