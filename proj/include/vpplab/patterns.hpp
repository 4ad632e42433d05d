#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace vpplab {

// The six test data patterns. Aggressor rows are always filled with the
// bitwise inverse of the victim fill.
struct DataPattern {
  int id;
  uint8_t victim_byte;
  uint8_t aggressor_byte;
  const char* name;
};

inline constexpr std::array<DataPattern, 6> kPatterns = {{
    {0, 0xFF, 0x00, "row_stripe"},
    {1, 0x00, 0xFF, "row_stripe_inv"},
    {2, 0xAA, 0x55, "checkerboard"},
    {3, 0x55, 0xAA, "checkerboard_inv"},
    {4, 0xCC, 0x33, "thickchecker"},
    {5, 0x33, 0xCC, "thickchecker_inv"},
}};

inline constexpr int kNumPatterns = 6;

// Bit stored at row bit index `bit` when the row is filled with `fill`.
inline int pattern_bit(uint8_t fill, uint32_t bit) {
  return (fill >> (bit & 7)) & 1;
}

inline uint64_t replicate_byte(uint8_t b) {
  uint64_t w = b;
  w |= w << 8;
  w |= w << 16;
  w |= w << 32;
  return w;
}

}  // namespace vpplab
