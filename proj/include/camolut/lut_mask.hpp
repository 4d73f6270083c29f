#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace camolut {

// Physical realization of a reconfigurable LUT cell.
enum class LutKind : uint8_t {
  MuxOnly,  // multiplexer network, config lines tied off-chip
  SramLut,  // SRAM-backed configuration bits
  SotLut,   // SOT-MRAM backed configuration bits
};

const char* to_string(LutKind k);
LutKind lut_kind_from_string(const std::string& s);

// Truth table of an m-input LUT, 2 <= m <= 5 (m == 1 never emitted; kept
// representable for intermediate transforms).
//
// Bit i of `bits` is the output for input index i, where the index is read
// with the FIRST fanin as the most significant bit:
//   index = in[0]*2^(m-1) + in[1]*2^(m-2) + ... + in[m-1]
// The canonical text form writes the table MSB-first, i.e. "1110" is the
// 2-input NAND (index 0 -> 1, index 3 -> 0), hex form 0xE.
struct LutMask {
  uint8_t arity = 0;
  uint32_t bits = 0;

  bool operator==(const LutMask&) const = default;

  uint32_t rows() const { return 1u << arity; }

  bool eval_index(uint32_t index) const { return (bits >> index) & 1u; }

  // inputs given fanin-order, first fanin = MSB of the row index
  template <typename BoolIt>
  bool eval(BoolIt first, BoolIt last) const {
    uint32_t idx = 0;
    for (auto it = first; it != last; ++it) idx = (idx << 1) | (*it ? 1u : 0u);
    return eval_index(idx);
  }

  LutMask complemented() const {
    uint32_t full = (rows() == 32) ? 0xFFFFFFFFu : ((1u << rows()) - 1u);
    return LutMask{arity, static_cast<uint32_t>(~bits) & full};
  }

  std::string to_bit_string() const;  // "1110" style, MSB row first
  std::string to_hex() const;         // "E", "57", zero-padded to rows()/4 digits
};

LutMask lut_mask_from_bit_string(uint8_t arity, const std::string& s);
LutMask lut_mask_from_hex(uint8_t arity, const std::string& hex);

// Per-LUT candidate count an attacker faces: 2^(2^m).
// Returned as log2 (= 2^m) so arity 5 does not overflow anything.
inline uint32_t lut_candidate_log2(uint8_t arity) { return 1u << arity; }

}  // namespace camolut
