#include "camolut/lut_mask.hpp"

#include <algorithm>
#include <cctype>

namespace camolut {

const char* to_string(LutKind k) {
  switch (k) {
    case LutKind::MuxOnly: return "mux";
    case LutKind::SramLut: return "sram";
    case LutKind::SotLut: return "sot";
  }
  return "?";
}

LutKind lut_kind_from_string(const std::string& s) {
  std::string t;
  t.reserve(s.size());
  for (char c : s) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (t == "mux" || t == "muxonly" || t == "mux_only") return LutKind::MuxOnly;
  if (t == "sram" || t == "sramlut" || t == "sram_lut") return LutKind::SramLut;
  if (t == "sot" || t == "sotlut" || t == "sot_lut") return LutKind::SotLut;
  throw std::invalid_argument("unknown LUT kind: " + s);
}

std::string LutMask::to_bit_string() const {
  std::string s(rows(), '0');
  for (uint32_t i = 0; i < rows(); ++i)
    if (eval_index(i)) s[i] = '1';
  return s;
}

std::string LutMask::to_hex() const {
  // Bit string read MSB-first as a number: row 0 is the top bit.
  uint32_t digits = std::max(1u, rows() / 4);
  uint64_t value = 0;
  for (uint32_t i = 0; i < rows(); ++i)
    value = (value << 1) | (eval_index(i) ? 1u : 0u);
  static const char* hexc = "0123456789ABCDEF";
  std::string s(digits, '0');
  for (uint32_t d = 0; d < digits; ++d)
    s[digits - 1 - d] = hexc[(value >> (4 * d)) & 0xF];
  return s;
}

LutMask lut_mask_from_bit_string(uint8_t arity, const std::string& s) {
  if (arity < 1 || arity > 5)
    throw std::invalid_argument("LUT arity out of range");
  uint32_t rows = 1u << arity;
  if (s.size() != rows)
    throw std::invalid_argument("mask bit string length must be 2^arity");
  LutMask m{arity, 0};
  for (uint32_t i = 0; i < rows; ++i) {
    if (s[i] == '1')
      m.bits |= 1u << i;
    else if (s[i] != '0')
      throw std::invalid_argument("mask bit string must be 0/1");
  }
  return m;
}

LutMask lut_mask_from_hex(uint8_t arity, const std::string& hex) {
  if (arity < 1 || arity > 5)
    throw std::invalid_argument("LUT arity out of range");
  uint32_t rows = 1u << arity;
  uint32_t digits = std::max(1u, rows / 4);
  if (hex.size() != digits)
    throw std::invalid_argument("mask hex must have " + std::to_string(digits) +
                                " digits for arity " + std::to_string(arity));
  uint64_t value = 0;
  for (char c : hex) {
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else throw std::invalid_argument("bad hex digit in mask");
    value = (value << 4) | static_cast<uint64_t>(v);
  }
  LutMask m{arity, 0};
  for (uint32_t i = 0; i < rows; ++i)
    if ((value >> (rows - 1 - i)) & 1u) m.bits |= 1u << i;
  return m;
}

}  // namespace camolut
