#include "camolut/kernels.hpp"

namespace camolut::kern {
namespace {

void s_copy(Word* d, const Word* a, size_t n) {
  for (size_t i = 0; i < n; ++i) d[i] = a[i];
}
void s_not(Word* d, const Word* a, size_t n) {
  for (size_t i = 0; i < n; ++i) d[i] = ~a[i];
}
void s_and2(Word* d, const Word* a, const Word* b, size_t n) {
  for (size_t i = 0; i < n; ++i) d[i] = a[i] & b[i];
}
void s_nand2(Word* d, const Word* a, const Word* b, size_t n) {
  for (size_t i = 0; i < n; ++i) d[i] = ~(a[i] & b[i]);
}
void s_or2(Word* d, const Word* a, const Word* b, size_t n) {
  for (size_t i = 0; i < n; ++i) d[i] = a[i] | b[i];
}
void s_nor2(Word* d, const Word* a, const Word* b, size_t n) {
  for (size_t i = 0; i < n; ++i) d[i] = ~(a[i] | b[i]);
}
void s_xor2(Word* d, const Word* a, const Word* b, size_t n) {
  for (size_t i = 0; i < n; ++i) d[i] = a[i] ^ b[i];
}
void s_xnor2(Word* d, const Word* a, const Word* b, size_t n) {
  for (size_t i = 0; i < n; ++i) d[i] = ~(a[i] ^ b[i]);
}
void s_and_acc(Word* d, const Word* a, size_t n) {
  for (size_t i = 0; i < n; ++i) d[i] &= a[i];
}
void s_or_acc(Word* d, const Word* a, size_t n) {
  for (size_t i = 0; i < n; ++i) d[i] |= a[i];
}
void s_xor_acc(Word* d, const Word* a, size_t n) {
  for (size_t i = 0; i < n; ++i) d[i] ^= a[i];
}
void s_andn_acc(Word* d, const Word* a, size_t n) {
  for (size_t i = 0; i < n; ++i) d[i] &= ~a[i];
}
void s_not_ip(Word* d, size_t n) {
  for (size_t i = 0; i < n; ++i) d[i] = ~d[i];
}
void s_fill(Word* d, Word v, size_t n) {
  for (size_t i = 0; i < n; ++i) d[i] = v;
}
void s_mux(Word* d, const Word* s, const Word* t, const Word* e, size_t n) {
  for (size_t i = 0; i < n; ++i) d[i] = (s[i] & t[i]) | (~s[i] & e[i]);
}

// Minterm accumulation: for every set mask row, AND together each fanin row
// or its complement (fanin 0 = MSB of the row index) and OR into dst.
void s_lut(Word* d, const Word* const* ins, int m, uint32_t mask, size_t n) {
  const uint32_t rows = 1u << m;
  for (size_t i = 0; i < n; ++i) {
    Word out = 0;
    for (uint32_t r = 0; r < rows; ++r) {
      if (!((mask >> r) & 1u)) continue;
      Word term = ~Word{0};
      for (int j = 0; j < m; ++j) {
        Word v = ins[j][i];
        term &= ((r >> (m - 1 - j)) & 1u) ? v : ~v;
      }
      out |= term;
    }
    d[i] = out;
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops t = {
      "scalar", s_copy,    s_not,    s_and2,   s_nand2, s_or2,
      s_nor2,   s_xor2,    s_xnor2,  s_and_acc, s_or_acc, s_xor_acc,
      s_andn_acc, s_not_ip, s_fill,  s_mux,    s_lut,
  };
  return t;
}

}  // namespace camolut::kern
