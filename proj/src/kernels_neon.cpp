#include "camolut/kernels.hpp"

#if defined(__aarch64__) || defined(__ARM_NEON)

#include <arm_neon.h>

namespace camolut::kern {
namespace {

inline uint64x2_t ld(const Word* p) { return vld1q_u64(p); }
inline void st(Word* p, uint64x2_t v) { vst1q_u64(p, v); }
inline uint64x2_t vnot(uint64x2_t v) {
  return vreinterpretq_u64_u32(vmvnq_u32(vreinterpretq_u32_u64(v)));
}

void n_copy(Word* d, const Word* a, size_t n) {
  size_t i = 0;
  for (; i + 2 <= n; i += 2) st(d + i, ld(a + i));
  for (; i < n; ++i) d[i] = a[i];
}
void n_not(Word* d, const Word* a, size_t n) {
  size_t i = 0;
  for (; i + 2 <= n; i += 2) st(d + i, vnot(ld(a + i)));
  for (; i < n; ++i) d[i] = ~a[i];
}

#define BIN_KERNEL(NAME, EXPR2, EXPR1)                         \
  void NAME(Word* d, const Word* a, const Word* b, size_t n) { \
    size_t i = 0;                                              \
    for (; i + 2 <= n; i += 2) {                               \
      uint64x2_t va = ld(a + i), vb = ld(b + i);               \
      st(d + i, EXPR2);                                        \
    }                                                          \
    for (; i < n; ++i) d[i] = EXPR1;                           \
  }

BIN_KERNEL(n_and2, vandq_u64(va, vb), a[i] & b[i])
BIN_KERNEL(n_nand2, vnot(vandq_u64(va, vb)), ~(a[i] & b[i]))
BIN_KERNEL(n_or2, vorrq_u64(va, vb), a[i] | b[i])
BIN_KERNEL(n_nor2, vnot(vorrq_u64(va, vb)), ~(a[i] | b[i]))
BIN_KERNEL(n_xor2, veorq_u64(va, vb), a[i] ^ b[i])
BIN_KERNEL(n_xnor2, vnot(veorq_u64(va, vb)), ~(a[i] ^ b[i]))
#undef BIN_KERNEL

void n_and_acc(Word* d, const Word* a, size_t n) {
  size_t i = 0;
  for (; i + 2 <= n; i += 2) st(d + i, vandq_u64(ld(d + i), ld(a + i)));
  for (; i < n; ++i) d[i] &= a[i];
}
void n_or_acc(Word* d, const Word* a, size_t n) {
  size_t i = 0;
  for (; i + 2 <= n; i += 2) st(d + i, vorrq_u64(ld(d + i), ld(a + i)));
  for (; i < n; ++i) d[i] |= a[i];
}
void n_xor_acc(Word* d, const Word* a, size_t n) {
  size_t i = 0;
  for (; i + 2 <= n; i += 2) st(d + i, veorq_u64(ld(d + i), ld(a + i)));
  for (; i < n; ++i) d[i] ^= a[i];
}
void n_andn_acc(Word* d, const Word* a, size_t n) {
  size_t i = 0;
  for (; i + 2 <= n; i += 2) st(d + i, vbicq_u64(ld(d + i), ld(a + i)));
  for (; i < n; ++i) d[i] &= ~a[i];
}
void n_not_ip(Word* d, size_t n) {
  size_t i = 0;
  for (; i + 2 <= n; i += 2) st(d + i, vnot(ld(d + i)));
  for (; i < n; ++i) d[i] = ~d[i];
}
void n_fill(Word* d, Word v, size_t n) {
  size_t i = 0;
  uint64x2_t vv = vdupq_n_u64(v);
  for (; i + 2 <= n; i += 2) st(d + i, vv);
  for (; i < n; ++i) d[i] = v;
}
void n_mux(Word* d, const Word* s, const Word* t, const Word* e, size_t n) {
  size_t i = 0;
  for (; i + 2 <= n; i += 2)
    st(d + i, vbslq_u64(ld(s + i), ld(t + i), ld(e + i)));
  for (; i < n; ++i) d[i] = (s[i] & t[i]) | (~s[i] & e[i]);
}

void n_lut(Word* d, const Word* const* ins, int m, uint32_t mask, size_t n) {
  const uint32_t rows = 1u << m;
  size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t out = vdupq_n_u64(0);
    for (uint32_t r = 0; r < rows; ++r) {
      if (!((mask >> r) & 1u)) continue;
      uint64x2_t term = vdupq_n_u64(~Word{0});
      for (int j = 0; j < m; ++j) {
        uint64x2_t v = ld(ins[j] + i);
        term = ((r >> (m - 1 - j)) & 1u) ? vandq_u64(term, v)
                                         : vbicq_u64(term, v);
      }
      out = vorrq_u64(out, term);
    }
    st(d + i, out);
  }
  for (; i < n; ++i) {
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

const Ops& neon_ops() {
  static const Ops t = {
      "neon",   n_copy,    n_not,    n_and2,    n_nand2,  n_or2,
      n_nor2,   n_xor2,    n_xnor2,  n_and_acc, n_or_acc, n_xor_acc,
      n_andn_acc, n_not_ip, n_fill,  n_mux,     n_lut,
  };
  return t;
}

}  // namespace camolut::kern

#endif  // aarch64
