#include "camolut/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

// Built with -mavx2 for this translation unit only; callers must check
// avx2_supported() before taking this table.

namespace camolut::kern {
namespace {

inline __m256i ld(const Word* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}
inline void st(Word* p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}
inline __m256i vnot(__m256i v) {
  return _mm256_xor_si256(v, _mm256_set1_epi64x(-1));
}

void a_copy(Word* d, const Word* a, size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) st(d + i, ld(a + i));
  for (; i < n; ++i) d[i] = a[i];
}
void a_not(Word* d, const Word* a, size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) st(d + i, vnot(ld(a + i)));
  for (; i < n; ++i) d[i] = ~a[i];
}

#define BIN_KERNEL(NAME, EXPR4, EXPR1)                         \
  void NAME(Word* d, const Word* a, const Word* b, size_t n) { \
    size_t i = 0;                                              \
    for (; i + 4 <= n; i += 4) {                               \
      __m256i va = ld(a + i), vb = ld(b + i);                  \
      st(d + i, EXPR4);                                        \
    }                                                          \
    for (; i < n; ++i) d[i] = EXPR1;                           \
  }

BIN_KERNEL(a_and2, _mm256_and_si256(va, vb), a[i] & b[i])
BIN_KERNEL(a_nand2, vnot(_mm256_and_si256(va, vb)), ~(a[i] & b[i]))
BIN_KERNEL(a_or2, _mm256_or_si256(va, vb), a[i] | b[i])
BIN_KERNEL(a_nor2, vnot(_mm256_or_si256(va, vb)), ~(a[i] | b[i]))
BIN_KERNEL(a_xor2, _mm256_xor_si256(va, vb), a[i] ^ b[i])
BIN_KERNEL(a_xnor2, vnot(_mm256_xor_si256(va, vb)), ~(a[i] ^ b[i]))
#undef BIN_KERNEL

void a_and_acc(Word* d, const Word* a, size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) st(d + i, _mm256_and_si256(ld(d + i), ld(a + i)));
  for (; i < n; ++i) d[i] &= a[i];
}
void a_or_acc(Word* d, const Word* a, size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) st(d + i, _mm256_or_si256(ld(d + i), ld(a + i)));
  for (; i < n; ++i) d[i] |= a[i];
}
void a_xor_acc(Word* d, const Word* a, size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) st(d + i, _mm256_xor_si256(ld(d + i), ld(a + i)));
  for (; i < n; ++i) d[i] ^= a[i];
}
void a_andn_acc(Word* d, const Word* a, size_t n) {
  size_t i = 0;
  // andnot computes ~a & d directly
  for (; i + 4 <= n; i += 4) st(d + i, _mm256_andnot_si256(ld(a + i), ld(d + i)));
  for (; i < n; ++i) d[i] &= ~a[i];
}
void a_not_ip(Word* d, size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) st(d + i, vnot(ld(d + i)));
  for (; i < n; ++i) d[i] = ~d[i];
}
void a_fill(Word* d, Word v, size_t n) {
  size_t i = 0;
  __m256i vv = _mm256_set1_epi64x(static_cast<long long>(v));
  for (; i + 4 <= n; i += 4) st(d + i, vv);
  for (; i < n; ++i) d[i] = v;
}
void a_mux(Word* d, const Word* s, const Word* t, const Word* e, size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i vs = ld(s + i);
    __m256i vt = _mm256_and_si256(vs, ld(t + i));
    __m256i ve = _mm256_andnot_si256(vs, ld(e + i));
    st(d + i, _mm256_or_si256(vt, ve));
  }
  for (; i < n; ++i) d[i] = (s[i] & t[i]) | (~s[i] & e[i]);
}

void a_lut(Word* d, const Word* const* ins, int m, uint32_t mask, size_t n) {
  const uint32_t rows = 1u << m;
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i out = _mm256_setzero_si256();
    for (uint32_t r = 0; r < rows; ++r) {
      if (!((mask >> r) & 1u)) continue;
      __m256i term = _mm256_set1_epi64x(-1);
      for (int j = 0; j < m; ++j) {
        __m256i v = ld(ins[j] + i);
        term = ((r >> (m - 1 - j)) & 1u) ? _mm256_and_si256(term, v)
                                         : _mm256_andnot_si256(v, term);
      }
      out = _mm256_or_si256(out, term);
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

const Ops& avx2_ops() {
  static const Ops t = {
      "avx2",   a_copy,    a_not,    a_and2,    a_nand2,  a_or2,
      a_nor2,   a_xor2,    a_xnor2,  a_and_acc, a_or_acc, a_xor_acc,
      a_andn_acc, a_not_ip, a_fill,  a_mux,     a_lut,
  };
  return t;
}

bool avx2_supported() { return __builtin_cpu_supports("avx2"); }

}  // namespace camolut::kern

#endif  // x86_64
