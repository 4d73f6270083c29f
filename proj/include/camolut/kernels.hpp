#pragma once

#include <cstddef>
#include <cstdint>

// Bit-parallel logic kernels. Test patterns are packed 64 per word; a net's
// batch value is a row of words. Every gate evaluation is an elementwise
// bitwise op over rows, which is what makes wide registers pay off.
//
// Backends:
//   scalar  - plain uint64_t loops, the reference implementation
//   avx2    - 256-bit rows on x86-64 (runtime cpuid check)
//   neon    - 128-bit rows on aarch64
// Dispatch picks the widest supported backend once at startup; the
// CAMOLUT_KERNEL environment variable (scalar|avx2|neon) overrides it.
// All backends are bit-exact, so results never depend on the choice.

namespace camolut::kern {

using Word = uint64_t;

using UnOp = void (*)(Word* dst, const Word* a, size_t n);
using BinOp = void (*)(Word* dst, const Word* a, const Word* b, size_t n);
using AccOp = void (*)(Word* dst, const Word* a, size_t n);
// LUT row eval: dst[w] = OR over set mask rows of the row's minterm.
// ins[j] is the row of fanin j (fanin 0 = MSB of the row index), m <= 5.
using LutOp = void (*)(Word* dst, const Word* const* ins, int m,
                       uint32_t mask, size_t n);
// dst = (sel & t) | (~sel & e)
using MuxOp = void (*)(Word* dst, const Word* sel, const Word* t,
                       const Word* e, size_t n);

struct Ops {
  const char* name;
  UnOp copy;
  UnOp not_;
  BinOp and2, nand2, or2, nor2, xor2, xnor2;
  AccOp and_acc;   // dst &= a
  AccOp or_acc;    // dst |= a
  AccOp xor_acc;   // dst ^= a
  AccOp andn_acc;  // dst &= ~a
  void (*not_ip)(Word* dst, size_t n);
  void (*fill)(Word* dst, Word value, size_t n);
  MuxOp mux;
  LutOp lut;
};

const Ops& scalar_ops();
#if defined(__x86_64__) || defined(_M_X64)
const Ops& avx2_ops();
bool avx2_supported();
#endif
#if defined(__aarch64__) || defined(__ARM_NEON)
const Ops& neon_ops();
#endif

// Dispatched backend (resolved once, env-overridable).
const Ops& ops();
const char* active_backend();

}  // namespace camolut::kern
