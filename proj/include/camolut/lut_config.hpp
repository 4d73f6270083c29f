#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "camolut/netlist.hpp"

namespace camolut {

// Truth table of a standard gate as a LUT mask, e.g. (Nand,2) -> 1110 (0xE),
// (And,3) -> 00000001. arity must match the kind (1 for NOT/BUF, 2..5 else).
LutMask mask_of_kind(BaseKind kind, int arity);

// The 16 two-input functions by canonical name ("A NAND B", "NOT A", ...).
// Total and bijective over 4-bit masks; used for round-trip checks and
// human-readable reports.
const char* two_input_function_name(const LutMask& mask);
LutMask two_input_function_mask(const std::string& name);

// --- RE preprocessing -------------------------------------------------------

// Rewrites one k-input gate into 2-input base gates with the inversion (if
// any) carried by the trailing gate:
//   NAND3(a,b,c) -> t = AND2(a,b); NAND2(t,c)
//   arity-2 gates are already their own trailing gate;
//   NOT/BUF absorb into their fanin driver when it is an internal 2-input
//   gate (trailing = that gate, mask complemented for NOT); otherwise the
//   rewrite refuses and the caller skips the candidate.
struct ReconstructionStep {
  GateId original = kNoGate;
  GateId trailing = kNoGate;          // in the returned netlist
  std::vector<GateId> added;          // new 2-input gates incl. trailing
  std::vector<GateId> removed;        // original (+ absorbed fanin if dead)
};

struct ReconstructionRefusal {
  std::string reason;
};

using ReconstructionResult =
    std::variant<std::pair<Netlist, ReconstructionStep>, ReconstructionRefusal>;

ReconstructionResult reconstruct_to_2input(const Netlist& n, GateId gate);

// --- whole-block collapse ---------------------------------------------------

// Collapses the fan-in cone of `root` into a single LUT: grows the cone by
// absorbing drivers whose every consumer is already inside, stops at PIs and
// at shared nets, and succeeds when the remaining distinct inputs are in
// [2, max_arity]. Refuses when a would-be interior gate has external fanout
// or the input bound is violated (fewer than 2 inputs reports ArityExceeded:
// a lone inverter/buffer block hides nothing).
struct BlockCollapseRefusal {
  enum class Reason { InteriorFanout, ArityExceeded };
  Reason reason;
  int distinct_inputs = 0;
};

struct BlockCollapse {
  Netlist netlist;
  GateId lut = kNoGate;
  LutMask mask;
  std::vector<NetId> inputs;  // cut nets, index order = mask index order
};

using BlockCollapseResult = std::variant<BlockCollapse, BlockCollapseRefusal>;

BlockCollapseResult collapse_block_to_lut(const Netlist& n, GateId root,
                                          int max_arity = 5);

}  // namespace camolut
