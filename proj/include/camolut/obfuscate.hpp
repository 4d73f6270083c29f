#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "camolut/cone.hpp"
#include "camolut/lut_config.hpp"
#include "camolut/netlist.hpp"

namespace camolut {

// lut_kind x reconstruction policy. RE rewrites the candidate to a trailing
// 2-input gate and hides that as a LUT2; unRE hides the candidate directly
// as a LUT of its own arity (arity-1 candidates fall back to absorption).
struct Scheme {
  LutKind lut_kind = LutKind::MuxOnly;
  bool reconstruct = true;

  std::string name() const;               // "mux_re", "sot_unre", ...
  static Scheme from_string(const std::string& s);
  static const std::vector<Scheme>& all();
};

class SelectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Candidate pick, scheme-independent:
//  - the largest class whose inner-member count covers N, else top classes
//    whole in rank order (last one partial) until N gathered;
//  - within a class, members ordered by descending unit-delay slack (least
//    timing-critical first); slack ties shuffled by `seed`, then gate id;
//  - N must be >= 1 and, unless force, at most 5% of the gate count.
std::vector<GateId> select_candidates(const Netlist& n,
                                      const std::vector<GateClass>& classes,
                                      int count, uint64_t seed,
                                      bool force = false);

struct ObfuscationPlan {
  Scheme scheme;
  int requested = 0;
  uint64_t seed = 0;
  std::vector<GateId> selected;  // in selection order, original gate ids
  std::vector<GateId> backlog;   // further ranked candidates for refusals
};

// Full ranked candidate list (selection order); selected = first N of it.
std::vector<GateId> rank_candidates(const Netlist& n,
                                    const std::vector<GateClass>& classes,
                                    uint64_t seed);

struct ObfuscationResult {
  Netlist netlist;          // renumbered, masks inline
  MaskTable masks;          // keyed by the new gate ids
  ObfuscationPlan plan;     // as executed (selected = actually hidden gates)
  std::vector<ReconstructionStep> steps;  // RE rewrites, original-id keyed
  std::vector<GateId> lut_gates;          // new ids, ascending
  std::vector<std::string> skipped;       // refusal notes (gate + reason)
};

// Applies the plan. Refused candidates (NOT/BUF with no absorbable fanin)
// are replaced from the plan's backlog; the result is renumbered so emitted
// gate ids match the mask table.
ObfuscationResult apply_plan(const Netlist& n, const ObfuscationPlan& plan);

// select + apply in one call.
ObfuscationResult obfuscate(const Netlist& n, const Scheme& scheme, int count,
                            uint64_t seed, bool force = false);

}  // namespace camolut
