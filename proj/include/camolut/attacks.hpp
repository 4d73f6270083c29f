#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "camolut/netlist.hpp"

namespace camolut {

struct OracleBudget {
  uint64_t max_queries = 100000;   // simulation vectors per question
  int exhaustive_threshold = 16;   // exhaustive PI enumeration below this
  uint64_t enum_cap = 1u << 20;    // BFA: max joint candidates enumerated
  uint64_t seed = 0xa02bdbf7bb3c0a7ull;
};

// One CPA peel: the LUTs first resolved together and the work to do it.
struct CpaStage {
  NetId cone_output = kNoNet;
  std::vector<GateId> resolved;   // newly resolved LUT gate ids
  double log2_size = 0.0;         // 0 for constant-time isolate stages
  bool constant = false;
};

struct AttackReport {
  std::string attack;  // "cpa" | "bfa" | "ita" | "sca"

  // cpa
  std::vector<CpaStage> stages;
  double dominant_log2 = 0.0;
  double total_log2 = 0.0;
  double naive_log2 = 0.0;

  // bfa
  bool enumerated = false;
  bool budget_exhausted = false;  // candidate space above the cap
  uint64_t candidates_tested = 0;
  uint64_t consistent_candidates = 0;
  std::optional<MaskTable> recovered;  // first consistent assignment
  bool secret_consistent = false;      // set when the secret was supplied

  // ita
  struct ItaVerdict {
    GateId gate = kNoGate;
    enum class Kind { Resolvable, Protected_, Inconclusive } kind;
    std::string reason;  // "justification" | "sensitization" | "budget" | ""
    bool exhaustive = false;
  };
  std::vector<ItaVerdict> verdicts;

  // sca
  bool views_identical = false;

  std::string to_json() const;
};

// Cone-partition attack: iteratively peels the PO cone with the fewest
// unresolved LUTs; a stage jointly enumerates that cone's unresolved LUTs
// (k^N_i candidates, k = 2^(2^m) per LUT or `k_override`). A cone left with
// a single unresolved LUT next to already-resolved ones collapses to a
// constant-time stage. dominant = max stage, total = log2 of the stage sum,
// naive = joint enumeration of everything at once.
AttackReport cpa_partition(const Netlist& n,
                           std::optional<uint64_t> k_override = {});

// Brute-force attack: joint mask enumeration (lexicographic by gate id,
// last LUT fastest) against an I/O oracle, keeping assignments consistent on
// every probed vector. Enumeration only runs when the candidate space fits
// budget.enum_cap; the complexity figures are always reported.
// `secret` (when given) is checked for membership in the consistent set.
AttackReport brute_force_attack(const Netlist& obf, const Netlist& oracle,
                                const MaskTable* oracle_masks = nullptr,
                                const OracleBudget& budget = {},
                                const MaskTable* secret = nullptr);

// Incomplete-testability analysis under three-valued simulation: a LUT is
// resolvable iff every input can be justified to both values from the PIs
// and a forced output difference reaches some PO while all other LUTs read
// as unknown. Exhaustive below the PI threshold gives definitive verdicts;
// sampling gives resolvable or inconclusive. Structurally impossible
// justification/sensitization is reported as protected even when sampling.
AttackReport ita_check(const Netlist& obf, const OracleBudget& budget = {});

// Side-channel audit: the attacker-facing emissions of one plan under the
// three cell realizations must be byte-identical (no kind or mask leak).
AttackReport sca_audit(const std::vector<std::string>& emitted_views);

}  // namespace camolut
