#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "camolut/netlist.hpp"

namespace camolut {

// Batch simulator: evaluates a netlist over packed pattern words, one row of
// `words` uint64_t per net, via the dispatched bit kernels. LUT gates take
// their mask from the netlist or from the supplied table (table wins).
class BatchSim {
 public:
  BatchSim(const Netlist& n, const MaskTable* masks = nullptr,
           size_t words = 16);

  size_t words() const { return words_; }
  const Netlist& netlist() const { return *net_; }

  uint64_t* pi_row(int pi_index) { return row(net_->primary_inputs[pi_index]); }
  const uint64_t* po_row(int po_index) const {
    return const_cast<BatchSim*>(this)->row(net_->primary_outputs[po_index]);
  }
  uint64_t* row(NetId id) { return rows_.data() + static_cast<size_t>(id) * words_; }

  // Fill PI rows with exhaustive patterns for vector indices
  // [base, base + 64*words): PI 0 toggles slowest (MSB of the index).
  void fill_exhaustive(uint64_t base);
  // Fill PI rows from the RNG stream (all 64*words lanes random).
  void fill_random(uint64_t& rng_state);

  void eval();  // assumes PI rows are filled

  // Convenience single-vector run: assignment in PI order, returns PO bits.
  std::vector<bool> run_single(const std::vector<bool>& assignment);

 private:
  const Netlist* net_;
  size_t words_;
  std::vector<uint64_t> rows_;
  std::vector<GateId> topo_;
  std::vector<LutMask> lut_masks_;  // indexed by gate id, valid for LUTs
  std::vector<uint64_t> tmp_;
};

// Single-vector functional simulation (convenience entry point).
// `assignment` is in primary_inputs order.
std::vector<bool> simulate(const Netlist& n, const std::vector<bool>& assignment,
                           const MaskTable* masks = nullptr);

struct EquivalenceOptions {
  uint64_t budget = 100000;    // sampled vectors when not exhaustive
  int exhaustive_max_pis = 20; // exhaustive at or below this many PIs
  uint64_t seed = 0x9e3779b97f4a7c15ull;
};

struct Counterexample {
  std::vector<bool> assignment;        // PI order
  int po_index = 0;                    // first differing PO
};

struct EquivalenceVerdict {
  enum class Kind { EquivalentExhaustive, EquivalentSampled, Counterexample };
  Kind kind = Kind::EquivalentSampled;
  uint64_t vectors_checked = 0;
  std::optional<Counterexample> cex;

  bool equivalent() const { return kind != Kind::Counterexample; }
};

// Compares PO behavior of two netlists with identical PI/PO name lists.
// Exhaustive when pi_count <= exhaustive_max_pis, otherwise the budget of
// uniform-random vectors plus all-zeros, all-ones and every one-hot vector.
EquivalenceVerdict check_equivalence(const Netlist& a, const Netlist& b,
                                     const MaskTable* masks_a = nullptr,
                                     const MaskTable* masks_b = nullptr,
                                     const EquivalenceOptions& opt = {});

}  // namespace camolut
