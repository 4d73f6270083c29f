#pragma once

#include <cstdint>
#include <vector>

#include "camolut/netlist.hpp"

namespace camolut {

// Maximum fan-in cone of one primary output: every gate whose output can
// reach that PO. Pseudo POs from DFF cuts are cones like any other.
struct Mfic {
  NetId output = kNoNet;          // the PO net
  std::vector<GateId> gates;      // sorted ascending; empty if PI-driven PO
};

// Gates partitioned by their cone-membership signature: two gates share a
// class iff they lie in exactly the same set of MFICs.
struct GateClass {
  std::vector<NetId> signature;       // PO nets, sorted ascending
  std::vector<GateId> members;        // sorted ascending
  std::vector<GateId> inner_members;  // members whose fanout net is not a PO
};

std::vector<Mfic> compute_mfics(const Netlist& n);

// Classes ordered by descending inner-member count, ties by ascending
// signature (lexicographic). Every gate appears in exactly one class.
std::vector<GateClass> classify_gates(const Netlist& n);
std::vector<GateClass> classify_gates(const Netlist& n,
                                      const std::vector<Mfic>& mfics);

// CSV: class_rank,signature_size,members,inner_members
std::string classes_to_csv(const std::vector<GateClass>& classes);

}  // namespace camolut
