#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "camolut/lut_mask.hpp"

namespace camolut {

using NetId = int32_t;
using GateId = int32_t;
inline constexpr NetId kNoNet = -1;
inline constexpr int32_t kNoGate = -1;

// Gate families of the .bench dialect. DFF never survives parsing: the
// sequential boundary is cut into pseudo PI/PO pairs so the in-memory
// netlist is always a combinational DAG.
enum class BaseKind : uint8_t {
  And, Nand, Or, Nor, Xor, Xnor, Not, Buf, Lut,
};

const char* to_string(BaseKind k);
bool kind_is_inverting(BaseKind k);   // NAND/NOR/XNOR/NOT
BaseKind kind_complement(BaseKind k); // AND<->NAND etc.; throws for LUT

struct Gate {
  GateId id = kNoGate;
  BaseKind kind = BaseKind::And;
  std::vector<NetId> fanin;
  NetId fanout = kNoNet;
  // LUT-only fields. Attacker-view netlists parsed from disk carry neither;
  // defender-side netlists from apply_plan carry both.
  std::optional<LutKind> lut_kind;
  std::optional<LutMask> mask;

  uint8_t arity() const { return static_cast<uint8_t>(fanin.size()); }
  bool is_lut() const { return kind == BaseKind::Lut; }
};

struct ParseStats {
  int pi_count = 0;
  int po_count = 0;
  int gate_count = 0;
  int net_count = 0;
  int max_level = 0;     // gate stages on the longest PI->PO path
  int pruned_gates = 0;  // dropped as unreachable from any PO
  int dff_count = 0;     // flops cut at parse time
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& msg);
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

// Combinational netlist over named nets. Net ids and gate ids are dense and
// deterministic (file order); every net has exactly one driver, either a PI
// or a gate fanout.
struct Netlist {
  std::string name;
  std::vector<std::string> net_names;
  std::vector<GateId> net_driver;  // kNoGate = primary input
  std::vector<NetId> primary_inputs;
  std::vector<NetId> primary_outputs;  // pseudo POs from DFF cuts appended
  std::vector<Gate> gates;
  ParseStats stats;

  int pi_count() const { return static_cast<int>(primary_inputs.size()); }
  int po_count() const { return static_cast<int>(primary_outputs.size()); }
  int gate_count() const { return static_cast<int>(gates.size()); }
  int net_count() const { return static_cast<int>(net_names.size()); }

  bool is_pi(NetId n) const { return net_driver[n] == kNoGate; }
  bool is_po_net(NetId n) const;

  const std::string& net_name(NetId n) const { return net_names[n]; }
  std::optional<NetId> find_net(const std::string& name) const;

  // Gate ids in a topological order (fanins before fanouts). Parsing already
  // verifies acyclicity, so this never fails on a parsed netlist.
  std::vector<GateId> topo_order() const;

  // consumers[g] = gates reading gate g's fanout net
  std::vector<std::vector<GateId>> gate_consumers() const;
  // readers of each net (gate ids)
  std::vector<std::vector<GateId>> net_readers() const;

  int max_level() const;  // recomputed, not the cached stats field

  void validate() const;  // invariant check; throws std::logic_error
};

struct EmitOptions {
  bool show_lut_kind = false;  // LUT2_SOT(...) instead of LUT2(...)
  bool embed_masks = false;    // LUT2[E](...); defender archive only
};

// ISCAS-style .bench reader.
//   INPUT(a) / OUTPUT(f) / f = NAND(a, b) / # comment
// Extension: f = LUT<m>[<hex>](...) with optional _MUX/_SRAM/_SOT tag and
// optional [hex] mask, e.g.  f = LUT2_SOT[E](a, b)
// DFFs are cut (Q becomes a pseudo PI, D a pseudo PO); gates feeding no PO
// are pruned and counted in stats.pruned_gates.
Netlist parse_bench(std::istream& in, const std::string& name);
Netlist parse_bench_file(const std::string& path);
Netlist parse_bench_string(const std::string& text, const std::string& name);

std::string emit_bench(const Netlist& n, const EmitOptions& opts = {});

// Rebuilds a netlist with `dead` gates removed, orphaned internal nets
// dropped and ids renumbered densely in the original order. Transform
// passes edit a copy, mark victims and compact. Stats are recomputed
// (pruned/dff counters carried over).
Netlist compacted(const Netlist& n, const std::vector<bool>& dead_gates);

// Secret per-gate configuration table (CSV: gate_id,arity,mask_hex).
struct MaskTable {
  std::map<GateId, LutMask> entries;

  static MaskTable from_csv(std::istream& in);
  static MaskTable from_csv_file(const std::string& path);
  std::string to_csv() const;
};

}  // namespace camolut
