#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "camolut/netlist.hpp"

namespace camolut {

// Transistor budget of one reconfigurable cell, fixed by construction of the
// three realizations (per arity 2..5):
//   MuxOnly 6/14/30/62, SramLut 30/62/126/254, SotLut 27/36/53/86.
int transistor_count(LutKind kind, int arity);

// Relative transistor saving of SOT vs SRAM at the same arity, e.g. ~0.661
// at arity 5.
double sot_vs_sram_saving(int arity);

struct CellModel {
  std::string name;
  double area = 0.0;
  double delay_ns = 0.0;
  int transistors = 0;
  std::optional<double> energy_pj;
};

// Cell data for standard gates (keyed by kind+arity) and LUT cells (keyed by
// LutKind+arity). Text format, one record per line:
//   cell NAND2 area=32 delay_ns=0.08 transistors=4
//   lut sot m=3 area=288 delay_ns=0.16 transistors=36 energy_pj=45
// '#' starts a comment. LUT `area` may be omitted; it then defaults to
//   area(NAND2) * transistor_count(kind, m) / transistors(NAND2)
// LUT `transistors` defaults to the fixed table above.
class CellLibrary {
 public:
  static CellLibrary load(std::istream& in, const std::string& name);
  static CellLibrary load_file(const std::string& path);

  const std::string& name() const { return name_; }

  // Standard gate cell for a kind/arity, e.g. (Nand, 2) -> NAND2.
  // Throws std::out_of_range ("missing required cell ...") when absent.
  const CellModel& gate_cell(BaseKind kind, int arity) const;
  const CellModel& lut_cell(LutKind kind, int arity) const;

  bool has_gate_cell(BaseKind kind, int arity) const;

  // Cell applicable to a concrete gate (resolves LUT kind from the gate or
  // from `fallback_kind` for attacker-view netlists).
  const CellModel& cell_for(const Gate& g,
                            std::optional<LutKind> fallback_kind = {}) const;

  static std::string gate_cell_name(BaseKind kind, int arity);
  static std::string lut_cell_name(LutKind kind, int arity);

 private:
  std::string name_;
  std::map<std::string, CellModel> cells_;
};

}  // namespace camolut
