#pragma once

#include <optional>
#include <string>
#include <vector>

#include "camolut/cell_library.hpp"
#include "camolut/netlist.hpp"

namespace camolut {

// Sum of cell areas. LUT gates without an inline kind resolve through
// `fallback_kind` (attacker-view netlists costed for a given scheme).
double static_area(const Netlist& n, const CellLibrary& lib,
                   std::optional<LutKind> fallback_kind = {});

// Longest PI->PO path, each gate contributing its cell delay. Unit mode
// (every gate = 1.0) equals max_level.
double static_delay(const Netlist& n, const CellLibrary& lib,
                    std::optional<LutKind> fallback_kind = {});
double static_delay_unit(const Netlist& n);

// Unit-delay slack per gate: longest path through the gate versus the
// critical path, in gate stages. 0 = on a critical path.
std::vector<int> unit_slack(const Netlist& n);

// phi = area_overhead*alpha + delay_overhead*beta with alpha+beta == 1.
// Overheads are fractions (0.1122 = 11.22%).
double composite_phi(double area_overhead, double delay_overhead,
                     double alpha = 0.5, double beta = 0.5);

struct OverheadReport {
  std::string benchmark;
  std::string scheme;
  int n_gates = 0;          // obfuscated gate count N
  double area_before = 0.0;
  double area_after = 0.0;
  double delay_before = 0.0;
  double delay_after = 0.0;
  double area_overhead = 0.0;   // fraction
  double delay_overhead = 0.0;  // fraction
  double phi = 0.0;

  static std::string csv_header();
  std::string to_csv_row() const;
};

OverheadReport evaluate_overheads(const Netlist& original,
                                  const Netlist& obfuscated,
                                  const CellLibrary& lib,
                                  std::optional<LutKind> fallback_kind,
                                  const std::string& scheme_name, int n_gates,
                                  double alpha = 0.5, double beta = 0.5);

}  // namespace camolut
