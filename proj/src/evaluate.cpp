#include "camolut/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace camolut {

double static_area(const Netlist& n, const CellLibrary& lib,
                   std::optional<LutKind> fallback_kind) {
  double area = 0.0;
  for (const Gate& g : n.gates) area += lib.cell_for(g, fallback_kind).area;
  return area;
}

namespace {

// Longest-path arrival with a per-gate delay callback; returns max over POs
// (a PO driven directly by a PI arrives at 0).
template <typename DelayFn>
double longest_path(const Netlist& n, DelayFn&& delay_of) {
  std::vector<double> arrival(n.net_names.size(), 0.0);
  for (GateId g : n.topo_order()) {
    const Gate& gate = n.gates[static_cast<size_t>(g)];
    double in = 0.0;
    for (NetId f : gate.fanin)
      in = std::max(in, arrival[static_cast<size_t>(f)]);
    arrival[static_cast<size_t>(gate.fanout)] = in + delay_of(gate);
  }
  double worst = 0.0;
  for (NetId po : n.primary_outputs)
    worst = std::max(worst, arrival[static_cast<size_t>(po)]);
  return worst;
}

}  // namespace

double static_delay(const Netlist& n, const CellLibrary& lib,
                    std::optional<LutKind> fallback_kind) {
  return longest_path(
      n, [&](const Gate& g) { return lib.cell_for(g, fallback_kind).delay_ns; });
}

double static_delay_unit(const Netlist& n) {
  return longest_path(n, [](const Gate&) { return 1.0; });
}

std::vector<int> unit_slack(const Netlist& n) {
  std::vector<GateId> topo = n.topo_order();
  auto consumers = n.gate_consumers();

  // arrival[g]: gates on the longest PI path up to and including g
  std::vector<int> arrival(n.gates.size(), 0);
  std::vector<int> net_arr(n.net_names.size(), 0);
  for (GateId g : topo) {
    const Gate& gate = n.gates[static_cast<size_t>(g)];
    int in = 0;
    for (NetId f : gate.fanin) in = std::max(in, net_arr[static_cast<size_t>(f)]);
    arrival[static_cast<size_t>(g)] = in + 1;
    net_arr[static_cast<size_t>(gate.fanout)] = in + 1;
  }

  // tail[g]: gates strictly after g on the longest path from g to a PO
  std::vector<int> tail(n.gates.size(), 0);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    int t = 0;
    for (GateId c : consumers[static_cast<size_t>(*it)])
      t = std::max(t, tail[static_cast<size_t>(c)] + 1);
    tail[static_cast<size_t>(*it)] = t;
  }

  int critical = 0;
  for (size_t g = 0; g < n.gates.size(); ++g)
    critical = std::max(critical, arrival[g] + tail[g]);

  std::vector<int> slack(n.gates.size(), 0);
  for (size_t g = 0; g < n.gates.size(); ++g)
    slack[g] = critical - (arrival[g] + tail[g]);
  return slack;
}

double composite_phi(double area_overhead, double delay_overhead, double alpha,
                     double beta) {
  if (alpha < 0.0 || beta < 0.0 || std::abs(alpha + beta - 1.0) > 1e-9)
    throw std::invalid_argument(
        "composite weights must be non-negative and sum to 1");
  return area_overhead * alpha + delay_overhead * beta;
}

std::string OverheadReport::csv_header() {
  return "benchmark,scheme,n_gates,area_before,area_after,area_overhead_pct,"
         "delay_before_ns,delay_after_ns,delay_overhead_pct,phi_pct";
}

std::string OverheadReport::to_csv_row() const {
  char buf[512];
  std::snprintf(buf, sizeof(buf), "%s,%s,%d,%.4f,%.4f,%.2f,%.4f,%.4f,%.2f,%.2f",
                benchmark.c_str(), scheme.c_str(), n_gates, area_before,
                area_after, area_overhead * 100.0, delay_before, delay_after,
                delay_overhead * 100.0, phi * 100.0);
  return buf;
}

OverheadReport evaluate_overheads(const Netlist& original,
                                  const Netlist& obfuscated,
                                  const CellLibrary& lib,
                                  std::optional<LutKind> fallback_kind,
                                  const std::string& scheme_name, int n_gates,
                                  double alpha, double beta) {
  OverheadReport r;
  r.benchmark = original.name;
  r.scheme = scheme_name;
  r.n_gates = n_gates;
  r.area_before = static_area(original, lib, fallback_kind);
  r.area_after = static_area(obfuscated, lib, fallback_kind);
  r.delay_before = static_delay(original, lib, fallback_kind);
  r.delay_after = static_delay(obfuscated, lib, fallback_kind);
  if (r.area_before <= 0.0 || r.delay_before <= 0.0)
    throw std::invalid_argument("baseline netlist has zero area or delay");
  r.area_overhead = (r.area_after - r.area_before) / r.area_before;
  r.delay_overhead = (r.delay_after - r.delay_before) / r.delay_before;
  r.phi = composite_phi(r.area_overhead, r.delay_overhead, alpha, beta);
  return r;
}

}  // namespace camolut
