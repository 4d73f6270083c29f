#include "camolut/netlist.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace camolut {

const char* to_string(BaseKind k) {
  switch (k) {
    case BaseKind::And: return "AND";
    case BaseKind::Nand: return "NAND";
    case BaseKind::Or: return "OR";
    case BaseKind::Nor: return "NOR";
    case BaseKind::Xor: return "XOR";
    case BaseKind::Xnor: return "XNOR";
    case BaseKind::Not: return "NOT";
    case BaseKind::Buf: return "BUFF";
    case BaseKind::Lut: return "LUT";
  }
  return "?";
}

bool kind_is_inverting(BaseKind k) {
  return k == BaseKind::Nand || k == BaseKind::Nor || k == BaseKind::Xnor ||
         k == BaseKind::Not;
}

BaseKind kind_complement(BaseKind k) {
  switch (k) {
    case BaseKind::And: return BaseKind::Nand;
    case BaseKind::Nand: return BaseKind::And;
    case BaseKind::Or: return BaseKind::Nor;
    case BaseKind::Nor: return BaseKind::Or;
    case BaseKind::Xor: return BaseKind::Xnor;
    case BaseKind::Xnor: return BaseKind::Xor;
    case BaseKind::Not: return BaseKind::Buf;
    case BaseKind::Buf: return BaseKind::Not;
    case BaseKind::Lut: break;
  }
  throw std::logic_error("kind_complement: LUT has no named complement");
}

ParseError::ParseError(int line, int col, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ", col " +
                         std::to_string(col) + ": " + msg),
      line_(line),
      col_(col) {}

bool Netlist::is_po_net(NetId n) const {
  return std::find(primary_outputs.begin(), primary_outputs.end(), n) !=
         primary_outputs.end();
}

std::optional<NetId> Netlist::find_net(const std::string& name) const {
  for (NetId i = 0; i < static_cast<NetId>(net_names.size()); ++i)
    if (net_names[i] == name) return i;
  return std::nullopt;
}

std::vector<std::vector<GateId>> Netlist::net_readers() const {
  std::vector<std::vector<GateId>> readers(net_names.size());
  for (const Gate& g : gates)
    for (NetId in : g.fanin) readers[in].push_back(g.id);
  return readers;
}

std::vector<std::vector<GateId>> Netlist::gate_consumers() const {
  auto readers = net_readers();
  std::vector<std::vector<GateId>> out(gates.size());
  for (const Gate& g : gates) out[g.id] = readers[g.fanout];
  return out;
}

std::vector<GateId> Netlist::topo_order() const {
  std::vector<int> pending(gates.size(), 0);
  auto readers = net_readers();
  for (const Gate& g : gates)
    for (NetId in : g.fanin)
      if (net_driver[in] != kNoGate) ++pending[g.id];

  std::priority_queue<GateId, std::vector<GateId>, std::greater<>> ready;
  for (const Gate& g : gates)
    if (pending[g.id] == 0) ready.push(g.id);

  std::vector<GateId> order;
  order.reserve(gates.size());
  while (!ready.empty()) {
    GateId g = ready.top();
    ready.pop();
    order.push_back(g);
    for (GateId r : readers[gates[g].fanout])
      if (--pending[r] == 0) ready.push(r);
  }
  if (order.size() != gates.size())
    throw std::logic_error("topo_order: cyclic combinational path");
  return order;
}

int Netlist::max_level() const {
  std::vector<int> net_level(net_names.size(), 0);
  int best = 0;
  for (GateId g : topo_order()) {
    int lvl = 0;
    for (NetId in : gates[g].fanin) lvl = std::max(lvl, net_level[in]);
    net_level[gates[g].fanout] = lvl + 1;
  }
  for (NetId po : primary_outputs) best = std::max(best, net_level[po]);
  return best;
}

void Netlist::validate() const {
  auto bad = [](const std::string& m) { throw std::logic_error("netlist invariant: " + m); };
  if (net_driver.size() != net_names.size()) bad("driver table size");
  std::vector<char> driven(net_names.size(), 0);
  for (NetId pi : primary_inputs) {
    if (pi < 0 || pi >= net_count()) bad("PI net out of range");
    if (net_driver[pi] != kNoGate) bad("PI with gate driver");
    if (driven[pi]++) bad("multiply driven net " + net_names[pi]);
  }
  for (const Gate& g : gates) {
    if (g.id < 0 || g.id >= gate_count() || &gates[g.id] != &g) bad("gate id mismatch");
    if (g.fanout < 0 || g.fanout >= net_count()) bad("fanout out of range");
    if (net_driver[g.fanout] != g.id) bad("driver table mismatch");
    if (driven[g.fanout]++) bad("multiply driven net " + net_names[g.fanout]);
    if (g.fanin.empty() || g.fanin.size() > 5) bad("fanin width");
    bool unary = g.kind == BaseKind::Not || g.kind == BaseKind::Buf;
    if (unary != (g.fanin.size() == 1)) bad("arity/kind mismatch");
    if (g.kind == BaseKind::Lut) {
      if (g.fanin.size() < 2) bad("LUT arity < 2");
      if (g.mask && g.mask->arity != g.fanin.size()) bad("mask arity mismatch");
    } else if (g.mask || g.lut_kind) {
      bad("mask on non-LUT gate");
    }
    for (NetId in : g.fanin)
      if (in < 0 || in >= net_count()) bad("fanin out of range");
  }
  for (NetId n = 0; n < net_count(); ++n)
    if (!driven[n]) bad("undriven net " + net_names[n]);
  for (NetId po : primary_outputs)
    if (po < 0 || po >= net_count()) bad("PO net out of range");
  (void)topo_order();  // throws when cyclic
}

Netlist compacted(const Netlist& n, const std::vector<bool>& dead_gates) {
  Netlist out;
  out.name = n.name;
  out.stats.pruned_gates = n.stats.pruned_gates;
  out.stats.dff_count = n.stats.dff_count;

  // A net survives if it is a PI, a PO, or the fanout of a surviving gate
  // that someone still reads. Simpler and sufficient for our transforms:
  // PI/PO nets plus fanouts of live gates.
  std::vector<char> net_live(n.net_names.size(), 0);
  for (NetId pi : n.primary_inputs) net_live[pi] = 1;
  for (NetId po : n.primary_outputs) net_live[po] = 1;
  for (const Gate& g : n.gates)
    if (!dead_gates[g.id]) net_live[g.fanout] = 1;

  std::vector<NetId> net_map(n.net_names.size(), kNoNet);
  for (NetId i = 0; i < n.net_count(); ++i) {
    if (!net_live[i]) continue;
    net_map[i] = static_cast<NetId>(out.net_names.size());
    out.net_names.push_back(n.net_names[i]);
  }
  out.net_driver.assign(out.net_names.size(), kNoGate);

  for (const Gate& g : n.gates) {
    if (dead_gates[g.id]) continue;
    Gate ng = g;
    ng.id = static_cast<GateId>(out.gates.size());
    ng.fanout = net_map[g.fanout];
    for (NetId& in : ng.fanin) {
      if (net_map[in] == kNoNet)
        throw std::logic_error("compacted: live gate reads dead net");
      in = net_map[in];
    }
    out.net_driver[ng.fanout] = ng.id;
    out.gates.push_back(std::move(ng));
  }
  for (NetId pi : n.primary_inputs) out.primary_inputs.push_back(net_map[pi]);
  for (NetId po : n.primary_outputs) out.primary_outputs.push_back(net_map[po]);

  out.stats.pi_count = out.pi_count();
  out.stats.po_count = out.po_count();
  out.stats.gate_count = out.gate_count();
  out.stats.net_count = out.net_count();
  out.stats.max_level = out.max_level();
  return out;
}

}  // namespace camolut
