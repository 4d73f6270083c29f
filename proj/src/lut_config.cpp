#include "camolut/lut_config.hpp"

#include <algorithm>
#include <map>

namespace camolut {

namespace {

bool eval_kind(BaseKind k, const std::vector<bool>& ins) {
  switch (k) {
    case BaseKind::And:
    case BaseKind::Nand: {
      bool v = true;
      for (bool b : ins) v = v && b;
      return k == BaseKind::And ? v : !v;
    }
    case BaseKind::Or:
    case BaseKind::Nor: {
      bool v = false;
      for (bool b : ins) v = v || b;
      return k == BaseKind::Or ? v : !v;
    }
    case BaseKind::Xor:
    case BaseKind::Xnor: {
      bool v = false;
      for (bool b : ins) v = v != b;
      return k == BaseKind::Xor ? v : !v;
    }
    case BaseKind::Not:
      return !ins.at(0);
    case BaseKind::Buf:
      return ins.at(0);
    case BaseKind::Lut:
      break;
  }
  throw std::invalid_argument("LUT has no fixed truth table");
}

// Row index value with row 0 printed first, i.e. the number the hex form
// spells. Bijection between 4-bit values and the 16 two-input functions.
uint32_t msb_first_value(const LutMask& m) {
  uint32_t v = 0;
  for (uint32_t i = 0; i < m.rows(); ++i)
    v = (v << 1) | (m.eval_index(i) ? 1u : 0u);
  return v;
}

constexpr const char* kTwoInputNames[16] = {
    "CONST0",      "A AND B", "A AND NOT B", "A",
    "NOT A AND B", "B",       "A XOR B",     "A OR B",
    "A NOR B",     "A XNOR B", "NOT B",      "A OR NOT B",
    "NOT A",       "NOT A OR B", "A NAND B", "CONST1",
};

NetId add_net(Netlist& n, const std::string& base) {
  std::string name = base;
  int suffix = 2;
  while (n.find_net(name)) name = base + "_" + std::to_string(suffix++);
  n.net_names.push_back(name);
  n.net_driver.push_back(kNoGate);
  return static_cast<NetId>(n.net_names.size() - 1);
}

GateId append_gate(Netlist& n, BaseKind kind, std::vector<NetId> fanin,
                   NetId fanout) {
  Gate g;
  g.id = static_cast<GateId>(n.gates.size());
  g.kind = kind;
  g.fanin = std::move(fanin);
  g.fanout = fanout;
  n.net_driver[static_cast<size_t>(fanout)] = g.id;
  n.gates.push_back(std::move(g));
  return n.gates.back().id;
}

GateId driver_of_name(const Netlist& n, const std::string& name) {
  auto net = n.find_net(name);
  if (!net) throw std::logic_error("rewrite lost net " + name);
  return n.net_driver[static_cast<size_t>(*net)];
}

}  // namespace

LutMask mask_of_kind(BaseKind kind, int arity) {
  if (kind == BaseKind::Lut)
    throw std::invalid_argument("mask_of_kind: a LUT is not a fixed function");
  bool unary = (kind == BaseKind::Not || kind == BaseKind::Buf);
  if (unary ? arity != 1 : (arity < 2 || arity > 5))
    throw std::invalid_argument("mask_of_kind: arity does not fit kind");
  LutMask m{static_cast<uint8_t>(arity), 0};
  std::vector<bool> ins(static_cast<size_t>(arity));
  for (uint32_t r = 0; r < m.rows(); ++r) {
    for (int j = 0; j < arity; ++j)
      ins[static_cast<size_t>(j)] = (r >> (arity - 1 - j)) & 1u;
    if (eval_kind(kind, ins)) m.bits |= 1u << r;
  }
  return m;
}

const char* two_input_function_name(const LutMask& mask) {
  if (mask.arity != 2)
    throw std::invalid_argument("two_input_function_name: arity must be 2");
  return kTwoInputNames[msb_first_value(mask)];
}

LutMask two_input_function_mask(const std::string& name) {
  for (uint32_t v = 0; v < 16; ++v) {
    if (name != kTwoInputNames[v]) continue;
    LutMask m{2, 0};
    for (uint32_t i = 0; i < 4; ++i)
      if ((v >> (3 - i)) & 1u) m.bits |= 1u << i;
    return m;
  }
  throw std::invalid_argument("unknown two-input function: " + name);
}

ReconstructionResult reconstruct_to_2input(const Netlist& n, GateId gate) {
  if (gate < 0 || gate >= n.gate_count())
    throw std::out_of_range("reconstruct_to_2input: bad gate id");
  const Gate& g0 = n.gates[static_cast<size_t>(gate)];
  const std::string out_name = n.net_name(g0.fanout);
  if (g0.is_lut())
    return ReconstructionRefusal{"gate " + out_name + " is already a LUT"};

  if (g0.arity() == 2) {
    ReconstructionStep step;
    step.original = gate;
    step.trailing = gate;
    return std::make_pair(n, step);
  }

  if (g0.arity() == 1) {
    // NOT/BUF carry no hideable function of their own; fold them into the
    // fanin driver when that driver is an internal 2-input standard gate.
    NetId src = g0.fanin[0];
    GateId did = n.net_driver[static_cast<size_t>(src)];
    if (did == kNoGate)
      return ReconstructionRefusal{"gate " + out_name +
                                   ": fanin is a primary input, nothing to absorb"};
    const Gate& d = n.gates[static_cast<size_t>(did)];
    if (d.is_lut() || d.arity() != 2)
      return ReconstructionRefusal{
          "gate " + out_name + ": fanin driver is not a 2-input standard gate"};
    if (n.is_po_net(src))
      return ReconstructionRefusal{"gate " + out_name +
                                   ": fanin driver feeds a primary output"};

    Netlist work = n;
    BaseKind tk = (g0.kind == BaseKind::Not) ? kind_complement(d.kind) : d.kind;
    append_gate(work, tk, d.fanin, g0.fanout);

    std::vector<bool> dead(work.gates.size(), false);
    dead[static_cast<size_t>(gate)] = true;
    bool driver_dead = true;
    auto readers = n.net_readers();
    for (GateId r : readers[static_cast<size_t>(src)])
      if (r != gate) driver_dead = false;
    if (driver_dead) dead[static_cast<size_t>(did)] = true;

    Netlist result = compacted(work, dead);
    ReconstructionStep step;
    step.original = gate;
    step.trailing = driver_of_name(result, out_name);
    step.added = {step.trailing};
    step.removed = {gate};
    if (driver_dead) step.removed.push_back(did);
    return std::make_pair(std::move(result), step);
  }

  // arity 3..5: balanced tree of the non-inverting base kind, original kind
  // kept on the trailing gate so the inversion (if any) lands there.
  Netlist work = n;
  BaseKind inner =
      kind_is_inverting(g0.kind) ? kind_complement(g0.kind) : g0.kind;
  std::vector<NetId> level(g0.fanin.begin(), g0.fanin.end());
  std::vector<std::string> added_names;
  std::vector<GateId> new_gates;
  int t = 1;
  while (level.size() > 2) {
    std::vector<NetId> next;
    for (size_t i = 0; i < level.size(); i += 2) {
      if (i + 1 < level.size()) {
        NetId out = add_net(work, out_name + "_r" + std::to_string(t++));
        added_names.push_back(work.net_name(out));
        new_gates.push_back(append_gate(work, inner, {level[i], level[i + 1]}, out));
        next.push_back(out);
      } else {
        next.push_back(level[i]);
      }
    }
    level = std::move(next);
  }
  new_gates.push_back(append_gate(work, g0.kind, {level[0], level[1]}, g0.fanout));
  added_names.push_back(out_name);

  // The rewrite must be a pure refactoring: compare truth tables over the
  // distinct fanin nets before committing.
  {
    std::vector<NetId> nets;
    for (NetId f : g0.fanin)
      if (std::find(nets.begin(), nets.end(), f) == nets.end()) nets.push_back(f);
    std::map<NetId, bool> value;
    std::vector<bool> ins(g0.fanin.size());
    for (uint32_t r = 0; r < (1u << nets.size()); ++r) {
      for (size_t j = 0; j < nets.size(); ++j)
        value[nets[j]] = (r >> (nets.size() - 1 - j)) & 1u;
      for (GateId ng : new_gates) {
        const Gate& gg = work.gates[static_cast<size_t>(ng)];
        std::vector<bool> gi;
        for (NetId f : gg.fanin) gi.push_back(value.at(f));
        value[gg.fanout] = eval_kind(gg.kind, gi);
      }
      for (size_t j = 0; j < g0.fanin.size(); ++j) ins[j] = value.at(g0.fanin[j]);
      if (value.at(g0.fanout) != eval_kind(g0.kind, ins))
        throw std::logic_error("reconstruction produced a non-equivalent tree");
      value.erase(g0.fanout);
    }
  }

  std::vector<bool> dead(work.gates.size(), false);
  dead[static_cast<size_t>(gate)] = true;
  Netlist result = compacted(work, dead);

  ReconstructionStep step;
  step.original = gate;
  step.trailing = driver_of_name(result, out_name);
  for (const std::string& nm : added_names)
    step.added.push_back(driver_of_name(result, nm));
  step.removed = {gate};
  return std::make_pair(std::move(result), step);
}

BlockCollapseResult collapse_block_to_lut(const Netlist& n, GateId root,
                                          int max_arity) {
  if (root < 0 || root >= n.gate_count())
    throw std::out_of_range("collapse_block_to_lut: bad gate id");
  if (max_arity < 2 || max_arity > 5)
    throw std::invalid_argument("collapse_block_to_lut: max_arity must be 2..5");
  const Gate& rg = n.gates[static_cast<size_t>(root)];
  if (rg.is_lut() && !rg.mask)
    throw std::invalid_argument("collapse_block_to_lut: root LUT has no mask");

  auto readers = n.net_readers();
  std::vector<char> interior(n.gates.size(), 0);
  interior[static_cast<size_t>(root)] = 1;

  std::vector<NetId> cut;
  for (NetId f : rg.fanin)
    if (std::find(cut.begin(), cut.end(), f) == cut.end()) cut.push_back(f);

  // Grow the block: a cut net's driver may move inside when the net is not
  // observed outside the block (not a PO, every reader already interior) and
  // its function is known. Absorption splices the driver's fanins into the
  // cut in place, so input order stays deterministic.
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < cut.size(); ++i) {
      NetId net = cut[i];
      GateId did = n.net_driver[static_cast<size_t>(net)];
      if (did == kNoGate) continue;
      const Gate& d = n.gates[static_cast<size_t>(did)];
      if (d.is_lut() && !d.mask) continue;
      bool external = n.is_po_net(net);
      if (!external)
        for (GateId r : readers[static_cast<size_t>(net)])
          if (!interior[static_cast<size_t>(r)]) { external = true; break; }
      if (external) continue;
      interior[static_cast<size_t>(did)] = 1;
      cut.erase(cut.begin() + static_cast<long>(i));
      size_t pos = i;
      for (NetId f : d.fanin)
        if (std::find(cut.begin(), cut.end(), f) == cut.end())
          cut.insert(cut.begin() + static_cast<long>(pos++), f);
      changed = true;
      break;
    }
  }

  if (static_cast<int>(cut.size()) > max_arity || cut.size() < 2) {
    BlockCollapseRefusal r;
    r.distinct_inputs = static_cast<int>(cut.size());
    if (cut.size() < 2) {
      // A lone inverter/buffer block hides nothing; same bound violation.
      r.reason = BlockCollapseRefusal::Reason::ArityExceeded;
      return r;
    }
    bool blocked_sharing = false;
    for (NetId net : cut) {
      GateId did = n.net_driver[static_cast<size_t>(net)];
      if (did == kNoGate) continue;
      const Gate& d = n.gates[static_cast<size_t>(did)];
      if (d.is_lut() && !d.mask) continue;
      blocked_sharing = true;  // stayed out only because externally observed
      break;
    }
    r.reason = blocked_sharing ? BlockCollapseRefusal::Reason::InteriorFanout
                               : BlockCollapseRefusal::Reason::ArityExceeded;
    return r;
  }

  // Truth table over the cut, first cut net = MSB of the row index.
  std::vector<GateId> order;
  for (GateId g : n.topo_order())
    if (interior[static_cast<size_t>(g)]) order.push_back(g);

  LutMask mask{static_cast<uint8_t>(cut.size()), 0};
  std::map<NetId, bool> value;
  for (uint32_t r = 0; r < mask.rows(); ++r) {
    value.clear();
    for (size_t j = 0; j < cut.size(); ++j)
      value[cut[j]] = (r >> (cut.size() - 1 - j)) & 1u;
    for (GateId g : order) {
      const Gate& gg = n.gates[static_cast<size_t>(g)];
      std::vector<bool> gi;
      for (NetId f : gg.fanin) gi.push_back(value.at(f));
      value[gg.fanout] =
          gg.is_lut() ? gg.mask->eval(gi.begin(), gi.end()) : eval_kind(gg.kind, gi);
    }
    if (value.at(rg.fanout)) mask.bits |= 1u << r;
  }

  Netlist work = n;
  GateId lut = append_gate(work, BaseKind::Lut, cut, rg.fanout);
  work.gates[static_cast<size_t>(lut)].mask = mask;

  std::vector<bool> dead(work.gates.size(), false);
  for (size_t g = 0; g < n.gates.size(); ++g)
    if (interior[g]) dead[g] = true;

  BlockCollapse out;
  out.netlist = compacted(work, dead);
  out.mask = mask;
  out.lut = driver_of_name(out.netlist, n.net_name(rg.fanout));
  for (NetId c : cut) {
    auto mapped = out.netlist.find_net(n.net_name(c));
    if (!mapped) throw std::logic_error("collapse lost cut net");
    out.inputs.push_back(*mapped);
  }
  return out;
}

}  // namespace camolut
