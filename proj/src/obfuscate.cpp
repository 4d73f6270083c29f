#include "camolut/obfuscate.hpp"

#include <algorithm>

#include "camolut/evaluate.hpp"

namespace camolut {

std::string Scheme::name() const {
  return std::string(to_string(lut_kind)) + (reconstruct ? "_re" : "_unre");
}

Scheme Scheme::from_string(const std::string& s) {
  size_t us = s.rfind('_');
  if (us == std::string::npos)
    throw std::invalid_argument("bad scheme '" + s + "', expected e.g. sot_re");
  std::string tail = s.substr(us + 1);
  Scheme sch;
  if (tail == "re")
    sch.reconstruct = true;
  else if (tail == "unre")
    sch.reconstruct = false;
  else
    throw std::invalid_argument("bad scheme '" + s + "', expected _re or _unre");
  sch.lut_kind = lut_kind_from_string(s.substr(0, us));
  return sch;
}

const std::vector<Scheme>& Scheme::all() {
  static const std::vector<Scheme> schemes = {
      {LutKind::MuxOnly, true},  {LutKind::MuxOnly, false},
      {LutKind::SramLut, true},  {LutKind::SramLut, false},
      {LutKind::SotLut, true},   {LutKind::SotLut, false},
  };
  return schemes;
}

namespace {

uint64_t splitmix64(uint64_t& s) {
  uint64_t z = (s += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

uint64_t tie_key(uint64_t seed, GateId g) {
  uint64_t s = seed ^ (0x9e3779b97f4a7c15ull * (static_cast<uint64_t>(g) + 1));
  return splitmix64(s);
}

}  // namespace

std::vector<GateId> rank_candidates(const Netlist& n,
                                    const std::vector<GateClass>& classes,
                                    uint64_t seed) {
  std::vector<int> slack = unit_slack(n);
  std::vector<GateId> ranked;
  for (const GateClass& cls : classes) {
    std::vector<GateId> members = cls.inner_members;
    std::sort(members.begin(), members.end(), [&](GateId a, GateId b) {
      int sa = slack[static_cast<size_t>(a)];
      int sb = slack[static_cast<size_t>(b)];
      if (sa != sb) return sa > sb;  // least critical first
      uint64_t ka = tie_key(seed, a);
      uint64_t kb = tie_key(seed, b);
      if (ka != kb) return ka < kb;
      return a < b;
    });
    ranked.insert(ranked.end(), members.begin(), members.end());
  }
  return ranked;
}

std::vector<GateId> select_candidates(const Netlist& n,
                                      const std::vector<GateClass>& classes,
                                      int count, uint64_t seed, bool force) {
  if (count < 1) throw SelectionError("candidate count must be at least 1");
  if (!force && static_cast<long>(count) * 20 > n.gate_count())
    throw SelectionError(
        "refusing to hide more than 5% of the gates (" +
        std::to_string(count) + " of " + std::to_string(n.gate_count()) +
        "); pass force to override");
  std::vector<GateId> ranked = rank_candidates(n, classes, seed);
  if (static_cast<size_t>(count) > ranked.size())
    throw SelectionError("only " + std::to_string(ranked.size()) +
                         " inner gates are available, cannot hide " +
                         std::to_string(count));
  ranked.resize(static_cast<size_t>(count));
  return ranked;
}

namespace {

GateId driver_of_name(const Netlist& n, const std::string& name) {
  auto net = n.find_net(name);
  if (!net) return kNoGate;
  return n.net_driver[static_cast<size_t>(*net)];
}

void hide_gate(Netlist& n, GateId g, LutKind kind) {
  Gate& gate = n.gates[static_cast<size_t>(g)];
  LutMask mask = mask_of_kind(gate.kind, gate.arity());
  gate.kind = BaseKind::Lut;
  gate.lut_kind = kind;
  gate.mask = mask;
}

struct PendingStep {
  GateId original = kNoGate;  // input-netlist id
  std::string trailing_name;
  std::vector<std::string> added_names;
  std::vector<GateId> removed;  // input-netlist ids where resolvable
};

}  // namespace

ObfuscationResult apply_plan(const Netlist& n, const ObfuscationPlan& plan) {
  ObfuscationResult res;
  res.plan.scheme = plan.scheme;
  res.plan.requested = plan.requested ? plan.requested
                                      : static_cast<int>(plan.selected.size());
  res.plan.seed = plan.seed;

  Netlist work = n;
  std::vector<std::string> hidden_names;  // fanout names of hidden gates
  std::vector<PendingStep> pending_steps;

  size_t backlog_next = 0;
  auto note = [&](GateId input_id, const std::string& why) {
    res.skipped.push_back("gate " +
                          n.net_name(n.gates[static_cast<size_t>(input_id)].fanout) +
                          ": " + why);
  };

  // Try one candidate (input-netlist id); true = a LUT was planted.
  auto attempt = [&](GateId input_id) -> bool {
    const std::string name =
        n.net_name(n.gates[static_cast<size_t>(input_id)].fanout);
    GateId gid = driver_of_name(work, name);
    if (gid == kNoGate) {
      note(input_id, "removed by an earlier rewrite");
      return false;
    }
    const Gate& g = work.gates[static_cast<size_t>(gid)];
    if (g.is_lut()) {
      note(input_id, "already a LUT");
      return false;
    }

    bool needs_rewrite = plan.scheme.reconstruct || g.arity() == 1;
    if (!needs_rewrite) {
      hide_gate(work, gid, plan.scheme.lut_kind);
      hidden_names.push_back(name);
      res.plan.selected.push_back(input_id);
      return true;
    }

    // Names survive compaction; capture what the absorption path removes
    // before the rewrite rebuilds the netlist.
    std::string absorbed_name;
    if (g.arity() == 1) {
      GateId d = work.net_driver[static_cast<size_t>(g.fanin[0])];
      if (d != kNoGate)
        absorbed_name = work.net_name(work.gates[static_cast<size_t>(d)].fanout);
    }

    ReconstructionResult rr = reconstruct_to_2input(work, gid);
    if (auto* refusal = std::get_if<ReconstructionRefusal>(&rr)) {
      note(input_id, refusal->reason);
      return false;
    }
    auto& [rebuilt, step] = std::get<0>(rr);

    PendingStep ps;
    ps.original = input_id;
    ps.trailing_name = name;
    for (GateId a : step.added)
      ps.added_names.push_back(rebuilt.net_name(rebuilt.gates[static_cast<size_t>(a)].fanout));
    if (!step.removed.empty()) {
      ps.removed.push_back(input_id);
      if (step.removed.size() > 1 && !absorbed_name.empty()) {
        if (GateId orig_d = driver_of_name(n, absorbed_name); orig_d != kNoGate)
          ps.removed.push_back(orig_d);
      }
    }
    pending_steps.push_back(std::move(ps));

    work = std::move(rebuilt);
    GateId trailing = driver_of_name(work, name);
    hide_gate(work, trailing, plan.scheme.lut_kind);
    hidden_names.push_back(name);
    res.plan.selected.push_back(input_id);
    return true;
  };

  for (GateId candidate : plan.selected) {
    bool placed = attempt(candidate);
    while (!placed && backlog_next < plan.backlog.size())
      placed = attempt(plan.backlog[backlog_next++]);
    if (!placed && backlog_next >= plan.backlog.size())
      res.skipped.push_back("backlog exhausted; proceeding with fewer gates");
  }
  res.plan.backlog.assign(plan.backlog.begin() + static_cast<long>(backlog_next),
                          plan.backlog.end());

  res.netlist = std::move(work);
  res.netlist.stats.max_level = res.netlist.max_level();
  res.netlist.validate();

  for (const std::string& name : hidden_names) {
    GateId g = driver_of_name(res.netlist, name);
    if (g == kNoGate || !res.netlist.gates[static_cast<size_t>(g)].is_lut())
      throw std::logic_error("hidden gate lost during rewrites: " + name);
    res.lut_gates.push_back(g);
    res.masks.entries[g] = *res.netlist.gates[static_cast<size_t>(g)].mask;
  }
  std::sort(res.lut_gates.begin(), res.lut_gates.end());

  for (const PendingStep& ps : pending_steps) {
    ReconstructionStep step;
    step.original = ps.original;
    step.trailing = driver_of_name(res.netlist, ps.trailing_name);
    for (const std::string& nm : ps.added_names) {
      GateId a = driver_of_name(res.netlist, nm);
      if (a != kNoGate) step.added.push_back(a);
    }
    step.removed = ps.removed;
    res.steps.push_back(std::move(step));
  }
  return res;
}

ObfuscationResult obfuscate(const Netlist& n, const Scheme& scheme, int count,
                            uint64_t seed, bool force) {
  std::vector<GateClass> classes = classify_gates(n);
  std::vector<GateId> ranked = rank_candidates(n, classes, seed);
  std::vector<GateId> selected =
      select_candidates(n, classes, count, seed, force);

  ObfuscationPlan plan;
  plan.scheme = scheme;
  plan.requested = count;
  plan.seed = seed;
  plan.selected = std::move(selected);
  plan.backlog.assign(ranked.begin() + static_cast<long>(plan.selected.size()),
                      ranked.end());
  return apply_plan(n, plan);
}

}  // namespace camolut
