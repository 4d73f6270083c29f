#include "camolut/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include <json.hpp>

#include "camolut/bitsim.hpp"
#include "camolut/cone.hpp"

namespace camolut {

namespace {

double log2_candidates(const Gate& g, std::optional<uint64_t> k_override) {
  if (k_override) return std::log2(static_cast<double>(*k_override));
  return static_cast<double>(lut_candidate_log2(g.arity()));
}

std::vector<GateId> lut_gates_of(const Netlist& n) {
  std::vector<GateId> luts;
  for (const Gate& g : n.gates)
    if (g.is_lut()) luts.push_back(g.id);
  return luts;
}

// log2(sum_i 2^li) without overflowing: logsumexp in base 2.
double log2_sum(const std::vector<double>& l) {
  if (l.empty()) return 0.0;
  double m = *std::max_element(l.begin(), l.end());
  double s = 0.0;
  for (double x : l) s += std::exp2(x - m);
  return m + std::log2(s);
}

}  // namespace

AttackReport cpa_partition(const Netlist& n, std::optional<uint64_t> k_override) {
  if (k_override && *k_override < 2)
    throw std::invalid_argument("k override must be at least 2");
  AttackReport rep;
  rep.attack = "cpa";

  std::vector<GateId> luts = lut_gates_of(n);
  for (GateId g : luts)
    rep.naive_log2 += log2_candidates(n.gates[static_cast<size_t>(g)], k_override);
  if (luts.empty()) return rep;

  // LUT membership per PO cone, PO order.
  std::vector<Mfic> cones = compute_mfics(n);
  std::vector<std::vector<GateId>> cone_luts(cones.size());
  for (size_t c = 0; c < cones.size(); ++c)
    for (GateId g : cones[c].gates)
      if (n.gates[static_cast<size_t>(g)].is_lut()) cone_luts[c].push_back(g);

  std::vector<char> resolved(n.gates.size(), 0);
  size_t remaining = luts.size();
  std::vector<double> stage_log2s;

  while (remaining > 0) {
    // Peel the cone with the fewest unresolved LUTs (ties: first PO).
    size_t best = cones.size();
    size_t best_unresolved = 0;
    for (size_t c = 0; c < cones.size(); ++c) {
      size_t u = 0;
      for (GateId g : cone_luts[c])
        if (!resolved[static_cast<size_t>(g)]) ++u;
      if (u == 0) continue;
      if (best == cones.size() || u < best_unresolved) {
        best = c;
        best_unresolved = u;
      }
    }
    if (best == cones.size())
      throw std::logic_error("unresolved LUT outside every PO cone");

    CpaStage stage;
    stage.cone_output = cones[best].output;
    size_t prev_resolved = 0;
    for (GateId g : cone_luts[best]) {
      if (resolved[static_cast<size_t>(g)]) {
        ++prev_resolved;
      } else {
        stage.resolved.push_back(g);
        stage.log2_size +=
            log2_candidates(n.gates[static_cast<size_t>(g)], k_override);
      }
    }
    // A lone unknown LUT surrounded by recovered ones is pinned by the
    // already-known context; isolating it costs constant work, not a joint
    // enumeration.
    if (stage.resolved.size() == 1 && prev_resolved >= 1) {
      stage.constant = true;
      stage.log2_size = 0.0;
    }
    for (GateId g : stage.resolved) resolved[static_cast<size_t>(g)] = 1;
    remaining -= stage.resolved.size();
    stage_log2s.push_back(stage.log2_size);
    rep.stages.push_back(std::move(stage));
  }

  for (double l : stage_log2s) rep.dominant_log2 = std::max(rep.dominant_log2, l);
  rep.total_log2 = log2_sum(stage_log2s);
  return rep;
}

namespace {

void check_same_interface(const Netlist& a, const Netlist& b) {
  auto names = [](const Netlist& n, const std::vector<NetId>& nets) {
    std::vector<std::string> out;
    for (NetId x : nets) out.push_back(n.net_name(x));
    return out;
  };
  if (names(a, a.primary_inputs) != names(b, b.primary_inputs) ||
      names(a, a.primary_outputs) != names(b, b.primary_outputs))
    throw std::invalid_argument("attack target and oracle interfaces differ");
}

struct ProbeSet {
  size_t words = 0;
  bool exhaustive = false;
};

ProbeSet probe_set(int pi_count, const OracleBudget& budget) {
  ProbeSet p;
  p.exhaustive = pi_count <= std::min(budget.exhaustive_threshold, 30);
  uint64_t lanes = p.exhaustive ? (uint64_t{1} << pi_count)
                                : std::max<uint64_t>(budget.max_queries, 1);
  p.words = static_cast<size_t>((lanes + 63) / 64);
  return p;
}

void fill_probes(BatchSim& sim, const ProbeSet& p, uint64_t seed) {
  if (p.exhaustive) {
    sim.fill_exhaustive(0);
  } else {
    uint64_t rng = seed;
    sim.fill_random(rng);
  }
  sim.eval();
}

bool po_rows_match(const BatchSim& a, const BatchSim& b, size_t po_count,
                   size_t words) {
  for (size_t p = 0; p < po_count; ++p)
    if (std::memcmp(a.po_row(p), b.po_row(p), words * sizeof(uint64_t)) != 0)
      return false;
  return true;
}

}  // namespace

AttackReport brute_force_attack(const Netlist& obf, const Netlist& oracle,
                                const MaskTable* oracle_masks,
                                const OracleBudget& budget,
                                const MaskTable* secret) {
  check_same_interface(obf, oracle);
  AttackReport rep;
  rep.attack = "bfa";

  std::vector<GateId> luts = lut_gates_of(obf);
  double joint_bits = 0.0;
  for (GateId g : luts)
    joint_bits += lut_candidate_log2(obf.gates[static_cast<size_t>(g)].arity());
  rep.naive_log2 = joint_bits;
  rep.total_log2 = joint_bits;

  ProbeSet probes = probe_set(obf.pi_count(), budget);
  BatchSim osim(oracle, oracle_masks, probes.words);
  fill_probes(osim, probes, budget.seed);

  if (secret) {
    BatchSim ssim(obf, secret, probes.words);
    fill_probes(ssim, probes, budget.seed);
    rep.secret_consistent =
        po_rows_match(osim, ssim, obf.primary_outputs.size(), probes.words);
  }

  double cap_bits = std::log2(static_cast<double>(std::max<uint64_t>(budget.enum_cap, 1)));
  rep.enumerated = joint_bits <= cap_bits + 1e-9;
  rep.budget_exhausted = !rep.enumerated;
  if (!rep.enumerated) return rep;

  // Odometer over per-LUT mask values, lexicographic by gate id with the
  // last LUT stepping fastest.
  std::vector<uint32_t> counter(luts.size(), 0);
  std::vector<uint32_t> limit_bits(luts.size());
  for (size_t i = 0; i < luts.size(); ++i)
    limit_bits[i] = lut_candidate_log2(obf.gates[static_cast<size_t>(luts[i])].arity());

  bool done = false;
  while (!done) {
    MaskTable cand;
    for (size_t i = 0; i < luts.size(); ++i)
      cand.entries[luts[i]] =
          LutMask{obf.gates[static_cast<size_t>(luts[i])].arity(), counter[i]};

    BatchSim csim(obf, &cand, probes.words);
    fill_probes(csim, probes, budget.seed);
    ++rep.candidates_tested;
    if (po_rows_match(osim, csim, obf.primary_outputs.size(), probes.words)) {
      ++rep.consistent_candidates;
      if (!rep.recovered) rep.recovered = cand;
    }

    done = true;
    for (size_t i = luts.size(); i-- > 0;) {
      uint32_t full = (limit_bits[i] >= 32) ? 0xFFFFFFFFu
                                            : ((1u << limit_bits[i]) - 1u);
      counter[i] = (counter[i] + 1) & full;
      if (counter[i] != 0) {
        done = false;
        break;
      }
    }
    if (luts.empty()) break;  // the single empty assignment was tested
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Incomplete-testability analysis: three-valued (0/1/X) batch simulation.
// Unknowns propagate Kleene-style, so a known output bit is trustworthy no
// matter what the X inputs hide.

namespace {

struct XSim {
  const Netlist& n;
  size_t words;
  std::vector<GateId> topo;
  std::vector<uint64_t> v, u;  // per net: value plane, unknown plane
  GateId forced = kNoGate;     // LUT forced to a constant; others read X
  bool forced_value = false;

  XSim(const Netlist& nl, size_t w)
      : n(nl), words(w), topo(nl.topo_order()),
        v(nl.net_names.size() * w, 0), u(nl.net_names.size() * w, 0) {}

  uint64_t* vrow(NetId x) { return v.data() + static_cast<size_t>(x) * words; }
  uint64_t* urow(NetId x) { return u.data() + static_cast<size_t>(x) * words; }

  void eval() {
    for (GateId gi : topo) {
      const Gate& g = n.gates[static_cast<size_t>(gi)];
      uint64_t* ov = vrow(g.fanout);
      uint64_t* ou = urow(g.fanout);
      if (g.is_lut()) {
        if (gi == forced) {
          uint64_t val = forced_value ? ~uint64_t{0} : 0;
          for (size_t w = 0; w < words; ++w) { ov[w] = val; ou[w] = 0; }
        } else {
          for (size_t w = 0; w < words; ++w) { ov[w] = 0; ou[w] = ~uint64_t{0}; }
        }
        continue;
      }
      switch (g.kind) {
        case BaseKind::Not:
        case BaseKind::Buf: {
          const uint64_t* av = vrow(g.fanin[0]);
          const uint64_t* au = urow(g.fanin[0]);
          bool inv = g.kind == BaseKind::Not;
          for (size_t w = 0; w < words; ++w) {
            ou[w] = au[w];
            ov[w] = (inv ? ~av[w] : av[w]) & ~au[w];
          }
          break;
        }
        case BaseKind::And:
        case BaseKind::Nand:
        case BaseKind::Or:
        case BaseKind::Nor: {
          // AND: output known 1 iff every input known 1, known 0 iff any
          // input known 0 (the dominating value punches through Xs). OR is
          // the dual; NAND/NOR swap the planes at the end.
          bool is_or = g.kind == BaseKind::Or || g.kind == BaseKind::Nor;
          bool inv = kind_is_inverting(g.kind);
          for (size_t w = 0; w < words; ++w) {
            uint64_t all = ~uint64_t{0};  // every input known at its weak value
            uint64_t any = 0;             // some input known at its dominating value
            for (NetId f : g.fanin) {
              uint64_t fv = vrow(f)[w], fu = urow(f)[w];
              uint64_t fk1 = fv & ~fu, fk0 = ~fv & ~fu;
              all &= is_or ? fk0 : fk1;
              any |= is_or ? fk1 : fk0;
            }
            uint64_t known1 = is_or ? any : all;
            uint64_t known0 = is_or ? all : any;
            if (inv) std::swap(known0, known1);
            ov[w] = known1;
            ou[w] = ~(known0 | known1);
          }
          break;
        }
        case BaseKind::Xor:
        case BaseKind::Xnor: {
          for (size_t w = 0; w < words; ++w) {
            uint64_t val = 0, unk = 0;
            for (NetId f : g.fanin) {
              val ^= vrow(f)[w];
              unk |= urow(f)[w];
            }
            if (g.kind == BaseKind::Xnor) val = ~val;
            ou[w] = unk;
            ov[w] = val & ~unk;
          }
          break;
        }
        case BaseKind::Lut:
          break;  // handled above
      }
    }
  }
};

}  // namespace

AttackReport ita_check(const Netlist& obf, const OracleBudget& budget) {
  AttackReport rep;
  rep.attack = "ita";
  std::vector<GateId> luts = lut_gates_of(obf);
  if (luts.empty()) return rep;

  size_t p = obf.primary_inputs.size();
  // 2^30 lanes is already far past any sensible exhaustive run
  bool exhaustive =
      static_cast<int>(p) <= std::min(budget.exhaustive_threshold, 30);
  uint64_t total_lanes = exhaustive ? (uint64_t{1} << p)
                                    : std::max<uint64_t>(budget.max_queries, 1);
  // Chunks overshoot total_lanes; surplus lanes repeat earlier assignments
  // (exhaustive indexing wraps modulo 2^p, random lanes are just more
  // samples), so no validity masking is needed anywhere below.
  const size_t chunk_words = std::min<size_t>(512, (total_lanes + 63) / 64);

  // LUT-free reachability to a PO from each net: a difference forced at a
  // LUT output stays observable only along standard gates; any path through
  // another LUT reads X and the difference dies there.
  std::vector<char> reaches_po(obf.net_names.size(), 0);
  {
    for (NetId x : obf.primary_outputs) reaches_po[static_cast<size_t>(x)] = 1;
    std::vector<GateId> topo = obf.topo_order();
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
      const Gate& g = obf.gates[static_cast<size_t>(*it)];
      if (g.is_lut()) continue;  // an X sink; differences die here
      if (reaches_po[static_cast<size_t>(g.fanout)])
        for (NetId f : g.fanin) reaches_po[static_cast<size_t>(f)] = 1;
    }
  }

  for (GateId target : luts) {
    const Gate& tg = obf.gates[static_cast<size_t>(target)];
    AttackReport::ItaVerdict verdict;
    verdict.gate = target;

    // Structural short-circuits, definitive in both modes.
    bool input_from_lut = false;
    for (NetId f : tg.fanin) {
      GateId d = obf.net_driver[static_cast<size_t>(f)];
      if (d != kNoGate && obf.gates[static_cast<size_t>(d)].is_lut())
        input_from_lut = true;
    }
    if (input_from_lut) {
      verdict.kind = AttackReport::ItaVerdict::Kind::Protected_;
      verdict.reason = "justification";
      rep.verdicts.push_back(verdict);
      continue;
    }
    if (!reaches_po[static_cast<size_t>(tg.fanout)]) {
      verdict.kind = AttackReport::ItaVerdict::Kind::Protected_;
      verdict.reason = "sensitization";
      rep.verdicts.push_back(verdict);
      continue;
    }

    std::vector<char> just0(tg.fanin.size(), 0), just1(tg.fanin.size(), 0);
    bool sensitized = false;

    XSim s0(obf, chunk_words), s1(obf, chunk_words);
    s0.forced = target; s0.forced_value = false;
    s1.forced = target; s1.forced_value = true;

    uint64_t rng =
        budget.seed ^ (0x9e3779b97f4a7c15ull * (static_cast<uint64_t>(target) + 1));
    auto next_rand = [&rng]() {
      uint64_t z = (rng += 0x9e3779b97f4a7c15ull);
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      return z ^ (z >> 31);
    };

    for (uint64_t done = 0; done < total_lanes; done += chunk_words * 64) {
      for (size_t i = 0; i < obf.primary_inputs.size(); ++i) {
        uint64_t* r0 = s0.vrow(obf.primary_inputs[i]);
        uint64_t* r1 = s1.vrow(obf.primary_inputs[i]);
        uint64_t* u0 = s0.urow(obf.primary_inputs[i]);
        uint64_t* u1 = s1.urow(obf.primary_inputs[i]);
        for (size_t w = 0; w < chunk_words; ++w) {
          uint64_t pattern;
          if (exhaustive) {
            pattern = 0;
            uint64_t base = done + w * 64;
            int shift = static_cast<int>(p) - 1 - static_cast<int>(i);
            for (int b = 0; b < 64; ++b)
              pattern |= (((base + static_cast<uint64_t>(b)) >> shift) & 1ull)
                         << b;
          } else {
            pattern = next_rand();
          }
          r0[w] = pattern; r1[w] = pattern;  // both runs probe identical vectors
          u0[w] = 0; u1[w] = 0;
        }
      }
      s0.eval();
      s1.eval();

      // target inputs are upstream of the forced output; run 0's planes serve
      for (size_t j = 0; j < tg.fanin.size(); ++j) {
        const uint64_t* fv = s0.vrow(tg.fanin[j]);
        const uint64_t* fu = s0.urow(tg.fanin[j]);
        for (size_t w = 0; w < chunk_words; ++w) {
          if ((~fv[w] & ~fu[w]) != 0) just0[j] = 1;
          if ((fv[w] & ~fu[w]) != 0) just1[j] = 1;
        }
      }
      for (size_t po = 0; po < obf.primary_outputs.size() && !sensitized; ++po) {
        NetId x = obf.primary_outputs[po];
        const uint64_t* v0 = s0.vrow(x);
        const uint64_t* u0r = s0.urow(x);
        const uint64_t* v1 = s1.vrow(x);
        const uint64_t* u1r = s1.urow(x);
        for (size_t w = 0; w < chunk_words; ++w) {
          if (((v0[w] ^ v1[w]) & ~u0r[w] & ~u1r[w]) != 0) {
            sensitized = true;
            break;
          }
        }
      }

      bool all_just = true;
      for (size_t j = 0; j < tg.fanin.size(); ++j)
        if (!just0[j] || !just1[j]) all_just = false;
      if (all_just && sensitized) break;  // resolvable, stop probing early
    }

    bool all_just = true;
    for (size_t j = 0; j < tg.fanin.size(); ++j)
      if (!just0[j] || !just1[j]) all_just = false;

    if (all_just && sensitized) {
      verdict.kind = AttackReport::ItaVerdict::Kind::Resolvable;
      verdict.exhaustive = exhaustive;
    } else if (exhaustive) {
      verdict.kind = AttackReport::ItaVerdict::Kind::Protected_;
      verdict.reason = all_just ? "sensitization" : "justification";
      verdict.exhaustive = true;
    } else {
      verdict.kind = AttackReport::ItaVerdict::Kind::Inconclusive;
      verdict.reason = "budget";
    }
    rep.verdicts.push_back(verdict);
  }
  return rep;
}

AttackReport sca_audit(const std::vector<std::string>& emitted_views) {
  AttackReport rep;
  rep.attack = "sca";
  rep.views_identical = true;
  for (size_t i = 1; i < emitted_views.size(); ++i)
    if (emitted_views[i] != emitted_views[0]) rep.views_identical = false;
  return rep;
}

std::string AttackReport::to_json() const {
  nlohmann::json j;
  j["attack"] = attack;
  if (attack == "cpa") {
    nlohmann::json stages_j = nlohmann::json::array();
    for (const CpaStage& s : stages) {
      nlohmann::json sj;
      sj["cone_output"] = s.cone_output;
      sj["resolved"] = s.resolved;
      sj["log2_size"] = s.log2_size;
      sj["constant"] = s.constant;
      stages_j.push_back(sj);
    }
    j["stages"] = stages_j;
    j["dominant_log2"] = dominant_log2;
    j["total_log2"] = total_log2;
    j["naive_log2"] = naive_log2;
  } else if (attack == "bfa") {
    j["joint_log2"] = naive_log2;
    j["enumerated"] = enumerated;
    j["budget_exhausted"] = budget_exhausted;
    j["candidates_tested"] = candidates_tested;
    j["consistent_candidates"] = consistent_candidates;
    j["secret_consistent"] = secret_consistent;
    if (recovered) {
      nlohmann::json masks = nlohmann::json::object();
      for (const auto& [g, m] : recovered->entries)
        masks[std::to_string(g)] = m.to_hex();
      j["recovered"] = masks;
    }
  } else if (attack == "ita") {
    nlohmann::json vj = nlohmann::json::array();
    for (const ItaVerdict& v : verdicts) {
      nlohmann::json e;
      e["gate"] = v.gate;
      switch (v.kind) {
        case ItaVerdict::Kind::Resolvable: e["verdict"] = "resolvable"; break;
        case ItaVerdict::Kind::Protected_: e["verdict"] = "protected"; break;
        case ItaVerdict::Kind::Inconclusive: e["verdict"] = "inconclusive"; break;
      }
      if (!v.reason.empty()) e["reason"] = v.reason;
      e["exhaustive"] = v.exhaustive;
      vj.push_back(e);
    }
    j["verdicts"] = vj;
  } else if (attack == "sca") {
    j["views_identical"] = views_identical;
  }
  return j.dump(2) + "\n";
}

}  // namespace camolut
