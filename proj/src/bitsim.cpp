#include "camolut/bitsim.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

#include "camolut/kernels.hpp"

namespace camolut {
namespace {

uint64_t splitmix64(uint64_t& x) {
  x += 0x9e3779b97f4a7c15ull;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Packed exhaustive pattern for index bit `shift` of the vector counter:
// lanes run v = base..base+63, the row bit is (v >> shift) & 1.
uint64_t exhaustive_word(uint64_t base, int shift) {
  static const uint64_t periodic[6] = {
      0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
      0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
  if (shift < 6) return periodic[shift];
  return ((base >> shift) & 1ull) ? ~0ull : 0ull;
}

}  // namespace

BatchSim::BatchSim(const Netlist& n, const MaskTable* masks, size_t words)
    : net_(&n), words_(words) {
  topo_ = n.topo_order();
  rows_.assign(static_cast<size_t>(n.net_count()) * words_, 0);
  tmp_.assign(words_, 0);
  lut_masks_.resize(n.gate_count());
  for (const Gate& g : n.gates) {
    if (!g.is_lut()) continue;
    const LutMask* m = nullptr;
    if (masks) {
      auto it = masks->entries.find(g.id);
      if (it != masks->entries.end()) m = &it->second;
    }
    if (!m && g.mask) m = &*g.mask;
    if (!m)
      throw std::runtime_error("LUT gate '" + n.net_name(g.fanout) +
                               "' has no mask (supply a mask table)");
    if (m->arity != g.arity())
      throw std::runtime_error("mask arity mismatch on '" +
                               n.net_name(g.fanout) + "'");
    lut_masks_[g.id] = *m;
  }
}

void BatchSim::fill_exhaustive(uint64_t base) {
  if (base % 64 != 0) throw std::logic_error("exhaustive base must be 64-aligned");
  const int p = net_->pi_count();
  for (int i = 0; i < p; ++i) {
    uint64_t* r = pi_row(i);
    int shift = p - 1 - i;  // PI 0 = MSB of the index, toggles slowest
    for (size_t w = 0; w < words_; ++w)
      r[w] = exhaustive_word(base + 64 * w, shift);
  }
}

void BatchSim::fill_random(uint64_t& rng_state) {
  for (int i = 0; i < net_->pi_count(); ++i) {
    uint64_t* r = pi_row(i);
    for (size_t w = 0; w < words_; ++w) r[w] = splitmix64(rng_state);
  }
}

void BatchSim::eval() {
  const kern::Ops& k = kern::ops();
  const size_t n = words_;
  for (GateId id : topo_) {
    const Gate& g = net_->gates[id];
    uint64_t* dst = row(g.fanout);
    const uint64_t* in0 = row(g.fanin[0]);
    switch (g.kind) {
      case BaseKind::Not:
        k.not_(dst, in0, n);
        break;
      case BaseKind::Buf:
        k.copy(dst, in0, n);
        break;
      case BaseKind::And:
      case BaseKind::Nand: {
        k.and2(dst, in0, row(g.fanin[1]), n);
        for (size_t j = 2; j < g.fanin.size(); ++j) k.and_acc(dst, row(g.fanin[j]), n);
        if (g.kind == BaseKind::Nand) k.not_ip(dst, n);
        break;
      }
      case BaseKind::Or:
      case BaseKind::Nor: {
        k.or2(dst, in0, row(g.fanin[1]), n);
        for (size_t j = 2; j < g.fanin.size(); ++j) k.or_acc(dst, row(g.fanin[j]), n);
        if (g.kind == BaseKind::Nor) k.not_ip(dst, n);
        break;
      }
      case BaseKind::Xor:
      case BaseKind::Xnor: {
        k.xor2(dst, in0, row(g.fanin[1]), n);
        for (size_t j = 2; j < g.fanin.size(); ++j) k.xor_acc(dst, row(g.fanin[j]), n);
        if (g.kind == BaseKind::Xnor) k.not_ip(dst, n);
        break;
      }
      case BaseKind::Lut: {
        const uint64_t* ins[5];
        for (size_t j = 0; j < g.fanin.size(); ++j) ins[j] = row(g.fanin[j]);
        k.lut(dst, ins, static_cast<int>(g.fanin.size()),
              lut_masks_[g.id].bits, n);
        break;
      }
    }
  }
}

std::vector<bool> BatchSim::run_single(const std::vector<bool>& assignment) {
  if (static_cast<int>(assignment.size()) != net_->pi_count())
    throw std::invalid_argument("assignment size != PI count");
  for (int i = 0; i < net_->pi_count(); ++i) {
    uint64_t* r = pi_row(i);
    std::memset(r, 0, words_ * sizeof(uint64_t));
    if (assignment[i]) r[0] = 1;
  }
  eval();
  std::vector<bool> out(net_->po_count());
  for (int i = 0; i < net_->po_count(); ++i) out[i] = po_row(i)[0] & 1;
  return out;
}

std::vector<bool> simulate(const Netlist& n, const std::vector<bool>& assignment,
                           const MaskTable* masks) {
  BatchSim sim(n, masks, 1);
  return sim.run_single(assignment);
}

namespace {

std::vector<std::string> names_of(const Netlist& n, const std::vector<NetId>& ids) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (NetId i : ids) out.push_back(n.net_names[i]);
  return out;
}

std::vector<bool> lane_assignment(BatchSim& sim, size_t word, int bit) {
  std::vector<bool> a(sim.netlist().pi_count());
  for (int i = 0; i < sim.netlist().pi_count(); ++i)
    a[i] = (sim.pi_row(i)[word] >> bit) & 1ull;
  return a;
}

}  // namespace

EquivalenceVerdict check_equivalence(const Netlist& a, const Netlist& b,
                                     const MaskTable* masks_a,
                                     const MaskTable* masks_b,
                                     const EquivalenceOptions& opt) {
  if (names_of(a, a.primary_inputs) != names_of(b, b.primary_inputs))
    throw std::invalid_argument("equivalence: PI name lists differ");
  if (names_of(a, a.primary_outputs) != names_of(b, b.primary_outputs))
    throw std::invalid_argument("equivalence: PO name lists differ");

  const int p = a.pi_count();
  const bool exhaustive = p <= opt.exhaustive_max_pis;
  const size_t chunk_words = 512;

  BatchSim sa(a, masks_a, chunk_words);
  BatchSim sb(b, masks_b, chunk_words);

  uint64_t total;
  if (exhaustive) {
    total = (p >= 64) ? ~0ull : (1ull << p);
  } else {
    total = opt.budget + 2 + static_cast<uint64_t>(p);  // specials up front
  }

  uint64_t rng = opt.seed;
  uint64_t done = 0;
  EquivalenceVerdict v;
  while (done < total) {
    uint64_t lanes = std::min<uint64_t>(total - done, 64 * chunk_words);
    if (exhaustive) {
      sa.fill_exhaustive(done);
    } else {
      sa.fill_random(rng);
      // Deterministic specials in the first lanes: all-0, all-1, one-hots.
      for (uint64_t lane = done; lane < std::min<uint64_t>(total, done + lanes);
           ++lane) {
        if (lane >= 2 + static_cast<uint64_t>(p)) break;
        size_t w = (lane - done) / 64;
        uint64_t bit = 1ull << ((lane - done) % 64);
        for (int i = 0; i < p; ++i) {
          bool val = (lane == 1) || (lane >= 2 && lane - 2 == static_cast<uint64_t>(i));
          uint64_t* r = sa.pi_row(i);
          if (val) r[w] |= bit; else r[w] &= ~bit;
        }
      }
    }
    // Mirror PI rows to the other side.
    for (int i = 0; i < p; ++i)
      std::copy(sa.pi_row(i), sa.pi_row(i) + chunk_words, sb.pi_row(i));

    sa.eval();
    sb.eval();

    size_t used_words = static_cast<size_t>((lanes + 63) / 64);
    for (int o = 0; o < a.po_count(); ++o) {
      const uint64_t* ra = sa.po_row(o);
      const uint64_t* rb = sb.po_row(o);
      for (size_t w = 0; w < used_words; ++w) {
        uint64_t diff = ra[w] ^ rb[w];
        if (w == used_words - 1 && lanes % 64 != 0)
          diff &= (1ull << (lanes % 64)) - 1ull;
        if (!diff) continue;
        int bit = __builtin_ctzll(diff);
        v.kind = EquivalenceVerdict::Kind::Counterexample;
        v.vectors_checked = done + 64 * w + static_cast<uint64_t>(bit) + 1;
        v.cex = Counterexample{lane_assignment(sa, w, bit), o};
        return v;
      }
    }
    done += lanes;
  }
  v.kind = exhaustive ? EquivalenceVerdict::Kind::EquivalentExhaustive
                      : EquivalenceVerdict::Kind::EquivalentSampled;
  v.vectors_checked = done;
  return v;
}

}  // namespace camolut
