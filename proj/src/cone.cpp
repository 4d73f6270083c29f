#include "camolut/cone.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace camolut {

namespace {

// Per-gate bitset over primary output indices: bit p set means the gate lies
// in the fan-in cone of output p. One reverse-topological pass computes all
// cones at once.
std::vector<std::vector<uint64_t>> reach_bits(const Netlist& n) {
  size_t po_count = n.primary_outputs.size();
  size_t words = (po_count + 63) / 64;
  std::vector<std::vector<uint64_t>> sig(n.gates.size(),
                                         std::vector<uint64_t>(words, 0));

  std::map<NetId, size_t> po_index;
  for (size_t p = 0; p < po_count; ++p) po_index.emplace(n.primary_outputs[p], p);

  std::vector<GateId> topo = n.topo_order();
  auto consumers = n.gate_consumers();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    GateId g = *it;
    auto& bits = sig[static_cast<size_t>(g)];
    if (auto p = po_index.find(n.gates[static_cast<size_t>(g)].fanout);
        p != po_index.end())
      bits[p->second / 64] |= uint64_t{1} << (p->second % 64);
    for (GateId c : consumers[static_cast<size_t>(g)]) {
      const auto& cb = sig[static_cast<size_t>(c)];
      for (size_t w = 0; w < words; ++w) bits[w] |= cb[w];
    }
  }
  return sig;
}

}  // namespace

std::vector<Mfic> compute_mfics(const Netlist& n) {
  auto sig = reach_bits(n);
  std::vector<Mfic> out(n.primary_outputs.size());
  for (size_t p = 0; p < out.size(); ++p) out[p].output = n.primary_outputs[p];
  for (size_t g = 0; g < n.gates.size(); ++g) {
    const auto& bits = sig[g];
    for (size_t w = 0; w < bits.size(); ++w) {
      uint64_t word = bits[w];
      while (word) {
        int b = __builtin_ctzll(word);
        word &= word - 1;
        out[w * 64 + static_cast<size_t>(b)].gates.push_back(static_cast<GateId>(g));
      }
    }
  }
  return out;  // gate lists ascending by construction
}

std::vector<GateClass> classify_gates(const Netlist& n) {
  auto sig = reach_bits(n);

  std::map<std::vector<uint64_t>, size_t> index;
  std::vector<GateClass> classes;
  for (size_t g = 0; g < n.gates.size(); ++g) {
    auto [it, inserted] = index.emplace(sig[g], classes.size());
    if (inserted) {
      GateClass cls;
      const auto& bits = sig[g];
      for (size_t w = 0; w < bits.size(); ++w) {
        uint64_t word = bits[w];
        while (word) {
          int b = __builtin_ctzll(word);
          word &= word - 1;
          cls.signature.push_back(n.primary_outputs[w * 64 + static_cast<size_t>(b)]);
        }
      }
      std::sort(cls.signature.begin(), cls.signature.end());
      classes.push_back(std::move(cls));
    }
    GateClass& cls = classes[it->second];
    cls.members.push_back(static_cast<GateId>(g));
    if (!n.is_po_net(n.gates[g].fanout))
      cls.inner_members.push_back(static_cast<GateId>(g));
  }

  std::sort(classes.begin(), classes.end(), [](const GateClass& a, const GateClass& b) {
    if (a.inner_members.size() != b.inner_members.size())
      return a.inner_members.size() > b.inner_members.size();
    return a.signature < b.signature;
  });
  return classes;
}

std::vector<GateClass> classify_gates(const Netlist& n, const std::vector<Mfic>&) {
  return classify_gates(n);
}

std::string classes_to_csv(const std::vector<GateClass>& classes) {
  std::ostringstream out;
  out << "class_rank,signature_size,members,inner_members\n";
  for (size_t i = 0; i < classes.size(); ++i) {
    const GateClass& c = classes[i];
    out << (i + 1) << ',' << c.signature.size() << ',' << c.members.size() << ','
        << c.inner_members.size() << '\n';
  }
  return out.str();
}

}  // namespace camolut
