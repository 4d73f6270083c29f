#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "camolut/netlist.hpp"

namespace camolut {
namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

struct RawGate {
  std::string lhs;
  std::string kind;  // uppercased
  std::vector<std::string> args;
  int line = 0;
  int col = 0;
  // LUT extension fields
  int lut_arity = 0;
  std::optional<LutKind> lut_kind;
  std::optional<std::string> mask_hex;
};

struct KindSpec {
  BaseKind kind;
  int min_arity;
  int max_arity;
};

std::optional<KindSpec> standard_kind(const std::string& k) {
  if (k == "AND") return KindSpec{BaseKind::And, 2, 5};
  if (k == "NAND") return KindSpec{BaseKind::Nand, 2, 5};
  if (k == "OR") return KindSpec{BaseKind::Or, 2, 5};
  if (k == "NOR") return KindSpec{BaseKind::Nor, 2, 5};
  if (k == "XOR") return KindSpec{BaseKind::Xor, 2, 5};
  if (k == "XNOR") return KindSpec{BaseKind::Xnor, 2, 5};
  if (k == "NOT" || k == "INV") return KindSpec{BaseKind::Not, 1, 1};
  if (k == "BUFF" || k == "BUF") return KindSpec{BaseKind::Buf, 1, 1};
  return std::nullopt;
}

class BenchParser {
 public:
  explicit BenchParser(const std::string& name) { out_.name = name; }

  void feed_line(const std::string& raw, int line_no) {
    std::string line = raw;
    if (size_t h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) return;

    if (line.rfind("INPUT", 0) == 0 && !is_ident_char(line[5])) {
      declare_pi(paren_arg(line, 5, line_no), line_no);
    } else if (line.rfind("OUTPUT", 0) == 0 && !is_ident_char(line[6])) {
      std::string name = paren_arg(line, 6, line_no);
      output_names_.emplace_back(name, line_no);
    } else {
      parse_gate_line(line, line_no);
    }
  }

  Netlist finish() {
    resolve_outputs();
    build_gates();
    check_cycles();
    return prune_and_pack();
  }

 private:
  Netlist out_;
  std::vector<std::pair<std::string, int>> output_names_;
  std::vector<RawGate> raw_gates_;          // DFFs excluded
  std::vector<std::pair<std::string, std::string>> dffs_;  // lhs, arg
  std::map<std::string, NetId> net_ids_;
  std::vector<int> decl_line_;              // per net

  NetId declare(const std::string& name, int line_no, bool driven_by_gate) {
    if (name.empty() || !std::all_of(name.begin(), name.end(), is_ident_char))
      throw ParseError(line_no, 1, "bad net name '" + name + "'");
    auto [it, fresh] = net_ids_.emplace(name, static_cast<NetId>(out_.net_names.size()));
    if (!fresh)
      throw ParseError(line_no, 1, "multiply driven net '" + name + "'");
    out_.net_names.push_back(name);
    out_.net_driver.push_back(driven_by_gate ? -2 : kNoGate);  // -2 patched later
    decl_line_.push_back(line_no);
    return it->second;
  }

  void declare_pi(const std::string& name, int line_no) {
    NetId id = declare(name, line_no, false);
    out_.primary_inputs.push_back(id);
  }

  std::string paren_arg(const std::string& line, size_t from, int line_no) {
    size_t open = line.find('(', from);
    size_t close = line.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
      throw ParseError(line_no, static_cast<int>(from) + 1, "expected '(name)'");
    std::string inner = trim(line.substr(open + 1, close - open - 1));
    if (trim(line.substr(from, open - from)).size())
      throw ParseError(line_no, static_cast<int>(from) + 1, "unexpected text before '('");
    return inner;
  }

  void parse_gate_line(const std::string& line, int line_no) {
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(line_no, 1, "expected INPUT/OUTPUT or assignment");
    RawGate g;
    g.line = line_no;
    g.lhs = trim(line.substr(0, eq));
    std::string rhs = trim(line.substr(eq + 1));
    size_t open = rhs.find('(');
    size_t close = rhs.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
      throw ParseError(line_no, static_cast<int>(eq) + 2, "expected KIND(args)");
    g.kind = upper(trim(rhs.substr(0, open)));
    g.col = static_cast<int>(eq) + 2;
    std::string args = rhs.substr(open + 1, close - open - 1);
    std::stringstream ss(args);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      tok = trim(tok);
      if (tok.empty())
        throw ParseError(line_no, g.col, "empty fanin argument");
      g.args.push_back(tok);
    }
    if (g.args.empty())
      throw ParseError(line_no, g.col, "gate with no fanin");

    if (g.kind == "DFF") {
      if (g.args.size() != 1)
        throw ParseError(line_no, g.col, "DFF takes exactly one input");
      declare(g.lhs, line_no, false);  // Q becomes a pseudo PI
      dffs_.emplace_back(g.lhs, g.args[0]);
      return;
    }
    if (g.kind.rfind("LUT", 0) == 0) {
      parse_lut_kind(g, line_no);
    } else {
      auto spec = standard_kind(g.kind);
      if (!spec)
        throw ParseError(line_no, g.col, "unknown gate kind '" + g.kind + "'");
      if (static_cast<int>(g.args.size()) < spec->min_arity)
        throw ParseError(line_no, g.col,
                         g.kind + " needs at least " + std::to_string(spec->min_arity) +
                             " input(s)");
      if (static_cast<int>(g.args.size()) > spec->max_arity)
        throw ParseError(line_no, g.col,
                         "gate fanin " + std::to_string(g.args.size()) +
                             " exceeds 5; pre-decompose wide gates");
    }
    declare(g.lhs, line_no, true);
    raw_gates_.push_back(std::move(g));
  }

  // LUT<m>, LUT<m>_MUX|_SRAM|_SOT, optional [hex], e.g. LUT3_SOT[57]
  void parse_lut_kind(RawGate& g, int line_no) {
    std::string t = g.kind;
    size_t pos = 3;
    if (pos >= t.size() || !std::isdigit(static_cast<unsigned char>(t[pos])))
      throw ParseError(line_no, g.col, "LUT arity missing");
    g.lut_arity = t[pos] - '0';
    ++pos;
    if (g.lut_arity < 2 || g.lut_arity > 5)
      throw ParseError(line_no, g.col, "LUT arity must be 2..5");
    if (pos < t.size() && t[pos] == '_') {
      size_t end = t.find('[', pos);
      std::string kind = t.substr(pos + 1, end == std::string::npos
                                               ? std::string::npos
                                               : end - pos - 1);
      try {
        g.lut_kind = lut_kind_from_string(kind);
      } catch (const std::invalid_argument&) {
        throw ParseError(line_no, g.col, "unknown LUT tag '" + kind + "'");
      }
      pos = (end == std::string::npos) ? t.size() : end;
    }
    if (pos < t.size() && t[pos] == '[') {
      size_t close = t.find(']', pos);
      if (close == std::string::npos)
        throw ParseError(line_no, g.col, "unterminated LUT mask");
      g.mask_hex = t.substr(pos + 1, close - pos - 1);
      pos = close + 1;
    }
    if (pos != t.size())
      throw ParseError(line_no, g.col, "trailing text after LUT kind");
    if (static_cast<int>(g.args.size()) != g.lut_arity)
      throw ParseError(line_no, g.col,
                       "LUT" + std::to_string(g.lut_arity) + " takes " +
                           std::to_string(g.lut_arity) + " inputs");
    g.kind = "LUT";
  }

  NetId lookup(const std::string& name, int line_no, int col) const {
    auto it = net_ids_.find(name);
    if (it == net_ids_.end())
      throw ParseError(line_no, col, "undeclared net '" + name + "'");
    return it->second;
  }

  void resolve_outputs() {
    for (auto& [name, line_no] : output_names_) {
      NetId id = lookup(name, line_no, 1);
      if (out_.is_po_net(id))
        throw ParseError(line_no, 1, "duplicate OUTPUT '" + name + "'");
      out_.primary_outputs.push_back(id);
    }
    // DFF boundary cut: Q becomes a pseudo PI (after the real ones, in DFF
    // line order) and D a pseudo PO, deduped against nets already listed.
    out_.stats.dff_count = static_cast<int>(dffs_.size());
    for (auto& [q, d] : dffs_) {
      out_.primary_inputs.push_back(net_ids_.at(q));
      NetId id = lookup(d, decl_line_[net_ids_.at(q)], 1);
      if (!out_.is_po_net(id)) out_.primary_outputs.push_back(id);
    }
  }

  void build_gates() {
    for (RawGate& rg : raw_gates_) {
      Gate g;
      g.id = static_cast<GateId>(out_.gates.size());
      g.fanout = net_ids_.at(rg.lhs);
      for (const std::string& a : rg.args)
        g.fanin.push_back(lookup(a, rg.line, rg.col));
      if (rg.kind == "LUT") {
        g.kind = BaseKind::Lut;
        g.lut_kind = rg.lut_kind;
        if (rg.mask_hex) {
          try {
            g.mask = lut_mask_from_hex(static_cast<uint8_t>(rg.lut_arity), *rg.mask_hex);
          } catch (const std::invalid_argument& e) {
            throw ParseError(rg.line, rg.col, e.what());
          }
        }
      } else {
        g.kind = standard_kind(rg.kind)->kind;
      }
      out_.net_driver[g.fanout] = g.id;
      out_.gates.push_back(std::move(g));
    }
    for (NetId n = 0; n < out_.net_count(); ++n)
      if (out_.net_driver[n] == -2)
        throw std::logic_error("net never patched: " + out_.net_names[n]);
  }

  void check_cycles() {
    std::vector<int> pending(out_.gates.size(), 0);
    auto readers = out_.net_readers();
    for (const Gate& g : out_.gates)
      for (NetId in : g.fanin)
        if (out_.net_driver[in] != kNoGate) ++pending[g.id];
    std::vector<GateId> stack;
    for (const Gate& g : out_.gates)
      if (pending[g.id] == 0) stack.push_back(g.id);
    size_t seen = 0;
    while (!stack.empty()) {
      GateId g = stack.back();
      stack.pop_back();
      ++seen;
      for (GateId r : readers[out_.gates[g].fanout])
        if (--pending[r] == 0) stack.push_back(r);
    }
    if (seen == out_.gates.size()) return;
    for (const Gate& g : out_.gates)
      if (pending[g.id] > 0)
        throw ParseError(decl_line_[g.fanout], 1,
                         "cyclic combinational path through net '" +
                             out_.net_names[g.fanout] + "'");
  }

  Netlist prune_and_pack() {
    // Gates that cannot reach any PO (pseudo POs included) are dropped.
    std::vector<bool> dead(out_.gates.size(), true);
    std::vector<GateId> stack;
    for (NetId po : out_.primary_outputs) {
      GateId d = out_.net_driver[po];
      if (d != kNoGate && dead[d]) {
        dead[d] = false;
        stack.push_back(d);
      }
    }
    while (!stack.empty()) {
      GateId g = stack.back();
      stack.pop_back();
      for (NetId in : out_.gates[g].fanin) {
        GateId d = out_.net_driver[in];
        if (d != kNoGate && dead[d]) {
          dead[d] = false;
          stack.push_back(d);
        }
      }
    }
    out_.stats.pruned_gates =
        static_cast<int>(std::count(dead.begin(), dead.end(), true));
    Netlist packed = compacted(out_, dead);
    packed.name = out_.name;
    return packed;
  }
};

}  // namespace

Netlist parse_bench(std::istream& in, const std::string& name) {
  BenchParser p(name);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) p.feed_line(line, ++line_no);
  return p.finish();
}

Netlist parse_bench_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::string stem = path;
  if (size_t s = stem.find_last_of('/'); s != std::string::npos) stem = stem.substr(s + 1);
  if (size_t d = stem.find_last_of('.'); d != std::string::npos) stem = stem.substr(0, d);
  return parse_bench(f, stem);
}

Netlist parse_bench_string(const std::string& text, const std::string& name) {
  std::istringstream ss(text);
  return parse_bench(ss, name);
}

std::string emit_bench(const Netlist& n, const EmitOptions& opts) {
  std::ostringstream os;
  for (NetId pi : n.primary_inputs) os << "INPUT(" << n.net_names[pi] << ")\n";
  for (NetId po : n.primary_outputs) os << "OUTPUT(" << n.net_names[po] << ")\n";
  for (const Gate& g : n.gates) {
    os << n.net_names[g.fanout] << " = ";
    if (g.kind == BaseKind::Lut) {
      os << "LUT" << static_cast<int>(g.arity());
      if (opts.show_lut_kind && g.lut_kind)
        os << "_" << upper(to_string(*g.lut_kind));
      if (opts.embed_masks && g.mask) os << "[" << g.mask->to_hex() << "]";
    } else {
      os << to_string(g.kind);
    }
    os << "(";
    for (size_t i = 0; i < g.fanin.size(); ++i) {
      if (i) os << ", ";
      os << n.net_names[g.fanin[i]];
    }
    os << ")\n";
  }
  return os.str();
}

MaskTable MaskTable::from_csv(std::istream& in) {
  MaskTable t;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("gate_id", 0) == 0) continue;  // header
    std::stringstream ss(line);
    std::string id_s, arity_s, hex_s;
    if (!std::getline(ss, id_s, ',') || !std::getline(ss, arity_s, ',') ||
        !std::getline(ss, hex_s, ','))
      throw std::runtime_error("mask table line " + std::to_string(line_no) +
                               ": expected gate_id,arity,mask_hex");
    GateId id = std::stoi(trim(id_s));
    int arity = std::stoi(trim(arity_s));
    if (arity < 1 || arity > 5)
      throw std::runtime_error("mask table line " + std::to_string(line_no) +
                               ": arity out of range");
    LutMask m = lut_mask_from_hex(static_cast<uint8_t>(arity), trim(hex_s));
    if (!t.entries.emplace(id, m).second)
      throw std::runtime_error("mask table line " + std::to_string(line_no) +
                               ": duplicate gate id");
  }
  return t;
}

MaskTable MaskTable::from_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return from_csv(f);
}

std::string MaskTable::to_csv() const {
  std::ostringstream os;
  os << "gate_id,arity,mask_hex\n";
  for (const auto& [id, m] : entries)
    os << id << "," << static_cast<int>(m.arity) << "," << m.to_hex() << "\n";
  return os.str();
}

}  // namespace camolut
