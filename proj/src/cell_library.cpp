#include "camolut/cell_library.hpp"

#include <fstream>
#include <sstream>

namespace camolut {

int transistor_count(LutKind kind, int arity) {
  if (arity < 2 || arity > 5)
    throw std::out_of_range("LUT arity must be 2..5");
  static const int mux[4] = {6, 14, 30, 62};
  static const int sram[4] = {30, 62, 126, 254};
  static const int sot[4] = {27, 36, 53, 86};
  switch (kind) {
    case LutKind::MuxOnly: return mux[arity - 2];
    case LutKind::SramLut: return sram[arity - 2];
    case LutKind::SotLut: return sot[arity - 2];
  }
  throw std::logic_error("bad LutKind");
}

double sot_vs_sram_saving(int arity) {
  double sot = transistor_count(LutKind::SotLut, arity);
  double sram = transistor_count(LutKind::SramLut, arity);
  return 1.0 - sot / sram;
}

std::string CellLibrary::gate_cell_name(BaseKind kind, int arity) {
  switch (kind) {
    case BaseKind::Not: return "INV";
    case BaseKind::Buf: return "BUF";
    case BaseKind::Lut: throw std::invalid_argument("LUT is not a standard cell");
    default: return std::string(to_string(kind)) + std::to_string(arity);
  }
}

std::string CellLibrary::lut_cell_name(LutKind kind, int arity) {
  std::string k = to_string(kind);
  for (char& c : k) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return "LUT" + std::to_string(arity) + "_" + k;
}

namespace {

double parse_num(const std::string& v, const std::string& key, int line) {
  try {
    size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (...) {
    throw std::runtime_error("cell library line " + std::to_string(line) +
                             ": bad value for " + key);
  }
}

}  // namespace

CellLibrary CellLibrary::load(std::istream& in, const std::string& name) {
  CellLibrary lib;
  lib.name_ = name;

  struct PendingLut {
    LutKind kind;
    int m = 0;
    CellModel model;
    bool has_area = false;
    int line = 0;
  };
  std::vector<PendingLut> luts;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (size_t h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ss(line);
    std::string head;
    if (!(ss >> head)) continue;

    std::string ident;
    ss >> ident;
    std::map<std::string, std::string> kv;
    std::string tok;
    while (ss >> tok) {
      size_t eq = tok.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("cell library line " + std::to_string(line_no) +
                                 ": expected key=value, got '" + tok + "'");
      kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }

    auto need = [&](const char* key) -> std::string {
      auto it = kv.find(key);
      if (it == kv.end())
        throw std::runtime_error("cell library line " + std::to_string(line_no) +
                                 ": missing " + key);
      return it->second;
    };

    if (head == "cell") {
      CellModel m;
      m.name = ident;
      m.area = parse_num(need("area"), "area", line_no);
      m.delay_ns = parse_num(need("delay_ns"), "delay_ns", line_no);
      m.transistors = static_cast<int>(parse_num(need("transistors"), "transistors", line_no));
      if (auto it = kv.find("energy_pj"); it != kv.end())
        m.energy_pj = parse_num(it->second, "energy_pj", line_no);
      if (m.area < 0 || m.delay_ns < 0)
        throw std::runtime_error("cell library line " + std::to_string(line_no) +
                                 ": negative area/delay");
      if (!lib.cells_.emplace(m.name, m).second)
        throw std::runtime_error("cell library line " + std::to_string(line_no) +
                                 ": duplicate cell " + m.name);
    } else if (head == "lut") {
      PendingLut p;
      p.line = line_no;
      try {
        p.kind = lut_kind_from_string(ident);
      } catch (const std::invalid_argument& e) {
        throw std::runtime_error("cell library line " + std::to_string(line_no) +
                                 ": " + e.what());
      }
      p.m = static_cast<int>(parse_num(need("m"), "m", line_no));
      if (p.m < 2 || p.m > 5)
        throw std::runtime_error("cell library line " + std::to_string(line_no) +
                                 ": lut m must be 2..5");
      p.model.name = lut_cell_name(p.kind, p.m);
      p.model.delay_ns = parse_num(need("delay_ns"), "delay_ns", line_no);
      if (auto it = kv.find("area"); it != kv.end()) {
        p.model.area = parse_num(it->second, "area", line_no);
        p.has_area = true;
      }
      p.model.transistors = kv.count("transistors")
                                ? static_cast<int>(parse_num(kv["transistors"], "transistors", line_no))
                                : transistor_count(p.kind, p.m);
      if (auto it = kv.find("energy_pj"); it != kv.end())
        p.model.energy_pj = parse_num(it->second, "energy_pj", line_no);
      if (p.model.delay_ns < 0 || p.model.area < 0)
        throw std::runtime_error("cell library line " + std::to_string(line_no) +
                                 ": negative area/delay");
      luts.push_back(std::move(p));
    } else {
      throw std::runtime_error("cell library line " + std::to_string(line_no) +
                               ": unknown record '" + head + "'");
    }
  }

  // NAND2 anchors the default LUT area scaling; require it always so sparse
  // libraries fail early with a clear message.
  auto nand2 = lib.cells_.find("NAND2");
  if (nand2 == lib.cells_.end())
    throw std::runtime_error("cell library '" + name + "': missing required cell NAND2");
  if (nand2->second.transistors <= 0)
    throw std::runtime_error("cell library '" + name + "': NAND2 transistors must be positive");

  for (PendingLut& p : luts) {
    if (!p.has_area)
      p.model.area = nand2->second.area *
                     static_cast<double>(transistor_count(p.kind, p.m)) /
                     static_cast<double>(nand2->second.transistors);
    if (!lib.cells_.emplace(p.model.name, p.model).second)
      throw std::runtime_error("cell library line " + std::to_string(p.line) +
                               ": duplicate cell " + p.model.name);
  }
  return lib;
}

CellLibrary CellLibrary::load_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::string stem = path;
  if (size_t s = stem.find_last_of('/'); s != std::string::npos) stem = stem.substr(s + 1);
  return load(f, stem);
}

const CellModel& CellLibrary::gate_cell(BaseKind kind, int arity) const {
  std::string n = gate_cell_name(kind, arity);
  auto it = cells_.find(n);
  if (it == cells_.end())
    throw std::out_of_range("missing required cell " + n + " in library " + name_);
  return it->second;
}

const CellModel& CellLibrary::lut_cell(LutKind kind, int arity) const {
  std::string n = lut_cell_name(kind, arity);
  auto it = cells_.find(n);
  if (it == cells_.end())
    throw std::out_of_range("missing required cell " + n + " in library " + name_);
  return it->second;
}

bool CellLibrary::has_gate_cell(BaseKind kind, int arity) const {
  return cells_.count(gate_cell_name(kind, arity)) != 0;
}

const CellModel& CellLibrary::cell_for(const Gate& g,
                                       std::optional<LutKind> fallback_kind) const {
  if (g.kind == BaseKind::Lut) {
    std::optional<LutKind> k = g.lut_kind ? g.lut_kind : fallback_kind;
    if (!k)
      throw std::invalid_argument(
          "LUT gate has no realization kind; supply a scheme to cost it");
    return lut_cell(*k, g.arity());
  }
  return gate_cell(g.kind, g.arity());
}

}  // namespace camolut
