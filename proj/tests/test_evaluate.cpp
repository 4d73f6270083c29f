#include <doctest.h>

#include <camolut/cell_library.hpp>
#include <camolut/evaluate.hpp>
#include <camolut/netlist.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace camolut;

namespace {

CellLibrary test_lib() {
  std::istringstream in(R"(
cell INV   area=12 delay_ns=0.05 transistors=2
cell BUF   area=12 delay_ns=0.05 transistors=4
cell NAND2 area=32 delay_ns=0.10 transistors=4
cell AND2  area=36 delay_ns=0.12 transistors=6
cell OR2   area=36 delay_ns=0.12 transistors=6
cell XOR2  area=36 delay_ns=0.14 transistors=10
lut mux  m=2 delay_ns=0.12
lut sram m=2 delay_ns=0.15
lut sot  m=2 delay_ns=0.15
)");
  return CellLibrary::load(in, "test");
}

}  // namespace

TEST_CASE("static_area sums the cells, fallback prices attacker LUTs") {
  CellLibrary lib = test_lib();
  Netlist n = parse_bench_string(
      "INPUT(a)\nINPUT(b)\nOUTPUT(y)\nOUTPUT(z)\n"
      "t = NAND(a, b)\ny = XOR(t, a)\nz = LUT2(t, b)\n", "area");
  // NAND2 32 + XOR2 36 + LUT2 (fallback).
  double mux = lib.lut_cell(LutKind::MuxOnly, 2).area;
  double sram = lib.lut_cell(LutKind::SramLut, 2).area;
  CHECK(static_area(n, lib, LutKind::MuxOnly) ==
        doctest::Approx(32.0 + 36.0 + mux));
  CHECK(static_area(n, lib, LutKind::SramLut) ==
        doctest::Approx(32.0 + 36.0 + sram));
  CHECK_THROWS_AS(static_area(n, lib), std::invalid_argument);

  // A tagged LUT never consults the fallback.
  Netlist tagged = parse_bench_string(
      "INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = LUT2_SOT[E](a, b)\n", "tag");
  double sot = lib.lut_cell(LutKind::SotLut, 2).area;
  CHECK(static_area(tagged, lib, LutKind::MuxOnly) == doctest::Approx(sot));
}

TEST_CASE("static_delay follows the slowest path") {
  CellLibrary lib = test_lib();
  // Two paths to y: NAND(0.10)+XOR(0.14) = 0.24 and direct XOR = 0.14.
  Netlist n = parse_bench_string(
      "INPUT(a)\nINPUT(b)\nOUTPUT(y)\nt = NAND(a, b)\ny = XOR(t, a)\n",
      "delay");
  CHECK(static_delay(n, lib) == doctest::Approx(0.24));

  // A longer chain of fast cells must beat a shorter chain of slow ones
  // only when it is longer in time, not in stages.
  Netlist r2 = parse_bench_string(
      "INPUT(a)\nINPUT(b)\nOUTPUT(y)\n"
      "n1 = NAND(a, b)\nn2 = NAND(n1, b)\nn3 = NAND(n2, a)\n"
      "x1 = XOR(a, b)\nx2 = XOR(x1, b)\n"
      "y = OR(n3, x2)\n", "race");
  // NAND chain: 3*0.10 + OR 0.12 = 0.42; XOR chain: 2*0.14 + 0.12 = 0.40.
  CHECK(static_delay(r2, lib) == doctest::Approx(0.42));
}

TEST_CASE("unit delay equals the level count") {
  Netlist n = parse_bench_string(
      "INPUT(a)\nINPUT(b)\nOUTPUT(y)\n"
      "t1 = NAND(a, b)\nt2 = NAND(t1, b)\ny = NAND(t2, a)\n", "unit");
  CHECK(static_delay_unit(n) == doctest::Approx(3.0));
  CHECK(static_delay_unit(n) == doctest::Approx(double(n.max_level())));
}

TEST_CASE("unit slack against a longest-path oracle") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    // Random DAG; every net observable so nothing is pruned.
    int n_pi = 3 + int(rng() % 3);
    int n_gates = 8 + int(rng() % 30);
    std::ostringstream text;
    std::vector<std::string> nets;
    for (int i = 0; i < n_pi; ++i) {
      text << "INPUT(i" << i << ")\n";
      nets.push_back("i" + std::to_string(i));
    }
    const char* kinds[] = {"AND", "NAND", "OR", "XOR", "NOT"};
    for (int g = 0; g < n_gates; ++g) {
      const char* kind = kinds[rng() % 5];
      int arity = (std::string(kind) == "NOT") ? 1 : 2;
      text << "n" << g << " = " << kind << "(";
      for (int j = 0; j < arity; ++j)
        text << (j ? ", " : "") << nets[rng() % nets.size()];
      text << ")\n";
      nets.push_back("n" + std::to_string(g));
    }
    for (int g = 0; g < n_gates; ++g) text << "OUTPUT(n" << g << ")\n";
    Netlist n = parse_bench_string(text.str(), "slack");

    // Oracle: arrival = longest path from PIs into the gate's output;
    // required = longest path from the gate's output onward to any PO.
    std::map<NetId, int> arrive;
    std::function<int(NetId)> arr = [&](NetId net) -> int {
      auto it = arrive.find(net);
      if (it != arrive.end()) return it->second;
      GateId d = n.net_driver[net];
      int v = 0;
      if (d != kNoGate) {
        for (NetId f : n.gates[d].fanin) v = std::max(v, arr(f));
        v += 1;
      }
      arrive[net] = v;
      return v;
    };
    auto readers = n.net_readers();
    std::map<NetId, int> onward;
    std::function<int(NetId)> down = [&](NetId net) -> int {
      auto it = onward.find(net);
      if (it != onward.end()) return it->second;
      int v = 0;
      for (GateId r : readers[net]) v = std::max(v, 1 + down(n.gates[r].fanout));
      onward[net] = v;
      return v;
    };
    int critical = 0;
    for (NetId po : n.primary_outputs) critical = std::max(critical, arr(po));

    std::vector<int> slack = unit_slack(n);
    REQUIRE(slack.size() == n.gates.size());
    int zero_count = 0;
    for (const Gate& g : n.gates) {
      int through = arr(g.fanout) + down(g.fanout);
      CHECK(slack[g.id] == critical - through);
      CHECK(slack[g.id] >= 0);
      if (slack[g.id] == 0) ++zero_count;
    }
    CHECK(zero_count >= 1);  // somebody is on the critical path
  }
}

TEST_CASE("composite phi blends the two overheads") {
  CHECK(composite_phi(0.10, 0.30) == doctest::Approx(0.20));
  CHECK(composite_phi(0.10, 0.30, 0.25, 0.75) == doctest::Approx(0.25));
  CHECK(composite_phi(0.0, 0.0) == doctest::Approx(0.0));
  // Linear in each argument.
  CHECK(composite_phi(0.2, 0.1, 0.5, 0.5) + composite_phi(0.4, 0.3, 0.5, 0.5) ==
        doctest::Approx(2.0 * composite_phi(0.3, 0.2, 0.5, 0.5)));
  // Weights must be a convex pair.
  CHECK_THROWS_AS(composite_phi(0.1, 0.1, 0.6, 0.6), std::invalid_argument);
  CHECK_THROWS_AS(composite_phi(0.1, 0.1, -0.5, 1.5), std::invalid_argument);
  CHECK_NOTHROW(composite_phi(0.1, 0.1, 0.3, 0.7));
}

TEST_CASE("reference phi figures") {
  CHECK(composite_phi(0.1122, 0.2417) * 100.0 == doctest::Approx(17.695));
  CHECK(composite_phi(0.1221, 0.2036) * 100.0 == doctest::Approx(16.285));
  CHECK(composite_phi(0.1606, 0.3320) * 100.0 == doctest::Approx(24.63));
}

TEST_CASE("evaluate_overheads computes fractions against the baseline") {
  CellLibrary lib = test_lib();
  Netlist before = parse_bench_string(
      "INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = NAND(a, b)\n", "pair");
  Netlist after = parse_bench_string(
      "INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = LUT2(a, b)\n", "pair");
  OverheadReport r = evaluate_overheads(before, after, lib, LutKind::SramLut,
                                        "sram_unre", 1);
  double base_area = 32.0;
  double lut_area = lib.lut_cell(LutKind::SramLut, 2).area;
  CHECK(r.benchmark == "pair");
  CHECK(r.scheme == "sram_unre");
  CHECK(r.n_gates == 1);
  CHECK(r.area_before == doctest::Approx(base_area));
  CHECK(r.area_after == doctest::Approx(lut_area));
  CHECK(r.area_overhead == doctest::Approx(lut_area / base_area - 1.0));
  CHECK(r.delay_before == doctest::Approx(0.10));
  CHECK(r.delay_after == doctest::Approx(0.15));
  CHECK(r.delay_overhead == doctest::Approx(0.5));
  CHECK(r.phi == doctest::Approx(0.5 * r.area_overhead + 0.5 * r.delay_overhead));

  // CSV row carries percents at fixed precision.
  CHECK(OverheadReport::csv_header() ==
        "benchmark,scheme,n_gates,area_before,area_after,area_overhead_pct,"
        "delay_before_ns,delay_after_ns,delay_overhead_pct,phi_pct");
  std::string row = r.to_csv_row();
  CHECK(row.find("pair,sram_unre,1,") == 0);
  CHECK(row.find("50.00") != std::string::npos);  // delay overhead pct

  // A degenerate baseline cannot be normalized against.
  Netlist empty = parse_bench_string("INPUT(a)\nOUTPUT(a)\n", "none");
  CHECK_THROWS_AS(
      evaluate_overheads(empty, empty, lib, LutKind::SramLut, "s", 0),
      std::invalid_argument);
}
