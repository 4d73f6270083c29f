// Acceptance suite: end-to-end checks of the toolchain against its frozen
// numeric contracts. Each criterion prints one PASS/FAIL line; the process
// exits nonzero if any criterion fails. Run through ctest as `acceptance`
// or directly from the build directory.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "camolut/attacks.hpp"
#include "camolut/bitsim.hpp"
#include "camolut/cell_library.hpp"
#include "camolut/cone.hpp"
#include "camolut/evaluate.hpp"
#include "camolut/lut_config.hpp"
#include "camolut/netlist.hpp"
#include "camolut/obfuscate.hpp"
#include "camolut/sweep.hpp"

using namespace camolut;
namespace fs = std::filesystem;

namespace {

const std::string kData = CAMOLUT_DATA_DIR;

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

void require_near(double got, double want, double tol, const std::string& what) {
  if (std::fabs(got - want) > tol) {
    std::ostringstream os;
    os << what << ": got " << got << ", want " << want << " +/- " << tol;
    throw std::runtime_error(os.str());
  }
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// The benchmark corpus: every .bench under data/bench except the two-cone
// regression fixtures (cpa_demo_*), sorted by name for a stable order.
std::vector<fs::path> corpus_files() {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(kData + "/bench")) {
    if (!e.is_regular_file() || e.path().extension() != ".bench") continue;
    if (e.path().filename().string().rfind("cpa_demo", 0) == 0) continue;
    files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

// Obfuscated/plain pair: a chain of n_luts NAND2 gates hidden as LUT2s,
// two primary inputs total.
std::pair<Netlist, Netlist> hidden_nand_chain(int n_luts) {
  std::ostringstream plain, obf;
  plain << "INPUT(x)\nINPUT(w)\nOUTPUT(y)\n";
  obf << "INPUT(x)\nINPUT(w)\nOUTPUT(y)\n";
  std::string prev = "x";
  for (int i = 0; i < n_luts; ++i) {
    std::string out = (i == n_luts - 1) ? "y" : "t" + std::to_string(i);
    plain << out << " = NAND(" << prev << ", w)\n";
    obf << out << " = LUT2(" << prev << ", w)\n";
    prev = out;
  }
  return {parse_bench_string(plain.str(), "chain"),
          parse_bench_string(obf.str(), "chain")};
}

std::map<std::string, std::string> dir_tree(const fs::path& dir) {
  std::map<std::string, std::string> tree;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream body;
    body << in.rdbuf();
    tree[fs::relative(e.path(), dir).string()] = body.str();
  }
  return tree;
}

// ---------------------------------------------------------------------------
// 1. Every 4-bit configuration of the two-input reconfigurable cell realizes
//    exactly its named Boolean function, checked against an independent
//    restatement of the 16 functions, through both the mask evaluator and
//    the netlist simulator. Must finish in under a second.
std::string criterion_two_input_table() {
  auto t0 = std::chrono::steady_clock::now();

  struct Named {
    const char* name;
    bool (*fn)(bool, bool);
  };
  static const Named table[16] = {
      {"CONST0", [](bool, bool) { return false; }},
      {"A AND B", [](bool a, bool b) { return a && b; }},
      {"A AND NOT B", [](bool a, bool b) { return a && !b; }},
      {"A", [](bool a, bool) { return a; }},
      {"NOT A AND B", [](bool a, bool b) { return !a && b; }},
      {"B", [](bool, bool b) { return b; }},
      {"A XOR B", [](bool a, bool b) { return a != b; }},
      {"A OR B", [](bool a, bool b) { return a || b; }},
      {"A NOR B", [](bool a, bool b) { return !(a || b); }},
      {"A XNOR B", [](bool a, bool b) { return a == b; }},
      {"NOT B", [](bool, bool b) { return !b; }},
      {"A OR NOT B", [](bool a, bool b) { return a || !b; }},
      {"NOT A", [](bool a, bool) { return !a; }},
      {"NOT A OR B", [](bool a, bool b) { return !a || b; }},
      {"A NAND B", [](bool a, bool b) { return !(a && b); }},
      {"CONST1", [](bool, bool) { return true; }},
  };

  Netlist cell = parse_bench_string(
      "INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = LUT2(a, b)\n", "cell");

  int hits[16] = {0};
  for (uint32_t raw = 0; raw < 16; ++raw) {
    LutMask mask{2, raw};
    std::string name = two_input_function_name(mask);

    int slot = -1;
    for (int i = 0; i < 16; ++i)
      if (name == table[i].name) slot = i;
    require(slot >= 0, "unrecognized function name: " + name);
    ++hits[slot];

    require(two_input_function_mask(name) == mask,
            name + ": name does not round-trip to the same mask");

    MaskTable cfg;
    cfg.entries[0] = mask;
    for (int a = 0; a <= 1; ++a)
      for (int b = 0; b <= 1; ++b) {
        std::vector<bool> in{a == 1, b == 1};
        bool want = table[slot].fn(a == 1, b == 1);
        require(mask.eval(in.begin(), in.end()) == want,
                name + ": mask evaluator differs at A=" + std::to_string(a) +
                    " B=" + std::to_string(b));
        require(simulate(cell, in, &cfg)[0] == want,
                name + ": netlist simulation differs at A=" +
                    std::to_string(a) + " B=" + std::to_string(b));
      }
  }
  for (int i = 0; i < 16; ++i)
    require(hits[i] == 1, std::string(table[i].name) +
                              ": named function not hit exactly once");

  double secs = seconds_since(t0);
  require(secs < 1.0, "took " + fmt("%.3f", secs) + "s, limit 1s");
  return "16 configs x 4 rows via cell model and simulator, " +
         fmt("%.0f", secs * 1000.0) + "ms";
}

// ---------------------------------------------------------------------------
// 2. Partition attack on the bundled three-cell regression circuit with a
//    forced per-cell candidate count of 3: one joint stage of 3^2 plus a
//    constant-time isolate, versus a naive 3^3.
std::string criterion_cpa_regression() {
  Netlist n = parse_bench_file(kData + "/bench/cpa_demo_obf.bench");
  AttackReport r = cpa_partition(n, 3);

  require(r.stages.size() == 2,
          "expected 2 stages, got " + std::to_string(r.stages.size()));
  require(r.stages[0].resolved.size() == 2 && !r.stages[0].constant,
          "first stage should jointly resolve 2 cells");
  require_near(r.stages[0].log2_size, std::log2(9.0), 1e-9, "stage 1 size");
  require(r.stages[1].constant && r.stages[1].resolved.size() == 1,
          "second stage should be a constant-time isolate of 1 cell");
  require(r.stages[1].log2_size == 0.0, "constant stage must cost 0 bits");
  require_near(r.dominant_log2, std::log2(9.0), 1e-9, "dominant complexity");
  require_near(r.naive_log2, std::log2(27.0), 1e-9, "naive complexity");
  require(std::llround(std::exp2(r.dominant_log2)) == 9 &&
              std::llround(std::exp2(r.naive_log2)) == 27,
          "complexities do not round back to 9 and 27");
  return "dominant 3^2 = 9 versus naive 3^3 = 27";
}

// ---------------------------------------------------------------------------
// 3. Transistor budgets of the three cell realizations, arity 2 through 5,
//    and the arity-5 SOT-versus-SRAM saving of about 66.1%.
std::string criterion_transistor_table() {
  const struct {
    LutKind kind;
    int expect[4];  // arity 2..5
  } rows[3] = {
      {LutKind::MuxOnly, {6, 14, 30, 62}},
      {LutKind::SramLut, {30, 62, 126, 254}},
      {LutKind::SotLut, {27, 36, 53, 86}},
  };
  for (const auto& row : rows)
    for (int m = 2; m <= 5; ++m) {
      int got = transistor_count(row.kind, m);
      require(got == row.expect[m - 2],
              std::string(to_string(row.kind)) + " m=" + std::to_string(m) +
                  ": got " + std::to_string(got) + ", want " +
                  std::to_string(row.expect[m - 2]));
    }

  double saving = sot_vs_sram_saving(5);
  require_near(saving, 0.661, 0.005, "arity-5 SOT vs SRAM saving");
  return "12 budgets exact; arity-5 saving " + fmt("%.1f", saving * 100.0) +
         "%";
}

// ---------------------------------------------------------------------------
// 4. Composite metric arithmetic on four frozen average pairs. The fourth
//    pair is quoted as 23.18 where recomputation gives 23.08 (the quoted
//    figure rounds upstream of the averages), so it gets a wider tolerance.
std::string criterion_composite_metric() {
  const struct {
    double area_pct, delay_pct, want_pct, tol_pp;
  } rows[4] = {
      {11.22, 24.17, 17.69, 0.01},
      {12.21, 20.36, 16.29, 0.01},
      {16.06, 33.20, 24.63, 0.01},
      {17.67, 28.49, 23.18, 0.15},
  };
  double fourth = 0.0;
  for (const auto& row : rows) {
    double got_pct =
        composite_phi(row.area_pct / 100.0, row.delay_pct / 100.0) * 100.0;
    require_near(got_pct, row.want_pct, row.tol_pp + 1e-12,
                 "phi(" + fmt("%.2f", row.area_pct) + ", " +
                     fmt("%.2f", row.delay_pct) + ")");
    fourth = got_pct;
  }
  return "three pairs within 0.01pp; fourth computes " + fmt("%.2f", fourth) +
         ", accepted within 0.15pp of 23.18";
}

// ---------------------------------------------------------------------------
// 5. Brute-force law: N hidden two-input cells cost exactly 16^N candidates
//    for N = 1..3 with the planted secret always in the consistent set; at
//    N = 16 the attack reports 64 bits and refuses to enumerate.
std::string criterion_brute_force_law() {
  for (int n_luts = 1; n_luts <= 3; ++n_luts) {
    auto [plain, obf] = hidden_nand_chain(n_luts);
    require(plain.pi_count() <= 10, "chain fixture must stay at most 10 PIs");
    MaskTable secret;
    for (int g = 0; g < n_luts; ++g) secret.entries[g] = mask_of_kind(BaseKind::Nand, 2);

    AttackReport r = brute_force_attack(obf, plain, nullptr, {}, &secret);
    require(r.enumerated && !r.budget_exhausted,
            "N=" + std::to_string(n_luts) + ": enumeration did not run");
    require(r.candidates_tested == (uint64_t(1) << (4 * n_luts)),
            "N=" + std::to_string(n_luts) + ": tested " +
                std::to_string(r.candidates_tested) + " candidates, want 16^N");
    require(r.secret_consistent,
            "N=" + std::to_string(n_luts) + ": secret not in consistent set");
    require(r.recovered.has_value(),
            "N=" + std::to_string(n_luts) + ": no recovered assignment");
    require(check_equivalence(plain, obf, nullptr, &*r.recovered).equivalent(),
            "N=" + std::to_string(n_luts) + ": recovered masks not equivalent");
  }

  auto [plain16, obf16] = hidden_nand_chain(16);
  AttackReport r16 = brute_force_attack(obf16, plain16);
  require(!r16.enumerated && r16.budget_exhausted,
          "N=16 must exceed the enumeration cap");
  require(r16.candidates_tested == 0, "N=16 must not enumerate");
  require(r16.total_log2 == 64.0 && r16.naive_log2 == 64.0,
          "N=16 joint complexity must report exactly 64 bits");
  return "16^N exact for N=1..3, secret always consistent; N=16 reports 64 "
         "bits unenumerated";
}

// ---------------------------------------------------------------------------
// 6. Functional preservation across the whole grid: every scheme, N in
//    {1,4,16}, every corpus benchmark. At most 20 PIs means exhaustive
//    equality; above that, 10^5 random vectors plus specials find no
//    counterexample. The equivalence runs against the emitted attacker view
//    reparsed from text, with the secret mask table on the side, so it
//    exercises the artifacts a sweep actually ships. Budget: 5 minutes.
struct GridContext {
  bool filled = false;
  int benchmarks = 0;
  std::map<std::string, double> area_sum;   // scheme name -> sum at N=16
  std::map<std::string, double> delay_sum;  // (overheads as fractions)
};

std::string criterion_preservation_grid(GridContext& ctx) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<fs::path> files = corpus_files();
  require(files.size() == 15,
          "expected 15 corpus benchmarks, found " + std::to_string(files.size()));
  CellLibrary lib = CellLibrary::load_file(kData + "/lib/osu035_like.lib");
  const uint64_t seed = 1;

  int exhaustive_runs = 0;
  int sampled_runs = 0;
  for (const fs::path& f : files) {
    Netlist n = parse_bench_file(f.string());
    std::vector<GateClass> classes = classify_gates(n);
    std::vector<GateId> ranked = rank_candidates(n, classes, seed);
    require(ranked.size() >= 16, n.name + ": fewer than 16 ranked candidates");

    for (int count : {1, 4, 16}) {
      std::vector<GateId> selected =
          select_candidates(n, classes, count, seed, /*force=*/true);
      for (const Scheme& scheme : Scheme::all()) {
        ObfuscationPlan plan;
        plan.scheme = scheme;
        plan.requested = count;
        plan.seed = seed;
        plan.selected = selected;
        plan.backlog.assign(ranked.begin() + static_cast<long>(selected.size()),
                            ranked.end());
        ObfuscationResult res = apply_plan(n, plan);
        std::string cell = n.name + " " + scheme.name() + " N=" +
                           std::to_string(count);
        require(static_cast<int>(res.lut_gates.size()) == count,
                cell + ": hid " + std::to_string(res.lut_gates.size()) +
                    " gates, want " + std::to_string(count));

        Netlist view = parse_bench_string(emit_bench(res.netlist), n.name);
        EquivalenceVerdict v = check_equivalence(n, view, nullptr, &res.masks);
        require(v.equivalent(), cell + ": attacker view + secret masks is NOT "
                                       "equivalent to the original");
        if (n.pi_count() <= 20) {
          require(v.kind == EquivalenceVerdict::Kind::EquivalentExhaustive,
                  cell + ": expected an exhaustive verdict");
          ++exhaustive_runs;
        } else {
          require(v.kind == EquivalenceVerdict::Kind::EquivalentSampled,
                  cell + ": expected a sampled verdict");
          require(v.vectors_checked >= 100000,
                  cell + ": only " + std::to_string(v.vectors_checked) +
                      " vectors checked");
          ++sampled_runs;
        }

        if (count == 16) {
          OverheadReport rep = evaluate_overheads(
              n, res.netlist, lib, scheme.lut_kind, scheme.name(), count);
          ctx.area_sum[scheme.name()] += rep.area_overhead;
          ctx.delay_sum[scheme.name()] += rep.delay_overhead;
        }
      }
    }
    ++ctx.benchmarks;
  }

  require(exhaustive_runs + sampled_runs == 15 * 3 * 6,
          "grid did not cover all 270 cells");
  double secs = seconds_since(t0);
  require(secs < 300.0, "took " + fmt("%.1f", secs) + "s, limit 300s");
  ctx.filled = true;
  return std::to_string(exhaustive_runs) + " exhaustive + " +
         std::to_string(sampled_runs) + " sampled cells equivalent in " +
         fmt("%.1f", secs) + "s";
}

// ---------------------------------------------------------------------------
// 7. Overhead ordering at N=16, averaged over the corpus with the bundled
//    library: SRAM costs more area than SOT, SOT more than mux-only (all
//    unreconstructed), and the two reconstructed RAM-backed schemes pay
//    identical delay.
std::string criterion_overhead_ordering(const GridContext& ctx) {
  require(ctx.filled, "preservation grid did not complete, no data");
  auto avg = [&](const std::map<std::string, double>& sums,
                 const std::string& scheme) {
    return sums.at(scheme) / ctx.benchmarks * 100.0;
  };
  double sram = avg(ctx.area_sum, "sram_unre");
  double sot = avg(ctx.area_sum, "sot_unre");
  double mux = avg(ctx.area_sum, "mux_unre");
  require(sram > sot,
          "area: sram_unre " + fmt("%.2f", sram) + "% must exceed sot_unre " +
              fmt("%.2f", sot) + "%");
  require(sot > mux,
          "area: sot_unre " + fmt("%.2f", sot) + "% must exceed mux_unre " +
              fmt("%.2f", mux) + "%");
  require(ctx.delay_sum.at("sot_re") == ctx.delay_sum.at("sram_re"),
          "delay: sot_re and sram_re must match exactly");
  return "area % " + fmt("%.2f", sram) + " (sram) > " + fmt("%.2f", sot) +
         " (sot) > " + fmt("%.2f", mux) + " (mux); sot_re delay == sram_re "
         "delay";
}

// ---------------------------------------------------------------------------
// 8. Structural stats of four reference benchmarks (PI/PO counts after the
//    sequential cut).
std::string criterion_structure_stats() {
  const struct {
    const char* name;
    int pis, pos;
  } rows[4] = {
      {"c432", 36, 7},
      {"i2", 201, 1},
      {"s713", 54, 42},
      {"c6288", 32, 32},
  };
  for (const auto& row : rows) {
    Netlist n = parse_bench_file(kData + "/bench/" + row.name + ".bench");
    require(n.pi_count() == row.pis && n.po_count() == row.pos,
            std::string(row.name) + ": got " + std::to_string(n.pi_count()) +
                "/" + std::to_string(n.po_count()) + ", want " +
                std::to_string(row.pis) + "/" + std::to_string(row.pos));
  }
  return "c432 36/7, i2 201/1, s713 54/42, c6288 32/32";
}

// ---------------------------------------------------------------------------
// 9. Partition resistance of produced plans: class-complete selection at
//    N=16 leaves the partition attack a single joint 16-cell stage of
//    64 bits on s1196 and c2670; no stage splits the selected class.
std::string criterion_partition_resistance() {
  for (const char* name : {"s1196", "c2670"}) {
    Netlist n = parse_bench_file(kData + "/bench/" + std::string(name) +
                                 ".bench");
    ObfuscationResult res =
        obfuscate(n, Scheme::from_string("sram_re"), 16, 1, /*force=*/true);
    require(res.lut_gates.size() == 16,
            std::string(name) + ": plan did not hide 16 gates");

    AttackReport r = cpa_partition(res.netlist);
    require(r.stages.size() == 1,
            std::string(name) + ": got " + std::to_string(r.stages.size()) +
                " stages, want a single joint stage");
    std::vector<GateId> staged = r.stages[0].resolved;
    std::sort(staged.begin(), staged.end());
    require(staged == res.lut_gates,
            std::string(name) + ": stage does not cover the selected class");
    require(!r.stages[0].constant, std::string(name) + ": stage degenerated");
    require(r.dominant_log2 == 64.0 && r.naive_log2 == 64.0,
            std::string(name) + ": dominant " +
                fmt("%.2f", r.dominant_log2) + " bits, want exactly 64");
  }
  return "s1196 and c2670: one 16-cell stage, dominant = naive = 64 bits";
}

// ---------------------------------------------------------------------------
// 10. Sweep determinism: the same configuration into two directories gives
//     byte-identical trees.
std::string criterion_sweep_determinism() {
  RunConfig cfg;
  cfg.benchmarks = {kData + "/bench/c432.bench"};
  cfg.library = kData + "/lib/osu035_like.lib";
  cfg.gate_counts = {4, 16};
  cfg.seed = 7;
  cfg.verify_budget = 4096;
  cfg.jobs = 1;

  fs::path base = fs::temp_directory_path();
  std::map<std::string, std::string> trees[2];
  for (int run = 0; run < 2; ++run) {
    fs::path dir = base / ("camolut_acceptance_sweep_" + std::to_string(run));
    fs::remove_all(dir);
    cfg.out_dir = dir.string();
    SweepResult res = run_sweep(cfg);
    require(res.cells.size() == 12, "expected 12 sweep cells");
    for (const SweepCell& c : res.cells)
      require(c.ok && c.verified,
              c.benchmark + " " + c.scheme.name() + " N=" +
                  std::to_string(c.n_gates) + ": cell failed: " + c.error);
    trees[run] = dir_tree(dir);
  }

  require(!trees[0].empty(), "sweep produced no files");
  for (const char* must : {"overheads.csv", "summary.csv", "aggregate.csv"})
    require(trees[0].count(must) == 1, std::string(must) + " missing");
  require(trees[0].size() == trees[1].size(), "file sets differ in size");
  for (const auto& [name, bytes] : trees[0]) {
    auto it = trees[1].find(name);
    require(it != trees[1].end(), name + ": missing from second run");
    require(it->second == bytes, name + ": bytes differ between runs");
  }
  return std::to_string(trees[0].size()) +
         " files byte-identical across two runs";
}

}  // namespace

int main() {
  GridContext grid;
  struct Criterion {
    const char* name;
    std::function<std::string()> run;
  };
  const std::vector<Criterion> criteria = {
      {"two-input configuration table", criterion_two_input_table},
      {"partition attack regression", criterion_cpa_regression},
      {"transistor budget table", criterion_transistor_table},
      {"composite metric arithmetic", criterion_composite_metric},
      {"brute-force complexity law", criterion_brute_force_law},
      {"functional preservation grid",
       [&grid] { return criterion_preservation_grid(grid); }},
      {"overhead ordering",
       [&grid] { return criterion_overhead_ordering(grid); }},
      {"benchmark structure stats", criterion_structure_stats},
      {"partition resistance of produced plans", criterion_partition_resistance},
      {"sweep determinism", criterion_sweep_determinism},
  };

  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    bool ok = true;
    try {
      detail = criteria[i].run();
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    std::printf("%s %2zu  %s (%s)\n", ok ? "PASS" : "FAIL", i + 1,
                criteria[i].name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failed;
  }

  std::printf("acceptance: %zu/%zu criteria passed\n",
              criteria.size() - static_cast<size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
