// camolut: hide selected gates of a .bench netlist behind reconfigurable
// LUT cells, measure the area/delay cost and simulate the restore attacks.
//
// Exit codes: 0 success, 1 usage error, 2 input parse/load error,
// 3 verification failure (non-equivalent netlist or leaking views).

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "camolut/attacks.hpp"
#include "camolut/bitsim.hpp"
#include "camolut/cell_library.hpp"
#include "camolut/cone.hpp"
#include "camolut/evaluate.hpp"
#include "camolut/netlist.hpp"
#include "camolut/obfuscate.hpp"
#include "camolut/sweep.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kParse = 2;
constexpr int kVerify = 3;

void write_output(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << data;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Options {
  std::string in, out, oracle, lib, masks, oracle_masks, format = "csv";
  std::vector<std::string> inputs;  // sca views / sweep benchmarks
  std::string scheme = "sot_re";
  std::vector<std::string> schemes;
  int gates = 16;
  std::vector<int> gate_counts = {16, 32, 64};
  uint64_t seed = 1;
  bool force = false;
  bool tagged = false;
  bool embed_masks = false;
  bool verify = false;
  bool no_attacks = false;
  double alpha = 0.5, beta = 0.5;
  uint64_t budget = 100000;
  uint64_t enum_cap = 1u << 20;
  int threshold = 16;
  uint64_t k = 0;  // 0 = per-LUT 2^(2^m)
  int jobs = 0;
};

int cmd_stats(const Options& o) {
  camolut::Netlist n = camolut::parse_bench_file(o.in);
  std::ostringstream out;
  out << "name " << n.name << "\n"
      << "primary_inputs " << n.pi_count() << "\n"
      << "primary_outputs " << n.po_count() << "\n"
      << "gates " << n.gate_count() << "\n"
      << "nets " << n.net_count() << "\n"
      << "max_level " << n.stats.max_level << "\n"
      << "pruned_gates " << n.stats.pruned_gates << "\n"
      << "dff_count " << n.stats.dff_count << "\n";
  write_output(o.out, out.str());
  return kOk;
}

int cmd_classify(const Options& o) {
  camolut::Netlist n = camolut::parse_bench_file(o.in);
  write_output(o.out, camolut::classes_to_csv(camolut::classify_gates(n)));
  return kOk;
}

int cmd_obfuscate(const Options& o) {
  camolut::Netlist n = camolut::parse_bench_file(o.in);
  camolut::Scheme scheme = camolut::Scheme::from_string(o.scheme);
  camolut::ObfuscationResult res =
      camolut::obfuscate(n, scheme, o.gates, o.seed, o.force);
  for (const std::string& note : res.skipped)
    std::cerr << "note: " << note << "\n";
  camolut::EmitOptions emit;
  emit.show_lut_kind = o.tagged;
  emit.embed_masks = o.embed_masks;
  write_output(o.out, camolut::emit_bench(res.netlist, emit));
  if (!o.masks.empty()) write_output(o.masks, res.masks.to_csv());
  return kOk;
}

int cmd_evaluate(const Options& o) {
  camolut::Netlist original = camolut::parse_bench_file(o.in);
  camolut::Netlist obf = camolut::parse_bench_file(o.oracle);
  camolut::CellLibrary lib = camolut::CellLibrary::load_file(o.lib);
  camolut::Scheme scheme = camolut::Scheme::from_string(o.scheme);
  camolut::OverheadReport rep =
      camolut::evaluate_overheads(original, obf, lib, scheme.lut_kind,
                                  scheme.name(), o.gates, o.alpha, o.beta);
  write_output(o.out, camolut::OverheadReport::csv_header() + "\n" +
                          rep.to_csv_row() + "\n");
  if (o.verify) {
    std::optional<camolut::MaskTable> masks;
    if (!o.masks.empty()) masks = camolut::MaskTable::from_csv_file(o.masks);
    camolut::EquivalenceOptions eopt;
    eopt.budget = o.budget;
    camolut::EquivalenceVerdict verdict = camolut::check_equivalence(
        original, obf, nullptr, masks ? &*masks : nullptr, eopt);
    if (!verdict.equivalent()) {
      std::cerr << "verification failed: netlists differ\n";
      return kVerify;
    }
    std::cerr << "verified on " << verdict.vectors_checked << " vectors\n";
  }
  return kOk;
}

int cmd_attack_cpa(const Options& o) {
  camolut::Netlist n = camolut::parse_bench_file(o.in);
  std::optional<uint64_t> k;
  if (o.k) k = o.k;
  write_output(o.out, camolut::cpa_partition(n, k).to_json());
  return kOk;
}

int cmd_attack_bfa(const Options& o) {
  camolut::Netlist obf = camolut::parse_bench_file(o.in);
  camolut::Netlist oracle = camolut::parse_bench_file(o.oracle);
  camolut::OracleBudget budget;
  budget.max_queries = o.budget;
  budget.enum_cap = o.enum_cap;
  budget.exhaustive_threshold = o.threshold;
  std::optional<camolut::MaskTable> om, secret;
  if (!o.oracle_masks.empty())
    om = camolut::MaskTable::from_csv_file(o.oracle_masks);
  if (!o.masks.empty()) secret = camolut::MaskTable::from_csv_file(o.masks);
  camolut::AttackReport rep = camolut::brute_force_attack(
      obf, oracle, om ? &*om : nullptr, budget, secret ? &*secret : nullptr);
  write_output(o.out, rep.to_json());
  return kOk;
}

int cmd_attack_ita(const Options& o) {
  camolut::Netlist obf = camolut::parse_bench_file(o.in);
  camolut::OracleBudget budget;
  budget.max_queries = o.budget;
  budget.exhaustive_threshold = o.threshold;
  write_output(o.out, camolut::ita_check(obf, budget).to_json());
  return kOk;
}

int cmd_attack_sca(const Options& o) {
  std::vector<std::string> views;
  for (const std::string& path : o.inputs) views.push_back(read_file(path));
  camolut::AttackReport rep = camolut::sca_audit(views);
  write_output(o.out, rep.to_json());
  return rep.views_identical ? kOk : kVerify;
}

int cmd_report(const Options& o) {
  // Re-aggregate a sweep's overheads.csv.
  std::istringstream in(read_file(o.in));
  std::string line;
  std::vector<camolut::SweepCell> cells;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) { header = false; continue; }
    std::vector<std::string> f;
    std::istringstream ls(line);
    std::string tok;
    while (std::getline(ls, tok, ',')) f.push_back(tok);
    if (f.size() != 10)
      throw std::runtime_error("bad overheads row: " + line);
    camolut::SweepCell c;
    c.benchmark = f[0];
    c.scheme = camolut::Scheme::from_string(f[1]);
    c.n_gates = std::stoi(f[2]);
    c.ok = true;
    c.report.benchmark = f[0];
    c.report.scheme = f[1];
    c.report.n_gates = c.n_gates;
    c.report.area_before = std::stod(f[3]);
    c.report.area_after = std::stod(f[4]);
    c.report.area_overhead = std::stod(f[5]) / 100.0;
    c.report.delay_before = std::stod(f[6]);
    c.report.delay_after = std::stod(f[7]);
    c.report.delay_overhead = std::stod(f[8]) / 100.0;
    c.report.phi = std::stod(f[9]) / 100.0;
    cells.push_back(std::move(c));
  }
  write_output(o.out,
               camolut::aggregate_report(cells, o.alpha, o.beta, o.format));
  return kOk;
}

int cmd_sweep(const Options& o) {
  camolut::RunConfig cfg;
  cfg.benchmarks = o.inputs;
  cfg.library = o.lib;
  if (!o.schemes.empty()) {
    cfg.schemes.clear();
    for (const std::string& s : o.schemes)
      cfg.schemes.push_back(camolut::Scheme::from_string(s));
  }
  cfg.gate_counts = o.gate_counts;
  cfg.seed = o.seed;
  cfg.alpha = o.alpha;
  cfg.beta = o.beta;
  cfg.verify_budget = o.budget;
  cfg.run_attacks = !o.no_attacks;
  cfg.out_dir = o.out;
  cfg.jobs = o.jobs;
  camolut::SweepResult res = camolut::run_sweep(cfg);

  int ok = 0, bad = 0, unverified = 0;
  for (const camolut::SweepCell& c : res.cells) {
    if (!c.ok) ++bad;
    else if (!c.verified) ++unverified;
    else ++ok;
  }
  std::cout << camolut::aggregate_report(res.cells, o.alpha, o.beta, "csv");
  std::cerr << "sweep: " << ok << " ok, " << unverified << " unverified, "
            << bad << " failed\n";
  return (bad || unverified) ? kVerify : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gate hiding behind reconfigurable LUT cells"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file");
  Options o;

  auto* stats = app.add_subcommand("stats", "netlist statistics");
  stats->add_option("--in", o.in, ".bench input")->required();
  stats->add_option("--out", o.out, "output file (default stdout)");

  auto* classify = app.add_subcommand("classify", "cone-membership classes");
  classify->add_option("--in", o.in, ".bench input")->required();
  classify->add_option("--out", o.out, "classes CSV (default stdout)");

  auto* obf = app.add_subcommand("obfuscate", "hide gates behind LUTs");
  obf->add_option("--in", o.in, ".bench input")->required();
  obf->add_option("--out", o.out, "obfuscated .bench (default stdout)");
  obf->add_option("--masks", o.masks, "mask table CSV (defender secret)");
  obf->add_option("--scheme", o.scheme, "mux|sram|sot x _re|_unre")
      ->capture_default_str();
  obf->add_option("--gates", o.gates, "number of gates to hide")
      ->capture_default_str();
  obf->add_option("--seed", o.seed, "selection seed")->capture_default_str();
  obf->add_flag("--force", o.force, "allow hiding more than 5% of the gates");
  obf->add_flag("--tagged", o.tagged, "emit LUT kind tags (defender view)");
  obf->add_flag("--embed-masks", o.embed_masks,
                "emit inline masks (defender archive)");

  auto* eval = app.add_subcommand("evaluate", "area/delay overhead of one pair");
  eval->add_option("--in", o.in, "original .bench")->required();
  eval->add_option("--obf", o.oracle, "obfuscated .bench")->required();
  eval->add_option("--lib", o.lib, "cell library")->required();
  eval->add_option("--scheme", o.scheme, "scheme used (LUT cell costing)")
      ->capture_default_str();
  eval->add_option("--gates", o.gates, "N reported in the row")
      ->capture_default_str();
  eval->add_option("--alpha", o.alpha, "area weight")->capture_default_str();
  eval->add_option("--beta", o.beta, "delay weight")->capture_default_str();
  eval->add_option("--out", o.out, "output file (default stdout)");
  eval->add_option("--masks", o.masks, "mask table for verification");
  eval->add_flag("--verify", o.verify, "check functional equivalence");
  eval->add_option("--budget", o.budget, "verification vector budget")
      ->capture_default_str();

  auto* report = app.add_subcommand("report", "aggregate a sweep overheads.csv");
  report->add_option("--in", o.in, "overheads.csv from a sweep")->required();
  report->add_option("--alpha", o.alpha, "area weight")->capture_default_str();
  report->add_option("--beta", o.beta, "delay weight")->capture_default_str();
  report->add_option("--format", o.format, "csv|json|md")->capture_default_str();
  report->add_option("--out", o.out, "output file (default stdout)");

  auto* attack = app.add_subcommand("attack", "restore-attack simulations");
  attack->require_subcommand(1);
  auto* cpa = attack->add_subcommand("cpa", "cone-partition accounting");
  cpa->add_option("--in", o.in, "obfuscated .bench")->required();
  cpa->add_option("--k", o.k, "per-LUT candidate override (default 2^(2^m))");
  cpa->add_option("--out", o.out, "report JSON (default stdout)");
  auto* bfa = attack->add_subcommand("bfa", "brute-force mask recovery");
  bfa->add_option("--in", o.in, "obfuscated .bench")->required();
  bfa->add_option("--oracle", o.oracle, "oracle .bench (original)")->required();
  bfa->add_option("--oracle-masks", o.oracle_masks,
                  "mask table when the oracle view has LUTs");
  bfa->add_option("--masks", o.masks, "secret masks to check for consistency");
  bfa->add_option("--budget", o.budget, "oracle queries")->capture_default_str();
  bfa->add_option("--enum-cap", o.enum_cap, "max joint candidates enumerated")
      ->capture_default_str();
  bfa->add_option("--threshold", o.threshold, "exhaustive-PI threshold")
      ->capture_default_str();
  bfa->add_option("--out", o.out, "report JSON (default stdout)");
  auto* ita = attack->add_subcommand("ita", "incomplete-testability analysis");
  ita->add_option("--in", o.in, "obfuscated .bench")->required();
  ita->add_option("--budget", o.budget, "sampled vectors")->capture_default_str();
  ita->add_option("--threshold", o.threshold, "exhaustive-PI threshold")
      ->capture_default_str();
  ita->add_option("--out", o.out, "report JSON (default stdout)");
  auto* sca = attack->add_subcommand("sca", "attacker-view leak audit");
  sca->add_option("--views", o.inputs, "emitted .bench views to compare")
      ->required()
      ->expected(-1);
  sca->add_option("--out", o.out, "report JSON (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "full grid over benchmarks");
  sweep->add_option("--benchmarks", o.inputs, ".bench files")
      ->required()
      ->expected(-1);
  sweep->add_option("--lib", o.lib, "cell library")->required();
  sweep->add_option("--out", o.out, "output directory")->required();
  sweep->add_option("--schemes", o.schemes, "subset of schemes (default all)");
  sweep->add_option("--gates", o.gate_counts, "gate counts (default 16 32 64)");
  sweep->add_option("--seed", o.seed, "selection seed")->capture_default_str();
  sweep->add_option("--alpha", o.alpha, "area weight")->capture_default_str();
  sweep->add_option("--beta", o.beta, "delay weight")->capture_default_str();
  sweep->add_option("--budget", o.budget, "verification vector budget")
      ->capture_default_str();
  sweep->add_flag("--no-attacks", o.no_attacks, "skip attack reports");
  sweep->add_option("--jobs", o.jobs, "worker threads (0 = hardware)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (stats->parsed()) return cmd_stats(o);
    if (classify->parsed()) return cmd_classify(o);
    if (obf->parsed()) return cmd_obfuscate(o);
    if (eval->parsed()) return cmd_evaluate(o);
    if (report->parsed()) return cmd_report(o);
    if (attack->parsed()) {
      if (cpa->parsed()) return cmd_attack_cpa(o);
      if (bfa->parsed()) return cmd_attack_bfa(o);
      if (ita->parsed()) return cmd_attack_ita(o);
      if (sca->parsed()) return cmd_attack_sca(o);
    }
    if (sweep->parsed()) return cmd_sweep(o);
    std::cerr << "no subcommand\n";
    return kUsage;
  } catch (const camolut::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const camolut::SelectionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kParse;
  }
}
