#include "camolut/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "camolut/attacks.hpp"
#include "camolut/bitsim.hpp"

namespace camolut {

namespace {

std::string bench_stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

void write_file(const std::filesystem::path& p, const std::string& data) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << data;
}

struct CellWork {
  size_t index;               // into SweepResult::cells
  size_t bench_index;         // into parsed netlists
  Scheme scheme;
  int n_gates;
};

}  // namespace

SweepResult run_sweep(const RunConfig& cfg) {
  if (cfg.benchmarks.empty())
    throw std::invalid_argument("sweep needs at least one benchmark");
  if (cfg.out_dir.empty())
    throw std::invalid_argument("sweep needs an output directory");
  CellLibrary lib = CellLibrary::load_file(cfg.library);
  std::filesystem::create_directories(cfg.out_dir);

  struct Bench {
    std::string path;
    std::string name;
    std::optional<Netlist> netlist;
    std::string parse_error;
  };
  std::vector<Bench> benches;
  for (const std::string& path : cfg.benchmarks) {
    Bench b;
    b.path = path;
    b.name = bench_stem(path);
    try {
      b.netlist = parse_bench_file(path);
    } catch (const std::exception& e) {
      b.parse_error = e.what();
    }
    benches.push_back(std::move(b));
  }

  SweepResult result;
  std::vector<CellWork> work;
  for (size_t bi = 0; bi < benches.size(); ++bi)
    for (const Scheme& scheme : cfg.schemes)
      for (int n : cfg.gate_counts) {
        SweepCell cell;
        cell.benchmark = benches[bi].name;
        cell.scheme = scheme;
        cell.n_gates = n;
        if (!benches[bi].parse_error.empty()) {
          cell.error = benches[bi].parse_error;
        } else {
          work.push_back({result.cells.size(), bi, scheme, n});
        }
        result.cells.push_back(std::move(cell));
      }

  // Attacker-view emissions per cell, kept for the cross-kind audits.
  std::vector<std::string> views(result.cells.size());

  auto run_cell = [&](const CellWork& w) {
    SweepCell& cell = result.cells[w.index];
    try {
      const Netlist& original = *benches[w.bench_index].netlist;
      // The grid deliberately exceeds the 5% guideline on small circuits;
      // the guard is for interactive use, not for the table generator.
      ObfuscationResult obf =
          obfuscate(original, w.scheme, w.n_gates, cfg.seed, /*force=*/true);
      cell.report =
          evaluate_overheads(original, obf.netlist, lib, w.scheme.lut_kind,
                             w.scheme.name(), w.n_gates, cfg.alpha, cfg.beta);

      EquivalenceOptions eopt;
      eopt.budget = cfg.verify_budget;
      EquivalenceVerdict verdict =
          check_equivalence(original, obf.netlist, nullptr, nullptr, eopt);
      cell.verified = verdict.equivalent();

      std::string base = cell.benchmark + "_" + w.scheme.name() + "_N" +
                         std::to_string(w.n_gates);
      std::string view = emit_bench(obf.netlist, EmitOptions{});
      views[w.index] = view;
      write_file(std::filesystem::path(cfg.out_dir) / (base + ".bench"), view);
      write_file(std::filesystem::path(cfg.out_dir) / (base + ".masks.csv"),
                 obf.masks.to_csv());

      if (cfg.run_attacks) {
        OracleBudget budget;
        budget.max_queries = cfg.verify_budget;
        budget.seed = cfg.seed;
        nlohmann::json j;
        j["cpa"] = nlohmann::json::parse(cpa_partition(obf.netlist).to_json());
        j["bfa"] = nlohmann::json::parse(
            brute_force_attack(obf.netlist, original, nullptr, budget,
                               &obf.masks)
                .to_json());
        j["ita"] =
            nlohmann::json::parse(ita_check(obf.netlist, budget).to_json());
        write_file(std::filesystem::path(cfg.out_dir) / (base + ".attacks.json"),
                   j.dump(2) + "\n");
      }
      cell.ok = true;
    } catch (const std::exception& e) {
      cell.ok = false;
      cell.error = e.what();
    }
  };

  unsigned jobs = cfg.jobs > 0 ? static_cast<unsigned>(cfg.jobs)
                               : std::max(1u, std::thread::hardware_concurrency());
  if (jobs <= 1 || work.size() <= 1) {
    for (const CellWork& w : work) run_cell(w);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t)
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < work.size();
             i = next.fetch_add(1))
          run_cell(work[i]);
      });
    for (std::thread& t : pool) t.join();
  }

  // Cross-kind audit: same benchmark, N and reconstruct policy must emit
  // byte-identical attacker views for every cell realization.
  {
    std::map<std::string, std::vector<size_t>> groups;
    for (size_t i = 0; i < result.cells.size(); ++i) {
      const SweepCell& c = result.cells[i];
      if (!c.ok) continue;
      std::string key = c.benchmark + "_N" + std::to_string(c.n_gates) + "_" +
                        (c.scheme.reconstruct ? "re" : "unre");
      groups[key].push_back(i);
    }
    for (const auto& [key, members] : groups) {
      if (members.size() < 2) continue;
      std::vector<std::string> emitted;
      for (size_t i : members) emitted.push_back(views[i]);
      AttackReport audit = sca_audit(emitted);
      write_file(std::filesystem::path(cfg.out_dir) / (key + "_sca.json"),
                 audit.to_json());
    }
  }

  {
    std::ostringstream csv;
    csv << OverheadReport::csv_header() << "\n";
    for (const SweepCell& c : result.cells)
      if (c.ok) csv << c.report.to_csv_row() << "\n";
    write_file(std::filesystem::path(cfg.out_dir) / "overheads.csv", csv.str());
  }
  {
    std::ostringstream csv;
    csv << "benchmark,scheme,n_gates,ok,verified,error\n";
    for (const SweepCell& c : result.cells) {
      std::string err = c.error;
      for (char& ch : err)
        if (ch == ',' || ch == '\n') ch = ';';
      csv << c.benchmark << ',' << c.scheme.name() << ',' << c.n_gates << ','
          << (c.ok ? 1 : 0) << ',' << (c.verified ? 1 : 0) << ',' << err << "\n";
    }
    write_file(std::filesystem::path(cfg.out_dir) / "summary.csv", csv.str());
  }
  write_file(std::filesystem::path(cfg.out_dir) / "aggregate.csv",
             aggregate_report(result.cells, cfg.alpha, cfg.beta, "csv"));
  return result;
}

std::string aggregate_report(const std::vector<SweepCell>& cells, double alpha,
                             double beta, const std::string& format) {
  struct Agg {
    int count = 0;
    double area_min = 0, area_max = 0, area_sum = 0;
    double delay_min = 0, delay_max = 0, delay_sum = 0;
  };
  std::vector<std::pair<std::string, int>> order;  // (scheme, n) first seen
  std::map<std::pair<std::string, int>, Agg> agg;
  for (const SweepCell& c : cells) {
    if (!c.ok) continue;
    std::pair<std::string, int> key{c.scheme.name(), c.n_gates};
    auto [it, inserted] = agg.emplace(key, Agg{});
    Agg& a = it->second;
    double ao = c.report.area_overhead * 100.0;
    double dol = c.report.delay_overhead * 100.0;
    if (inserted) {
      order.push_back(key);
      a.area_min = a.area_max = ao;
      a.delay_min = a.delay_max = dol;
    } else {
      a.area_min = std::min(a.area_min, ao);
      a.area_max = std::max(a.area_max, ao);
      a.delay_min = std::min(a.delay_min, dol);
      a.delay_max = std::max(a.delay_max, dol);
    }
    a.area_sum += ao;
    a.delay_sum += dol;
    ++a.count;
  }

  auto phi_avg = [&](const Agg& a) {
    return composite_phi(a.area_sum / a.count / 100.0,
                         a.delay_sum / a.count / 100.0, alpha, beta) *
           100.0;
  };

  if (format == "csv") {
    std::ostringstream out;
    out << "scheme,n_gates,cells,area_min_pct,area_avg_pct,area_max_pct,"
           "delay_min_pct,delay_avg_pct,delay_max_pct,phi_avg_pct\n";
    for (const auto& key : order) {
      const Agg& a = agg.at(key);
      char buf[256];
      std::snprintf(buf, sizeof(buf),
                    "%s,%d,%d,%.2f,%.2f,%.2f,%.2f,%.2f,%.2f,%.2f",
                    key.first.c_str(), key.second, a.count, a.area_min,
                    a.area_sum / a.count, a.area_max, a.delay_min,
                    a.delay_sum / a.count, a.delay_max, phi_avg(a));
      out << buf << "\n";
    }
    return out.str();
  }
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& key : order) {
      const Agg& a = agg.at(key);
      nlohmann::json e;
      e["scheme"] = key.first;
      e["n_gates"] = key.second;
      e["cells"] = a.count;
      e["area_min_pct"] = a.area_min;
      e["area_avg_pct"] = a.area_sum / a.count;
      e["area_max_pct"] = a.area_max;
      e["delay_min_pct"] = a.delay_min;
      e["delay_avg_pct"] = a.delay_sum / a.count;
      e["delay_max_pct"] = a.delay_max;
      e["phi_avg_pct"] = phi_avg(a);
      arr.push_back(e);
    }
    return arr.dump(2) + "\n";
  }
  if (format == "md") {
    std::ostringstream out;
    out << "| scheme | N | cells | area min/avg/max % | delay min/avg/max % | "
           "phi avg % |\n";
    out << "|---|---|---|---|---|---|\n";
    for (const auto& key : order) {
      const Agg& a = agg.at(key);
      char buf[256];
      std::snprintf(buf, sizeof(buf),
                    "| %s | %d | %d | %.2f / %.2f / %.2f | %.2f / %.2f / %.2f "
                    "| %.2f |",
                    key.first.c_str(), key.second, a.count, a.area_min,
                    a.area_sum / a.count, a.area_max, a.delay_min,
                    a.delay_sum / a.count, a.delay_max, phi_avg(a));
      out << buf << "\n";
    }
    return out.str();
  }
  throw std::invalid_argument("unknown report format: " + format);
}

}  // namespace camolut
