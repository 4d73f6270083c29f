#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "camolut/evaluate.hpp"
#include "camolut/obfuscate.hpp"

namespace camolut {

struct RunConfig {
  std::vector<std::string> benchmarks;  // .bench paths
  std::string library;                  // cell library path
  std::vector<Scheme> schemes = Scheme::all();
  std::vector<int> gate_counts = {16, 32, 64};
  uint64_t seed = 1;
  double alpha = 0.5;
  double beta = 0.5;
  uint64_t verify_budget = 100000;
  bool run_attacks = true;
  std::string out_dir;
  int jobs = 0;  // 0 = hardware concurrency
};

struct SweepCell {
  std::string benchmark;
  Scheme scheme;
  int n_gates = 0;
  bool ok = false;
  std::string error;         // set when !ok; sweep continues
  OverheadReport report;     // valid when ok
  bool verified = false;     // equivalence verdict of the cell
};

struct SweepResult {
  std::vector<SweepCell> cells;  // deterministic (benchmark, scheme, N) order
};

// Runs the full grid, writes per-cell artifacts (obfuscated .bench, mask
// table, attack reports) plus overheads.csv and summary.csv into out_dir.
// Deterministic for a fixed seed: same bytes, same file set.
SweepResult run_sweep(const RunConfig& cfg);

// Aggregation in the shape of the published overhead tables: per scheme and
// N, max/min/avg area and delay overheads plus the composite phi of the
// averages. Formats: csv, json, md.
std::string aggregate_report(const std::vector<SweepCell>& cells, double alpha,
                             double beta, const std::string& format);

}  // namespace camolut
