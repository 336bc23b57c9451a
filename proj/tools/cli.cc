// Copyright 2026 The Slabsum Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "slabsum/dp.h"
#include "slabsum/errors.h"
#include "slabsum/instance.h"
#include "slabsum/oracle.h"
#include "slabsum/quantize.h"
#include "slabsum/slab.h"
#include "slabsum/sssp.h"

namespace slabsum::cli {

namespace {

using Json = nlohmann::ordered_json;

Json RationalJson(const Rational& v) {
  Json out = Json::object();
  out["num"] = ToDecimal(v.get_num());
  out["den"] = ToDecimal(v.get_den());
  return out;
}

Json VertexJson(const Vertex& x) {
  Json out = Json::array();
  for (auto bit : x) out.push_back(static_cast<int>(bit));
  return out;
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

// Writes to `path`, or to `out` when the path is empty.
void Emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw DomainError("cannot open " + path + " for writing");
  file << text;
  if (!file) throw Error("failed writing " + path);
}

template <typename T>
const T& Expect(const InstanceFile& file, const char* what) {
  const T* inst = std::get_if<T>(&file.instance);
  if (!inst) throw DomainError(std::string("this command needs ") + what);
  return *inst;
}

// Partition view of an SSP or partition instance file.
PartitionInstance AsPartition(const InstanceFile& file) {
  if (const auto* p = std::get_if<PartitionInstance>(&file.instance)) return *p;
  if (const auto* s = std::get_if<SspInstance>(&file.instance)) {
    return PartitionInstance{s->weights, s->bits};
  }
  throw DomainError("this command needs a partition or ssp instance");
}

DpOptions BudgetFrom(const std::optional<std::uint64_t>& cells) {
  DpOptions dp;
  if (cells) dp.max_cells = *cells;
  return dp;
}

struct Config {
  std::string in;
  std::string out;
  int threads = 1;
  std::optional<std::uint64_t> budget_cells;

  // gen
  std::string kind = "partition";
  int n = 0;
  int bits = 8;
  std::uint64_t seed = 0;
  bool planted = false;
  int p = 2;
  std::string rho;
  std::string delta = "1";
  bool duplicate_rows = false;

  // slab
  std::optional<int> c;
  std::string big_n;
  std::string epsilon;
  bool full_scan = false;

  // sssp
  std::string sssp_delta;
  std::string epsilon_b;
  std::uint64_t max_leaves = 10'000'000;
  int leaf_exponent = 4;

  // oracle
  std::size_t oracle_cap = 26;

  // bench
  std::vector<int> bench_ns;
  std::vector<int> bench_cs = {2};
  int repeats = 3;
  int bench_bits = 32;
  bool first_hit = false;
};

int CmdGen(const Config& cfg, std::ostream& out) {
  InstanceFile file;
  file.meta.n = cfg.n;
  file.meta.m = cfg.bits;
  file.meta.seed = cfg.seed;
  if (cfg.kind == "partition") {
    if (cfg.planted) {
      PlantedPartition planted =
          GeneratePlantedPartition(cfg.n, cfg.bits, cfg.seed);
      file.instance = std::move(planted.instance);
      file.meta.planted_x = std::move(planted.planted_x);
    } else {
      file.instance = GenerateRandomPartition(cfg.n, cfg.bits, cfg.seed);
    }
  } else if (cfg.kind == "ssp") {
    if (cfg.planted) {
      throw DomainError("--planted is only available for partition and sssp");
    }
    file.instance = GenerateRandomSsp(cfg.n, cfg.bits, cfg.seed);
  } else if (cfg.kind == "sssp") {
    const Rational delta = ParseRational(cfg.delta);
    const Rational rho = cfg.rho.empty()
                             ? DefaultRho(static_cast<std::size_t>(cfg.n), delta)
                             : ParseRational(cfg.rho);
    PlantedSssp planted = GeneratePlantedSssp(cfg.n, cfg.p, cfg.bits, cfg.seed,
                                              rho, delta, cfg.duplicate_rows);
    file.instance = std::move(planted.instance);
    file.meta.planted_x = std::move(planted.planted_x);
  } else {
    throw DomainError("unknown --kind " + cfg.kind);
  }
  Emit(WriteInstanceJson(file), cfg.out, out);
  return kOk;
}

int CmdSolveExact(const Config& cfg, std::ostream& out) {
  const InstanceFile file = LoadInstance(cfg.in);
  std::vector<BigInt> weights;
  std::optional<BigInt> target;
  if (const auto* s = std::get_if<SspInstance>(&file.instance)) {
    weights = s->weights;
    target = s->target;
  } else {
    const PartitionInstance inst = AsPartition(file);
    weights = inst.weights;
    const BigInt sum = Sum(weights);
    if (sum % 2 == 0) target = sum / 2;
  }
  std::optional<Vertex> x;
  if (target) x = DpDecide(weights, *target, BudgetFrom(cfg.budget_cells));
  Json j = Json::object();
  j["solvable"] = x.has_value();
  j["target"] = target ? Json(ToDecimal(*target)) : Json(nullptr);
  j["x"] = x ? VertexJson(*x) : Json::array();
  Emit(Dump(j), cfg.out, out);
  return kOk;
}

DecideOptions SlabOptions(const Config& cfg) {
  DecideOptions options;
  options.threads = cfg.threads;
  options.dp = BudgetFrom(cfg.budget_cells);
  options.full_scan = cfg.full_scan;
  return options;
}

int EmitVerdict(const SlabVerdict& verdict, const Config& cfg, std::ostream& out,
                std::ostream& err) {
  Emit(VerdictToJson(verdict), cfg.out, out);
  if (verdict.anomaly) {
    err << "anomaly: the found vertex misses the outer slab or the quality "
           "bound\n";
    return kAnomaly;
  }
  return kOk;
}

int CmdSolveFptas(const Config& cfg, std::ostream& out, std::ostream& err) {
  const PartitionInstance inst = AsPartition(LoadInstance(cfg.in));
  const SlabVerdict verdict =
      DecideEpsilon(inst, ParseRational(cfg.epsilon), SlabOptions(cfg));
  return EmitVerdict(verdict, cfg, out, err);
}

int CmdDecideSlab(const Config& cfg, std::ostream& out, std::ostream& err) {
  const PartitionInstance inst = AsPartition(LoadInstance(cfg.in));
  SlabVerdict verdict;
  if (cfg.c) {
    verdict = Decide(inst, *cfg.c, SlabOptions(cfg));
  } else if (!cfg.big_n.empty()) {
    verdict = DecideWithScale(inst, ParseBigInt(cfg.big_n), SlabOptions(cfg));
  } else {
    throw DomainError("decide-slab needs --c or --big-n");
  }
  return EmitVerdict(verdict, cfg, out, err);
}

int CmdSolveSssp(const Config& cfg, std::ostream& out) {
  SsspInstance inst =
      Expect<SsspInstance>(LoadInstance(cfg.in), "an sssp instance");
  if (!cfg.sssp_delta.empty()) inst.delta = ParseRational(cfg.sssp_delta);
  if (!cfg.rho.empty()) inst.rho = ParseRational(cfg.rho);
  SsspOptions options;
  if (!cfg.epsilon_b.empty()) options.epsilon_b = ParseRational(cfg.epsilon_b);
  options.max_leaves = cfg.max_leaves;
  options.leaf_exponent = cfg.leaf_exponent;
  options.threads = cfg.threads;
  options.dp = BudgetFrom(cfg.budget_cells);
  Emit(SsspResultToJson(SolveSssp(inst, options)), cfg.out, out);
  return kOk;
}

int CmdOracle(const Config& cfg, std::ostream& out) {
  const InstanceFile file = LoadInstance(cfg.in);
  OracleOptions options;
  options.max_n = cfg.oracle_cap;
  options.threads = cfg.threads;
  Json j = Json::object();
  if (const auto* sssp = std::get_if<SsspInstance>(&file.instance)) {
    const std::vector<Shell> shells = BuildShells(*sssp);
    const L0Minimum best = MinVertexL0(shells, options);
    j["min_l0"] = RationalJson(best.value);
    j["argmin"] = VertexJson(best.argmin);
    j["five_delta"] = RationalJson(Rational(5 * sssp->delta));
  } else {
    OracleReport report;
    if (const auto* ssp = std::get_if<SspInstance>(&file.instance)) {
      report = EnumerateSubsetSum(*ssp, options);
    } else {
      report = EnumeratePartition(AsPartition(file), options);
    }
    j["count"] = report.count;
    Json sols = Json::array();
    for (const Vertex& x : report.solutions) sols.push_back(VertexJson(x));
    j["solutions"] = std::move(sols);
    j["min_distance_sq"] = RationalJson(report.min_distance_sq);
    j["nearest"] = VertexJson(report.nearest);
  }
  Emit(Dump(j), cfg.out, out);
  return kOk;
}

int CmdBench(const Config& cfg, std::ostream& out) {
  BenchConfig bench;
  bench.ns = cfg.bench_ns;
  bench.cs = cfg.bench_cs;
  bench.repeats = cfg.repeats;
  bench.bits = cfg.bench_bits;
  bench.seed = cfg.seed;
  bench.threads = cfg.threads;
  bench.full_scan = !cfg.first_hit;
  const std::vector<BenchRow> rows = RunBench(bench);
  const std::string csv = BenchCsv(rows);
  if (cfg.out.empty()) {
    out << csv;
  } else {
    Emit(csv, cfg.out, out);
  }
  std::vector<int> cs = bench.cs;
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  for (int c : cs) {
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(3);
    line << "slope c=" << c << ": " << FitSlope(rows, c) << "\n";
    out << line.str();
  }
  return kOk;
}

double MedianOf(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return (values[mid - 1] + values[mid]) / 2;
}

}  // namespace

std::vector<BenchRow> RunBench(const BenchConfig& config) {
  if (config.repeats < 1) throw DomainError("--repeats must be >= 1");
  std::vector<BenchRow> rows;
  for (int c : config.cs) {
    for (int n : config.ns) {
      // Resample until no weight underflows at this scale.
      PartitionInstance inst;
      std::optional<QuantizedNormal> q;
      for (std::uint64_t attempt = 0; !q; ++attempt) {
        if (attempt == 1000) {
          throw DomainError("no instance without quantization underflow found");
        }
        inst = GenerateRandomPartition(n, config.bits,
                                       config.seed + attempt * 1'000'003ULL);
        try {
          q = QuantizeWithExponent(inst, c);
        } catch (const QuantizationUnderflow&) {
        }
      }
      DecideOptions options;
      options.threads = config.threads;
      options.full_scan = config.full_scan;
      std::vector<double> times;
      SlabVerdict verdict;
      for (int r = 0; r < config.repeats; ++r) {
        const auto start = std::chrono::steady_clock::now();
        verdict = DecideQuantized(inst, *q, options);
        const auto stop = std::chrono::steady_clock::now();
        times.push_back(
            std::chrono::duration<double, std::milli>(stop - start).count());
      }
      BenchRow row;
      row.n = n;
      row.big_n = q->big_n;
      row.c = c;
      row.wall_ms = MedianOf(times);
      row.targets_scanned = verdict.targets_scanned;
      row.table_cells = verdict.table_cells;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string BenchCsv(const std::vector<BenchRow>& rows) {
  std::ostringstream csv;
  csv << "n,N,c,wall_ms,targets_scanned,table_cells\n";
  csv.setf(std::ios::fixed);
  csv.precision(3);
  for (const BenchRow& row : rows) {
    csv << row.n << ',' << ToDecimal(row.big_n) << ',' << row.c << ','
        << row.wall_ms << ',' << row.targets_scanned << ','
        << ToDecimal(row.table_cells) << '\n';
  }
  return csv.str();
}

double FitSlope(const std::vector<BenchRow>& rows, int c) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const BenchRow& row : rows) {
    if (row.c != c || row.wall_ms <= 0) continue;
    xs.push_back(std::log(static_cast<double>(row.n)));
    ys.push_back(std::log(row.wall_ms));
  }
  if (xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double k = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / k;
    my += ys[i] / k;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxx == 0 ? std::numeric_limits<double>::quiet_NaN() : sxy / sxx;
}

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Subset-sum, slab and simultaneous subset-sum solvers"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&cfg](CLI::App* cmd) {
    cmd->add_option("--threads", cfg.threads, "worker threads")
        ->check(CLI::Range(1, 1024));
    cmd->add_option("--out", cfg.out, "output file (default stdout)");
    cmd->add_option("--budget-cells", cfg.budget_cells,
                    "max DP table cells (default SLABSUM_BUDGET_CELLS or 1e10)");
  };
  auto input = [&cfg](CLI::App* cmd) {
    cmd->add_option("--in", cfg.in, "instance file")->required();
  };

  CLI::App* gen = app.add_subcommand("gen", "generate an instance file");
  common(gen);
  gen->add_option("--kind", cfg.kind, "partition, ssp or sssp")
      ->check(CLI::IsMember({"partition", "ssp", "sssp"}));
  gen->add_option("--n", cfg.n, "number of items")->required();
  gen->add_option("--bits", cfg.bits, "weights lie in [1, 2^bits)");
  gen->add_option("--seed", cfg.seed, "generator seed");
  gen->add_flag("--planted", cfg.planted, "plant an exact solution");
  gen->add_option("--p", cfg.p, "number of rows (sssp)");
  gen->add_option("--rho", cfg.rho, "shell distance (sssp, default n/delta)");
  gen->add_option("--delta", cfg.delta, "residual target (sssp)");
  gen->add_flag("--duplicate-rows", cfg.duplicate_rows,
                "repeat one row p times (sssp)");

  CLI::App* exact = app.add_subcommand("solve-exact", "exact subset-sum DP");
  common(exact);
  input(exact);

  CLI::App* fptas =
      app.add_subcommand("solve-fptas", "slab decision at accuracy epsilon");
  common(fptas);
  input(fptas);
  fptas->add_option("--epsilon", cfg.epsilon, "accuracy in (0, 1)")->required();
  fptas->add_flag("--full-scan", cfg.full_scan, "scan every target");

  CLI::App* decide = app.add_subcommand("decide-slab", "slab decision at N");
  common(decide);
  input(decide);
  CLI::Option* opt_c = decide->add_option("--c", cfg.c, "N = n^c, c >= 2");
  CLI::Option* opt_n = decide->add_option("--big-n", cfg.big_n, "explicit N");
  opt_c->excludes(opt_n);
  opt_n->excludes(opt_c);
  decide->add_flag("--full-scan", cfg.full_scan, "scan every target");

  CLI::App* sssp = app.add_subcommand("solve-sssp", "simultaneous subset sum");
  common(sssp);
  input(sssp);
  sssp->add_option("--delta", cfg.sssp_delta, "override delta");
  sssp->add_option("--rho", cfg.rho, "override rho");
  sssp->add_option("--epsilon-b", cfg.epsilon_b, "B grid step");
  sssp->add_option("--max-leaves", cfg.max_leaves, "grid budget");
  sssp->add_option("--leaf-exponent", cfg.leaf_exponent,
                   "leaf slabs use N = n^e")
      ->check(CLI::Range(1, 8));

  CLI::App* oracle = app.add_subcommand("oracle", "brute-force enumeration");
  common(oracle);
  input(oracle);
  oracle->add_option("--oracle-cap", cfg.oracle_cap, "largest n enumerated");

  CLI::App* bench = app.add_subcommand("bench", "time the slab decision");
  common(bench);
  bench->add_option("--n", cfg.bench_ns, "comma-separated sizes")
      ->delimiter(',')
      ->required();
  bench->add_option("--c", cfg.bench_cs, "comma-separated exponents")
      ->delimiter(',');
  bench->add_option("--repeats", cfg.repeats, "runs per point (median)");
  bench->add_option("--bits", cfg.bench_bits, "weight bits");
  bench->add_option("--seed", cfg.seed, "instance seed");
  bench->add_flag("--first-hit", cfg.first_hit,
                  "stop at the first solvable target");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return CmdGen(cfg, out);
    if (*exact) return CmdSolveExact(cfg, out);
    if (*fptas) return CmdSolveFptas(cfg, out, err);
    if (*decide) return CmdDecideSlab(cfg, out, err);
    if (*sssp) return CmdSolveSssp(cfg, out);
    if (*oracle) return CmdOracle(cfg, out);
    if (*bench) return CmdBench(cfg, out);
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const ParseError& e) {
    err << "parse error at " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kAnomaly;
  }
  return kUsage;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("slabsum");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace slabsum::cli
