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

#ifndef SLABSUM_TOOLS_CLI_H_
#define SLABSUM_TOOLS_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "slabsum/numerics.h"

namespace slabsum::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kResource = 2,
  kAnomaly = 3,
};

// Runs one command line. Results go to --out when given, else to `out`;
// diagnostics go to `err`.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

struct BenchConfig {
  std::vector<int> ns;
  std::vector<int> cs = {2};
  int repeats = 3;
  int bits = 32;
  std::uint64_t seed = 1;
  int threads = 1;
  bool full_scan = true;
};

struct BenchRow {
  int n = 0;
  BigInt big_n;
  int c = 0;
  double wall_ms = 0;  // median over repeats
  std::size_t targets_scanned = 0;
  BigInt table_cells;
};

// Times the slab decision on one random instance per (n, c).
std::vector<BenchRow> RunBench(const BenchConfig& config);

std::string BenchCsv(const std::vector<BenchRow>& rows);

// Least-squares slope of log(wall_ms) against log(n) over rows with the
// given c. NaN with fewer than two rows.
double FitSlope(const std::vector<BenchRow>& rows, int c);

}  // namespace slabsum::cli

#endif  // SLABSUM_TOOLS_CLI_H_
