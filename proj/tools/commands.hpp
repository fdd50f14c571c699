// Copyright 2026 The ucr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Subcommands of the `ucr` command-line tool. Each command writes its
// human-readable report to `out`, diagnostics to `err`, and returns an exit
// code (0 success, 1 usage error, 2 verification or validation failure).

#ifndef UCR_TOOLS_COMMANDS_HPP
#define UCR_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ucr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

/// Parses "pi/2", "3pi/8", "3*pi/8", "-pi/4", "pi" or a plain decimal.
/// Throws std::invalid_argument on anything else.
double parse_angle(std::string_view text);

/// Seed from --seed, else PURITY_SEED, else 1.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag);

struct MubOptions {
  std::size_t d = 2;
  std::size_t m = 3;
  std::string load;
  std::string out;
};
int cmd_mub(const MubOptions& opts, std::ostream& out, std::ostream& err);

struct VerifyOptions {
  std::size_t d = 2;
  std::size_t m = 3;
  std::size_t big_d = 0;  // 0 means D = d
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  std::string load;
  std::string out;
};
int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);

struct RelationOptions {
  double alpha = 1.5707963267948966;
  double x = 1.0;
  std::size_t m = 3;
  std::string state;  // density-matrix JSON; overrides alpha/x
  std::string load;   // MUB JSON; overrides m
  std::string out;
};
int cmd_relation(const RelationOptions& opts, std::ostream& out, std::ostream& err);

enum class SweepParam { alpha, x };
enum class OutputFormat { csv, json };

struct SweepConfig {
  SweepParam param = SweepParam::alpha;
  std::optional<double> from;  // defaults to the parameter's full range
  std::optional<double> to;
  std::size_t steps = 5;
  std::optional<double> fixed_other;  // x = 1 for alpha sweeps, alpha = pi/2 for x sweeps
  std::size_t d = 2;
  std::size_t m = 3;
  std::uint64_t seed = 1;
  bool simulate = false;
  double noise_p = 0.0;
  std::string out;
  OutputFormat format = OutputFormat::csv;
};

/// Fixed CSV header of the sweep output (simulator columns excluded).
std::vector<std::string> sweep_columns(bool simulate);

int cmd_sweep(const SweepConfig& config, std::ostream& out, std::ostream& err);

struct ExpsimOptions {
  double alpha = 1.5707963267948966;
  double x = 1.0;
  double noise_p = 0.0;
  std::string out;
  std::string gate_log;
};
int cmd_expsim(const ExpsimOptions& opts, std::ostream& out, std::ostream& err);

/// Full argument parsing and dispatch; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ucr::cli

#endif  // UCR_TOOLS_COMMANDS_HPP
