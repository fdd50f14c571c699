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

#include "commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "gtest/gtest.h"
#include "ucr/ucr.hpp"

using namespace ucr;
using namespace ucr::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "ucr");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ucr_cli_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(cli, parse_angle_forms) {
  const double pi = std::numbers::pi;
  EXPECT_DOUBLE_EQ(parse_angle("pi/2"), pi / 2);
  EXPECT_DOUBLE_EQ(parse_angle("3pi/8"), 3 * pi / 8);
  EXPECT_DOUBLE_EQ(parse_angle("3*pi/8"), 3 * pi / 8);
  EXPECT_DOUBLE_EQ(parse_angle("-pi/4"), -pi / 4);
  EXPECT_DOUBLE_EQ(parse_angle("pi"), pi);
  EXPECT_DOUBLE_EQ(parse_angle("0.25"), 0.25);
  EXPECT_THROW(parse_angle("tau"), std::invalid_argument);
  EXPECT_THROW(parse_angle("pi/0"), std::invalid_argument);
  EXPECT_THROW(parse_angle(""), std::invalid_argument);
}

TEST(cli, seed_resolution) {
  unsetenv("PURITY_SEED");
  EXPECT_EQ(resolve_seed(std::nullopt), 1u);
  EXPECT_EQ(resolve_seed(9), 9u);
  setenv("PURITY_SEED", "77", 1);
  EXPECT_EQ(resolve_seed(std::nullopt), 77u);
  EXPECT_EQ(resolve_seed(3), 3u);
  setenv("PURITY_SEED", "abc", 1);
  EXPECT_THROW(resolve_seed(std::nullopt), std::invalid_argument);
  unsetenv("PURITY_SEED");
}

TEST(cli, mub_writes_valid_json) {
  const auto path = temp_file("mub.json");
  const Result r = invoke({"mub", "--d", "3", "--m", "4", "--out", path.string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("status: pass"), std::string::npos);
  const MubSet set = load_mubs(path.string());
  EXPECT_EQ(set.d(), 3u);
  EXPECT_EQ(set.count(), 4u);
  std::filesystem::remove(path);
}

TEST(cli, mub_to_stdout_is_parseable_json) {
  const Result r = invoke({"mub", "--d", "2", "--m", "3"});
  EXPECT_EQ(r.code, kExitOk);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["d"], 2);
  EXPECT_EQ(j["M"], 3);
  EXPECT_NE(r.err.find("status: pass"), std::string::npos);
}

TEST(cli, mub_non_prime_without_load_fails) {
  const Result r = invoke({"mub", "--d", "6", "--m", "3"});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.err.find("--load"), std::string::npos);
}

TEST(cli, mub_load_of_invalid_set_fails) {
  nlohmann::json j = construct_mubs(2, 3);
  j["bases"][1][0][0] = {0.9, 0.0};
  const auto path = temp_file("bad.json");
  std::ofstream(path) << j.dump();
  const Result r = invoke({"mub", "--d", "2", "--load", path.string()});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.err.find("basis 2 vector 0"), std::string::npos) << r.err;
  std::filesystem::remove(path);
}

TEST(cli, usage_errors) {
  EXPECT_EQ(invoke({"mub", "--d"}).code, kExitUsage);
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(invoke({"sweep", "--param", "beta"}).code, kExitUsage);
  EXPECT_EQ(invoke({"sweep", "--d", "3"}).code, kExitUsage);
  EXPECT_EQ(invoke({"relation", "--alpha", "2"}).code, kExitUsage);
  EXPECT_EQ(invoke({"expsim", "--noise", "-0.5"}).code, kExitUsage);
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST(cli, unwritable_output_is_an_error) {
  const Result r = invoke({"mub", "--d", "2", "--out", "/nonexistent-dir/mub.json"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("cannot open"), std::string::npos);
}

TEST(cli, verify_complete_qutrit_set) {
  const Result r = invoke({"verify", "--d", "3", "--m", "4", "--trials", "20", "--seed", "5"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_NE(r.out.find("gamma Frobenius max"), std::string::npos);
  EXPECT_NE(r.out.find("status: pass"), std::string::npos);
}

TEST(cli, verify_incomplete_set_reports_min_eigenvalue) {
  const Result r = invoke({"verify", "--d", "3", "--m", "2", "--D", "2", "--trials", "20"});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  EXPECT_NE(r.out.find("gamma min eigenvalue"), std::string::npos);
  EXPECT_NE(r.out.find("D=2"), std::string::npos);
}

TEST(cli, verify_is_deterministic_and_seed_sensitive) {
  const Result a = invoke({"verify", "--d", "2", "--m", "2", "--trials", "10", "--seed", "3"});
  const Result b = invoke({"verify", "--d", "2", "--m", "2", "--trials", "10", "--seed", "3"});
  EXPECT_EQ(a.out, b.out);
  setenv("PURITY_SEED", "3", 1);
  const Result c = invoke({"verify", "--d", "2", "--m", "2", "--trials", "10"});
  unsetenv("PURITY_SEED");
  EXPECT_EQ(a.out, c.out);
}

TEST(cli, verify_writes_report_file) {
  const auto path = temp_file("verify.txt");
  const Result r = invoke({"verify", "--d", "2", "--trials", "5", "--out", path.string()});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(slurp(path), r.out);
  std::filesystem::remove(path);
}

TEST(cli, relation_for_werner_state) {
  const Result r = invoke({"relation", "--alpha", "pi/2", "--x", "0.5"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  const nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["lhs"].get<double>(), 0.5625, 1e-12);
  EXPECT_NEAR(j["rhs"].get<double>(), 0.5625, 1e-12);
  EXPECT_NEAR(j["purity_AB"].get<double>(), 0.4375, 1e-12);
  EXPECT_EQ(j["equality_expected"], true);
}

TEST(cli, relation_from_state_file) {
  const auto path = temp_file("state.json");
  const DensityMatrix rho = random_density({3, 2}, 3, 11);
  std::ofstream(path) << nlohmann::json(rho).dump();
  const Result r = invoke({"relation", "--state", path.string(), "--m", "2"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  const nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["d"], 3);
  EXPECT_EQ(j["D"], 2);
  EXPECT_NEAR(j["gap"].get<double>(), relation_report(rho, construct_mubs(3, 2)).gap, 1e-15);
  std::filesystem::remove(path);
}

TEST(cli, sweep_x_matches_closed_form) {
  const Result r = invoke({"sweep", "--param", "x", "--steps", "5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0], sweep_columns(false));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double x = std::stod(rows[i][1]);
    EXPECT_NEAR(x, 0.25 * static_cast<double>(i - 1), 1e-15);
    EXPECT_NEAR(std::stod(rows[i][9]), 0.75 * (1 - x * x), 1e-12);
    EXPECT_NEAR(std::stod(rows[i][10]), 0.75 * (1 - x * x), 1e-12);
    EXPECT_NEAR(std::stod(rows[i][0]), std::numbers::pi / 2, 1e-15);
  }
}

TEST(cli, sweep_alpha_endpoints_and_partial_set) {
  const Result r = invoke({"sweep", "--param", "alpha", "--from", "0", "--to", "pi/2", "--steps", "3", "--m", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(std::stod(rows[3][0]), std::numbers::pi / 2);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][3], "2");
    EXPECT_TRUE(rows[i][7].empty());
    EXPECT_GE(std::stod(rows[i][11]), -1e-9);
  }
}

TEST(cli, sweep_with_simulator_columns) {
  const Result r =
      invoke({"sweep", "--param", "x", "--steps", "3", "--simulate", "--noise", "0.01", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const nlohmann::json j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 3u);
  for (const auto& row : j) {
    EXPECT_EQ(row.size(), sweep_columns(true).size());
    EXPECT_NEAR(row["rescaled_purity_AB"].get<double>(), row["purity_AB"].get<double>(), 1e-10);
    EXPECT_LT(row["raw_purity_AB"].get<double>(), row["purity_AB"].get<double>());
  }
}

TEST(cli, sweep_rejects_bad_ranges) {
  EXPECT_EQ(invoke({"sweep", "--param", "x", "--from", "0.5", "--to", "0.2"}).code, kExitUsage);
  EXPECT_EQ(invoke({"sweep", "--param", "x", "--to", "2"}).code, kExitUsage);
  EXPECT_EQ(invoke({"sweep", "--steps", "1"}).code, kExitUsage);
}

TEST(cli, expsim_panel_and_gate_log) {
  const auto log = temp_file("gates.txt");
  const Result r = invoke({"expsim", "--alpha", "pi/2", "--x", "1", "--gate-log", log.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["raw"]["purity_AB"].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(j["raw"]["purity_B"].get<double>(), 0.5, 1e-12);
  const std::string text = slurp(log);
  EXPECT_NE(text.find("# purity_AB"), std::string::npos);
  EXPECT_NE(text.find("CSWAP q0 q1 q3"), std::string::npos);
  EXPECT_NE(text.find("DEPHASE q1"), std::string::npos);
  std::filesystem::remove(log);
}

TEST(cli, expsim_noise_is_reported) {
  const Result r = invoke({"expsim", "--noise", "0.01"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["noise_p"], 0.01);
  EXPECT_NEAR(j["raw"]["purity_AB"].get<double>(), 0.9801, 1e-12);
  EXPECT_NEAR(j["rescaled"]["purity_AB"].get<double>(), 1.0, 1e-12);
}
