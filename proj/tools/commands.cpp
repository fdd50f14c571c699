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

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "ucr/ucr.hpp"

namespace ucr::cli {
namespace {

std::string fmt_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_number(std::string_view s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  return v;
}

/// Writes `content` to `path`, or to `fallback` when `path` is empty.
void emit(const std::string& path, const std::string& content, std::ostream& fallback) {
  if (path.empty()) {
    fallback << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file " + path);
  file << content;
  if (!file) throw std::runtime_error("write failed for " + path);
}

/// Usage errors raised from inside a command body.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A loaded basis set that fails validation.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

MubSet obtain_mubs(std::size_t d, std::size_t m, const std::string& load) {
  if (load.empty()) return construct_mubs(d, m);
  try {
    return load_mubs(load);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
}

}  // namespace

double parse_angle(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  static const std::regex pi_form(R"(^([+-]?)([0-9]*\.?[0-9]*)\*?pi(?:/([0-9]*\.?[0-9]+))?$)", std::regex::icase);
  std::smatch match;
  if (std::regex_match(s, match, pi_form)) {
    double v = std::numbers::pi;
    if (match[2].length() > 0) v *= parse_number(match[2].str());
    if (match[3].length() > 0) {
      const double denom = parse_number(match[3].str());
      if (denom == 0.0) throw std::invalid_argument("angle '" + s + "' divides by zero");
      v /= denom;
    }
    return match[1] == "-" ? -v : v;
  }
  try {
    return parse_number(s);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("cannot parse angle '" + std::string(text) + "'");
  }
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("PURITY_SEED"); env != nullptr && *env != '\0') {
    std::uint64_t v = 0;
    const std::string_view sv(env);
    const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (ec != std::errc{} || ptr != sv.data() + sv.size()) {
      throw UsageError("PURITY_SEED is not an unsigned integer: '" + std::string(sv) + "'");
    }
    return v;
  }
  return 1;
}

// ---------------------------------------------------------------------------
// mub

int cmd_mub(const MubOptions& opts, std::ostream& out, std::ostream& err) {
  MubSet set;
  if (opts.load.empty() && !is_prime(opts.d)) {
    err << "error: d = " << opts.d << " is not prime; no built-in construction exists. "
        << "Supply a basis set with --load <file>.\n";
    return kExitFailure;
  }
  try {
    set = obtain_mubs(opts.d, opts.m, opts.load);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  const MubValidation v = validate_mubs(set);
  std::ostream& report = opts.out.empty() ? err : out;
  report << "mub d=" << set.d() << " M=" << set.count() << '\n'
         << "max orthonormality deviation: " << fmt_sci(v.max_orthonormality_deviation) << " (tolerance 1e-12)\n"
         << "max unbiasedness deviation: " << fmt_sci(v.max_unbiasedness_deviation) << " (tolerance 1e-12)\n";
  if (!v.pass) report << "problem: " << v.first_problem << '\n';
  report << "status: " << (v.pass ? "pass" : "FAIL") << '\n';
  emit(opts.out, nlohmann::json(set).dump(2) + "\n", out);
  return v.pass ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.load.empty() && !is_prime(opts.d)) {
    err << "error: d = " << opts.d << " is not prime; supply a basis set with --load <file>.\n";
    return kExitFailure;
  }
  const MubSet mubs = obtain_mubs(opts.d, opts.m, opts.load);
  const std::size_t d = mubs.d();
  const std::size_t m = mubs.count();
  const std::size_t big_d = opts.big_d == 0 ? d : opts.big_d;
  if (opts.trials == 0) throw UsageError("--trials must be positive");

  std::ostringstream r;
  bool ok = true;
  r << "verify d=" << d << " M=" << m << " D=" << big_d << " trials=" << opts.trials << " seed=" << opts.seed << '\n';

  const BipartiteBasis basis = build_bipartite_basis(mubs);
  const BasisValidation bv = validate_bipartite_basis(basis);
  r << "bipartite states: " << m * (d - 1) + 1 << " constructed + " << basis.complement().size() << " completion\n";
  r << "gram max deviation: " << fmt_sci(bv.max_gram_deviation) << " <= 1e-12 "
    << (bv.max_gram_deviation <= tol::kStructural ? "ok" : "FAIL") << '\n';
  r << "projector idempotence: " << fmt_sci(bv.projector_idempotence) << " <= 1e-10 "
    << (bv.projector_idempotence <= tol::kPsdSlack ? "ok" : "FAIL") << '\n';
  ok = ok && bv.pass;

  const PtIdentityReport pt = check_pt_identities(basis);
  r << "partial-transpose identity max deviation: " << fmt_sci(pt.max_deviation) << " <= 1e-12 "
    << (pt.pass ? "ok" : "FAIL") << '\n';
  ok = ok && pt.pass;

  const bool complete = m == d + 1;
  const std::size_t dim = d * big_d;
  double worst_norm = 0.0, worst_eig = INFINITY, worst_route = 0.0, worst_gap = INFINITY, worst_abs_gap = 0.0;
  std::optional<std::uint64_t> offending;
  for (std::size_t t = 0; t < opts.trials; ++t) {
    const std::uint64_t state_seed = split_seed(opts.seed, t);
    const DensityMatrix rho = random_density({d, big_d}, 1 + t % dim, state_seed);
    const ComplexMatrix gamma = gamma_direct(rho, mubs);
    const double norm = gamma.frobenius_norm();
    const double eig = min_eigenvalue(gamma);
    const double route = frobenius_distance(gamma, gamma_via_projector(rho, basis));
    const RelationReport rep = relation_report(rho, mubs);
    worst_norm = std::max(worst_norm, norm);
    worst_eig = std::min(worst_eig, eig);
    worst_route = std::max(worst_route, route);
    worst_gap = std::min(worst_gap, rep.gap);
    worst_abs_gap = std::max(worst_abs_gap, std::abs(rep.gap));
    const bool trial_ok = (complete ? norm <= tol::kSpectral : eig >= -tol::kPsdSlack) && route <= tol::kPsdSlack &&
                          rep.gap >= -tol::kSpectral && (!complete || std::abs(rep.gap) <= tol::kSpectral);
    if (!trial_ok && !offending) offending = state_seed;
  }
  if (complete) {
    r << "gamma Frobenius max: " << fmt_sci(worst_norm) << " <= 1e-9 " << (worst_norm <= tol::kSpectral ? "ok" : "FAIL")
      << '\n';
    r << "relation |lhs - rhs| max: " << fmt_sci(worst_abs_gap) << " <= 1e-9 "
      << (worst_abs_gap <= tol::kSpectral ? "ok" : "FAIL") << '\n';
  } else {
    r << "gamma min eigenvalue: " << fmt_sci(worst_eig) << " >= -1e-10 "
      << (worst_eig >= -tol::kPsdSlack ? "ok" : "FAIL") << '\n';
    r << "relation lhs - rhs min: " << fmt_sci(worst_gap) << " >= -1e-9 "
      << (worst_gap >= -tol::kSpectral ? "ok" : "FAIL") << '\n';
  }
  r << "gamma projector-route max difference: " << fmt_sci(worst_route) << " <= 1e-10 "
    << (worst_route <= tol::kPsdSlack ? "ok" : "FAIL") << '\n';
  if (offending) {
    ok = false;
    r << "offending state seed: " << *offending << '\n';
  }
  r << "status: " << (ok ? "pass" : "FAIL") << '\n';

  out << r.str();
  if (!opts.out.empty()) emit(opts.out, r.str(), out);
  if (!ok) err << "verification failed\n";
  return ok ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------
// relation

int cmd_relation(const RelationOptions& opts, std::ostream& out, std::ostream& err) {
  DensityMatrix rho;
  if (!opts.state.empty()) {
    std::ifstream in(opts.state);
    if (!in) throw UsageError("cannot open state file " + opts.state);
    rho = density_from_json(nlohmann::json::parse(in));
  } else {
    rho = rho_family(opts.alpha, opts.x);
  }
  if (rho.dims().size() != 2) throw UsageError("state must be bipartite (two dims)");
  const MubSet mubs = obtain_mubs(rho.dims()[0], opts.m, opts.load);
  const RelationReport rep = relation_report(rho, mubs);
  nlohmann::json j = rep;
  if (opts.state.empty()) {
    j["alpha"] = opts.alpha;
    j["x"] = opts.x;
  }
  emit(opts.out, j.dump(2) + "\n", out);
  const bool ok = rep.gap >= -tol::kSpectral && (!rep.equality_expected || std::abs(rep.gap) <= tol::kSpectral);
  if (!ok) err << "relation violated: gap = " << rep.gap << '\n';
  return ok ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------
// sweep

std::vector<std::string> sweep_columns(bool simulate) {
  std::vector<std::string> cols{"alpha", "x", "d", "M", "purity_AB", "purity_B", "purity_xB",
                                "purity_yB", "purity_zB", "lhs", "rhs", "gap"};
  if (simulate) {
    for (const char* prefix : {"raw_", "rescaled_"}) {
      for (std::string_view name : expsim::kSettingNames) cols.push_back(prefix + std::string(name));
      cols.push_back(std::string(prefix) + "gap");
    }
  }
  return cols;
}

int cmd_sweep(const SweepConfig& c, std::ostream& out, std::ostream& err) {
  if (c.d != 2) throw UsageError("sweep: the alpha/x state family is two-qubit; --d must be 2");
  if (c.m < 2 || c.m > 3) throw UsageError("sweep: --m must be 2 or 3 for d = 2");
  if (c.steps < 2) throw UsageError("sweep: --steps must be at least 2");
  const bool over_alpha = c.param == SweepParam::alpha;
  const double lo = 0.0;
  const double hi = over_alpha ? std::numbers::pi / 2 : 1.0;
  const double from = c.from.value_or(lo);
  const double to = c.to.value_or(hi);
  if (!(from < to)) throw UsageError("sweep: --from must be below --to");
  if (from < lo || to > hi) throw UsageError("sweep: range outside the parameter domain");
  const double fixed = c.fixed_other.value_or(over_alpha ? 1.0 : std::numbers::pi / 2);
  const expsim::NoiseModel noise = expsim::NoiseModel::depolarizing(c.noise_p);

  const MubSet mubs = construct_mubs(2, c.m);
  const auto columns = sweep_columns(c.simulate);
  std::vector<std::vector<double>> rows;  // NaN marks a column with no value
  for (std::size_t i = 0; i < c.steps; ++i) {
    // The last grid point is pinned to `to` so rounding cannot leave the domain.
    const double t =
        i + 1 == c.steps ? to : from + (to - from) * static_cast<double>(i) / static_cast<double>(c.steps - 1);
    const double alpha = over_alpha ? t : fixed;
    const double x = over_alpha ? fixed : t;
    const RelationReport rep = relation_report(rho_family(alpha, x), mubs);
    // Basis 1 is sigma_z, 2 is sigma_x, 3 is sigma_y.
    const double nan = std::nan("");
    std::vector<double> row{alpha,
                            x,
                            2.0,
                            static_cast<double>(c.m),
                            rep.purity_ab,
                            rep.purity_b,
                            rep.purity_theta_b[1],
                            c.m >= 3 ? rep.purity_theta_b[2] : nan,
                            rep.purity_theta_b[0],
                            rep.lhs,
                            rep.rhs,
                            rep.gap};
    if (c.simulate) {
      const expsim::ProtocolResult sim = expsim::run_protocol(alpha, x, noise);
      for (const auto* panel : {&sim.raw, &sim.rescaled}) {
        row.insert(row.end(), panel->values.begin(), panel->values.end());
        row.push_back(panel->gap());
      }
    }
    rows.push_back(std::move(row));
  }

  std::ostringstream text;
  if (c.format == OutputFormat::csv) {
    for (std::size_t k = 0; k < columns.size(); ++k) text << (k ? "," : "") << columns[k];
    text << '\n';
    for (const auto& row : rows) {
      for (std::size_t k = 0; k < row.size(); ++k) {
        text << (k ? "," : "");
        if (std::isnan(row[k])) continue;
        if (k == 2 || k == 3) {
          text << static_cast<long long>(row[k]);
        } else {
          text << fmt_full(row[k]);
        }
      }
      text << '\n';
    }
  } else {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      nlohmann::ordered_json obj;
      for (std::size_t k = 0; k < row.size(); ++k) {
        if (std::isnan(row[k])) {
          obj[columns[k]] = nullptr;
        } else if (k == 2 || k == 3) {
          obj[columns[k]] = static_cast<long long>(row[k]);
        } else {
          obj[columns[k]] = row[k];
        }
      }
      arr.push_back(std::move(obj));
    }
    text << arr.dump(2) << '\n';
  }
  emit(c.out, text.str(), out);
  if (!c.out.empty()) err << "wrote " << rows.size() << " rows to " << c.out << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// expsim

int cmd_expsim(const ExpsimOptions& opts, std::ostream& out, std::ostream& err) {
  WernerFamilyParams{opts.alpha, opts.x}.validate();
  const expsim::NoiseModel noise = expsim::NoiseModel::depolarizing(opts.noise_p);
  const expsim::ProtocolResult result = expsim::run_protocol(opts.alpha, opts.x, noise);
  emit(opts.out, nlohmann::json(result).dump(2) + "\n", out);
  if (!opts.gate_log.empty()) {
    std::string log;
    for (std::size_t i = 0; i < expsim::kSettings; ++i) {
      log += "# " + std::string(expsim::kSettingNames[i]) + "\n";
      for (const auto& line : result.gate_logs[i]) log += line + "\n";
    }
    emit(opts.gate_log, log, out);
  }
  if (!opts.out.empty()) err << "wrote purity panel to " << opts.out << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// dispatch

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Purity-based uncertainty conservation relations for mutually unbiased bases"};
  app.require_subcommand(1);

  MubOptions mub;
  auto* mub_cmd = app.add_subcommand("mub", "Construct or load a MUB set and validate it");
  mub_cmd->add_option("--d", mub.d, "Dimension (prime unless --load)")->required();
  mub_cmd->add_option("--m", mub.m, "Number of bases, 2..d+1");
  mub_cmd->add_option("--load", mub.load, "Load bases from a JSON file instead of constructing");
  mub_cmd->add_option("--out", mub.out, "Write the basis set JSON here (default: stdout)");

  VerifyOptions verify;
  std::uint64_t verify_seed = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Check the bipartite basis, partial-transpose identities and Gamma");
  verify_cmd->add_option("--d", verify.d, "Dimension of subsystem A")->required();
  verify_cmd->add_option("--m", verify.m, "Number of bases");
  verify_cmd->add_option("--D", verify.big_d, "Dimension of subsystem B (default d)");
  verify_cmd->add_option("--trials", verify.trials, "Random states to test");
  auto* verify_seed_opt = verify_cmd->add_option("--seed", verify_seed, "PRNG seed (fallback: $PURITY_SEED)");
  verify_cmd->add_option("--load", verify.load, "Load bases from a JSON file");
  verify_cmd->add_option("--out", verify.out, "Also write the report here");

  RelationOptions relation;
  std::string relation_alpha = "pi/2";
  auto* relation_cmd = app.add_subcommand("relation", "Evaluate the conservation relation for one state");
  relation_cmd->add_option("--alpha", relation_alpha, "Entanglement angle in radians (pi fractions accepted)");
  relation_cmd->add_option("--x", relation.x, "Mixing weight in [0, 1]");
  relation_cmd->add_option("--m", relation.m, "Number of bases");
  relation_cmd->add_option("--state", relation.state, "Density-matrix JSON with dims [d, D]");
  relation_cmd->add_option("--load", relation.load, "Load bases from a JSON file");
  relation_cmd->add_option("--out", relation.out, "Write the report JSON here (default: stdout)");

  SweepConfig sweep;
  std::string sweep_param = "alpha", sweep_from, sweep_to, sweep_fixed, sweep_format = "csv";
  std::uint64_t sweep_seed = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep alpha or x over the two-qubit state family");
  sweep_cmd->add_option("--param", sweep_param, "alpha or x")->check(CLI::IsMember({"alpha", "x"}));
  sweep_cmd->add_option("--from", sweep_from, "Range start (default: domain start)");
  sweep_cmd->add_option("--to", sweep_to, "Range end (default: domain end)");
  sweep_cmd->add_option("--steps", sweep.steps, "Grid points, at least 2");
  sweep_cmd->add_option("--fixed", sweep_fixed, "Value of the other parameter");
  sweep_cmd->add_option("--d", sweep.d, "Dimension (must be 2)");
  sweep_cmd->add_option("--m", sweep.m, "Number of bases (2 or 3)");
  auto* sweep_seed_opt = sweep_cmd->add_option("--seed", sweep_seed, "PRNG seed (fallback: $PURITY_SEED)");
  sweep_cmd->add_flag("--simulate", sweep.simulate, "Add circuit-simulator columns");
  sweep_cmd->add_option("--noise", sweep.noise_p, "Depolarizing probability for --simulate");
  sweep_cmd->add_option("--out", sweep.out, "Output file (default: stdout)");
  sweep_cmd->add_option("--format", sweep_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  ExpsimOptions expsim_opts;
  std::string expsim_alpha = "pi/2";
  auto* expsim_cmd = app.add_subcommand("expsim", "Simulate the five-qubit swap-test protocol");
  expsim_cmd->add_option("--alpha", expsim_alpha, "Entanglement angle in radians (pi fractions accepted)");
  expsim_cmd->add_option("--x", expsim_opts.x, "Mixing weight in [0, 1]");
  expsim_cmd->add_option("--noise", expsim_opts.noise_p, "Depolarizing probability after each CSWAP");
  expsim_cmd->add_option("--out", expsim_opts.out, "Write the purity panel JSON here (default: stdout)");
  expsim_cmd->add_option("--gate-log", expsim_opts.gate_log, "Write newline-delimited gate descriptors here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*mub_cmd) return cmd_mub(mub, out, err);
    if (*verify_cmd) {
      verify.seed = resolve_seed(verify_seed_opt->count() ? std::optional(verify_seed) : std::nullopt);
      return cmd_verify(verify, out, err);
    }
    if (*relation_cmd) {
      relation.alpha = parse_angle(relation_alpha);
      return cmd_relation(relation, out, err);
    }
    if (*sweep_cmd) {
      sweep.param = sweep_param == "x" ? SweepParam::x : SweepParam::alpha;
      if (!sweep_from.empty()) sweep.from = parse_angle(sweep_from);
      if (!sweep_to.empty()) sweep.to = parse_angle(sweep_to);
      if (!sweep_fixed.empty()) sweep.fixed_other = parse_angle(sweep_fixed);
      sweep.format = sweep_format == "json" ? OutputFormat::json : OutputFormat::csv;
      sweep.seed = resolve_seed(sweep_seed_opt->count() ? std::optional(sweep_seed) : std::nullopt);
      return cmd_sweep(sweep, out, err);
    }
    if (*expsim_cmd) {
      expsim_opts.alpha = parse_angle(expsim_alpha);
      return cmd_expsim(expsim_opts, out, err);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ucr::cli
