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

// Gate-level simulation of a five-qubit NMR swap-test experiment.
//
// Register: qubit 0 is the probe, qubits 1..4 hold two copies (A, B) and
// (A', B') of a two-qubit state. The simulator evolves the traceless
// deviation matrix of a pseudo-pure ensemble; the identity background is
// invariant under every operation here and is never stored.
//
// A run prepares sigma_z^probe (x) rho (x) rho by temporal averaging of four
// branches, optionally measures A and A' non-selectively in the x, y or z
// basis (rotate, dephase, rotate back), and reads Tr(rho rho') out of the
// probe polarization after controlled-SWAPs on AA' and/or BB'.

#ifndef UCR_EXPSIM_HPP
#define UCR_EXPSIM_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ucr/linalg.hpp"
#include "ucr/states.hpp"
#include "ucr/tolerances.hpp"

namespace ucr::expsim {

inline constexpr std::size_t kQubits = 5;
inline constexpr std::size_t kDim = std::size_t{1} << kQubits;

inline constexpr std::size_t kProbe = 0;
inline constexpr std::size_t kA = 1;
inline constexpr std::size_t kB = 2;
inline constexpr std::size_t kAPrime = 3;
inline constexpr std::size_t kBPrime = 4;

namespace gate {

struct Ry {
  double angle;
  std::size_t qubit;
};
struct Rx {
  double angle;
  std::size_t qubit;
};
/// Controlled-Z; used only during state preparation.
struct Cz {
  std::size_t q1, q2;
};
struct Cswap {
  std::size_t control, target1, target2;
};
/// Removes every coherence between the |0> and |1> sectors of one qubit.
struct Dephase {
  std::size_t qubit;
};
struct Depolarize {
  double p;
  std::size_t qubit;
};

}  // namespace gate

using Gate = std::variant<gate::Ry, gate::Rx, gate::Cz, gate::Cswap, gate::Dephase, gate::Depolarize>;

inline std::string describe(const Gate& g) {
  std::ostringstream out;
  out.precision(17);
  std::visit(
      [&](const auto& op) {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, gate::Ry>) {
          out << "RY " << op.angle << " q" << op.qubit;
        } else if constexpr (std::is_same_v<T, gate::Rx>) {
          out << "RX " << op.angle << " q" << op.qubit;
        } else if constexpr (std::is_same_v<T, gate::Cz>) {
          out << "CZ q" << op.q1 << " q" << op.q2;
        } else if constexpr (std::is_same_v<T, gate::Cswap>) {
          out << "CSWAP q" << op.control << " q" << op.target1 << " q" << op.target2;
        } else if constexpr (std::is_same_v<T, gate::Dephase>) {
          out << "DEPHASE q" << op.qubit;
        } else {
          out << "DEPOLARIZE " << op.p << " q" << op.qubit;
        }
      },
      g);
  return out.str();
}

/// Per-qubit depolarizing noise applied to all three qubits of every CSWAP.
struct NoiseModel {
  double p_depol = 0.0;
  bool enabled = false;

  static NoiseModel none() { return {}; }
  static NoiseModel depolarizing(double p) {
    NoiseModel n{p, p > 0.0};
    n.validate();
    return n;
  }

  void validate() const {
    if (!(p_depol >= 0.0 && p_depol <= 1.0)) {
      throw std::invalid_argument("NoiseModel: p_depol = " + std::to_string(p_depol) + " outside [0, 1]");
    }
  }
};

namespace detail {

inline std::size_t qubit_mask(std::size_t q) { return std::size_t{1} << (kQubits - 1 - q); }

inline void require_qubits(std::span<const std::size_t> qubits) {
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] >= kQubits) throw std::invalid_argument("bad qubit index " + std::to_string(qubits[i]));
    for (std::size_t j = 0; j < i; ++j) {
      if (qubits[i] == qubits[j]) throw std::invalid_argument("repeated qubit index " + std::to_string(qubits[i]));
    }
  }
}

/// rho <- U rho U^dagger with U acting on `qubits` (first listed qubit is the
/// most significant index of U).
inline void conjugate_local(ComplexMatrix& rho, const ComplexMatrix& u, std::span<const std::size_t> qubits) {
  const std::size_t k = qubits.size();
  const std::size_t sub = std::size_t{1} << k;
  std::size_t target_mask = 0;
  std::vector<std::size_t> offsets(sub, 0);
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t m = qubit_mask(qubits[j]);
    target_mask |= m;
    for (std::size_t a = 0; a < sub; ++a) {
      if (a & (std::size_t{1} << (k - 1 - j))) offsets[a] |= m;
    }
  }
  std::vector<std::size_t> idx(sub);
  std::vector<Complex> tmp(sub);
  for (std::size_t base = 0; base < kDim; ++base) {
    if (base & target_mask) continue;
    for (std::size_t a = 0; a < sub; ++a) idx[a] = base | offsets[a];
    for (std::size_t c = 0; c < kDim; ++c) {
      for (std::size_t b = 0; b < sub; ++b) tmp[b] = rho(idx[b], c);
      for (std::size_t a = 0; a < sub; ++a) {
        Complex s = 0.0;
        for (std::size_t b = 0; b < sub; ++b) s += u(a, b) * tmp[b];
        rho(idx[a], c) = s;
      }
    }
    for (std::size_t r = 0; r < kDim; ++r) {
      for (std::size_t b = 0; b < sub; ++b) tmp[b] = rho(r, idx[b]);
      for (std::size_t a = 0; a < sub; ++a) {
        Complex s = 0.0;
        for (std::size_t b = 0; b < sub; ++b) s += tmp[b] * std::conj(u(a, b));
        rho(r, idx[a]) = s;
      }
    }
  }
}

inline ComplexMatrix ry_matrix(double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  return ComplexMatrix(2, 2, {c, -s, s, c});
}

inline ComplexMatrix rx_matrix(double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  return ComplexMatrix(2, 2, {c, -kI * s, -kI * s, c});
}

inline ComplexMatrix cz_matrix() {
  const std::array<Complex, 4> diag{1.0, 1.0, 1.0, -1.0};
  return ComplexMatrix::diagonal(diag);
}

/// Fredkin gate on (control, t1, t2): swaps |101> and |110>.
inline ComplexMatrix cswap_matrix() {
  ComplexMatrix m = ComplexMatrix::identity(8);
  m(5, 5) = 0.0;
  m(6, 6) = 0.0;
  m(5, 6) = 1.0;
  m(6, 5) = 1.0;
  return m;
}

/// Tr(m . sigma_z^probe (x) I_16).
inline double probe_polarization(const ComplexMatrix& m) {
  double s = 0.0;
  const std::size_t mask = qubit_mask(kProbe);
  for (std::size_t i = 0; i < kDim; ++i) s += (i & mask) ? -m(i, i).real() : m(i, i).real();
  return s;
}

}  // namespace detail

/// Deviation matrix of the 5-qubit register together with the gates applied
/// to it. Single-owner and mutable during a run.
class CircuitState {
 public:
  /// `deviation` must be a traceless Hermitian 32 x 32 matrix. The probe
  /// polarization at construction is kept as the readout reference.
  explicit CircuitState(ComplexMatrix deviation, NoiseModel noise = {}, std::vector<std::string> log = {})
      : deviation_(std::move(deviation)), noise_(noise), log_(std::move(log)) {
    noise_.validate();
    if (deviation_.rows() != kDim || deviation_.cols() != kDim) {
      throw std::invalid_argument("CircuitState: deviation must be 32 x 32");
    }
    if (deviation_.hermiticity_deviation() > tol::kStructural) {
      throw std::invalid_argument("CircuitState: deviation is not Hermitian");
    }
    if (std::abs(deviation_.trace()) > tol::kStructural) {
      throw std::invalid_argument("CircuitState: deviation is not traceless");
    }
    reference_ = detail::probe_polarization(deviation_);
  }

  static CircuitState lpps(NoiseModel noise = {}) {
    return CircuitState(lpps_deviation(kQubits), noise, {"LPPS"});
  }

  const ComplexMatrix& deviation() const { return deviation_; }
  const NoiseModel& noise() const { return noise_; }
  const std::vector<std::string>& gate_log() const { return log_; }
  double reference_amplitude() const { return reference_; }

  /// Applies one gate and, for a CSWAP under enabled noise, depolarizes each
  /// of its qubits afterwards.
  void apply(const Gate& g) {
    std::visit([this](const auto& op) { apply_one(op); }, g);
    log_.push_back(describe(g));
    if (noise_.enabled && std::holds_alternative<gate::Cswap>(g)) {
      const auto& c = std::get<gate::Cswap>(g);
      for (std::size_t q : {c.control, c.target1, c.target2}) apply(gate::Depolarize{noise_.p_depol, q});
    }
  }

  void annotate(std::string line) { log_.push_back(std::move(line)); }

  /// Probe polarization divided by the reference amplitude.
  double normalized_probe_signal() const {
    if (std::abs(reference_) < tol::kStructural) {
      throw std::logic_error("CircuitState: register has no probe reference polarization");
    }
    return detail::probe_polarization(deviation_) / reference_;
  }

  std::string dump_gate_log() const {
    std::string out;
    for (const auto& line : log_) {
      out += line;
      out += '\n';
    }
    return out;
  }

 private:
  void apply_one(const gate::Ry& g) {
    const std::array<std::size_t, 1> q{g.qubit};
    detail::require_qubits(q);
    detail::conjugate_local(deviation_, detail::ry_matrix(g.angle), q);
  }
  void apply_one(const gate::Rx& g) {
    const std::array<std::size_t, 1> q{g.qubit};
    detail::require_qubits(q);
    detail::conjugate_local(deviation_, detail::rx_matrix(g.angle), q);
  }
  void apply_one(const gate::Cz& g) {
    const std::array<std::size_t, 2> q{g.q1, g.q2};
    detail::require_qubits(q);
    detail::conjugate_local(deviation_, detail::cz_matrix(), q);
  }
  void apply_one(const gate::Cswap& g) {
    const std::array<std::size_t, 3> q{g.control, g.target1, g.target2};
    detail::require_qubits(q);
    detail::conjugate_local(deviation_, detail::cswap_matrix(), q);
  }
  void apply_one(const gate::Dephase& g) {
    const std::array<std::size_t, 1> q{g.qubit};
    detail::require_qubits(q);
    const std::size_t mask = detail::qubit_mask(g.qubit);
    for (std::size_t r = 0; r < kDim; ++r) {
      for (std::size_t c = 0; c < kDim; ++c) {
        if ((r ^ c) & mask) deviation_(r, c) = 0.0;
      }
    }
  }
  void apply_one(const gate::Depolarize& g) {
    const std::array<std::size_t, 1> q{g.qubit};
    detail::require_qubits(q);
    if (!(g.p >= 0.0 && g.p <= 1.0)) throw std::invalid_argument("Depolarize: p outside [0, 1]");
    // rho -> (1 - p) rho + p (I/2 (x) Tr_q rho)
    const std::size_t mask = detail::qubit_mask(g.qubit);
    const ComplexMatrix old = deviation_;
    for (std::size_t r = 0; r < kDim; ++r) {
      for (std::size_t c = 0; c < kDim; ++c) {
        Complex v = (1.0 - g.p) * old(r, c);
        if (((r ^ c) & mask) == 0) v += 0.5 * g.p * (old(r, c) + old(r ^ mask, c ^ mask));
        deviation_(r, c) = v;
      }
    }
  }

  ComplexMatrix deviation_;
  NoiseModel noise_;
  std::vector<std::string> log_;
  double reference_ = 0.0;
};

inline CircuitState apply_gate(CircuitState state, const Gate& g) {
  state.apply(g);
  return state;
}

namespace detail {

/// |psi_alpha> = cos(alpha/2)|01> - sin(alpha/2)|10> on (a, b) from |00>.
inline void prepare_pure_pair(CircuitState& s, double alpha, std::size_t a, std::size_t b) {
  s.apply(gate::Ry{-alpha, a});
  s.apply(gate::Ry{std::numbers::pi / 2, b});
  s.apply(gate::Cz{a, b});
  s.apply(gate::Ry{std::numbers::pi / 2, b});
}

/// I_4 / 4 on (a, b) from |00>: rotate both to |+> and dephase.
inline void prepare_mixed_pair(CircuitState& s, std::size_t a, std::size_t b) {
  s.apply(gate::Ry{std::numbers::pi / 2, a});
  s.apply(gate::Ry{std::numbers::pi / 2, b});
  s.apply(gate::Dephase{a});
  s.apply(gate::Dephase{b});
}

}  // namespace detail

/// sigma_z^probe (x) rho(alpha, x) (x) rho(alpha, x) by temporal averaging:
/// four separately evolved LPPS runs (mixed/mixed, mixed/pure, pure/mixed,
/// pure/pure) summed with weights (1-x)^2, (1-x)x, x(1-x), x^2. Branches with
/// zero weight are skipped. On hardware the weights are set by rotations of
/// arccos[(1-x)^2], arccos[x(1-x)], arccos[x(1-x)], arccos(x^2).
inline CircuitState prepare_pair_state(double alpha, double x, NoiseModel noise = {}) {
  WernerFamilyParams{alpha, x}.validate();
  const std::array<double, 4> weights{(1 - x) * (1 - x), (1 - x) * x, x * (1 - x), x * x};
  ComplexMatrix sum(kDim, kDim);
  std::vector<std::string> log;
  for (std::size_t branch = 0; branch < 4; ++branch) {
    if (weights[branch] == 0.0) continue;
    const bool first_pure = branch >= 2;
    const bool second_pure = branch % 2 == 1;
    CircuitState run = CircuitState::lpps();
    if (first_pure) {
      detail::prepare_pure_pair(run, alpha, kA, kB);
    } else {
      detail::prepare_mixed_pair(run, kA, kB);
    }
    if (second_pure) {
      detail::prepare_pure_pair(run, alpha, kAPrime, kBPrime);
    } else {
      detail::prepare_mixed_pair(run, kAPrime, kBPrime);
    }
    std::ostringstream header;
    header.precision(17);
    header << "BRANCH " << branch << " weight " << weights[branch];
    log.push_back(header.str());
    log.insert(log.end(), run.gate_log().begin(), run.gate_log().end());
    sum += Complex(weights[branch]) * run.deviation();
  }
  return CircuitState(std::move(sum), noise, std::move(log));
}

enum class Axis { x, y, z };
enum class MeasureTargets { both_copies, a_only };
enum class Readout { pair_ab, b_only };

inline std::string_view axis_name(Axis a) {
  switch (a) {
    case Axis::x: return "x";
    case Axis::y: return "y";
    case Axis::z: return "z";
  }
  return "?";
}

/// Non-selective measurement of A (and A') in the eigenbasis of sigma_axis.
inline void mub_measure_block(CircuitState& state, Axis axis, MeasureTargets targets) {
  std::vector<std::size_t> qubits{kA};
  if (targets == MeasureTargets::both_copies) qubits.push_back(kAPrime);
  const double half_pi = std::numbers::pi / 2;
  for (std::size_t q : qubits) {
    if (axis == Axis::x) state.apply(gate::Ry{-half_pi, q});
    if (axis == Axis::y) state.apply(gate::Rx{half_pi, q});
  }
  for (std::size_t q : qubits) state.apply(gate::Dephase{q});
  for (std::size_t q : qubits) {
    if (axis == Axis::x) state.apply(gate::Ry{half_pi, q});
    if (axis == Axis::y) state.apply(gate::Rx{-half_pi, q});
  }
}

/// Swap-test readout of Tr(rho_AB rho_A'B') or Tr(rho_B rho_B'). The probe is
/// turned transverse, the controlled-SWAPs imprint the overlap on it, and it is
/// turned back so the overlap appears as its z polarization.
inline double swap_test_readout(CircuitState& state, Readout which) {
  const double half_pi = std::numbers::pi / 2;
  state.apply(gate::Ry{half_pi, kProbe});
  if (which == Readout::pair_ab) state.apply(gate::Cswap{kProbe, kA, kAPrime});
  state.apply(gate::Cswap{kProbe, kB, kBPrime});
  state.apply(gate::Ry{-half_pi, kProbe});
  return state.normalized_probe_signal();
}

/// The eight purities of one experimental panel, in display order.
enum class Setting : std::size_t {
  purity_ab = 0,
  purity_xb,
  purity_yb,
  purity_zb,
  purity_b,
  purity_b_given_x,
  purity_b_given_y,
  purity_b_given_z,
};

inline constexpr std::size_t kSettings = 8;

inline constexpr std::array<std::string_view, kSettings> kSettingNames{
    "purity_AB", "purity_xB", "purity_yB", "purity_zB",
    "purity_B",  "purity_B_given_x", "purity_B_given_y", "purity_B_given_z"};

struct PurityPanel {
  std::array<double, kSettings> values{};

  double& operator[](Setting s) { return values[static_cast<std::size_t>(s)]; }
  double operator[](Setting s) const { return values[static_cast<std::size_t>(s)]; }

  /// Conservation sides for a qubit with the complete x, y, z set:
  /// lhs = sum_theta (P_B - P_thetaB), rhs = 2 (P_B - P_AB / 2).
  double lhs() const {
    const double pb = (*this)[Setting::purity_b];
    return 3 * pb - (*this)[Setting::purity_xb] - (*this)[Setting::purity_yb] - (*this)[Setting::purity_zb];
  }
  double rhs() const { return 2 * ((*this)[Setting::purity_b] - (*this)[Setting::purity_ab] / 2); }
  double gap() const { return lhs() - rhs(); }
};

struct SettingPlan {
  bool measure;
  Axis axis;
  Readout readout;
};

inline SettingPlan plan_for(Setting s) {
  switch (s) {
    case Setting::purity_ab: return {false, Axis::z, Readout::pair_ab};
    case Setting::purity_xb: return {true, Axis::x, Readout::pair_ab};
    case Setting::purity_yb: return {true, Axis::y, Readout::pair_ab};
    case Setting::purity_zb: return {true, Axis::z, Readout::pair_ab};
    case Setting::purity_b: return {false, Axis::z, Readout::b_only};
    case Setting::purity_b_given_x: return {true, Axis::x, Readout::b_only};
    case Setting::purity_b_given_y: return {true, Axis::y, Readout::b_only};
    case Setting::purity_b_given_z: return {true, Axis::z, Readout::b_only};
  }
  throw std::invalid_argument("unknown setting");
}

/// One fresh preparation, optional measurement block, and readout.
inline double run_setting(double alpha, double x, Setting s, const NoiseModel& noise,
                          std::vector<std::string>* log = nullptr) {
  const SettingPlan plan = plan_for(s);
  CircuitState state = prepare_pair_state(alpha, x, noise);
  if (plan.measure) mub_measure_block(state, plan.axis, MeasureTargets::both_copies);
  const double value = swap_test_readout(state, plan.readout);
  if (log != nullptr) *log = state.gate_log();
  return value;
}

/// Per-setting attenuation factors measured on a reference state.
struct Calibration {
  std::array<double, kSettings> attenuation;

  static Calibration identity() {
    Calibration c;
    c.attenuation.fill(1.0);
    return c;
  }
};

/// Reference used for calibration: the pure product state rho(0, 1) = |01><01|.
inline constexpr double kCalibrationAlpha = 0.0;
inline constexpr double kCalibrationX = 1.0;

/// Ratio of noisy to noiseless readout of the reference state, per setting.
inline Calibration calibrate(const NoiseModel& noise) {
  if (!noise.enabled) return Calibration::identity();
  Calibration c;
  for (std::size_t i = 0; i < kSettings; ++i) {
    const auto s = static_cast<Setting>(i);
    const double clean = run_setting(kCalibrationAlpha, kCalibrationX, s, NoiseModel::none());
    const double noisy = run_setting(kCalibrationAlpha, kCalibrationX, s, noise);
    c.attenuation[i] = noisy / clean;
  }
  return c;
}

inline PurityPanel rescale(const PurityPanel& raw, const Calibration& calibration) {
  PurityPanel out;
  for (std::size_t i = 0; i < kSettings; ++i) {
    const double a = calibration.attenuation[i];
    if (!(a > 0.0)) {
      throw std::invalid_argument("rescale: attenuation factor for " + std::string(kSettingNames[i]) +
                                  " must be positive");
    }
    out.values[i] = raw.values[i] / a;
  }
  return out;
}

struct ProtocolResult {
  double alpha = 0.0;
  double x = 0.0;
  NoiseModel noise;
  PurityPanel raw;
  PurityPanel rescaled;
  Calibration calibration = Calibration::identity();
  std::array<std::vector<std::string>, kSettings> gate_logs;
};

/// Every setting of the panel from an independent run.
inline ProtocolResult run_protocol(double alpha, double x, const NoiseModel& noise) {
  noise.validate();
  ProtocolResult result;
  result.alpha = alpha;
  result.x = x;
  result.noise = noise;
  for (std::size_t i = 0; i < kSettings; ++i) {
    result.raw.values[i] = run_setting(alpha, x, static_cast<Setting>(i), noise, &result.gate_logs[i]);
  }
  result.calibration = calibrate(noise);
  result.rescaled = rescale(result.raw, result.calibration);
  return result;
}

inline nlohmann::json panel_json(const PurityPanel& p) {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t i = 0; i < kSettings; ++i) j[std::string(kSettingNames[i])] = p.values[i];
  return j;
}

inline void to_json(nlohmann::json& j, const ProtocolResult& r) {
  j = nlohmann::json{{"alpha", r.alpha},
                     {"x", r.x},
                     {"noise_p", r.noise.enabled ? r.noise.p_depol : 0.0},
                     {"raw", panel_json(r.raw)},
                     {"rescaled", panel_json(r.rescaled)}};
}

}  // namespace ucr::expsim

#endif  // UCR_EXPSIM_HPP
