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

// Mutually unbiased bases: construction for prime dimensions, validation, and
// a JSON file format for externally supplied sets.

#ifndef UCR_MUB_HPP
#define UCR_MUB_HPP

#include <cmath>
#include <cstddef>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ucr/linalg.hpp"
#include "ucr/tolerances.hpp"

namespace ucr {

/// e^{2 pi i n / d} with n reduced mod d first so large exponents stay exact.
inline Complex root_of_unity(std::size_t d, long long n) {
  const long long dd = static_cast<long long>(d);
  const long long r = ((n % dd) + dd) % dd;
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(d);
  return {std::cos(angle), std::sin(angle)};
}

/// M bases of C^d. Bases are labeled 1..M; basis 1 is the reference
/// (computational) basis for every conjugation in this library.
class MubSet {
 public:
  MubSet() = default;

  /// `bases[t]` is a d x d matrix whose column i is the vector |i_{t+1}>.
  /// Only shapes are checked here; run validate_mubs for the defining
  /// properties.
  MubSet(std::size_t d, std::vector<ComplexMatrix> bases) : d_(d), bases_(std::move(bases)) {
    if (d_ < 2) throw std::invalid_argument("MubSet: dimension must be at least 2");
    for (const auto& b : bases_) {
      if (b.rows() != d_ || b.cols() != d_) throw std::invalid_argument("MubSet: every basis must be d x d");
    }
  }

  std::size_t d() const { return d_; }
  std::size_t count() const { return bases_.size(); }

  /// Basis theta in 1..M as a d x d matrix of column vectors.
  const ComplexMatrix& basis(std::size_t theta) const {
    check_theta(theta);
    return bases_[theta - 1];
  }

  /// |i_theta> with 0-based vector index i and 1-based basis label theta.
  std::vector<Complex> vector(std::size_t theta, std::size_t i) const {
    const ComplexMatrix& b = basis(theta);
    if (i >= d_) throw std::invalid_argument("MubSet: vector index out of range");
    std::vector<Complex> v(d_);
    for (std::size_t s = 0; s < d_; ++s) v[s] = b(s, i);
    return v;
  }

  /// The first `m` bases.
  MubSet prefix(std::size_t m) const {
    if (m > bases_.size()) throw std::invalid_argument("MubSet::prefix: not enough bases");
    return MubSet(d_, std::vector<ComplexMatrix>(bases_.begin(), bases_.begin() + static_cast<std::ptrdiff_t>(m)));
  }

  void check_theta(std::size_t theta) const {
    if (theta < 1 || theta > bases_.size()) {
      throw std::out_of_range("MubSet: basis label " + std::to_string(theta) + " outside 1.." +
                              std::to_string(bases_.size()));
    }
  }

 private:
  std::size_t d_ = 0;
  std::vector<ComplexMatrix> bases_;
};

inline bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t k = 2; k * k <= n; ++k) {
    if (n % k == 0) return false;
  }
  return true;
}

namespace detail {

/// Multiplies each column by a phase so its first nonzero amplitude is real
/// and positive.
inline void fix_column_phases(ComplexMatrix& b) {
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t r = 0; r < b.rows(); ++r) {
      const double mag = std::abs(b(r, c));
      if (mag > tol::kStructural) {
        const Complex phase = std::conj(b(r, c)) / mag;
        for (std::size_t k = 0; k < b.rows(); ++k) b(k, c) *= phase;
        b(r, c) = mag;
        break;
      }
    }
  }
}

}  // namespace detail

/// Computational basis followed by the quadratic-phase bases
/// <s|j_a> = omega^{a s^2 + j s} / sqrt(d), a = 0..d-1, for odd prime d; the
/// sigma_x and sigma_y eigenbases for d = 2.
inline MubSet construct_mubs(std::size_t d, std::size_t m) {
  if (!is_prime(d)) {
    throw std::invalid_argument("construct_mubs: d = " + std::to_string(d) +
                                " is not prime; load a basis set from file instead");
  }
  if (m < 2 || m > d + 1) {
    throw std::invalid_argument("construct_mubs: M = " + std::to_string(m) + " outside 2.." + std::to_string(d + 1));
  }
  std::vector<ComplexMatrix> bases;
  bases.push_back(ComplexMatrix::identity(d));
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  if (d == 2) {
    const ComplexMatrix x(2, 2, {amp, amp, amp, -amp});
    const ComplexMatrix y(2, 2, {amp, amp, amp * kI, -amp * kI});
    bases.push_back(x);
    bases.push_back(y);
  } else {
    for (std::size_t a = 0; a < d; ++a) {
      ComplexMatrix b(d, d);
      for (std::size_t s = 0; s < d; ++s) {
        for (std::size_t j = 0; j < d; ++j) {
          const long long e = static_cast<long long>(a * s * s + j * s);
          b(s, j) = amp * root_of_unity(d, e);
        }
      }
      bases.push_back(std::move(b));
    }
  }
  bases.resize(m);
  for (auto& b : bases) detail::fix_column_phases(b);
  return MubSet(d, std::move(bases));
}

struct MubValidation {
  double max_orthonormality_deviation = 0.0;  // max |<i_t|j_t> - delta_ij|
  double max_unbiasedness_deviation = 0.0;    // max ||<i_t|j_u>|^2 - 1/d|, t != u
  std::string first_problem;                  // empty when passing
  bool pass = false;
};

inline MubValidation validate_mubs(const MubSet& set) {
  MubValidation report;
  const std::size_t d = set.d();
  const std::size_t m = set.count();
  auto note = [&](const std::string& what) {
    if (report.first_problem.empty()) report.first_problem = what;
  };
  if (m < 2 || m > d + 1) {
    note("basis count " + std::to_string(m) + " outside 2.." + std::to_string(d + 1));
  }
  for (std::size_t t = 1; t <= m; ++t) {
    for (std::size_t i = 0; i < d; ++i) {
      const auto vi = set.vector(t, i);
      const double norm_dev = std::abs(PureState::norm_of(vi) - 1.0);
      if (norm_dev > tol::kStructural) {
        std::ostringstream msg;
        msg << "basis " << t << " vector " << i << " is not normalized (norm deviation " << norm_dev << ")";
        note(msg.str());
      }
      for (std::size_t j = 0; j < d; ++j) {
        const double dev = std::abs(inner(vi, set.vector(t, j)) - (i == j ? 1.0 : 0.0));
        report.max_orthonormality_deviation = std::max(report.max_orthonormality_deviation, dev);
        if (dev > tol::kStructural) {
          std::ostringstream msg;
          msg << "basis " << t << " vectors " << i << "," << j << " are not orthonormal (deviation " << dev << ")";
          note(msg.str());
        }
      }
    }
  }
  const double target = 1.0 / static_cast<double>(d);
  for (std::size_t t = 1; t <= m; ++t) {
    for (std::size_t u = t + 1; u <= m; ++u) {
      const ComplexMatrix overlaps = set.basis(t).adjoint() * set.basis(u);
      for (const Complex& z : overlaps.data()) {
        const double dev = std::abs(std::norm(z) - target);
        report.max_unbiasedness_deviation = std::max(report.max_unbiasedness_deviation, dev);
      }
      if (report.max_unbiasedness_deviation > tol::kStructural) {
        note("bases " + std::to_string(t) + " and " + std::to_string(u) + " are not mutually unbiased");
      }
    }
  }
  report.pass = report.first_problem.empty();
  return report;
}

inline void to_json(nlohmann::json& j, const MubSet& set) {
  nlohmann::json bases = nlohmann::json::array();
  for (std::size_t t = 1; t <= set.count(); ++t) {
    nlohmann::json vectors = nlohmann::json::array();
    for (std::size_t i = 0; i < set.d(); ++i) {
      nlohmann::json amps = nlohmann::json::array();
      for (const Complex& z : set.vector(t, i)) amps.push_back({z.real(), z.imag()});
      vectors.push_back(std::move(amps));
    }
    bases.push_back(std::move(vectors));
  }
  j = nlohmann::json{{"d", set.d()}, {"M", set.count()}, {"bases", std::move(bases)}};
}

/// Parses the MUB JSON schema; only shapes are checked.
inline MubSet mubs_from_json(const nlohmann::json& j) {
  const auto d = j.at("d").get<std::size_t>();
  const auto m = j.at("M").get<std::size_t>();
  const auto& bases_json = j.at("bases");
  if (!bases_json.is_array() || bases_json.size() != m) {
    throw std::invalid_argument("MUB JSON: expected " + std::to_string(m) + " bases");
  }
  std::vector<ComplexMatrix> bases;
  for (std::size_t t = 0; t < m; ++t) {
    const auto& vectors = bases_json[t];
    if (!vectors.is_array() || vectors.size() != d) {
      throw std::invalid_argument("MUB JSON: basis " + std::to_string(t + 1) + " must hold " + std::to_string(d) +
                                  " vectors");
    }
    ComplexMatrix b(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      const auto& amps = vectors[i];
      if (!amps.is_array() || amps.size() != d) {
        throw std::invalid_argument("MUB JSON: basis " + std::to_string(t + 1) + " vector " + std::to_string(i) +
                                    " must hold " + std::to_string(d) + " amplitudes");
      }
      for (std::size_t s = 0; s < d; ++s) {
        const auto& z = amps[s];
        if (!z.is_array() || z.size() != 2) throw std::invalid_argument("MUB JSON: amplitudes must be [re, im]");
        b(s, i) = Complex(z[0].get<double>(), z[1].get<double>());
      }
    }
    bases.push_back(std::move(b));
  }
  return MubSet(d, std::move(bases));
}

inline void save_mubs(const MubSet& set, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_mubs: cannot open " + path);
  out << nlohmann::json(set).dump(2) << '\n';
  if (!out) throw std::runtime_error("save_mubs: write failed for " + path);
}

/// Reads and validates a basis set. Throws std::runtime_error on parse
/// failure and std::invalid_argument carrying the deviation report when
/// validation fails.
inline MubSet load_mubs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_mubs: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("load_mubs: " + path + ": " + e.what());
  }
  MubSet set;
  try {
    set = mubs_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("load_mubs: " + path + ": " + e.what());
  }
  const MubValidation report = validate_mubs(set);
  if (!report.pass) {
    std::ostringstream msg;
    msg << "load_mubs: " << path << " failed validation: " << report.first_problem
        << " (max orthonormality deviation " << report.max_orthonormality_deviation
        << ", max unbiasedness deviation " << report.max_unbiasedness_deviation << ")";
    throw std::invalid_argument(msg.str());
  }
  return set;
}

}  // namespace ucr

#endif  // UCR_MUB_HPP
