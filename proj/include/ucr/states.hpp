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

#ifndef UCR_STATES_HPP
#define UCR_STATES_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ucr/linalg.hpp"

namespace ucr {

/// Parameters of rho(alpha, x) = x |psi_alpha><psi_alpha| + (1 - x) I_4 / 4.
struct WernerFamilyParams {
  double alpha = std::numbers::pi / 2;  // radians, [0, pi/2]
  double x = 1.0;                       // [0, 1]

  void validate() const {
    if (!(alpha >= 0.0 && alpha <= std::numbers::pi / 2)) {
      throw std::invalid_argument("alpha = " + std::to_string(alpha) + " outside [0, pi/2]");
    }
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("x = " + std::to_string(x) + " outside [0, 1]");
  }
};

/// cos(alpha/2)|01> - sin(alpha/2)|10>; the left symbol is qubit A.
inline PureState psi_alpha(double alpha) {
  WernerFamilyParams{alpha, 1.0}.validate();
  return PureState({0.0, std::cos(alpha / 2), -std::sin(alpha / 2), 0.0});
}

inline DensityMatrix rho_family(const WernerFamilyParams& p) {
  p.validate();
  ComplexMatrix m = Complex(p.x) * psi_alpha(p.alpha).projector();
  m += Complex((1.0 - p.x) / 4.0) * ComplexMatrix::identity(4);
  return DensityMatrix({2, 2}, std::move(m));
}

inline DensityMatrix rho_family(double alpha, double x) { return rho_family(WernerFamilyParams{alpha, x}); }

/// SplitMix64 finalizer; derives independent stream seeds from one root seed.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace detail {

inline std::vector<Complex> gaussian_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> v(n);
  for (Complex& z : v) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = {re, im};
  }
  return v;
}

}  // namespace detail

/// Normalized complex Gaussian vector (Haar-distributed pure state).
inline PureState random_pure_state(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw std::invalid_argument("random_pure_state: dim must be positive");
  std::mt19937_64 rng(seed);
  return PureState::normalized(detail::gaussian_vector(dim, rng));
}

/// G G^dagger / Tr(G G^dagger) with G a dim x rank complex Ginibre matrix.
inline DensityMatrix random_density(std::vector<std::size_t> dims, std::size_t rank, std::uint64_t seed) {
  const std::size_t dim = detail::product_of(dims);
  if (rank < 1 || rank > dim) {
    throw std::invalid_argument("random_density: rank " + std::to_string(rank) + " outside 1.." + std::to_string(dim));
  }
  std::mt19937_64 rng(seed);
  const ComplexMatrix g(dim, rank, detail::gaussian_vector(dim * rank, rng));
  ComplexMatrix m = g * g.adjoint();
  m *= Complex(1.0 / m.trace().real());
  for (std::size_t i = 0; i < dim; ++i) {
    m(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < dim; ++j) m(j, i) = std::conj(m(i, j));
  }
  return DensityMatrix::assume_valid(std::move(dims), std::move(m));
}

inline DensityMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed) {
  return random_density(std::vector<std::size_t>{dim}, rank, seed);
}

/// Deviation part of a labeled pseudo-pure state: sigma_z on qubit 0 tensored
/// with the ground projector of the remaining n - 1 qubits. The thermal
/// polarization (~1e-5) and identity background are dropped.
inline ComplexMatrix lpps_deviation(std::size_t n_qubits) {
  if (n_qubits < 2 || n_qubits > 16) {
    throw std::invalid_argument("lpps_deviation: n_qubits must be in 2..16");
  }
  const std::size_t n = std::size_t{1} << n_qubits;
  ComplexMatrix m(n, n);
  m(0, 0) = 1.0;
  m(n / 2, n / 2) = -1.0;
  return m;
}

}  // namespace ucr

#endif  // UCR_STATES_HPP
