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

#ifndef UCR_TOLERANCES_HPP
#define UCR_TOLERANCES_HPP

namespace ucr::tol {

/// Entrywise agreement for exactly-constructed objects (Hermiticity, unit
/// trace, orthonormality, unbiasedness).
inline constexpr double kStructural = 1e-12;

/// Slack allowed below zero when declaring an operator positive semidefinite.
inline constexpr double kPsdSlack = 1e-10;

/// Spectral and accumulated-sum checks (eigenvalue sums, equality gaps).
inline constexpr double kSpectral = 1e-9;

/// Jacobi sweeps stop once the off-diagonal Frobenius norm drops below this
/// (relative to max(1, ||A||_F)).
inline constexpr double kJacobiOffDiagonal = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;

/// Gram-Schmidt candidates with a smaller residual norm are discarded.
inline constexpr double kGramSchmidtResidual = 1e-8;

}  // namespace ucr::tol

#endif  // UCR_TOLERANCES_HPP
