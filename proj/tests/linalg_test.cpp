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

#include "ucr/linalg.hpp"

#include <array>
#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "test_util.hpp"
#include "ucr/states.hpp"

using namespace ucr;
using ucr::testing::pauli_x;
using ucr::testing::pauli_z;
using ucr::testing::random_matrix;

TEST(linalg, tensor_identity) {
  EXPECT_EQ(tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4));
}

TEST(linalg, tensor_computational_basis) {
  const ComplexMatrix p0 = PureState::basis(2, 0).projector();
  const ComplexMatrix p1 = PureState::basis(2, 1).projector();
  const ComplexMatrix t = tensor(p0, p1);
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) EXPECT_EQ(t(r, c), (r == 1 && c == 1) ? Complex(1.0) : Complex(0.0));
  }
}

TEST(linalg, tensor_zz_is_parity_diagonal) {
  const std::array<Complex, 4> expected{1.0, -1.0, -1.0, 1.0};
  EXPECT_EQ(tensor(pauli_z(), pauli_z()), ComplexMatrix::diagonal(expected));
}

TEST(linalg, tensor_associativity) {
  // Integer-valued entries: exact.
  const ComplexMatrix a(2, 2, {1.0, 2.0, Complex(0, 3), -1.0});
  const ComplexMatrix b(2, 3, {4.0, 0.0, -2.0, 1.0, Complex(1, 1), 5.0});
  const ComplexMatrix c(3, 1, {7.0, -3.0, Complex(0, -2)});
  EXPECT_EQ(tensor(tensor(a, b), c), tensor(a, tensor(b, c)));

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = random_matrix(2, 3, rng), y = random_matrix(3, 2, rng), z = random_matrix(2, 2, rng);
    EXPECT_LE(frobenius_distance(tensor(tensor(x, y), z), tensor(x, tensor(y, z))), 1e-14);
  }
}

TEST(linalg, matrix_rejects_non_finite_and_bad_size) {
  EXPECT_THROW(ComplexMatrix(2, 2, {1.0, 2.0, 3.0}), std::invalid_argument);
  EXPECT_THROW(ComplexMatrix(1, 2, {1.0, Complex(NAN, 0)}), std::invalid_argument);
  EXPECT_THROW(ComplexMatrix(1, 1, {Complex(0, INFINITY)}), std::invalid_argument);
}

TEST(linalg, partial_trace_bell_marginal) {
  const PureState bell = PureState::normalized({1.0, 0.0, 0.0, 1.0});
  const DensityMatrix rho = DensityMatrix::from_pure(bell, {2, 2});
  const std::array<std::size_t, 1> keep_b{1};
  const DensityMatrix rho_b = partial_trace(rho, keep_b);
  EXPECT_LE(frobenius_distance(rho_b.matrix(), ComplexMatrix::identity(2) * Complex(0.5)), 1e-15);
  ASSERT_EQ(rho_b.dims().size(), 1u);
  EXPECT_EQ(rho_b.dims()[0], 2u);
}

TEST(linalg, partial_trace_of_product_recovers_factor) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DensityMatrix a = random_density(3, 3, split_seed(seed, 0));
    const DensityMatrix b = random_density(2, 1 + seed % 2, split_seed(seed, 1));
    const DensityMatrix ab = tensor(a, b);
    const std::array<std::size_t, 1> keep_a{0}, keep_b{1};
    EXPECT_LE(frobenius_distance(partial_trace(ab, keep_a).matrix(), a.matrix()), 1e-14);
    EXPECT_LE(frobenius_distance(partial_trace(ab, keep_b).matrix(), b.matrix()), 1e-14);
  }
}

TEST(linalg, partial_trace_of_werner_family) {
  // rho(pi/2, 0.5): the marginal of either qubit is I/2.
  const DensityMatrix rho = rho_family(std::numbers::pi / 2, 0.5);
  const std::array<std::size_t, 1> keep_b{1};
  EXPECT_LE(frobenius_distance(partial_trace(rho, keep_b).matrix(), ComplexMatrix::identity(2) * Complex(0.5)), 1e-15);
}

TEST(linalg, partial_trace_three_parties_keeps_original_order) {
  const DensityMatrix a = random_density(2, 2, 1), b = random_density(3, 2, 2), c = random_density(2, 1, 3);
  const DensityMatrix abc = tensor(tensor(a, b), c);
  const std::array<std::size_t, 2> keep{2, 0};
  const DensityMatrix ac = partial_trace(abc, keep);
  EXPECT_LE(frobenius_distance(ac.matrix(), tensor(a, c).matrix()), 1e-14);
  EXPECT_EQ(ac.dims()[0], 2u);
}

TEST(linalg, partial_trace_errors) {
  const DensityMatrix rho = DensityMatrix::maximally_mixed({2, 2});
  const std::array<std::size_t, 1> bad{2};
  const std::array<std::size_t, 2> dup{0, 0};
  EXPECT_THROW(partial_trace(rho, bad), std::invalid_argument);
  EXPECT_THROW(partial_trace(rho, dup), std::invalid_argument);
  EXPECT_THROW(partial_trace(rho, std::span<const std::size_t>{}), std::invalid_argument);
}

TEST(linalg, partial_transpose_is_an_involution) {
  std::mt19937_64 rng(5);
  const std::array<std::size_t, 2> dims{2, 3};
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix m = random_matrix(6, 6, rng);
    for (std::size_t s : {0u, 1u}) EXPECT_EQ(partial_transpose(partial_transpose(m, dims, s), dims, s), m);
  }
}

TEST(linalg, partial_transpose_entry_mapping) {
  // (i,j;k,l) -> (i,l;k,j) for the second factor of 2 x 2.
  ComplexMatrix m(4, 4);
  m(0 * 2 + 1, 1 * 2 + 0) = Complex(3, 4);  // |0 1><1 0|
  const std::array<std::size_t, 2> dims{2, 2};
  const ComplexMatrix pt = partial_transpose(m, dims, 1);
  EXPECT_EQ(pt(0 * 2 + 0, 1 * 2 + 1), Complex(3, 4));
  EXPECT_EQ(pt.max_abs(), 5.0);
  const ComplexMatrix pt0 = partial_transpose(m, dims, 0);
  EXPECT_EQ(pt0(1 * 2 + 1, 0 * 2 + 0), Complex(3, 4));
}

TEST(linalg, partial_transpose_of_bell_projector_is_not_psd) {
  const PureState bell = PureState::normalized({1.0, 0.0, 0.0, 1.0});
  const std::array<std::size_t, 2> dims{2, 2};
  const auto values = hermitian_eigenvalues(partial_transpose(bell.projector(), dims, 1));
  EXPECT_NEAR(values.front(), -0.5, 1e-12);
  EXPECT_NEAR(values.back(), 0.5, 1e-12);
}

TEST(linalg, partial_transpose_properties) {
  const std::array<std::size_t, 2> dims{2, 3};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DensityMatrix rho = random_density({2, 3}, 1 + seed % 6, seed);
    const ComplexMatrix pt = partial_transpose(rho.matrix(), dims, 1);
    EXPECT_NEAR(std::abs(pt.trace() - rho.matrix().trace()), 0.0, 1e-14);
    EXPECT_LE(pt.hermiticity_deviation(), 1e-15);
    // Products stay PSD under partial transpose.
    const DensityMatrix prod =
        tensor(random_density(2, 2, split_seed(seed, 7)), random_density(3, 3, split_seed(seed, 8)));
    EXPECT_GE(min_eigenvalue(partial_transpose(prod.matrix(), dims, 1)), -1e-12);
  }
}

TEST(linalg, partial_transpose_dimension_mismatch) {
  const std::array<std::size_t, 2> dims{2, 3};
  EXPECT_THROW(partial_transpose(ComplexMatrix::identity(4), dims, 1), std::invalid_argument);
  EXPECT_THROW(partial_transpose(ComplexMatrix::identity(6), dims, 2), std::invalid_argument);
}

TEST(linalg, eigenvalues_diagonal_and_pauli) {
  const std::array<Complex, 3> diag{3.0, 1.0, 2.0};
  const auto v = hermitian_eigenvalues(ComplexMatrix::diagonal(diag));
  ASSERT_EQ(v.size(), 3u);
  EXPECT_DOUBLE_EQ(v[0], 1.0);
  EXPECT_DOUBLE_EQ(v[1], 2.0);
  EXPECT_DOUBLE_EQ(v[2], 3.0);

  const auto px = hermitian_eigenvalues(pauli_x());
  EXPECT_NEAR(px[0], -1.0, 1e-15);
  EXPECT_NEAR(px[1], 1.0, 1e-15);
}

TEST(linalg, eigenvalues_match_two_by_two_closed_form) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double a = u(rng), c = u(rng);
    const Complex b(u(rng), u(rng));
    const ComplexMatrix m(2, 2, {a, b, std::conj(b), c});
    const double mid = (a + c) / 2;
    const double rad = std::sqrt((a - c) * (a - c) / 4 + std::norm(b));
    const auto v = hermitian_eigenvalues(m);
    EXPECT_NEAR(v[0], mid - rad, 1e-12) << "trial " << trial;
    EXPECT_NEAR(v[1], mid + rad, 1e-12) << "trial " << trial;
  }
}

TEST(linalg, eigen_decomposition_properties) {
  std::mt19937_64 rng(99);
  for (std::size_t n : {1u, 2u, 5u, 16u, 32u, 49u}) {
    ComplexMatrix g = random_matrix(n, n, rng);
    const ComplexMatrix h = g + g.adjoint();
    const HermitianEigen e = hermitian_eigen(h);
    ASSERT_EQ(e.values.size(), n);
    EXPECT_TRUE(std::is_sorted(e.values.begin(), e.values.end()));
    double sum = 0.0, sum_sq = 0.0;
    for (double l : e.values) {
      sum += l;
      sum_sq += l * l;
    }
    EXPECT_NEAR(sum, h.trace().real(), 1e-9);
    EXPECT_NEAR(sum_sq, trace_of_product(h, h).real(), 1e-9);
    const double scale = h.frobenius_norm();
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<Complex> vk(n);
      for (std::size_t r = 0; r < n; ++r) vk[r] = e.vectors(r, k);
      double res = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        Complex s = -e.values[k] * vk[r];
        for (std::size_t c = 0; c < n; ++c) s += h(r, c) * vk[c];
        res += std::norm(s);
      }
      EXPECT_LE(std::sqrt(res), 1e-9 * scale) << "n=" << n << " k=" << k;
    }
    EXPECT_LE(frobenius_distance(e.vectors.adjoint() * e.vectors, ComplexMatrix::identity(n)), 1e-12);
    EXPECT_LE(e.sweeps, tol::kJacobiMaxSweeps);
  }
}

TEST(linalg, eigen_rejects_non_hermitian) {
  const ComplexMatrix m(2, 2, {1.0, 1.0, 0.0, 1.0});
  EXPECT_THROW(hermitian_eigenvalues(m), std::invalid_argument);
  EXPECT_THROW(hermitian_eigenvalues(ComplexMatrix(2, 3)), std::invalid_argument);
}

TEST(linalg, purity_closed_forms) {
  EXPECT_NEAR(purity(DensityMatrix::maximally_mixed({5})), 0.2, 1e-15);
  EXPECT_NEAR(purity(DensityMatrix::from_pure(random_pure_state(6, 3), {6})), 1.0, 1e-12);
  for (double x : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    EXPECT_NEAR(purity(rho_family(std::numbers::pi / 2, x)), (1 + 3 * x * x) / 4, 1e-12) << "x=" << x;
  }
}

TEST(linalg, purity_equals_sum_of_squared_eigenvalues) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const DensityMatrix rho = random_density(6, 1 + seed % 6, seed);
    double s = 0.0;
    for (double l : hermitian_eigenvalues(rho.matrix())) s += l * l;
    EXPECT_NEAR(purity(rho), s, 1e-10);
    EXPECT_GE(purity(rho), 1.0 / 6 - 1e-12);
    EXPECT_LE(purity(rho), 1.0 + 1e-12);
  }
}

TEST(linalg, density_matrix_validation) {
  EXPECT_THROW(DensityMatrix({2}, ComplexMatrix::identity(2)), std::invalid_argument);  // trace 2
  EXPECT_THROW(DensityMatrix({2}, ComplexMatrix(2, 2, {1.0, 1.0, 0.0, 0.0})), std::invalid_argument);
  EXPECT_THROW(DensityMatrix({2}, ComplexMatrix::diagonal(std::array<Complex, 2>{1.5, -0.5})), std::invalid_argument);
  EXPECT_THROW(DensityMatrix({3}, ComplexMatrix::identity(2) * Complex(0.5)), std::invalid_argument);
  EXPECT_NO_THROW(DensityMatrix({2}, ComplexMatrix::identity(2) * Complex(0.5)));
}

TEST(linalg, pure_state_norm_check) {
  EXPECT_THROW(PureState({1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(PureState::normalized({0.0, 0.0}), std::invalid_argument);
  EXPECT_NEAR(std::abs(inner(PureState::normalized({1.0, kI}), PureState::normalized({1.0, kI}))), 1.0, 1e-15);
}

TEST(linalg, json_round_trip) {
  const DensityMatrix rho = random_density({2, 3}, 4, 17);
  const nlohmann::json j = rho;
  EXPECT_EQ(j.at("rows"), 6);
  EXPECT_EQ(j.at("dims"), nlohmann::json::array({2, 3}));
  const DensityMatrix back = density_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.matrix(), rho.matrix());

  nlohmann::json bad = j;
  bad["data"][0] = nlohmann::json::array({1.0});
  EXPECT_THROW(density_from_json(bad), std::invalid_argument);
}
