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

// Purity conservation relations for MUB measurements on one half of a
// bipartite state.
//
// Given M mutually unbiased bases of subsystem A (dimension d) and a state
// rho_AB on d x D, measuring A non-selectively in basis theta yields rho_thetaB.
// The operator
//
//   Gamma = I_A (x) rho_B + ((M - 1) / d) rho_AB - sum_theta rho_thetaB
//
// is positive semidefinite for M <= d and vanishes for M = d + 1, giving
//
//   sum_theta (Tr rho_B^2 - Tr rho_thetaB^2) >= (M - 1)(Tr rho_B^2 - Tr rho_AB^2 / d)
//
// with equality for a complete set. Gamma is computed two ways: directly, and
// as Tr_C{P_AC^{T_C} rho_CB} where P projects onto the complement of the
// maximally entangled bipartite basis states built from the MUBs.

#ifndef UCR_RELATIONS_HPP
#define UCR_RELATIONS_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ucr/linalg.hpp"
#include "ucr/mub.hpp"
#include "ucr/tolerances.hpp"

namespace ucr {

/// The M(d-1)+1 bipartite states |Phi>, |phi_{theta,k}> on C^d (x) C^d, an
/// orthonormal completion |varphi_alpha>, and the projector P onto it.
class BipartiteBasis {
 public:
  std::size_t d() const { return d_; }
  std::size_t count() const { return m_; }

  /// (1/sqrt d) sum_i |i_1> (x) |i_1>^*.
  const PureState& phi() const { return phi_; }

  /// (1/sqrt d) sum_i omega^{k i} |i_theta> (x) |i_theta>^*, theta in 1..M,
  /// k in 1..d-1 (i runs from 0).
  const PureState& phi(std::size_t theta, std::size_t k) const {
    if (theta < 1 || theta > m_ || k < 1 || k >= d_) {
      throw std::out_of_range("BipartiteBasis: (theta, k) = (" + std::to_string(theta) + ", " + std::to_string(k) +
                              ") out of range");
    }
    return phis_[(theta - 1) * (d_ - 1) + (k - 1)];
  }

  /// |Phi> followed by every |phi_{theta,k}>, theta-major.
  std::vector<PureState> constructed_states() const {
    std::vector<PureState> out{phi_};
    out.insert(out.end(), phis_.begin(), phis_.end());
    return out;
  }

  const std::vector<PureState>& complement() const { return complement_; }

  /// I (x) I - |Phi><Phi| - sum |phi_{theta,k}><phi_{theta,k}|.
  const ComplexMatrix& projector() const { return projector_; }

  /// The MUB set the states were built from.
  const MubSet& mubs() const { return mubs_; }

  friend BipartiteBasis build_bipartite_basis(const MubSet& mubs);

 private:
  std::size_t d_ = 0;
  std::size_t m_ = 0;
  MubSet mubs_;
  PureState phi_;
  std::vector<PureState> phis_;
  std::vector<PureState> complement_;
  ComplexMatrix projector_;
};

inline std::size_t complement_size(std::size_t d, std::size_t m) { return (d - 1) * (d + 1 - m); }

namespace detail {

/// (1/sqrt d) sum_i w_i |i_theta> (x) conj(|i_theta>).
inline PureState maximally_entangled(const MubSet& mubs, std::size_t theta, std::size_t k) {
  const std::size_t d = mubs.d();
  const ComplexMatrix& b = mubs.basis(theta);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<Complex> v(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    const Complex w = amp * root_of_unity(d, static_cast<long long>(k * i));
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t c = 0; c < d; ++c) v[a * d + c] += w * b(a, i) * std::conj(b(c, i));
    }
  }
  return PureState(std::move(v));
}

/// Removes from v its components along every vector in `against`, twice.
inline void project_out(std::vector<Complex>& v, const std::vector<PureState>& against) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const PureState& u : against) {
      const Complex c = inner(u.amplitudes(), v);
      for (std::size_t s = 0; s < v.size(); ++s) v[s] -= c * u[s];
    }
  }
}

}  // namespace detail

/// Builds the bipartite basis and its completion. The completion is found by
/// modified Gram-Schmidt over the computational basis vectors e_0..e_{d^2-1},
/// discarding candidates whose residual norm falls below kGramSchmidtResidual.
inline BipartiteBasis build_bipartite_basis(const MubSet& mubs) {
  const MubValidation v = validate_mubs(mubs);
  if (!v.pass) throw std::invalid_argument("build_bipartite_basis: invalid MUB set: " + v.first_problem);

  const std::size_t d = mubs.d();
  const std::size_t m = mubs.count();
  BipartiteBasis out;
  out.d_ = d;
  out.m_ = m;
  out.mubs_ = mubs;
  out.phi_ = detail::maximally_entangled(mubs, 1, 0);
  for (std::size_t theta = 1; theta <= m; ++theta) {
    for (std::size_t k = 1; k < d; ++k) out.phis_.push_back(detail::maximally_entangled(mubs, theta, k));
  }

  std::vector<PureState> spanned = out.constructed_states();
  for (std::size_t e = 0; e < d * d; ++e) {
    std::vector<Complex> candidate(d * d);
    candidate[e] = 1.0;
    detail::project_out(candidate, spanned);
    if (PureState::norm_of(candidate) < tol::kGramSchmidtResidual) continue;
    PureState unit = PureState::normalized(std::move(candidate));
    out.complement_.push_back(unit);
    spanned.push_back(std::move(unit));
  }
  if (out.complement_.size() != complement_size(d, m)) {
    throw std::runtime_error("build_bipartite_basis: completion has " + std::to_string(out.complement_.size()) +
                             " states, expected " + std::to_string(complement_size(d, m)));
  }

  out.projector_ = ComplexMatrix::identity(d * d) - out.phi_.projector();
  for (const PureState& s : out.phis_) out.projector_ -= s.projector();
  return out;
}

struct BasisValidation {
  double max_gram_deviation = 0.0;         // all M(d-1)+1+p states, entrywise vs identity
  double projector_idempotence = 0.0;      // ||P^2 - P||_F
  double projector_trace_deviation = 0.0;  // |Tr P - p|
  double projector_completion_deviation = 0.0;  // max entry of P - sum_a |varphi_a><varphi_a|
  bool pass = false;
};

/// Gram matrix of the given states minus identity, largest entry magnitude.
inline double gram_deviation(const std::vector<PureState>& states) {
  double dev = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = 0; j < states.size(); ++j) {
      dev = std::max(dev, std::abs(inner(states[i], states[j]) - (i == j ? 1.0 : 0.0)));
    }
  }
  return dev;
}

inline BasisValidation validate_bipartite_basis(const BipartiteBasis& basis) {
  BasisValidation report;
  std::vector<PureState> all = basis.constructed_states();
  all.insert(all.end(), basis.complement().begin(), basis.complement().end());
  report.max_gram_deviation = gram_deviation(all);

  const ComplexMatrix& p = basis.projector();
  report.projector_idempotence = frobenius_distance(p * p, p);
  report.projector_trace_deviation =
      std::abs(p.trace().real() - static_cast<double>(complement_size(basis.d(), basis.count())));
  ComplexMatrix completion(p.rows(), p.cols());
  for (const PureState& s : basis.complement()) completion += s.projector();
  report.projector_completion_deviation = (p - completion).max_abs();

  report.pass = report.max_gram_deviation <= tol::kStructural && report.projector_idempotence <= tol::kPsdSlack &&
                report.projector_trace_deviation <= tol::kSpectral &&
                report.projector_completion_deviation <= tol::kStructural;
  return report;
}

namespace detail {

/// sum_{i,j} |i_t><j_t| (x) |j_t><i_t| for basis theta (a basis-rotated SWAP).
inline ComplexMatrix flip_operator(const MubSet& mubs, std::size_t theta) {
  const std::size_t d = mubs.d();
  ComplexMatrix out(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto vi = mubs.vector(theta, i);
    for (std::size_t j = 0; j < d; ++j) {
      const auto vj = mubs.vector(theta, j);
      out += tensor(ComplexMatrix::outer(vi, vj), ComplexMatrix::outer(vj, vi));
    }
  }
  return out;
}

}  // namespace detail

struct PtIdentityReport {
  double phi_deviation = 0.0;                 // (|Phi><Phi|)^{T_2} identity
  std::vector<double> per_basis_deviation;    // sum_k |phi_{theta,k}><phi_{theta,k}| identity, index theta-1
  double max_deviation = 0.0;
  bool pass = false;
};

/// Checks, in Frobenius norm,
///   (|Phi><Phi|)^{T_2} = (1/d) sum_ij |i_1><j_1| (x) |j_1><i_1|
///   (sum_k |phi_{t,k}><phi_{t,k}|)^{T_2}
///       = sum_i |i_t><i_t| (x) |i_t><i_t| - (1/d) sum_ij |i_t><j_t| (x) |j_t><i_t|
/// for every basis t, with the transpose taken on the second factor in the
/// computational basis.
inline PtIdentityReport check_pt_identities(const BipartiteBasis& basis) {
  const MubSet& mubs = basis.mubs();
  const std::size_t d = mubs.d();
  const std::array<std::size_t, 2> dims{d, d};
  const Complex inv_d = 1.0 / static_cast<double>(d);
  PtIdentityReport report;

  const ComplexMatrix lhs0 = partial_transpose(basis.phi().projector(), dims, 1);
  report.phi_deviation = frobenius_distance(lhs0, inv_d * detail::flip_operator(mubs, 1));
  report.max_deviation = report.phi_deviation;

  for (std::size_t theta = 1; theta <= mubs.count(); ++theta) {
    ComplexMatrix sum(d * d, d * d);
    for (std::size_t k = 1; k < d; ++k) sum += basis.phi(theta, k).projector();
    const ComplexMatrix lhs = partial_transpose(sum, dims, 1);

    ComplexMatrix rhs(d * d, d * d);
    for (std::size_t i = 0; i < d; ++i) {
      const ComplexMatrix pi = ComplexMatrix::outer(mubs.vector(theta, i), mubs.vector(theta, i));
      rhs += tensor(pi, pi);
    }
    rhs -= inv_d * detail::flip_operator(mubs, theta);

    const double dev = frobenius_distance(lhs, rhs);
    report.per_basis_deviation.push_back(dev);
    report.max_deviation = std::max(report.max_deviation, dev);
  }
  report.pass = report.max_deviation <= tol::kStructural;
  return report;
}

namespace detail {

inline void require_bipartite(const DensityMatrix& rho, std::size_t d, const char* what) {
  if (rho.dims().size() != 2 || rho.dims()[0] != d) {
    throw std::invalid_argument(std::string(what) + ": state must have dims [" + std::to_string(d) + ", D]");
  }
}

}  // namespace detail

/// rho_thetaB = sum_i |i_t><i_t| (x) <i_t| rho_AB |i_t>, theta in 1..M.
inline DensityMatrix post_measurement_state(const DensityMatrix& rho, const MubSet& mubs, std::size_t theta) {
  detail::require_bipartite(rho, mubs.d(), "post_measurement_state");
  mubs.check_theta(theta);
  const std::size_t d = mubs.d();
  const std::size_t big_d = rho.dims()[1];
  const ComplexMatrix id_b = ComplexMatrix::identity(big_d);
  ComplexMatrix out(d * big_d, d * big_d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto vi = mubs.vector(theta, i);
    const ComplexMatrix proj = tensor(ComplexMatrix::outer(vi, vi), id_b);
    out += proj * rho.matrix() * proj;
  }
  return DensityMatrix::assume_valid({d, big_d}, std::move(out));
}

inline DensityMatrix marginal_b(const DensityMatrix& rho) {
  const std::array<std::size_t, 1> keep{1};
  return partial_trace(rho, keep);
}

/// I_A (x) rho_B + ((M - 1)/d) rho_AB - sum_theta rho_thetaB.
inline ComplexMatrix gamma_direct(const DensityMatrix& rho, const MubSet& mubs) {
  detail::require_bipartite(rho, mubs.d(), "gamma_direct");
  const std::size_t d = mubs.d();
  const double m = static_cast<double>(mubs.count());
  ComplexMatrix gamma = tensor(ComplexMatrix::identity(d), marginal_b(rho).matrix());
  gamma += Complex((m - 1.0) / static_cast<double>(d)) * rho.matrix();
  for (std::size_t theta = 1; theta <= mubs.count(); ++theta) {
    gamma -= post_measurement_state(rho, mubs, theta).matrix();
  }
  return gamma;
}

/// Tr_C{ (P_AC^{T_C} (x) I_B) (I_A (x) rho_CB) } on H_A (x) H_C (x) H_B, where
/// rho_CB is rho_AB with its first factor relabeled C.
inline ComplexMatrix gamma_via_projector(const DensityMatrix& rho, const BipartiteBasis& basis) {
  detail::require_bipartite(rho, basis.d(), "gamma_via_projector");
  const std::size_t d = basis.d();
  const std::size_t big_d = rho.dims()[1];
  const std::array<std::size_t, 2> ac_dims{d, d};
  const ComplexMatrix p_pt = partial_transpose(basis.projector(), ac_dims, 1);
  const ComplexMatrix lifted_p = tensor(p_pt, ComplexMatrix::identity(big_d));
  const ComplexMatrix lifted_rho = tensor(ComplexMatrix::identity(d), rho.matrix());
  const std::array<std::size_t, 3> acb_dims{d, d, big_d};
  const std::array<std::size_t, 2> keep{0, 2};
  return partial_trace(lifted_p * lifted_rho, acb_dims, keep);
}

struct RelationReport {
  std::size_t d = 0;
  std::size_t big_d = 0;
  std::size_t m = 0;
  double purity_ab = 0.0;
  double purity_b = 0.0;
  std::vector<double> purity_theta_b;        // Tr rho_thetaB^2, index theta-1
  std::vector<double> purity_b_given_theta;  // Tr (Tr_A rho_thetaB)^2, index theta-1
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double gamma_expectation = 0.0;  // Tr(Gamma rho_AB)
  double gamma_min_eig = 0.0;
  bool equality_expected = false;
};

inline RelationReport relation_report(const DensityMatrix& rho, const MubSet& mubs) {
  detail::require_bipartite(rho, mubs.d(), "relation_report");
  RelationReport r;
  r.d = mubs.d();
  r.big_d = rho.dims()[1];
  r.m = mubs.count();
  r.purity_ab = purity(rho);
  r.purity_b = purity(marginal_b(rho));
  for (std::size_t theta = 1; theta <= r.m; ++theta) {
    const DensityMatrix post = post_measurement_state(rho, mubs, theta);
    r.purity_theta_b.push_back(purity(post));
    r.purity_b_given_theta.push_back(purity(marginal_b(post)));
  }
  const double m = static_cast<double>(r.m);
  for (double p : r.purity_theta_b) r.lhs += r.purity_b - p;
  r.rhs = (m - 1.0) * (r.purity_b - r.purity_ab / static_cast<double>(r.d));
  r.gap = r.lhs - r.rhs;

  const ComplexMatrix gamma = gamma_direct(rho, mubs);
  r.gamma_expectation = trace_of_product(gamma, rho.matrix()).real();
  r.gamma_min_eig = min_eigenvalue(gamma);
  r.equality_expected = r.m == r.d + 1;
  return r;
}

inline void to_json(nlohmann::json& j, const RelationReport& r) {
  j = nlohmann::json{{"d", r.d},
                     {"D", r.big_d},
                     {"M", r.m},
                     {"purity_AB", r.purity_ab},
                     {"purity_B", r.purity_b},
                     {"purity_thetaB", r.purity_theta_b},
                     {"purity_B_given_theta", r.purity_b_given_theta},
                     {"lhs", r.lhs},
                     {"rhs", r.rhs},
                     {"gap", r.gap},
                     {"gamma_expectation", r.gamma_expectation},
                     {"gamma_min_eig", r.gamma_min_eig},
                     {"equality_expected", r.equality_expected}};
}

}  // namespace ucr

#endif  // UCR_RELATIONS_HPP
