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

// Dense complex linear algebra for small quantum registers: Kronecker
// products, partial trace and transpose over labeled tensor factors, and a
// cyclic Jacobi eigensolver for Hermitian matrices.
//
// Multi-indices are flattened row-major: subsystem 0 is the leftmost tensor
// factor and carries the most significant digit.

#ifndef UCR_LINALG_HPP
#define UCR_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ucr/tolerances.hpp"

namespace ucr {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
      throw std::invalid_argument("ComplexMatrix: expected " + std::to_string(rows_ * cols_) +
                                  " entries, got " + std::to_string(data_.size()));
    }
    for (const Complex& z : data_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::invalid_argument("ComplexMatrix: non-finite entry");
      }
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  /// |ket><bra| for two amplitude vectors.
  static ComplexMatrix outer(std::span<const Complex> ket, std::span<const Complex> bra) {
    ComplexMatrix m(ket.size(), bra.size());
    for (std::size_t r = 0; r < ket.size(); ++r) {
      for (std::size_t c = 0; c < bra.size(); ++c) m(r, c) = ket[r] * std::conj(bra[c]);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    }
    return out;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    }
    return out;
  }

  Complex trace() const {
    require_square("trace");
    Complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const Complex& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const Complex& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  /// Largest entrywise |m - m^dagger|; infinity for non-square input.
  double hermiticity_deviation() const {
    if (!is_square()) return INFINITY;
    double dev = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = r; c < cols_; ++c) {
        dev = std::max(dev, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
      }
    }
    return dev;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o, "+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o, "-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  ComplexMatrix& operator*=(Complex s) {
    for (Complex& z : data_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw std::invalid_argument("ComplexMatrix: product shape mismatch");
    }
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex ark = a(r, k);
        if (ark == Complex{}) continue;
        for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += ark * b(k, c);
      }
    }
    return out;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  void require_square(const char* what) const {
    if (!is_square()) throw std::invalid_argument(std::string("ComplexMatrix: ") + what + " needs a square matrix");
  }
  void require_same_shape(const ComplexMatrix& o, const char* what) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw std::invalid_argument(std::string("ComplexMatrix: shape mismatch in ") + what);
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Frobenius norm of a - b.
inline double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).frobenius_norm();
}

/// Tr(a b) without forming the product.
inline Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw std::invalid_argument("trace_of_product: shape mismatch");
  }
  Complex t = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) t += a(r, k) * b(k, r);
  }
  return t;
}

/// Normalized state vector.
class PureState {
 public:
  PureState() = default;

  /// Throws unless the Euclidean norm is within kStructural of 1.
  explicit PureState(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
    const double n = norm_of(amplitudes_);
    if (amplitudes_.empty() || std::abs(n - 1.0) > tol::kStructural) {
      std::ostringstream msg;
      msg << "PureState: norm " << n << " is not 1";
      throw std::invalid_argument(msg.str());
    }
  }

  /// Rescales to unit norm; throws on a zero vector.
  static PureState normalized(std::vector<Complex> amplitudes) {
    const double n = norm_of(amplitudes);
    if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("PureState: cannot normalize zero vector");
    for (Complex& a : amplitudes) a /= n;
    return PureState(std::move(amplitudes));
  }

  static PureState basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw std::invalid_argument("PureState::basis: index out of range");
    std::vector<Complex> v(dim);
    v[index] = 1.0;
    return PureState(std::move(v));
  }

  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

  ComplexMatrix projector() const { return ComplexMatrix::outer(amplitudes_, amplitudes_); }

  static double norm_of(std::span<const Complex> v) {
    double s = 0.0;
    for (const Complex& z : v) s += std::norm(z);
    return std::sqrt(s);
  }

 private:
  std::vector<Complex> amplitudes_;
};

/// <a|b>.
inline Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner: dimension mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}
inline Complex inner(const PureState& a, const PureState& b) { return inner(a.amplitudes(), b.amplitudes()); }

inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar) {
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex s = a(ar, ac);
      if (s == Complex{}) continue;
      for (std::size_t br = 0; br < b.rows(); ++br) {
        for (std::size_t bc = 0; bc < b.cols(); ++bc) {
          out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
        }
      }
    }
  }
  return out;
}

inline PureState tensor(const PureState& a, const PureState& b) {
  std::vector<Complex> v;
  v.reserve(a.dim() * b.dim());
  for (const Complex& x : a.amplitudes()) {
    for (const Complex& y : b.amplitudes()) v.push_back(x * y);
  }
  return PureState::normalized(std::move(v));
}

namespace detail {

inline std::size_t product_of(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>{});
}

/// Row-major strides: stride[k] = prod(dims[k+1..]).
inline std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) s[k - 1] = s[k] * dims[k];
  return s;
}

inline void require_dims(const ComplexMatrix& m, std::span<const std::size_t> dims, const char* what) {
  if (dims.empty()) throw std::invalid_argument(std::string(what) + ": empty dims");
  for (std::size_t d : dims) {
    if (d == 0) throw std::invalid_argument(std::string(what) + ": zero subsystem dimension");
  }
  const std::size_t n = product_of(dims);
  if (!m.is_square() || m.rows() != n) {
    throw std::invalid_argument(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + " but dims multiply to " + std::to_string(n));
  }
}

}  // namespace detail

/// Traces out every subsystem not listed in `keep`. The result's subsystems
/// appear in their original order regardless of the order of `keep`.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                   std::span<const std::size_t> keep) {
  detail::require_dims(m, dims, "partial_trace");
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size()) throw std::invalid_argument("partial_trace: invalid subsystem index " + std::to_string(k));
    if (kept[k]) throw std::invalid_argument("partial_trace: duplicate subsystem index " + std::to_string(k));
    kept[k] = true;
  }

  const std::size_t n = m.rows();
  const auto strides = detail::strides_of(dims);
  // For every flat index, its flat index within the kept factors and within
  // the traced factors.
  std::vector<std::size_t> kept_index(n), traced_index(n);
  std::size_t kept_dim = 1;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (kept[k]) kept_dim *= dims[k];
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t ki = 0, ti = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      const std::size_t digit = (i / strides[k]) % dims[k];
      if (kept[k]) {
        ki = ki * dims[k] + digit;
      } else {
        ti = ti * dims[k] + digit;
      }
    }
    kept_index[i] = ki;
    traced_index[i] = ti;
  }

  ComplexMatrix out(kept_dim, kept_dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (traced_index[i] == traced_index[j]) out(kept_index[i], kept_index[j]) += m(i, j);
    }
  }
  return out;
}

inline ComplexMatrix partial_trace(const ComplexMatrix& m, std::initializer_list<std::size_t> dims,
                                   std::initializer_list<std::size_t> keep) {
  return partial_trace(m, std::span<const std::size_t>(dims.begin(), dims.size()),
                       std::span<const std::size_t>(keep.begin(), keep.size()));
}

/// Transposes the given tensor factor in the computational basis:
/// (..i_s..; ..j_s..) -> (..j_s..; ..i_s..). An involution.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                       std::size_t subsystem) {
  detail::require_dims(m, dims, "partial_transpose");
  if (subsystem >= dims.size()) {
    throw std::invalid_argument("partial_transpose: invalid subsystem index " + std::to_string(subsystem));
  }
  const std::size_t n = m.rows();
  const std::size_t stride = detail::strides_of(dims)[subsystem];
  const std::size_t d = dims[subsystem];
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t di = (i / stride) % d;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t dj = (j / stride) % d;
      const std::size_t ii = i - di * stride + dj * stride;
      const std::size_t jj = j - dj * stride + di * stride;
      out(ii, jj) = m(i, j);
    }
  }
  return out;
}

inline ComplexMatrix partial_transpose(const ComplexMatrix& m, std::initializer_list<std::size_t> dims,
                                       std::size_t subsystem) {
  return partial_transpose(m, std::span<const std::size_t>(dims.begin(), dims.size()), subsystem);
}

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k pairs with values[k]
  int sweeps = 0;
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix. Each rotation first
/// removes the phase of the pivot, then applies the real symmetric Jacobi
/// rotation that annihilates it.
inline HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("hermitian_eigen: matrix is not square");
  if (m.hermiticity_deviation() > tol::kPsdSlack) {
    throw std::invalid_argument("hermitian_eigen: matrix is not Hermitian");
  }
  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(a(i, j));
    }
    return std::sqrt(s);
  };
  const double threshold = tol::kJacobiOffDiagonal * std::max(1.0, m.frobenius_norm());

  int sweep = 0;
  while (off_norm() >= threshold) {
    if (sweep == tol::kJacobiMaxSweeps) {
      throw std::runtime_error("hermitian_eigen: Jacobi iteration did not converge");
    }
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        const Complex phase = a(p, q) / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J = diag(1, conj(phase)) * [[c, s], [-s, c]] restricted to (p, q).
        const Complex jpp = c, jpq = s;
        const Complex jqp = -s * std::conj(phase), jqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {  // A <- A J, V <- V J
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- J^dagger A
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  HermitianEigen out;
  out.sweeps = sweep;
  out.values.reserve(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values.push_back(a(order[k], order[k]).real());
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) { return hermitian_eigen(m).values; }

inline double min_eigenvalue(const ComplexMatrix& m) {
  const auto values = hermitian_eigenvalues(m);
  return values.empty() ? 0.0 : values.front();
}

/// Hermitian, unit-trace, positive semidefinite matrix on a labeled tensor
/// factorization.
class DensityMatrix {
 public:
  DensityMatrix() = default;

  /// Validates every invariant; throws std::invalid_argument otherwise.
  DensityMatrix(std::vector<std::size_t> dims, ComplexMatrix matrix)
      : dims_(std::move(dims)), matrix_(std::move(matrix)) {
    detail::require_dims(matrix_, dims_, "DensityMatrix");
    if (matrix_.hermiticity_deviation() > tol::kStructural) {
      throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
    }
    const Complex tr = matrix_.trace();
    if (std::abs(tr - 1.0) > tol::kStructural) {
      std::ostringstream msg;
      msg << "DensityMatrix: trace " << tr.real() << " is not 1";
      throw std::invalid_argument(msg.str());
    }
    if (min_eigenvalue(matrix_) < -tol::kPsdSlack) {
      throw std::invalid_argument("DensityMatrix: matrix has a negative eigenvalue");
    }
  }

  /// Skips validation; for results of trace- and positivity-preserving maps
  /// applied to an already valid state.
  static DensityMatrix assume_valid(std::vector<std::size_t> dims, ComplexMatrix matrix) {
    detail::require_dims(matrix, dims, "DensityMatrix");
    DensityMatrix out;
    out.dims_ = std::move(dims);
    out.matrix_ = std::move(matrix);
    return out;
  }

  static DensityMatrix from_pure(const PureState& psi, std::vector<std::size_t> dims) {
    return DensityMatrix(std::move(dims), psi.projector());
  }

  static DensityMatrix maximally_mixed(std::vector<std::size_t> dims) {
    const std::size_t n = detail::product_of(dims);
    return assume_valid(std::move(dims), ComplexMatrix::identity(n) * Complex(1.0 / static_cast<double>(n)));
  }

  std::span<const std::size_t> dims() const { return dims_; }
  std::size_t dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  std::vector<std::size_t> dims_;
  ComplexMatrix matrix_;
};

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<std::size_t> dims(a.dims().begin(), a.dims().end());
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityMatrix::assume_valid(std::move(dims), tensor(a.matrix(), b.matrix()));
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  ComplexMatrix reduced = partial_trace(rho.matrix(), rho.dims(), keep);
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> dims;
  for (std::size_t k : sorted) dims.push_back(rho.dims()[k]);
  return DensityMatrix::assume_valid(std::move(dims), std::move(reduced));
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep) {
  return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

/// Tr(rho^2), computed as the squared Frobenius norm of a Hermitian matrix.
inline double purity(const ComplexMatrix& rho) {
  const double f = rho.frobenius_norm();
  return f * f;
}
inline double purity(const DensityMatrix& rho) { return purity(rho.matrix()); }

// JSON matrix format: {"rows": n, "cols": n, "data": [[re, im], ...]},
// row-major. Density matrices add "dims".

inline void to_json(nlohmann::json& j, const ComplexMatrix& m) {
  nlohmann::json data = nlohmann::json::array();
  for (const Complex& z : m.data()) data.push_back({z.real(), z.imag()});
  j = nlohmann::json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline void from_json(const nlohmann::json& j, ComplexMatrix& m) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const auto& data = j.at("data");
  if (!data.is_array()) throw std::invalid_argument("matrix JSON: \"data\" must be an array");
  std::vector<Complex> entries;
  entries.reserve(data.size());
  for (const auto& pair : data) {
    if (!pair.is_array() || pair.size() != 2) {
      throw std::invalid_argument("matrix JSON: each entry must be [re, im]");
    }
    entries.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  m = ComplexMatrix(rows, cols, std::move(entries));
}

inline void to_json(nlohmann::json& j, const DensityMatrix& rho) {
  to_json(j, rho.matrix());
  j["dims"] = std::vector<std::size_t>(rho.dims().begin(), rho.dims().end());
}

inline DensityMatrix density_from_json(const nlohmann::json& j) {
  auto m = j.get<ComplexMatrix>();
  std::vector<std::size_t> dims;
  if (j.contains("dims")) {
    dims = j.at("dims").get<std::vector<std::size_t>>();
  } else {
    dims = {m.rows()};
  }
  return DensityMatrix(std::move(dims), std::move(m));
}

}  // namespace ucr

#endif  // UCR_LINALG_HPP
