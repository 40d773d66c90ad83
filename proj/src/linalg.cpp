// Copyright 2026 The qbloch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qbloch/linalg.hpp"

#include <atomic>
#include <cmath>
#include <numeric>
#include <string>

#include "qbloch/error.hpp"

namespace qbloch {
namespace {

std::atomic<std::size_t> g_dimension_cap{kDefaultDimensionCap};

void check_cap(std::size_t rows, std::size_t cols) {
  const std::size_t cap = dimension_cap();
  if (rows > cap || cols > cap) {
    throw Error(ErrorCode::kCapExceeded,
                "tensor result " + std::to_string(rows) + "x" +
                    std::to_string(cols) + " exceeds dimension cap " +
                    std::to_string(cap));
  }
}

}  // namespace

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kNotHermitian: return "not hermitian";
    case ErrorCode::kNotPositive: return "not positive";
    case ErrorCode::kNotTracePreserving: return "not trace preserving";
    case ErrorCode::kCapExceeded: return "dimension cap exceeded";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kNotCertified: return "not certified";
  }
  return "unknown";
}

std::size_t dimension_cap() noexcept {
  return g_dimension_cap.load(std::memory_order_relaxed);
}

void set_dimension_cap(std::size_t cap) {
  if (cap < 2) throw Error(ErrorCode::kInvalidArgument, "dimension cap < 2");
  g_dimension_cap.store(cap, std::memory_order_relaxed);
}

double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint()) <= tol;
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": matrix is not square");
  }
}

void require_hermitian(const ComplexMatrix& a, const char* what) {
  require_square(a, what);
  const double dev = max_abs(a - a.adjoint());
  if (dev > kHermitianTolerance) {
    throw Error(ErrorCode::kNotHermitian,
                std::string(what) + ": hermiticity violated by " +
                    std::to_string(dev));
  }
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "hs_inner");
  require_square(b, "hs_inner");
  if (a.rows() != b.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "hs_inner: dimensions differ");
  }
  // tr(A B^dagger) = sum_ij A_ij conj(B_ij)
  return (a.array() * b.array().conjugate()).sum();
}

double hs_norm(const ComplexMatrix& a) { return a.norm(); }

double hs_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_hermitian(a, "hs_distance");
  require_hermitian(b, "hs_distance");
  if (a.rows() != b.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "hs_distance: dimensions differ");
  }
  const ComplexMatrix diff = a - b;
  const double sq = std::real(hs_inner(diff, diff));
  return std::sqrt(std::max(sq, 0.0) / 2.0);
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const auto rows = static_cast<std::size_t>(a.rows()) * b.rows();
  const auto cols = static_cast<std::size_t>(a.cols()) * b.cols();
  check_cap(rows, cols);
  ComplexMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix tensor_power(const ComplexMatrix& a, int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "tensor_power: n < 1");
  ComplexMatrix out = a;
  for (int k = 1; k < n; ++k) out = tensor(out, a);
  return out;
}

ComplexMatrix tensor_all(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "tensor_all: no factors");
  }
  ComplexMatrix out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = tensor(out, factors[k]);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& a,
                            std::span<const int> factor_dims, int keep) {
  require_square(a, "partial_trace");
  if (factor_dims.empty() || keep < 0 ||
      keep >= static_cast<int>(factor_dims.size())) {
    throw Error(ErrorCode::kInvalidArgument, "partial_trace: keep out of range");
  }
  Eigen::Index total = 1;
  for (int dim : factor_dims) {
    if (dim < 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "partial_trace: non-positive factor dimension");
    }
    total *= dim;
  }
  if (total != a.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "partial_trace: factor dimensions do not multiply to " +
                    std::to_string(a.rows()));
  }
  Eigen::Index left = 1, right = 1;
  for (int k = 0; k < keep; ++k) left *= factor_dims[k];
  for (std::size_t k = keep + 1; k < factor_dims.size(); ++k) {
    right *= factor_dims[k];
  }
  const Eigen::Index kept = factor_dims[keep];
  ComplexMatrix out = ComplexMatrix::Zero(kept, kept);
  for (Eigen::Index l = 0; l < left; ++l) {
    for (Eigen::Index x = 0; x < kept; ++x) {
      for (Eigen::Index y = 0; y < kept; ++y) {
        Complex acc = 0.0;
        const Eigen::Index r0 = (l * kept + x) * right;
        const Eigen::Index c0 = (l * kept + y) * right;
        for (Eigen::Index q = 0; q < right; ++q) acc += a(r0 + q, c0 + q);
        out(x, y) += acc;
      }
    }
  }
  return out;
}

ComplexMatrix partial_trace_tail(const ComplexMatrix& a, int keep_dim,
                                 int traced_dim) {
  const int dims[2] = {keep_dim, traced_dim};
  return partial_trace(a, dims, 0);
}

Spectrum eig_hermitian(const ComplexMatrix& a) {
  require_hermitian(a, "eig_hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kInvalidArgument, "eig_hermitian: no convergence");
  }
  Spectrum s{solver.eigenvalues(), solver.eigenvectors()};
  const ComplexMatrix rebuilt = s.eigenvectors *
                                s.eigenvalues.cast<Complex>().asDiagonal() *
                                s.eigenvectors.adjoint();
  const double scale = std::max(1.0, max_abs(a));
  if (max_abs(rebuilt - a) > 1e-10 * scale) {
    throw Error(ErrorCode::kInvalidArgument,
                "eig_hermitian: reconstruction error too large");
  }
  return s;
}

double Rng::uniform() { return uniform_(engine_); }

double Rng::normal() { return normal_(engine_); }

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

ComplexMatrix Rng::haar_unitary(int d) {
  if (d < 1) throw Error(ErrorCode::kInvalidArgument, "haar_unitary: d < 1");
  Eigen::MatrixXcd g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = complex_normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    q.col(j) *= mag > 0.0 ? rjj / mag : Complex(1.0);
  }
  const Complex det = q.determinant();
  q *= std::polar(1.0, -std::arg(det) / d);
  return q;
}

ComplexVector Rng::haar_vector(int d) {
  ComplexVector v(d);
  for (int i = 0; i < d; ++i) v(i) = complex_normal();
  return v / v.norm();
}

ComplexMatrix Rng::haar_pure_state(int d) { return outer(haar_vector(d)); }

ComplexMatrix Rng::random_density(int d) {
  // Normalized exponential spacings are uniform on the simplex.
  RealVector p(d);
  for (int i = 0; i < d; ++i) p(i) = -std::log(1.0 - uniform());
  p /= p.sum();
  const ComplexMatrix u = haar_unitary(d);
  ComplexMatrix rho = u * p.cast<Complex>().asDiagonal() * u.adjoint();
  return (rho + rho.adjoint()) / 2.0;
}

ComplexMatrix Rng::random_hermitian(int d) {
  ComplexMatrix g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = complex_normal();
  }
  return (g + g.adjoint()) / 2.0;
}

ComplexMatrix haar_unitary(int d, RandomSeed seed) {
  if (d < 2) throw Error(ErrorCode::kInvalidArgument, "haar_unitary: d < 2");
  Rng rng(seed);
  return rng.haar_unitary(d);
}

ComplexMatrix identity(int d) { return ComplexMatrix::Identity(d, d); }

ComplexMatrix outer(const ComplexVector& ket) { return ket * ket.adjoint(); }

}  // namespace qbloch
