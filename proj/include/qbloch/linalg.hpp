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

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qbloch {

using Complex = std::complex<double>;
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RealMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealVector = Eigen::VectorXd;

/// Absolute max-norm tolerance for every Hermiticity check in the library.
inline constexpr double kHermitianTolerance = 1e-12;

/// Default upper bound on the dimension of any tensor-product result.
inline constexpr std::size_t kDefaultDimensionCap = 4096;

/// Process-wide tensor dimension cap. Reads are lock-free; set it once at
/// start-up (the CLI wires QBLOCH_DIM_CAP to this).
std::size_t dimension_cap() noexcept;
void set_dimension_cap(std::size_t cap);

struct Spectrum {
  RealVector eigenvalues;  // ascending
  ComplexMatrix eigenvectors;  // columns, same order as eigenvalues

  double min() const { return eigenvalues(0); }
  double max() const { return eigenvalues(eigenvalues.size() - 1); }
};

struct RandomSeed {
  std::uint64_t value = 0;
};

// Frequently used helpers. All of them throw qbloch::Error on bad input.
double max_abs(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double tol = kHermitianTolerance);
void require_square(const ComplexMatrix& a, const char* what);
void require_hermitian(const ComplexMatrix& a, const char* what);

/// tr(A B^dagger).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Hilbert-Schmidt norm sqrt(tr A A^dagger).
double hs_norm(const ComplexMatrix& a);

/// 2^{-1/2} sqrt((A-B, A-B)) for Hermitian A, B.
double hs_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product, rejected when the result exceeds dimension_cap().
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor_power(const ComplexMatrix& a, int n);
ComplexMatrix tensor_all(std::span<const ComplexMatrix> factors);

/// Trace over every factor except `keep` (0-based).
ComplexMatrix partial_trace(const ComplexMatrix& a,
                            std::span<const int> factor_dims, int keep);

/// Trace over the trailing factors, keeping the first `keep_dim` block.
ComplexMatrix partial_trace_tail(const ComplexMatrix& a, int keep_dim,
                                 int traced_dim);

/// Ascending spectrum of a Hermitian matrix. Reconstruction error is checked.
Spectrum eig_hermitian(const ComplexMatrix& a);

/// Seeded random stream. The module-level samplers below draw from it so that
/// a single seed drives a reproducible sequence of samples.
class Rng {
 public:
  explicit Rng(RandomSeed seed) : engine_(seed.value) {}

  double uniform();
  double normal();
  Complex complex_normal();

  /// Haar-distributed element of SU(d).
  ComplexMatrix haar_unitary(int d);
  /// Haar-distributed unit vector of C^d.
  ComplexVector haar_vector(int d);
  /// |psi><psi| for a Haar-random psi.
  ComplexMatrix haar_pure_state(int d);
  /// U diag(p) U^dagger with U Haar and p uniform on the simplex.
  ComplexMatrix random_density(int d);
  /// Random Hermitian matrix with standard complex-Gaussian entries.
  ComplexMatrix random_hermitian(int d);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Gaussian matrix, QR, diagonal phase correction, then the global phase
/// fixed so that det U = 1.
ComplexMatrix haar_unitary(int d, RandomSeed seed);

ComplexMatrix identity(int d);
ComplexMatrix outer(const ComplexVector& ket);

}  // namespace qbloch
