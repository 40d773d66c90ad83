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

#include <array>
#include <vector>

#include "qbloch/channels.hpp"
#include "qbloch/gbr.hpp"

namespace qbloch {

/// Cloner output dimension cap: d^M <= 256.
inline constexpr int kClonerDimensionCap = 256;

/// sigma[j] is the input slot copied into output slot j:
/// U_sigma |i_0 ... i_{M-1}> = |i_sigma(0) ... i_sigma(M-1)>.
using Permutation = std::vector<int>;

/// Entries in {0, ..., D}; 0 is the identity slot, j > 0 is tau_{j-1}.
using MultiIndex = std::vector<int>;

/// All M! permutations of {0, ..., M-1} in lexicographic order.
std::vector<Permutation> all_permutations(int m);

/// Integer power with overflow guard against the cloner cap.
int checked_power(int d, int k);

/// binomial(N + d - 1, N).
long long symmetric_dimension(int d, int n);

ComplexMatrix permutation_operator(const Permutation& sigma, int d);

/// (1/N!) sum_sigma U_sigma.
ComplexMatrix symmetric_projector(int d, int n);

/// M^{-1} sum_l tau_i acting on factor l; i is a 0-based su(d) basis index.
ComplexMatrix coproduct(int i, int d, int m);

/// rho^{(x) N}.
DensityMatrix symmetric_input(const DensityMatrix& rho, int n);

/// An N -> M cloner of d-level systems.
class Cloner {
 public:
  Cloner(int d, int n, int m, Channel channel);

  int d() const { return d_; }
  int n() const { return n_; }
  int m() const { return m_; }
  const Channel& channel() const { return channel_; }

 private:
  int d_;
  int n_;
  int m_;
  Channel channel_;
};

/// tr over all clones but `clone` (0-based) of T(rho^{(x) N}).
DensityMatrix reduced_map(const Cloner& cloner, int clone,
                          const DensityMatrix& rho);

/// Product basis tau_i = tau_{i_1} (x) ... (x) tau_{i_K} with tau_0 = I.
ComplexMatrix product_basis_element(const MultiIndex& index, int d);

/// Coefficients a_j of A = sum_j a_j tau_j over the product basis, indexed by
/// the flat multi-index (first factor most significant, radix d^2). Each
/// identity slot contributes a normalization d, every other slot 2.
ComplexVector product_basis_coefficients(const ComplexMatrix& a, int d, int k);

MultiIndex unflatten(long long flat, int d, int length);
long long flatten(const MultiIndex& index, int d);

/// Multi-index Bloch table of a cloner: T(tau_i) = sum_j M_{j,i} tau_j.
struct MultiGbrTable {
  int d = 0;
  int n = 0;
  int m = 0;
  RealMatrix M;  // (D+1)^M rows, (D+1)^N columns
  /// Coefficients of T(I/d^N) on the traceless product elements.
  RealVector c;
  /// max_{i != 0} |M_{0,i}|; vanishes for trace-preserving maps.
  double trace_violation = 0.0;
};

MultiGbrTable multi_gbr(const Cloner& cloner);

struct FactorFormula {
  double xi = 0.0;
  /// Largest deviation across basis directions j and clones l.
  double spread = 0.0;
};

/// d^{M-N} sum_k M_{j e_l, j e_k}, averaged over j and l. The d^{M-N}
/// prefactor converts the table's normalization to Bloch-vector units.
FactorFormula factor_formula(const MultiGbrTable& table);

struct ShrinkResult {
  double xi = 0.0;
  double fit_residual = 0.0;
  double factor_formula_xi = 0.0;
  double factor_spread = 0.0;
  double covariance_defect = 0.0;
  double symmetry_defect = 0.0;
  bool certified = false;
  int n_samples = 0;
};

struct ShrinkOptions {
  int n_samples = 200;
  RandomSeed seed{0x5eed};
  bool allow_uncertified = false;
  int certification_samples = 6;
};

/// Least-squares shrink of Haar pure inputs' reduced Bloch vectors, checked
/// against the factor formula. Certification needs covariance defect < 1e-8
/// and symmetry defect < 1e-10; asymmetric cloners are rejected unless
/// allow_uncertified is set.
ShrinkResult shrink_factor(const Cloner& cloner,
                           const ShrinkOptions& options = {});

inline constexpr double kCertifiedCovariance = 1e-8;
inline constexpr double kCertifiedSymmetry = 1e-10;

/// T(rho_N) = (dim Sym^N / dim Sym^M) S_M (rho_N (x) I) S_M on the symmetric
/// sector. Inputs outside Sym^N are sent to tr((I - S_N) rho) I/d^M so the
/// resulting channel is trace preserving everywhere.
Cloner werner_cloner(int d, int n, int m);

/// Kraus composition `second o first`; Kraus sets larger than the Choi
/// rank bound are re-extracted from the Choi matrix.
Cloner compose(const Cloner& second, const Cloner& first);

/// The qubit 1 -> 2 covariant symmetric ansatz
/// T(rho) = 1/4 (I + t C_2 + xi sum_a lambda_a S_a) at its optimum.
struct QubitOptimum {
  double t = 0.0;
  double xi = 0.0;
  Cloner cloner;
  /// max deviation of the cloner's output from werner_cloner(2, 1, 2).
  double werner_deviation = 0.0;

  /// Predicted spectrum at Bloch radius 1, ascending: the three triplet
  /// levels (1 + t -/+ 2 xi)/4, (1 + t)/4 and the singlet (1 - 3t)/4.
  static std::array<double, 4> spectrum(double t, double xi);

  ComplexMatrix output_state(const RealVector& lambda) const;
};

/// C_2 = sum_a sigma_a (x) sigma_a.
ComplexMatrix qubit_c2();

ComplexMatrix qubit_ansatz_output(double t, double xi, const RealVector& lambda);

/// Maximizes xi over the linear positivity constraints of the ansatz by
/// vertex enumeration.
QubitOptimum optimal_qubit_12();

}  // namespace qbloch
