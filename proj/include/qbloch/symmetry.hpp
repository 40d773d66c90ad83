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

#include <functional>
#include <vector>

#include "qbloch/channels.hpp"
#include "qbloch/cloners.hpp"

namespace qbloch {

struct TwirlReport {
  AffineRep averaged;
  double xi_fit = 0.0;        // tr(M) / D
  double offdiag_norm = 0.0;  // ||M - xi_fit I||_inf
  double c_norm = 0.0;        // ||c||_2
  int n_samples = 0;
  RandomSeed seed;
};

/// Samples are drawn in blocks of this size; block b uses seed base + b, so
/// results do not depend on the worker count beyond summation order.
inline constexpr int kTwirlBlockSize = 1024;

/// Monte Carlo SU(d) average of conjugate_action(T, U), computed on the
/// affine representation: mean of phi(U)^T M phi(U) and phi(U)^T c.
TwirlReport twirl_su(const Channel& channel, int n_samples, RandomSeed seed,
                     int workers = 1);
TwirlReport twirl_affine(const AffineRep& rep, int n_samples, RandomSeed seed,
                         int workers = 1);

/// Kraus-level twirl: union of n_samples^{-1/2} U^dagger K U. The result is
/// a genuine channel; use it where trace preservation must be checked.
Channel twirl_su_kraus(const Channel& channel, int n_samples, RandomSeed seed);

/// Kraus-level twirl of a cloner under X^{(x) N} on the input and
/// X^{(x) M} on the output.
Cloner twirl_cloner(const Cloner& cloner, int n_samples, RandomSeed seed);

inline constexpr int kMaxSymmetrizeClones = 5;

/// (1/M!) sum_sigma Ad(U_sigma) o T, for M <= 5.
Cloner symmetrize_sm(const Cloner& cloner);

/// max over sampled X and random states of ||T_X(rho) - T(rho)||_HS.
double covariance_defect(const Channel& channel, int n_samples,
                         RandomSeed seed);
double covariance_defect(const Cloner& cloner, int n_samples, RandomSeed seed);
/// max over sampled X of the max-norm change of (M, c) under conjugation.
double covariance_defect(const AffineRep& rep, int n_samples, RandomSeed seed);

/// max over sigma in S_M and random inputs of ||T(rho) - U_sigma T(rho)
/// U_sigma^dagger||_HS.
double symmetry_defect(const Cloner& cloner, int n_samples, RandomSeed seed);

/// Hilbert-Schmidt adjoint: Kraus set {K^dagger}. Unital, generally not
/// trace preserving.
KrausMap dual_map(const Channel& channel);

/// F_i = T^t(Delta_M(tau_i)), averaged over S_N conjugation.
std::vector<ComplexMatrix> backmap_operators(const Cloner& cloner);

struct CovarianceResidual {
  /// Per basis index, max over sampled U of ||S A_i^U S||_HS.
  std::vector<double> norms;
  double max = 0.0;
  /// Same without the symmetric-subspace projection.
  std::vector<double> full_space_norms;
  double full_space_max = 0.0;
};

/// A_i^U = U^{(x) N} F_i U^{dagger (x) N} - sum_j X_ji(U) F_j.
CovarianceResidual covariance_residual(const Cloner& cloner, int n_samples,
                                       RandomSeed seed);

/// T(rho) = (1 - g) I/d + g rho with g = gamma(tr rho^n). Not linear, so not
/// a Channel.
class NonlinearCovariantMap {
 public:
  NonlinearCovariantMap(int n, std::function<double(double)> gamma);

  int n() const { return n_; }
  double gamma_of(const ComplexMatrix& rho) const;
  ComplexMatrix apply(const DensityMatrix& rho) const;

 private:
  int n_;
  std::function<double(double)> gamma_;
};

double covariance_defect(const NonlinearCovariantMap& map, int d,
                         int n_samples, RandomSeed seed);

struct AffinityWitness {
  ComplexMatrix rho1;
  ComplexMatrix rho2;
  /// ||T(rho1/2 + rho2/2) - T(rho1)/2 - T(rho2)/2||_HS.
  double gap = 0.0;
};

/// Largest equal-weight mixing gap over random pure pairs.
AffinityWitness affinity_violation(const NonlinearCovariantMap& map, int d,
                                   int n_pairs, RandomSeed seed);

}  // namespace qbloch
