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

#include <span>
#include <vector>

#include "qbloch/gbr.hpp"
#include "qbloch/linalg.hpp"

namespace qbloch {

/// Tolerance on ||sum K^dagger K - I||_inf.
inline constexpr double kTraceTolerance = 1e-10;
/// Choi eigenvalues below -kPositiveTolerance reject complete positivity.
inline constexpr double kPositiveTolerance = 1e-10;
/// Choi eigenvalues at or below this are dropped when extracting Kraus sets.
inline constexpr double kKrausRankCutoff = 1e-12;

/// Completely positive map X -> sum_k K X K^dagger with no trace condition.
/// Dual maps and other auxiliary superoperators live here.
class KrausMap {
 public:
  KrausMap(int d_in, int d_out, std::vector<ComplexMatrix> kraus);

  int d_in() const { return d_in_; }
  int d_out() const { return d_out_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

  /// Linear extension to arbitrary d_in x d_in operators.
  ComplexMatrix apply(const ComplexMatrix& x) const;

 private:
  int d_in_;
  int d_out_;
  std::vector<ComplexMatrix> kraus_;
};

/// Trace-preserving KrausMap. Complete positivity is implied by the Kraus
/// form; trace preservation is checked on construction.
class Channel {
 public:
  Channel(int d_in, int d_out, std::vector<ComplexMatrix> kraus);

  int d_in() const { return map_.d_in(); }
  int d_out() const { return map_.d_out(); }
  const std::vector<ComplexMatrix>& kraus() const { return map_.kraus(); }
  const KrausMap& as_map() const { return map_; }

  ComplexMatrix apply(const ComplexMatrix& x) const { return map_.apply(x); }
  DensityMatrix apply(const DensityMatrix& rho) const;

  /// ||sum K^dagger K - I||_inf.
  double trace_defect() const;

 private:
  KrausMap map_;
};

DensityMatrix apply(const Channel& channel, const DensityMatrix& rho);

/// J = (T (x) Id)(|Omega><Omega|), |Omega> = d_in^{-1/2} sum_i |i>|i>, output
/// factor first. Trace preservation reads tr_out J = I / d_in.
class ChoiMatrix {
 public:
  ChoiMatrix(int d_in, int d_out, ComplexMatrix matrix);

  int d_in() const { return d_in_; }
  int d_out() const { return d_out_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  double min_eigenvalue() const;

 private:
  int d_in_;
  int d_out_;
  ComplexMatrix matrix_;
};

/// lambda' = M lambda + c.
struct AffineRep {
  int d_in = 0;
  int d_out = 0;
  RealMatrix M;
  RealVector c;

  RealVector apply(const RealVector& lambda) const { return M * lambda + c; }
};

ChoiMatrix kraus_to_choi(const Channel& channel);
/// Unnormalized-safe Choi of any Kraus map (no validation).
ComplexMatrix choi_of(const KrausMap& map);
/// Kraus set from PSD eigenvectors above kKrausRankCutoff.
Channel choi_to_kraus(const ChoiMatrix& choi);

/// M_ji = 1/2 (tau_j, T(tau_i)), c_j = (tau_j, T(I/d)). Square channels only.
AffineRep affine_rep(const Channel& channel);

/// Adjoint action of X in SU(d) as an element of SO(D):
/// X_ji = 1/2 (tau_j, X tau_i X^dagger). Rejects non-special-unitary input.
RealMatrix unitary_rotation(const ComplexMatrix& x);

/// Same as unitary_rotation without the input checks.
RealMatrix adjoint_rotation(const ComplexMatrix& x);

Channel identity_channel(int d);
Channel unitary_channel(const ComplexMatrix& u);

/// (1 - xi) I/d + xi rho, xi in [-1/(d^2-1), 1]. Out-of-range xi raises
/// NotPositiveError carrying the negative Choi eigenvalue.
Channel depolarizing(int d, double xi);
/// Choi matrix of the depolarizing family without range validation.
ComplexMatrix depolarizing_choi_matrix(int d, double xi);

/// T_U(rho) = U^dagger T(U rho U^dagger) U.
Channel conjugate_action(const Channel& channel, const ComplexMatrix& u);

/// second o first.
Channel compose(const Channel& second, const Channel& first);

/// Convex combination sum_k w_k T_k realised by Kraus-set union with sqrt(w_k)
/// weights. Weights must be nonnegative and sum to one.
Channel mix(std::span<const Channel> channels, std::span<const double> weights);

/// Channel from the blocks of a Haar-random isometry C^{d_in} -> C^{d_out r}.
Channel random_channel(int d_in, int d_out, int rank, Rng& rng);

void require_unitary(const ComplexMatrix& u, const char* what);

}  // namespace qbloch
