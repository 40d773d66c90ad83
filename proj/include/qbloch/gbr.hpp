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

#include <vector>

#include "qbloch/linalg.hpp"

namespace qbloch {

/// Orthogonal basis of su(d) with (tau_i, tau_j) = 2 delta_ij.
///
/// Ordering: the symmetric off-diagonal generators |j><k| + |k><j| for j < k
/// (lexicographic), then the antisymmetric ones -i|j><k| + i|k><j| in the same
/// order, then the d-1 diagonal generators
/// sqrt(2/(l(l+1))) diag(1,...,1,-l,0,...,0), l = 1..d-1. For d = 2 this is
/// (sigma_x, sigma_y, sigma_z).
struct GellMannBasis {
  struct Entry {
    int row;
    int col;
    Complex value;
  };

  int d = 0;
  std::vector<ComplexMatrix> matrices;
  /// Nonzero entries of each generator, used by the hot loops.
  std::vector<std::vector<Entry>> sparse;

  int size() const { return static_cast<int>(matrices.size()); }
  const ComplexMatrix& operator[](int i) const { return matrices[i]; }
};

/// Cached per dimension; the returned reference stays valid for the lifetime
/// of the process and may be shared across threads.
const GellMannBasis& gellmann_basis(int d);

/// D = d^2 - 1.
constexpr int bloch_dim(int d) { return d * d - 1; }

class BlochVector {
 public:
  BlochVector(int d, RealVector lambda);

  int d() const { return d_; }
  const RealVector& lambda() const { return lambda_; }
  double norm() const { return lambda_.norm(); }

 private:
  int d_;
  RealVector lambda_;
};

/// Unit-trace positive semidefinite matrix. The dimension may be a composite
/// d^k; the factor structure is carried by whoever owns the state.
class DensityMatrix {
 public:
  /// Validates Hermiticity (1e-12), unit trace (1e-12) and a minimum
  /// eigenvalue of at least -1e-10.
  explicit DensityMatrix(ComplexMatrix m);

  /// Skips validation. Used for outputs of already-certified channels, which
  /// only meet the channel tolerances.
  static DensityMatrix trusted(ComplexMatrix m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }

  /// 1 - tr rho^2 below 1e-10.
  bool is_pure() const;

 private:
  struct TrustedTag {};
  DensityMatrix(ComplexMatrix m, TrustedTag) : m_(std::move(m)) {}

  ComplexMatrix m_;
};

inline constexpr double kPhysicalTolerance = 1e-10;

/// lambda_i = (tau_i, A) for any Hermitian A (imaginary parts must be below
/// 1e-12). For unit-trace A this is the Bloch map m.
RealVector bloch_components(const ComplexMatrix& a);

BlochVector to_bloch(const DensityMatrix& rho);

/// I/d + 1/2 sum_i lambda_i tau_i. Unit trace and Hermitian, not necessarily
/// positive.
ComplexMatrix from_bloch(const BlochVector& lambda);

/// sqrt(2 (1 - 1/d)), the radius of the sphere holding the pure states.
double bloch_radius(int d);

/// arccos(1/(1-d)), the largest angle between a pure and any physical
/// Bloch vector.
double max_angle(int d);

struct PhysicalityCheck {
  bool physical;
  double min_eigenvalue;  // the witness when !physical

  explicit operator bool() const { return physical; }
};

PhysicalityCheck is_physical_bloch(const BlochVector& lambda);

}  // namespace qbloch
