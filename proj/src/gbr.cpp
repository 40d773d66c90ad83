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

#include "qbloch/gbr.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "qbloch/error.hpp"

namespace qbloch {
namespace {

std::unique_ptr<GellMannBasis> build_basis(int d) {
  auto basis = std::make_unique<GellMannBasis>();
  basis->d = d;
  const Complex i1(0.0, 1.0);
  auto push = [&](std::vector<GellMannBasis::Entry> entries) {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (const auto& e : entries) m(e.row, e.col) = e.value;
    basis->matrices.push_back(std::move(m));
    basis->sparse.push_back(std::move(entries));
  };
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) push({{j, k, 1.0}, {k, j, 1.0}});
  }
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) push({{j, k, -i1}, {k, j, i1}});
  }
  for (int l = 1; l < d; ++l) {
    const double s = std::sqrt(2.0 / (l * (l + 1.0)));
    std::vector<GellMannBasis::Entry> entries;
    for (int m = 0; m < l; ++m) entries.push_back({m, m, s});
    entries.push_back({l, l, -l * s});
    push(std::move(entries));
  }
  return basis;
}

}  // namespace

const GellMannBasis& gellmann_basis(int d) {
  if (d < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "gellmann_basis: d must be >= 2, got " + std::to_string(d));
  }
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GellMannBasis>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[d];
  if (!slot) slot = build_basis(d);
  return *slot;
}

BlochVector::BlochVector(int d, RealVector lambda)
    : d_(d), lambda_(std::move(lambda)) {
  if (d < 2) throw Error(ErrorCode::kInvalidArgument, "BlochVector: d < 2");
  if (lambda_.size() != bloch_dim(d)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "BlochVector: expected " + std::to_string(bloch_dim(d)) +
                    " components, got " + std::to_string(lambda_.size()));
  }
  if (!lambda_.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "BlochVector: non-finite entry");
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  require_hermitian(m_, "DensityMatrix");
  const Complex tr = m_.trace();
  if (std::abs(tr - 1.0) > 1e-12) {
    throw Error(ErrorCode::kInvalidArgument,
                "DensityMatrix: trace " + std::to_string(tr.real()) + " != 1");
  }
  const double lo = eig_hermitian(m_).min();
  if (lo < -kPhysicalTolerance) {
    throw Error(ErrorCode::kNotPositive,
                "DensityMatrix: negative eigenvalue " + std::to_string(lo));
  }
}

DensityMatrix DensityMatrix::trusted(ComplexMatrix m) {
  return DensityMatrix(std::move(m), TrustedTag{});
}

bool DensityMatrix::is_pure() const {
  return 1.0 - std::real(hs_inner(m_, m_)) < 1e-10;
}

RealVector bloch_components(const ComplexMatrix& a) {
  require_square(a, "bloch_components");
  const GellMannBasis& basis = gellmann_basis(static_cast<int>(a.rows()));
  RealVector out(basis.size());
  for (int i = 0; i < basis.size(); ++i) {
    // (tau_i, A) = tr(tau_i A^dagger) = sum_e tau[r,c] conj(A[r,c])
    Complex acc = 0.0;
    for (const auto& e : basis.sparse[i]) {
      acc += e.value * std::conj(a(e.row, e.col));
    }
    if (std::abs(acc.imag()) > kHermitianTolerance) {
      throw Error(ErrorCode::kNotHermitian,
                  "bloch_components: imaginary component " +
                      std::to_string(acc.imag()));
    }
    out(i) = acc.real();
  }
  return out;
}

BlochVector to_bloch(const DensityMatrix& rho) {
  return BlochVector(rho.dim(), bloch_components(rho.matrix()));
}

ComplexMatrix from_bloch(const BlochVector& lambda) {
  const int d = lambda.d();
  const GellMannBasis& basis = gellmann_basis(d);
  ComplexMatrix out = identity(d) / static_cast<double>(d);
  for (int i = 0; i < basis.size(); ++i) {
    const double w = 0.5 * lambda.lambda()(i);
    for (const auto& e : basis.sparse[i]) out(e.row, e.col) += w * e.value;
  }
  return out;
}

double bloch_radius(int d) {
  if (d < 2) throw Error(ErrorCode::kInvalidArgument, "bloch_radius: d < 2");
  return std::sqrt(2.0 * (1.0 - 1.0 / d));
}

double max_angle(int d) {
  if (d < 2) throw Error(ErrorCode::kInvalidArgument, "max_angle: d < 2");
  return std::acos(1.0 / (1.0 - d));
}

PhysicalityCheck is_physical_bloch(const BlochVector& lambda) {
  const double lo = eig_hermitian(from_bloch(lambda)).min();
  return {lo >= -kPhysicalTolerance, lo};
}

}  // namespace qbloch
