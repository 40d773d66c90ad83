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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qbloch/gbr.hpp"
#include "test_support.hpp"

using namespace qbloch;

namespace {

DensityMatrix random_state(Rng& rng, int d) {
  return DensityMatrix(rng.random_density(d));
}

DensityMatrix pure_state(Rng& rng, int d) {
  return DensityMatrix(rng.haar_pure_state(d));
}

}  // namespace

TEST_CASE("d=2 basis is sigma x, y, z in that order") {
  const auto& b = gellmann_basis(2);
  REQUIRE(b.size() == 3);
  CHECK(oracle::max_abs_diff(b[0], oracle::pauli_x()) == 0.0);
  CHECK(oracle::max_abs_diff(b[1], oracle::pauli_y()) == 0.0);
  CHECK(oracle::max_abs_diff(b[2], oracle::pauli_z()) == 0.0);
}

TEST_CASE("basis sizes, ordering and invariants") {
  CHECK(gellmann_basis(3).size() == 8);
  CHECK(gellmann_basis(4).size() == 15);
  for (int d = 2; d <= 6; ++d) {
    const auto& b = gellmann_basis(d);
    CHECK(b.d == d);
    REQUIRE(b.size() == bloch_dim(d));
    double worst = 0.0;
    for (int i = 0; i < b.size(); ++i) {
      CHECK(is_hermitian(b[i]));
      CHECK(std::abs(b[i].trace()) < 1e-12);
      CHECK(std::abs(b[i].squaredNorm() - 2.0) < 1e-12);
      for (int j = 0; j < b.size(); ++j)
        worst = std::max(worst, std::abs(hs_inner(b[i], b[j]) - Complex(i == j ? 2.0 : 0.0)));
    }
    CHECK(worst < 1e-12);
    const int pairs = d * (d - 1) / 2;
    // Symmetric block: real, zero diagonal. Antisymmetric: imaginary.
    // Diagonal block: diagonal matrices.
    for (int i = 0; i < pairs; ++i) {
      CHECK(b[i].imag().cwiseAbs().maxCoeff() == 0.0);
      CHECK(b[i].diagonal().cwiseAbs().maxCoeff() == 0.0);
      CHECK(b[pairs + i].real().cwiseAbs().maxCoeff() == 0.0);
    }
    for (int i = 2 * pairs; i < b.size(); ++i) {
      ComplexMatrix off = b[i];
      off.diagonal().setZero();
      CHECK(off.cwiseAbs().maxCoeff() == 0.0);
    }
    // Sparse view agrees with the dense matrices.
    for (int i = 0; i < b.size(); ++i) {
      ComplexMatrix rebuilt = ComplexMatrix::Zero(d, d);
      for (const auto& e : b.sparse[i]) rebuilt(e.row, e.col) += e.value;
      CHECK(oracle::max_abs_diff(rebuilt, b[i]) == 0.0);
    }
  }
  CHECK(&gellmann_basis(3) == &gellmann_basis(3));
  CHECK_ERROR(gellmann_basis(1), ErrorCode::kInvalidArgument);
}

TEST_CASE("to_bloch examples") {
  for (int d = 2; d <= 5; ++d) {
    const BlochVector zero = to_bloch(DensityMatrix(identity(d) / static_cast<double>(d)));
    CHECK(zero.lambda().cwiseAbs().maxCoeff() < 1e-15);
  }
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  const BlochVector up = to_bloch(DensityMatrix(p0));
  CHECK(std::abs(up.lambda()(0)) < 1e-15);
  CHECK(std::abs(up.lambda()(1)) < 1e-15);
  CHECK(std::abs(up.lambda()(2) - 1.0) < 1e-15);
  Rng rng({21});
  for (int d = 2; d <= 6; ++d)
    for (int i = 0; i < 100; ++i)
      CHECK(std::abs(to_bloch(pure_state(rng, d)).norm() - bloch_radius(d)) < 1e-12);
}

TEST_CASE("from_bloch examples and affinity") {
  for (int d = 2; d <= 4; ++d) {
    const ComplexMatrix m = from_bloch(BlochVector(d, RealVector::Zero(bloch_dim(d))));
    CHECK(oracle::max_abs_diff(m, identity(d) / static_cast<double>(d)) < 1e-15);
  }
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  CHECK(oracle::max_abs_diff(from_bloch(BlochVector(2, RealVector::Unit(3, 2))), p0) <
        1e-15);
  Rng rng({22});
  for (int d = 2; d <= 4; ++d) {
    for (int i = 0; i < 50; ++i) {
      const double mu = rng.uniform();
      const RealVector a = RealVector::NullaryExpr(bloch_dim(d), [&] { return rng.normal(); });
      const RealVector b = RealVector::NullaryExpr(bloch_dim(d), [&] { return rng.normal(); });
      const ComplexMatrix lhs = from_bloch(BlochVector(d, mu * a + (1 - mu) * b));
      const ComplexMatrix rhs = mu * from_bloch(BlochVector(d, a)) +
                                (1 - mu) * from_bloch(BlochVector(d, b));
      CHECK(oracle::max_abs_diff(lhs, rhs) < 1e-12);
      CHECK(std::abs(lhs.trace() - Complex(1.0)) < 1e-12);
      CHECK(is_hermitian(lhs));
    }
  }
}

TEST_CASE("round trip on random density matrices") {
  Rng rng({23});
  for (int d = 2; d <= 5; ++d) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const DensityMatrix rho = random_state(rng, d);
      worst = std::max(worst, oracle::max_abs_diff(from_bloch(to_bloch(rho)), rho.matrix()));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("inner product and distance identities") {
  Rng rng({24});
  for (int d = 2; d <= 5; ++d) {
    double worst_inner = 0.0, worst_dist = 0.0;
    for (int i = 0; i < 500; ++i) {
      const DensityMatrix rho = random_state(rng, d);
      const DensityMatrix sigma = random_state(rng, d);
      const RealVector a = to_bloch(rho).lambda(), b = to_bloch(sigma).lambda();
      worst_inner = std::max(
          worst_inner, std::abs(hs_inner(sigma.matrix(), rho.matrix()).real() -
                                (1.0 / d + 0.5 * a.dot(b))));
      worst_dist = std::max(worst_dist, std::abs(hs_distance(rho.matrix(), sigma.matrix()) -
                                                 0.5 * (a - b).norm()));
    }
    CHECK(worst_inner < 1e-12);
    CHECK(worst_dist < 1e-12);
  }
}

TEST_CASE("bloch_radius and max_angle") {
  CHECK(bloch_radius(2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(bloch_radius(3) - std::sqrt(4.0 / 3.0)) < 1e-15);
  double previous = 0.0;
  for (int d = 2; d < 2000; d += 37) {
    CHECK(bloch_radius(d) > previous);
    CHECK(bloch_radius(d) < std::sqrt(2.0));
    previous = bloch_radius(d);
  }
  CHECK(std::sqrt(2.0) - bloch_radius(1000000) < 1e-6);
  CHECK(std::abs(max_angle(2) - std::numbers::pi) < 1e-15);
  CHECK(std::abs(max_angle(3) - 2.0 * std::numbers::pi / 3.0) < 1e-15);
  CHECK(std::abs(max_angle(1000000) - std::numbers::pi / 2.0) < 1e-5);
  CHECK_ERROR(bloch_radius(1), ErrorCode::kInvalidArgument);
  CHECK_ERROR(max_angle(1), ErrorCode::kInvalidArgument);
}

TEST_CASE("angle constraint between pure and arbitrary states") {
  Rng rng({25});
  for (int d = 2; d <= 5; ++d) {
    for (int i = 0; i < 300; ++i) {
      const RealVector s = to_bloch(pure_state(rng, d)).lambda();
      const RealVector r = to_bloch(random_state(rng, d)).lambda();
      CHECK(s.dot(r) >= -2.0 / d - 1e-10);
    }
  }
}

TEST_CASE("is_physical_bloch") {
  for (int d = 2; d <= 5; ++d)
    CHECK(is_physical_bloch(BlochVector(d, RealVector::Zero(bloch_dim(d)))).physical);
  Rng rng({26});
  // Inside the qubit unit ball every vector is a state.
  for (int i = 0; i < 500; ++i) {
    RealVector v = RealVector::NullaryExpr(3, [&] { return rng.normal(); });
    v *= std::cbrt(rng.uniform()) / v.norm();
    CHECK(is_physical_bloch(BlochVector(2, v)).physical);
  }
  // Just outside it is not.
  CHECK_FALSE(is_physical_bloch(BlochVector(2, RealVector::Unit(3, 0) * 1.01)).physical);
  // rho(-lambda) = (2/d) I - rho(lambda), eigenvalue 2/d - 1 on the pure direction.
  for (int d = 3; d <= 6; ++d) {
    for (int i = 0; i < 20; ++i) {
      const BlochVector lam = to_bloch(pure_state(rng, d));
      const PhysicalityCheck check = is_physical_bloch(BlochVector(d, -lam.lambda()));
      CHECK_FALSE(check.physical);
      CHECK(std::abs(check.min_eigenvalue - (2.0 / d - 1.0)) < 1e-10);
      CHECK(check.min_eigenvalue < -1e-6);
    }
  }
  const BlochVector lam3 = to_bloch(pure_state(rng, 3));
  CHECK(std::abs(is_physical_bloch(BlochVector(3, -lam3.lambda())).min_eigenvalue +
                 1.0 / 3.0) < 1e-10);
}

TEST_CASE("type invariants are enforced") {
  CHECK_ERROR(BlochVector(2, RealVector::Zero(4)), ErrorCode::kDimensionMismatch);
  RealVector bad = RealVector::Zero(3);
  bad(1) = std::nan("");
  CHECK_ERROR(BlochVector(2, bad), ErrorCode::kInvalidArgument);
  CHECK_ERROR(DensityMatrix(identity(2)), ErrorCode::kInvalidArgument);
  ComplexMatrix skew = identity(2) / 2.0;
  skew(0, 1) = 0.1;
  CHECK_ERROR(DensityMatrix(skew), ErrorCode::kNotHermitian);
  ComplexMatrix negative = ComplexMatrix::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_ERROR(DensityMatrix(negative), ErrorCode::kNotPositive);
  CHECK_ERROR(DensityMatrix(ComplexMatrix::Zero(2, 3)), ErrorCode::kDimensionMismatch);
  ComplexMatrix imaginary_coeff = ComplexMatrix::Zero(2, 2);
  imaginary_coeff(0, 1) = 1.0;
  CHECK_ERROR(bloch_components(imaginary_coeff), ErrorCode::kNotHermitian);
  Rng rng({27});
  CHECK(DensityMatrix(rng.haar_pure_state(3)).is_pure());
  CHECK_FALSE(DensityMatrix(identity(3) / 3.0).is_pure());
}
