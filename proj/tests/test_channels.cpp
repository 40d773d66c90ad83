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
#include "qbloch/channels.hpp"
#include "test_support.hpp"

using namespace qbloch;

namespace {

// Brute-force sum_k K rho K^dagger.
ComplexMatrix apply_oracle(const std::vector<ComplexMatrix>& kraus,
                           const ComplexMatrix& rho) {
  ComplexMatrix out = ComplexMatrix::Zero(kraus[0].rows(), kraus[0].rows());
  for (const auto& k : kraus) out += k * rho * k.adjoint();
  return out;
}

double max_action_gap(const Channel& a, const Channel& b, Rng& rng, int trials = 20) {
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const ComplexMatrix rho = rng.random_density(a.d_in());
    worst = std::max(worst, oracle::max_abs_diff(a.apply(rho), b.apply(rho)));
  }
  return worst;
}

}  // namespace

TEST_CASE("apply examples") {
  Rng rng({31});
  for (int d = 2; d <= 4; ++d) {
    const DensityMatrix rho(rng.random_density(d));
    CHECK(oracle::max_abs_diff(identity_channel(d).apply(rho).matrix(), rho.matrix()) <
          1e-15);
    for (double xi : {-1.0 / (d * d - 1), 0.0, 0.3, 2.0 / 3.0, 1.0}) {
      const ComplexMatrix expected =
          (1 - xi) * identity(d) / static_cast<double>(d) + xi * rho.matrix();
      CHECK(oracle::max_abs_diff(depolarizing(d, xi).apply(rho).matrix(), expected) < 1e-12);
    }
    const ComplexMatrix x = rng.haar_unitary(d);
    CHECK(oracle::max_abs_diff(unitary_channel(x).apply(rho).matrix(),
                               x * rho.matrix() * x.adjoint()) < 1e-12);
    CHECK_ERROR(identity_channel(d).apply(DensityMatrix(identity(d + 1) / (d + 1.0))),
                ErrorCode::kDimensionMismatch);
  }
  const Channel t = random_channel(3, 2, 4, rng);
  const ComplexMatrix rho = rng.random_density(3);
  CHECK(oracle::max_abs_diff(apply(t, DensityMatrix(rho)).matrix(),
                             apply_oracle(t.kraus(), rho)) < 1e-14);
}

TEST_CASE("Channel construction validates trace preservation and shapes") {
  CHECK_ERROR(Channel(2, 2, {}), ErrorCode::kInvalidArgument);
  CHECK_ERROR(Channel(2, 2, {2.0 * identity(2)}), ErrorCode::kNotTracePreserving);
  CHECK_ERROR(Channel(2, 3, {identity(2)}), ErrorCode::kDimensionMismatch);
  CHECK_ERROR(KrausMap(2, 2, {identity(3)}), ErrorCode::kDimensionMismatch);
  Rng rng({32});
  const Channel t = random_channel(2, 3, 3, rng);
  CHECK(t.trace_defect() < 1e-12);
  CHECK(t.kraus().size() == 3);
  CHECK(t.kraus()[0].rows() == 3);
  CHECK(t.kraus()[0].cols() == 2);
}

TEST_CASE("Choi examples") {
  for (int d = 2; d <= 4; ++d) {
    ComplexVector omega = ComplexVector::Zero(d * d);
    for (int i = 0; i < d; ++i) omega(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
    CHECK(oracle::max_abs_diff(kraus_to_choi(identity_channel(d)).matrix(), outer(omega)) <
          1e-15);
    const ChoiMatrix full = kraus_to_choi(depolarizing(d, 0.0));
    CHECK(oracle::max_abs_diff(full.matrix(), identity(d * d) / static_cast<double>(d * d)) <
          1e-12);
    CHECK(oracle::max_abs_diff(
              oracle::partial_trace(full.matrix(), {d, d}, 1), identity(d) / static_cast<double>(d)) <
          1e-12);
  }
}

TEST_CASE("Choi to Kraus round trip preserves the action") {
  Rng rng({33});
  for (int trial = 0; trial < 30; ++trial) {
    const int d_in = 2 + trial % 3, d_out = 2 + (trial / 3) % 3;
    const int rank = std::max(1 + trial % 5, (d_in + d_out - 1) / d_out);
    const Channel t = random_channel(d_in, d_out, rank, rng);
    const ChoiMatrix j = kraus_to_choi(t);
    CHECK(j.min_eigenvalue() > -1e-12);
    CHECK(oracle::max_abs_diff(j.matrix(), choi_of(t.as_map())) < 1e-15);
    const Channel back = choi_to_kraus(j);
    CHECK(back.kraus().size() <= static_cast<std::size_t>(d_in * d_out));
    // Choi rank is generically min(rank, d_in * d_out).
    CHECK(back.kraus().size() == static_cast<std::size_t>(std::min(rank, d_in * d_out)));
    CHECK(max_action_gap(t, back, rng) < 1e-10);
  }
}

TEST_CASE("ChoiMatrix validation") {
  CHECK_ERROR(choi_to_kraus(ChoiMatrix(2, 2, depolarizing_choi_matrix(2, -0.4))),
              ErrorCode::kNotPositive);
  try {
    ChoiMatrix bad(2, 2, depolarizing_choi_matrix(2, -0.4));
    FAIL("expected NotPositiveError");
  } catch (const NotPositiveError& e) {
    // Singlet weight of the Choi matrix: (1 - xi)/4 + xi = 1/4 + 3 xi / 4.
    CHECK(std::abs(e.eigenvalue() - (0.25 - 0.3)) < 1e-12);
  }
  ComplexMatrix wrong_trace = identity(4) / 2.0;
  CHECK_ERROR(ChoiMatrix(2, 2, wrong_trace), ErrorCode::kNotTracePreserving);
  ComplexMatrix skew = identity(4) / 4.0;
  skew(0, 1) = 0.1;
  CHECK_ERROR(ChoiMatrix(2, 2, skew), ErrorCode::kNotHermitian);
  CHECK_ERROR(ChoiMatrix(2, 3, identity(4) / 4.0), ErrorCode::kDimensionMismatch);
}

TEST_CASE("affine_rep examples") {
  for (int d = 2; d <= 4; ++d) {
    const AffineRep id = affine_rep(identity_channel(d));
    CHECK((id.M - RealMatrix::Identity(bloch_dim(d), bloch_dim(d))).cwiseAbs().maxCoeff() <
          1e-15);
    CHECK(id.c.cwiseAbs().maxCoeff() < 1e-15);
    const AffineRep dep = affine_rep(depolarizing(d, 0.37));
    CHECK((dep.M - 0.37 * RealMatrix::Identity(bloch_dim(d), bloch_dim(d))).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK(dep.c.cwiseAbs().maxCoeff() < 1e-12);
  }
  // exp(-i pi sigma_z / 4) rotates the Bloch ball by pi/2 about z:
  // x -> y, y -> -x, z -> z.
  ComplexMatrix x = ComplexMatrix::Zero(2, 2);
  x(0, 0) = std::exp(Complex(0, -std::numbers::pi / 4));
  x(1, 1) = std::exp(Complex(0, std::numbers::pi / 4));
  RealMatrix expected(3, 3);
  expected << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  const AffineRep r = affine_rep(unitary_channel(x));
  CHECK((r.M - expected).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(r.c.cwiseAbs().maxCoeff() < 1e-15);
  Rng rng({34});
  CHECK_ERROR(affine_rep(random_channel(2, 3, 2, rng)), ErrorCode::kDimensionMismatch);
}

TEST_CASE("affine_rep consistency on random channels and states") {
  Rng rng({35});
  for (int d = 2; d <= 4; ++d) {
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const Channel t = random_channel(d, d, 1 + trial % 4, rng);
      const AffineRep rep = affine_rep(t);
      const DensityMatrix rho(rng.random_density(d));
      const RealVector predicted = rep.apply(to_bloch(rho).lambda());
      const RealVector actual = bloch_components(t.apply(rho.matrix()));
      worst = std::max(worst, (predicted - actual).cwiseAbs().maxCoeff());
      const ComplexMatrix rebuilt = from_bloch(BlochVector(d, predicted));
      worst = std::max(worst, oracle::max_abs_diff(rebuilt, t.apply(rho.matrix())));
      // Oracle for the offset: c is the Bloch vector of T(I/d).
      const RealVector c_oracle =
          to_bloch(DensityMatrix::trusted(t.apply(identity(d) / static_cast<double>(d)))).lambda();
      worst = std::max(worst, (rep.c - c_oracle).cwiseAbs().maxCoeff());
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("unitary_rotation examples") {
  for (int d = 2; d <= 4; ++d)
    CHECK((unitary_rotation(identity(d)) - RealMatrix::Identity(bloch_dim(d), bloch_dim(d)))
              .cwiseAbs()
              .maxCoeff() < 1e-15);
  const ComplexMatrix isx = Complex(0, 1) * oracle::pauli_x();
  RealMatrix expected = RealMatrix::Zero(3, 3);
  expected.diagonal() << 1, -1, -1;
  CHECK((unitary_rotation(isx) - expected).cwiseAbs().maxCoeff() < 1e-15);
  ComplexMatrix phase = identity(2);
  phase(1, 1) = Complex(0, 1);
  CHECK_ERROR(unitary_rotation(phase), ErrorCode::kInvalidArgument);
  CHECK_ERROR(unitary_rotation(2.0 * identity(2)), ErrorCode::kInvalidArgument);
  CHECK_ERROR(unitary_rotation(ComplexMatrix::Zero(2, 3)), ErrorCode::kDimensionMismatch);
}

TEST_CASE("unitary_rotation lands in SO(D) and is a homomorphism") {
  Rng rng({36});
  for (int d = 2; d <= 4; ++d) {
    const int dd = bloch_dim(d);
    for (int i = 0; i < 100; ++i) {
      const ComplexMatrix x = rng.haar_unitary(d);
      const ComplexMatrix y = rng.haar_unitary(d);
      const RealMatrix fx = unitary_rotation(x), fy = unitary_rotation(y);
      CHECK((fx.transpose() * fx - RealMatrix::Identity(dd, dd)).cwiseAbs().maxCoeff() < 1e-10);
      CHECK(std::abs(fx.determinant() - 1.0) < 1e-10);
      CHECK((unitary_rotation(x * y) - fx * fy).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((adjoint_rotation(x) - fx).cwiseAbs().maxCoeff() < 1e-12);
      // Entry oracle straight from the definition.
      const auto& b = gellmann_basis(d);
      const int i0 = i % dd, j0 = (i * 7) % dd;
      const double entry = 0.5 * hs_inner(b[j0], x * b[i0] * x.adjoint()).real();
      CHECK(std::abs(fx(j0, i0) - entry) < 1e-12);
    }
  }
}

TEST_CASE("for d >= 3 some rotation is not an adjoint image") {
  // -I is in SO(D) for even D = 8 and sends a pure Bloch vector outside the
  // state space, while every adjoint image preserves physicality.
  Rng rng({37});
  const int d = 3;
  const RealMatrix minus = -RealMatrix::Identity(bloch_dim(d), bloch_dim(d));
  CHECK(std::abs(minus.determinant() - 1.0) < 1e-15);
  const RealVector lam = to_bloch(DensityMatrix(rng.haar_pure_state(d))).lambda();
  CHECK_FALSE(is_physical_bloch(BlochVector(d, minus * lam)).physical);
  for (int i = 0; i < 20; ++i)
    CHECK(is_physical_bloch(BlochVector(d, unitary_rotation(rng.haar_unitary(d)) * lam))
              .physical);
}

TEST_CASE("depolarizing CP range") {
  CHECK_ERROR(depolarizing(2, -0.4), ErrorCode::kNotPositive);
  CHECK_ERROR(depolarizing(2, 1.0 + 1e-6), ErrorCode::kNotPositive);
  CHECK_ERROR(depolarizing(1, 0.5), ErrorCode::kInvalidArgument);
  CHECK_NOTHROW(depolarizing(2, -1.0 / 3.0));
  for (int d = 2; d <= 4; ++d) {
    // Bisect the sign change of the minimum Choi eigenvalue.
    double lo = -1.0, hi = 0.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (eig_hermitian(depolarizing_choi_matrix(d, mid)).min() < 0.0) lo = mid; else hi = mid;
    }
    CHECK(std::abs(0.5 * (lo + hi) + 1.0 / (d * d - 1)) < 1e-9);
  }
}

TEST_CASE("conjugate_action") {
  Rng rng({38});
  for (int d = 2; d <= 3; ++d) {
    const Channel t = random_channel(d, d, 3, rng);
    CHECK(max_action_gap(conjugate_action(t, identity(d)), t, rng) < 1e-14);
    const Channel dep = depolarizing(d, 0.45);
    const ComplexMatrix u = rng.haar_unitary(d), v = rng.haar_unitary(d);
    CHECK(max_action_gap(conjugate_action(dep, u), dep, rng) < 1e-12);
    CHECK(max_action_gap(conjugate_action(conjugate_action(t, u), v),
                         conjugate_action(t, u * v), rng) < 1e-10);
    const ComplexMatrix rho = rng.random_density(d);
    CHECK(oracle::max_abs_diff(conjugate_action(t, u).apply(rho),
                               u.adjoint() * t.apply(u * rho * u.adjoint()) * u) < 1e-12);
    CHECK_ERROR(conjugate_action(t, identity(d + 1)), ErrorCode::kDimensionMismatch);
  }
}

TEST_CASE("compose and mix") {
  Rng rng({39});
  const Channel a = random_channel(2, 3, 2, rng);
  const Channel b = random_channel(3, 2, 3, rng);
  const Channel ba = compose(b, a);
  CHECK(ba.d_in() == 2);
  CHECK(ba.d_out() == 2);
  const ComplexMatrix rho = rng.random_density(2);
  CHECK(oracle::max_abs_diff(ba.apply(rho), b.apply(a.apply(rho))) < 1e-12);
  CHECK_ERROR(compose(a, a), ErrorCode::kDimensionMismatch);

  const Channel c = random_channel(2, 2, 2, rng), e = random_channel(2, 2, 3, rng);
  const std::vector<Channel> parts{c, e};
  const std::vector<double> w{0.25, 0.75};
  const Channel m = mix(parts, w);
  CHECK(m.trace_defect() < 1e-12);
  CHECK(oracle::max_abs_diff(m.apply(rho), 0.25 * c.apply(rho) + 0.75 * e.apply(rho)) < 1e-12);
  const std::vector<double> bad_w{0.5, 0.6};
  CHECK_ERROR(mix(parts, bad_w), ErrorCode::kInvalidArgument);
  const std::vector<double> negative_w{-0.5, 1.5};
  CHECK_ERROR(mix(parts, negative_w), ErrorCode::kInvalidArgument);
}
