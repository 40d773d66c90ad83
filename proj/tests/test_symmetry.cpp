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

#include "oracles.hpp"
#include "qbloch/symmetry.hpp"
#include "test_support.hpp"

using namespace qbloch;

namespace {

double max_action_gap(const KrausMap& a, const KrausMap& b, Rng& rng) {
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const ComplexMatrix x = rng.random_hermitian(a.d_in());
    worst = std::max(worst, oracle::max_abs_diff(a.apply(x), b.apply(x)));
  }
  return worst;
}

// rho -> rho (x) omega for a fixed state omega: not symmetric.
Cloner append_fixed(const ComplexMatrix& omega) {
  const int d = static_cast<int>(omega.rows());
  const Spectrum s = eig_hermitian(omega);
  std::vector<ComplexMatrix> kraus;
  for (int e = 0; e < d; ++e) {
    if (s.eigenvalues(e) < 1e-14) continue;
    const ComplexVector v = std::sqrt(s.eigenvalues(e)) * s.eigenvectors.col(e);
    kraus.push_back(oracle::kron(identity(d), ComplexMatrix(v)));
  }
  return Cloner(d, 1, 2, Channel(d, d * d, kraus));
}

Cloner broken_cloner(const Cloner& base, const ComplexMatrix& v) {
  const ComplexMatrix local = oracle::kron(v, identity(base.d()));
  std::vector<ComplexMatrix> kraus;
  for (const auto& k : base.channel().kraus()) kraus.push_back(local * k);
  return Cloner(base.d(), base.n(), base.m(),
                Channel(base.channel().d_in(), base.channel().d_out(), kraus));
}

}  // namespace

TEST_CASE("twirl fixes depolarizing channels") {
  for (int d = 2; d <= 3; ++d) {
    for (double xi : {0.0, 0.25, 0.9}) {
      const TwirlReport r = twirl_su(depolarizing(d, xi), 100, {1});
      CHECK(std::abs(r.xi_fit - xi) < 1e-12);
      CHECK(r.offdiag_norm < 1e-12);
      CHECK(r.c_norm < 1e-12);
      CHECK(r.n_samples == 100);
      CHECK(r.seed.value == 1);
    }
  }
  CHECK_ERROR(twirl_su(depolarizing(2, 0.5), 99, {1}), ErrorCode::kInvalidArgument);
  Rng rng({60});
  CHECK_ERROR(twirl_su(random_channel(2, 3, 2, rng), 100, {1}), ErrorCode::kDimensionMismatch);
}

TEST_CASE("twirl of a unitary channel converges to the trace formula") {
  const ComplexMatrix y = haar_unitary(2, {61});
  const int n = 1000000;
  const TwirlReport r = twirl_su(unitary_channel(y), n, {62});
  CHECK(std::abs(r.xi_fit - (std::norm(y.trace()) - 1.0) / 3.0) < 5.0 / std::sqrt(n));
  CHECK(r.offdiag_norm < 5.0 / std::sqrt(n));
  CHECK(r.c_norm < 5.0 / std::sqrt(n));
}

TEST_CASE("twirled random channels take the xi I form") {
  Rng rng({63});
  for (int d = 2; d <= 3; ++d) {
    for (int trial = 0; trial < 3; ++trial) {
      const Channel t = random_channel(d, d, 2, rng);
      const int n = 20000;
      const TwirlReport r = twirl_su(t, n, {64u + trial});
      const double tol = 5.0 / std::sqrt(n);
      CHECK(std::abs(r.xi_fit - affine_rep(t).M.trace() / bloch_dim(d)) < tol);
      CHECK(r.offdiag_norm < tol);
      CHECK(r.c_norm < tol);
      // Brute-force average of phi^T M phi over the same sample stream.
      Rng replay({64u + trial});
      const AffineRep rep = affine_rep(t);
      RealMatrix sum = RealMatrix::Zero(rep.M.rows(), rep.M.cols());
      for (int i = 0; i < 500; ++i) {
        const RealMatrix phi = unitary_rotation(replay.haar_unitary(d));
        sum += phi.transpose() * rep.M * phi;
      }
      const TwirlReport small = twirl_su(t, 500, {64u + trial});
      CHECK(((sum / 500.0) - small.averaged.M).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("twirl is deterministic for any worker count up to reassociation") {
  Rng rng({65});
  const AffineRep rep = affine_rep(random_channel(3, 3, 2, rng));
  const TwirlReport one = twirl_affine(rep, 5000, {66}, 1);
  const TwirlReport again = twirl_affine(rep, 5000, {66}, 1);
  CHECK((one.averaged.M.array() == again.averaged.M.array()).all());
  const TwirlReport many = twirl_affine(rep, 5000, {66}, 3);
  CHECK((one.averaged.M - many.averaged.M).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((one.averaged.c - many.averaged.c).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("covariance defect of twirled maps decays like n^-1/2") {
  Rng rng({67});
  const AffineRep rep = affine_rep(random_channel(2, 2, 2, rng));
  std::vector<double> logs_n, logs_defect;
  for (int n : {100, 1000, 10000}) {
    double mean = 0.0;
    for (std::uint64_t s = 0; s < 8; ++s)
      mean += covariance_defect(twirl_affine(rep, n, {700 + s}).averaged, 20, {800 + s});
    logs_n.push_back(std::log(n));
    logs_defect.push_back(std::log(mean / 8));
  }
  const double slope = (logs_defect[2] - logs_defect[0]) / (logs_n[2] - logs_n[0]);
  CHECK(std::abs(slope + 0.5) < 0.25);
}

TEST_CASE("Kraus-level twirl stays CPTP") {
  Rng rng({68});
  for (int d = 2; d <= 3; ++d) {
    const Channel t = twirl_su_kraus(random_channel(d, d, 2, rng), 300, {69});
    CHECK(t.trace_defect() < 1e-10);
    CHECK(kraus_to_choi(t).min_eigenvalue() > -1e-10);
    const TwirlReport r = twirl_su(t, 100, {70});
    CHECK(std::abs(r.xi_fit - affine_rep(t).M.trace() / bloch_dim(d)) < 1e-12);
  }
}

TEST_CASE("symmetrize_sm") {
  Rng rng({71});
  const Cloner w = werner_cloner(2, 1, 3);
  CHECK(max_action_gap(symmetrize_sm(w).channel().as_map(), w.channel().as_map(), rng) < 1e-12);
  CHECK(symmetry_defect(w, 10, {72}) < 1e-10);

  const ComplexMatrix omega = rng.random_density(2);
  const Cloner lopsided = append_fixed(omega);
  CHECK(symmetry_defect(lopsided, 10, {73}) > 0.01);
  const Cloner sym = symmetrize_sm(lopsided);
  CHECK(symmetry_defect(sym, 10, {74}) < 1e-10);
  for (int i = 0; i < 10; ++i) {
    const ComplexMatrix rho = rng.random_density(2);
    const ComplexMatrix expected =
        0.5 * (oracle::kron(rho, omega) + oracle::kron(omega, rho));
    CHECK(oracle::max_abs_diff(sym.channel().apply(rho), expected) < 1e-10);
  }
  // S_M invariance of the output on symmetric inputs.
  const Cloner w23 = symmetrize_sm(werner_cloner(2, 2, 3));
  for (int i = 0; i < 5; ++i) {
    const ComplexMatrix in = symmetric_input(DensityMatrix(rng.haar_pure_state(2)), 2).matrix();
    const ComplexMatrix out = w23.channel().apply(in);
    for (const auto& sigma : all_permutations(3)) {
      const ComplexMatrix u = permutation_operator(sigma, 2);
      CHECK(oracle::max_abs_diff(out, u * out * u.adjoint()) < 1e-10);
    }
  }
  CHECK_ERROR(symmetrize_sm(werner_cloner(2, 1, 6)), ErrorCode::kCapExceeded);
}

TEST_CASE("covariance_defect") {
  Rng rng({75});
  for (int d = 2; d <= 3; ++d) {
    CHECK(covariance_defect(depolarizing(d, 0.3), 20, {76}) < 1e-10);
    const ComplexMatrix y = rng.haar_unitary(d);
    CHECK(covariance_defect(unitary_channel(y), 20, {77}) > 0.05);
  }
  CHECK(covariance_defect(werner_cloner(2, 1, 2), 20, {78}) < 1e-10);
  CHECK(covariance_defect(werner_cloner(3, 1, 2), 10, {79}) < 1e-10);
  CHECK(covariance_defect(broken_cloner(werner_cloner(2, 1, 2), haar_unitary(2, {80})), 20,
                          {81}) > 0.05);
  CHECK(covariance_defect(affine_rep(depolarizing(3, 0.5)), 20, {82}) < 1e-12);
  CHECK_ERROR(covariance_defect(depolarizing(2, 0.3), 0, {1}), ErrorCode::kInvalidArgument);
}

TEST_CASE("dual_map") {
  Rng rng({83});
  for (int d = 2; d <= 3; ++d) {
    const ComplexMatrix u = rng.haar_unitary(d);
    CHECK(max_action_gap(dual_map(unitary_channel(u)), unitary_channel(u.adjoint()).as_map(),
                         rng) < 1e-12);
    const Channel dep = depolarizing(d, 0.6);
    CHECK(max_action_gap(dual_map(dep), dep.as_map(), rng) < 1e-12);
    for (int i = 0; i < 100; ++i) {
      const Channel t = random_channel(d, d + 1, 2, rng);
      const KrausMap td = dual_map(t);
      CHECK(td.d_in() == d + 1);
      CHECK(td.d_out() == d);
      ComplexMatrix a(d + 1, d + 1), b(d, d);
      for (int k = 0; k < a.size(); ++k) a.data()[k] = rng.complex_normal();
      for (int k = 0; k < b.size(); ++k) b.data()[k] = rng.complex_normal();
      CHECK(std::abs(hs_inner(a, t.apply(b)) - hs_inner(td.apply(a), b)) < 1e-10);
    }
    // Unital rather than trace preserving.
    const Channel t = random_channel(d, d, 3, rng);
    CHECK(oracle::max_abs_diff(dual_map(t).apply(identity(d)), identity(d)) < 1e-12);
  }
}

TEST_CASE("backmap_operators") {
  const auto& b2 = gellmann_basis(2);
  const auto f_id = backmap_operators(Cloner(2, 1, 1, identity_channel(2)));
  REQUIRE(f_id.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(oracle::max_abs_diff(f_id[i], b2[i]) < 1e-12);

  const auto f_w = backmap_operators(werner_cloner(2, 1, 2));
  for (int i = 0; i < 3; ++i) CHECK(oracle::max_abs_diff(f_w[i], (2.0 / 3.0) * b2[i]) < 1e-10);

  Rng rng({84});
  const Cloner lopsided = append_fixed(rng.random_density(2));
  for (const Cloner& c : {werner_cloner(2, 2, 3), werner_cloner(3, 1, 2), lopsided}) {
    const bool covariant = &c != &lopsided && covariance_defect(c, 5, {93}) < 1e-10;
    const auto f = backmap_operators(c);
    CHECK(f.size() == static_cast<std::size_t>(bloch_dim(c.d())));
    // tr F_i = (Delta_M(tau_i), T(I)), which vanishes once T(I) is invariant.
    const ComplexMatrix t_of_identity = c.channel().apply(identity(c.channel().d_in()));
    for (int i = 0; i < static_cast<int>(f.size()); ++i) {
      const ComplexMatrix& op = f[i];
      const Complex expected_trace = hs_inner(coproduct(i, c.d(), c.m()), t_of_identity);
      CHECK(std::abs(op.trace() - expected_trace) < 1e-10);
      if (covariant) CHECK(std::abs(op.trace()) < 1e-10);
      CHECK(oracle::max_abs_diff(op, op.adjoint()) < 1e-10);
      for (const auto& sigma : all_permutations(c.n())) {
        const ComplexMatrix u = permutation_operator(sigma, c.d());
        CHECK(oracle::max_abs_diff(u * op * u.adjoint(), op) < 1e-10);
      }
    }
    // Component identity: averaged clone Bloch component i equals (F_i, rho^N).
    for (int t = 0; t < 10; ++t) {
      const DensityMatrix rho(rng.haar_pure_state(c.d()));
      const ComplexMatrix in = oracle::kron_power(rho.matrix(), c.n());
      RealVector mean = RealVector::Zero(bloch_dim(c.d()));
      for (int k = 0; k < c.m(); ++k) mean += to_bloch(reduced_map(c, k, rho)).lambda();
      mean /= c.m();
      for (int i = 0; i < bloch_dim(c.d()); ++i)
        CHECK(std::abs(hs_inner(f[i], in).real() - mean(i)) < 1e-10);
    }
  }
}

TEST_CASE("covariance_residual") {
  const CovarianceResidual id = covariance_residual(Cloner(2, 1, 1, identity_channel(2)), 10, {85});
  CHECK(id.max < 1e-12);
  CHECK(id.full_space_max < 1e-12);
  const CovarianceResidual w = covariance_residual(werner_cloner(2, 1, 2), 10, {86});
  CHECK(w.norms.size() == 3);
  CHECK(w.max < 1e-8);
  const CovarianceResidual w23 = covariance_residual(werner_cloner(2, 2, 3), 10, {87});
  CHECK(w23.max < 1e-8);
  const CovarianceResidual broken =
      covariance_residual(broken_cloner(werner_cloner(2, 1, 2), haar_unitary(2, {88})), 10, {89});
  CHECK(broken.max > 0.1);
}

TEST_CASE("nonlinear covariant maps") {
  Rng rng({90});
  // Constant Gamma: the depolarizing action.
  const NonlinearCovariantMap constant(2, [](double) { return 0.35; });
  for (int d = 2; d <= 3; ++d) {
    const DensityMatrix rho(rng.random_density(d));
    CHECK(oracle::max_abs_diff(constant.apply(rho), depolarizing(d, 0.35).apply(rho.matrix())) <
          1e-12);
  }
  // Pure inputs: tr rho^n = 1, so the Bloch vector shrinks by gamma(1).
  const NonlinearCovariantMap half(3, [](double x) { return 0.5 * x; });
  for (int d = 2; d <= 3; ++d) {
    const DensityMatrix rho(rng.haar_pure_state(d));
    const RealVector in = to_bloch(rho).lambda();
    const RealVector out = bloch_components(half.apply(rho));
    CHECK((out - 0.5 * in).cwiseAbs().maxCoeff() < 1e-12);
  }
  const NonlinearCovariantMap square(2, [](double x) { return x * x; });
  const DensityMatrix mixed(rng.random_density(2));
  const double purity = (mixed.matrix() * mixed.matrix()).trace().real();
  CHECK(std::abs(square.gamma_of(mixed.matrix()) - purity * purity) < 1e-12);
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix rho(rng.random_density(2));
    const ComplexMatrix out = square.apply(rho);
    CHECK(std::abs(out.trace() - Complex(1.0)) < 1e-12);
    CHECK(eig_hermitian(out).min() > -1e-12);
  }
  CHECK(covariance_defect(square, 2, 50, {91}) < 1e-10);
  const AffinityWitness w = affinity_violation(square, 2, 50, {92});
  CHECK(w.gap > 1e-6);
  const ComplexMatrix mid = 0.5 * (w.rho1 + w.rho2);
  const double gap = hs_norm(square.apply(DensityMatrix(mid)) -
                             0.5 * square.apply(DensityMatrix(w.rho1)) -
                             0.5 * square.apply(DensityMatrix(w.rho2)));
  CHECK(std::abs(gap - w.gap) < 1e-12);

  CHECK_ERROR(NonlinearCovariantMap(1, [](double x) { return x; }), ErrorCode::kInvalidArgument);
  const NonlinearCovariantMap wild(2, [](double x) { return 2.0 * x; });
  CHECK_ERROR(wild.apply(DensityMatrix(rng.haar_pure_state(2))), ErrorCode::kInvalidArgument);
}
