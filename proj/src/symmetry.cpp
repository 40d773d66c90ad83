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

#include "qbloch/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "qbloch/error.hpp"

namespace qbloch {
namespace {

struct AffineSum {
  RealMatrix m;
  RealVector c;
};

AffineSum twirl_block(const AffineRep& rep, int count, RandomSeed seed) {
  const int d = rep.d_in;
  AffineSum sum{RealMatrix::Zero(rep.M.rows(), rep.M.cols()),
                RealVector::Zero(rep.c.size())};
  Rng rng(seed);
  for (int s = 0; s < count; ++s) {
    const RealMatrix rot = adjoint_rotation(rng.haar_unitary(d));
    sum.m.noalias() += rot.transpose() * rep.M * rot;
    sum.c.noalias() += rot.transpose() * rep.c;
  }
  return sum;
}

double max_abs_real(const RealMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_square_channel(const Channel& channel, const char* what) {
  if (channel.d_in() != channel.d_out()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": channel is not square");
  }
}

void require_samples(int n, int minimum, const char* what) {
  if (n < minimum) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + ": need at least " +
                    std::to_string(minimum) + " samples");
  }
}

}  // namespace

TwirlReport twirl_affine(const AffineRep& rep, int n_samples, RandomSeed seed,
                         int workers) {
  if (rep.d_in != rep.d_out) {
    throw Error(ErrorCode::kDimensionMismatch, "twirl: map is not square");
  }
  require_samples(n_samples, 1, "twirl");
  const int blocks = (n_samples + kTwirlBlockSize - 1) / kTwirlBlockSize;
  std::vector<AffineSum> partial(blocks);
  auto run_block = [&](int b) {
    const int count = std::min(kTwirlBlockSize, n_samples - b * kTwirlBlockSize);
    partial[b] = twirl_block(rep, count, RandomSeed{seed.value + b});
  };
  workers = std::clamp(workers, 1, blocks);
  if (workers == 1) {
    for (int b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int b = w; b < blocks; b += workers) run_block(b);
      });
    }
    for (auto& t : pool) t.join();
  }
  AffineSum total = std::move(partial[0]);
  for (int b = 1; b < blocks; ++b) {
    total.m += partial[b].m;
    total.c += partial[b].c;
  }
  TwirlReport report;
  report.averaged = AffineRep{rep.d_in, rep.d_out, total.m / n_samples,
                              total.c / n_samples};
  const auto dim = report.averaged.M.rows();
  report.xi_fit = report.averaged.M.trace() / static_cast<double>(dim);
  report.offdiag_norm = max_abs_real(report.averaged.M -
                                     report.xi_fit * RealMatrix::Identity(dim, dim));
  report.c_norm = report.averaged.c.norm();
  report.n_samples = n_samples;
  report.seed = seed;
  return report;
}

TwirlReport twirl_su(const Channel& channel, int n_samples, RandomSeed seed,
                     int workers) {
  require_square_channel(channel, "twirl_su");
  require_samples(n_samples, 100, "twirl_su");
  return twirl_affine(affine_rep(channel), n_samples, seed, workers);
}

Channel twirl_su_kraus(const Channel& channel, int n_samples, RandomSeed seed) {
  require_square_channel(channel, "twirl_su_kraus");
  require_samples(n_samples, 1, "twirl_su_kraus");
  Rng rng(seed);
  const double w = 1.0 / std::sqrt(static_cast<double>(n_samples));
  std::vector<ComplexMatrix> kraus;
  for (int s = 0; s < n_samples; ++s) {
    const ComplexMatrix u = rng.haar_unitary(channel.d_in());
    for (const auto& k : channel.kraus()) kraus.push_back(w * u.adjoint() * k * u);
  }
  return Channel(channel.d_in(), channel.d_out(), std::move(kraus));
}

Cloner twirl_cloner(const Cloner& cloner, int n_samples, RandomSeed seed) {
  require_samples(n_samples, 1, "twirl_cloner");
  Rng rng(seed);
  const double w = 1.0 / std::sqrt(static_cast<double>(n_samples));
  std::vector<ComplexMatrix> kraus;
  for (int s = 0; s < n_samples; ++s) {
    const ComplexMatrix x = rng.haar_unitary(cloner.d());
    const ComplexMatrix in = tensor_power(x, cloner.n());
    const ComplexMatrix out_adj = tensor_power(x, cloner.m()).adjoint();
    for (const auto& k : cloner.channel().kraus()) {
      kraus.push_back(w * out_adj * k * in);
    }
  }
  Channel joint(cloner.channel().d_in(), cloner.channel().d_out(),
                std::move(kraus));
  const std::size_t bound = static_cast<std::size_t>(joint.d_in()) * joint.d_out();
  if (joint.kraus().size() > bound) joint = choi_to_kraus(kraus_to_choi(joint));
  return Cloner(cloner.d(), cloner.n(), cloner.m(), std::move(joint));
}

Cloner symmetrize_sm(const Cloner& cloner) {
  if (cloner.m() > kMaxSymmetrizeClones) {
    throw Error(ErrorCode::kCapExceeded,
                "symmetrize_sm: M = " + std::to_string(cloner.m()) +
                    " exceeds the cap " + std::to_string(kMaxSymmetrizeClones));
  }
  const auto perms = all_permutations(cloner.m());
  const double w = 1.0 / std::sqrt(static_cast<double>(perms.size()));
  std::vector<ComplexMatrix> kraus;
  for (const auto& p : perms) {
    const ComplexMatrix u = permutation_operator(p, cloner.d());
    for (const auto& k : cloner.channel().kraus()) kraus.push_back(w * u * k);
  }
  Channel joint(cloner.channel().d_in(), cloner.channel().d_out(),
                std::move(kraus));
  const std::size_t bound = static_cast<std::size_t>(joint.d_in()) * joint.d_out();
  if (joint.kraus().size() > bound) joint = choi_to_kraus(kraus_to_choi(joint));
  return Cloner(cloner.d(), cloner.n(), cloner.m(), std::move(joint));
}

double covariance_defect(const Channel& channel, int n_samples, RandomSeed seed) {
  require_square_channel(channel, "covariance_defect");
  require_samples(n_samples, 1, "covariance_defect");
  Rng rng(seed);
  const int d = channel.d_in();
  double worst = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    const ComplexMatrix x = rng.haar_unitary(d);
    for (int r = 0; r < 2; ++r) {
      const ComplexMatrix rho = rng.random_density(d);
      const ComplexMatrix moved =
          x.adjoint() * channel.apply(ComplexMatrix(x * rho * x.adjoint())) * x;
      worst = std::max(worst, hs_norm(moved - channel.apply(rho)));
    }
  }
  return worst;
}

double covariance_defect(const Cloner& cloner, int n_samples, RandomSeed seed) {
  require_samples(n_samples, 1, "covariance_defect");
  Rng rng(seed);
  const int din = cloner.channel().d_in();
  double worst = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    const ComplexMatrix x = rng.haar_unitary(cloner.d());
    const ComplexMatrix xin = tensor_power(x, cloner.n());
    const ComplexMatrix xout = tensor_power(x, cloner.m());
    for (int r = 0; r < 2; ++r) {
      const ComplexMatrix rho = rng.random_density(din);
      const ComplexMatrix moved =
          xout.adjoint() *
          cloner.channel().apply(ComplexMatrix(xin * rho * xin.adjoint())) * xout;
      worst = std::max(worst, hs_norm(moved - cloner.channel().apply(rho)));
    }
  }
  return worst;
}

double covariance_defect(const AffineRep& rep, int n_samples, RandomSeed seed) {
  if (rep.d_in != rep.d_out) {
    throw Error(ErrorCode::kDimensionMismatch, "covariance_defect: map is not square");
  }
  require_samples(n_samples, 1, "covariance_defect");
  Rng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    const RealMatrix rot = adjoint_rotation(rng.haar_unitary(rep.d_in));
    const RealMatrix dm = rot.transpose() * rep.M * rot - rep.M;
    const RealVector dc = rot.transpose() * rep.c - rep.c;
    worst = std::max({worst, max_abs_real(dm),
                      dc.size() ? dc.cwiseAbs().maxCoeff() : 0.0});
  }
  return worst;
}

double symmetry_defect(const Cloner& cloner, int n_samples, RandomSeed seed) {
  require_samples(n_samples, 1, "symmetry_defect");
  Rng rng(seed);
  std::vector<ComplexMatrix> ops;
  for (const auto& p : all_permutations(cloner.m())) {
    ops.push_back(permutation_operator(p, cloner.d()));
  }
  double worst = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    const ComplexMatrix out =
        cloner.channel().apply(rng.random_density(cloner.channel().d_in()));
    for (const auto& u : ops) {
      worst = std::max(worst, hs_norm(out - u * out * u.adjoint()));
    }
  }
  return worst;
}

KrausMap dual_map(const Channel& channel) {
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(channel.kraus().size());
  for (const auto& k : channel.kraus()) kraus.push_back(k.adjoint());
  return KrausMap(channel.d_out(), channel.d_in(), std::move(kraus));
}

std::vector<ComplexMatrix> backmap_operators(const Cloner& cloner) {
  const KrausMap dual = dual_map(cloner.channel());
  std::vector<ComplexMatrix> input_perms;
  for (const auto& p : all_permutations(cloner.n())) {
    input_perms.push_back(permutation_operator(p, cloner.d()));
  }
  const int dim = bloch_dim(cloner.d());
  std::vector<ComplexMatrix> out;
  out.reserve(dim);
  for (int i = 0; i < dim; ++i) {
    const ComplexMatrix f = dual.apply(coproduct(i, cloner.d(), cloner.m()));
    ComplexMatrix sym = ComplexMatrix::Zero(f.rows(), f.cols());
    for (const auto& u : input_perms) sym += u.adjoint() * f * u;
    sym /= static_cast<double>(input_perms.size());
    out.push_back((sym + sym.adjoint()) / 2.0);
  }
  return out;
}

CovarianceResidual covariance_residual(const Cloner& cloner, int n_samples,
                                       RandomSeed seed) {
  require_samples(n_samples, 1, "covariance_residual");
  const auto f = backmap_operators(cloner);
  const int dim = static_cast<int>(f.size());
  const ComplexMatrix sym = symmetric_projector(cloner.d(), cloner.n());
  CovarianceResidual result;
  result.norms.assign(dim, 0.0);
  result.full_space_norms.assign(dim, 0.0);
  Rng rng(seed);
  for (int s = 0; s < n_samples; ++s) {
    const ComplexMatrix u = rng.haar_unitary(cloner.d());
    const RealMatrix rot = adjoint_rotation(u);
    const ComplexMatrix un = tensor_power(u, cloner.n());
    for (int i = 0; i < dim; ++i) {
      ComplexMatrix a = un * f[i] * un.adjoint();
      for (int j = 0; j < dim; ++j) a -= rot(j, i) * f[j];
      result.full_space_norms[i] = std::max(result.full_space_norms[i], hs_norm(a));
      result.norms[i] = std::max(result.norms[i], hs_norm(sym * a * sym));
    }
  }
  result.max = *std::max_element(result.norms.begin(), result.norms.end());
  result.full_space_max = *std::max_element(result.full_space_norms.begin(),
                                            result.full_space_norms.end());
  return result;
}

NonlinearCovariantMap::NonlinearCovariantMap(int n,
                                             std::function<double(double)> gamma)
    : n_(n), gamma_(std::move(gamma)) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "NonlinearCovariantMap: n < 2");
  }
  if (!gamma_) {
    throw Error(ErrorCode::kInvalidArgument, "NonlinearCovariantMap: empty gamma");
  }
}

double NonlinearCovariantMap::gamma_of(const ComplexMatrix& rho) const {
  ComplexMatrix power = rho;
  for (int k = 1; k < n_; ++k) power = power * rho;
  // tr rho^n lies in (0, 1] for states; clamp away roundoff above 1.
  const double moment = std::min(power.trace().real(), 1.0);
  const double g = gamma_(moment);
  if (!(g >= 0.0 && g <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "NonlinearCovariantMap: gamma(" + std::to_string(moment) +
                    ") = " + std::to_string(g) + " outside [0, 1]");
  }
  return g;
}

ComplexMatrix NonlinearCovariantMap::apply(const DensityMatrix& rho) const {
  const int d = rho.dim();
  const double g = gamma_of(rho.matrix());
  return (1.0 - g) * identity(d) / static_cast<double>(d) + g * rho.matrix();
}

double covariance_defect(const NonlinearCovariantMap& map, int d, int n_samples,
                         RandomSeed seed) {
  require_samples(n_samples, 1, "covariance_defect");
  Rng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    const ComplexMatrix x = rng.haar_unitary(d);
    const DensityMatrix rho(rng.random_density(d));
    const ComplexMatrix rotated = x * rho.matrix() * x.adjoint();
    const DensityMatrix moved = DensityMatrix::trusted((rotated + rotated.adjoint()) / 2.0);
    const ComplexMatrix lhs = x.adjoint() * map.apply(moved) * x;
    worst = std::max(worst, hs_norm(lhs - map.apply(rho)));
  }
  return worst;
}

AffinityWitness affinity_violation(const NonlinearCovariantMap& map, int d,
                                   int n_pairs, RandomSeed seed) {
  require_samples(n_pairs, 1, "affinity_violation");
  Rng rng(seed);
  AffinityWitness best;
  for (int s = 0; s < n_pairs; ++s) {
    const ComplexMatrix r1 = rng.haar_pure_state(d);
    const ComplexMatrix r2 = rng.haar_pure_state(d);
    const ComplexMatrix mid = (r1 + r2) / 2.0;
    const ComplexMatrix lhs = map.apply(DensityMatrix::trusted(mid));
    const ComplexMatrix rhs = (map.apply(DensityMatrix::trusted(r1)) +
                               map.apply(DensityMatrix::trusted(r2))) / 2.0;
    const double gap = hs_norm(lhs - rhs);
    if (gap > best.gap) best = {r1, r2, gap};
  }
  return best;
}

}  // namespace qbloch
