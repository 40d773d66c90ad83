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

#include "qbloch/channels.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "qbloch/error.hpp"

namespace qbloch {

KrausMap::KrausMap(int d_in, int d_out, std::vector<ComplexMatrix> kraus)
    : d_in_(d_in), d_out_(d_out), kraus_(std::move(kraus)) {
  if (d_in < 1 || d_out < 1) {
    throw Error(ErrorCode::kInvalidArgument, "KrausMap: dimensions must be >= 1");
  }
  if (kraus_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "KrausMap: empty Kraus list");
  }
  for (const auto& k : kraus_) {
    if (k.rows() != d_out || k.cols() != d_in) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "KrausMap: Kraus operator is " + std::to_string(k.rows()) +
                      "x" + std::to_string(k.cols()) + ", expected " +
                      std::to_string(d_out) + "x" + std::to_string(d_in));
    }
    if (!k.allFinite()) {
      throw Error(ErrorCode::kInvalidArgument, "KrausMap: non-finite entry");
    }
  }
}

ComplexMatrix KrausMap::apply(const ComplexMatrix& x) const {
  if (x.rows() != d_in_ || x.cols() != d_in_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "apply: input is " + std::to_string(x.rows()) + "x" +
                    std::to_string(x.cols()) + ", channel expects " +
                    std::to_string(d_in_));
  }
  ComplexMatrix out = ComplexMatrix::Zero(d_out_, d_out_);
  for (const auto& k : kraus_) out.noalias() += k * x * k.adjoint();
  return out;
}

Channel::Channel(int d_in, int d_out, std::vector<ComplexMatrix> kraus)
    : map_(d_in, d_out, std::move(kraus)) {
  const double defect = trace_defect();
  if (defect > kTraceTolerance) {
    throw Error(ErrorCode::kNotTracePreserving,
                "Channel: sum K^dagger K deviates from identity by " +
                    std::to_string(defect));
  }
}

double Channel::trace_defect() const {
  ComplexMatrix s = ComplexMatrix::Zero(d_in(), d_in());
  for (const auto& k : kraus()) s.noalias() += k.adjoint() * k;
  return max_abs(s - identity(d_in()));
}

DensityMatrix Channel::apply(const DensityMatrix& rho) const {
  return DensityMatrix::trusted(map_.apply(rho.matrix()));
}

DensityMatrix apply(const Channel& channel, const DensityMatrix& rho) {
  return channel.apply(rho);
}

ChoiMatrix::ChoiMatrix(int d_in, int d_out, ComplexMatrix matrix)
    : d_in_(d_in), d_out_(d_out), matrix_(std::move(matrix)) {
  if (matrix_.rows() != static_cast<Eigen::Index>(d_in) * d_out) {
    throw Error(ErrorCode::kDimensionMismatch,
                "ChoiMatrix: dimension does not equal d_in * d_out");
  }
  require_hermitian(matrix_, "ChoiMatrix");
  const double lo = min_eigenvalue();
  if (lo < -kPositiveTolerance) {
    throw NotPositiveError(
        "ChoiMatrix: negative eigenvalue " + std::to_string(lo), lo);
  }
  const int dims[2] = {d_out, d_in};
  const ComplexMatrix reduced = partial_trace(matrix_, dims, 1);
  const double dev = max_abs(reduced - identity(d_in) / double(d_in));
  if (dev > kTraceTolerance) {
    throw Error(ErrorCode::kNotTracePreserving,
                "ChoiMatrix: tr_out J deviates from I/d_in by " +
                    std::to_string(dev));
  }
}

double ChoiMatrix::min_eigenvalue() const {
  return eig_hermitian(matrix_).min();
}

ComplexMatrix choi_of(const KrausMap& map) {
  const Eigen::Index n = static_cast<Eigen::Index>(map.d_in()) * map.d_out();
  ComplexMatrix j = ComplexMatrix::Zero(n, n);
  for (const auto& k : map.kraus()) {
    // Row-major storage: the flat index of K(a, i) is a * d_in + i.
    const Eigen::Map<const ComplexVector> v(k.data(), n);
    j.noalias() += v * v.adjoint();
  }
  j /= static_cast<double>(map.d_in());
  return (j + j.adjoint()) / 2.0;
}

ChoiMatrix kraus_to_choi(const Channel& channel) {
  return ChoiMatrix(channel.d_in(), channel.d_out(), choi_of(channel.as_map()));
}

Channel choi_to_kraus(const ChoiMatrix& choi) {
  const Spectrum s = eig_hermitian(choi.matrix());
  std::vector<ComplexMatrix> kraus;
  const int d_in = choi.d_in();
  const int d_out = choi.d_out();
  for (Eigen::Index k = s.eigenvalues.size() - 1; k >= 0; --k) {
    const double mu = s.eigenvalues(k);
    if (mu <= kKrausRankCutoff) break;
    ComplexMatrix op(d_out, d_in);
    const double scale = std::sqrt(mu * d_in);
    for (int a = 0; a < d_out; ++a) {
      for (int i = 0; i < d_in; ++i) {
        op(a, i) = scale * s.eigenvectors(a * d_in + i, k);
      }
    }
    kraus.push_back(std::move(op));
  }
  return Channel(d_in, d_out, std::move(kraus));
}

AffineRep affine_rep(const Channel& channel) {
  if (channel.d_in() != channel.d_out()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "affine_rep: channel is not square");
  }
  const int d = channel.d_in();
  const GellMannBasis& basis = gellmann_basis(d);
  const int dim = basis.size();
  AffineRep rep{d, d, RealMatrix(dim, dim), RealVector(dim)};
  for (int i = 0; i < dim; ++i) {
    rep.M.col(i) = 0.5 * bloch_components(channel.apply(basis[i]));
  }
  rep.c = bloch_components(channel.apply(identity(d) / double(d)));
  return rep;
}

void require_unitary(const ComplexMatrix& u, const char* what) {
  require_square(u, what);
  const double dev = max_abs(u * u.adjoint() - identity(int(u.rows())));
  if (dev > 1e-10) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + ": not unitary (deviation " +
                    std::to_string(dev) + ")");
  }
}

RealMatrix adjoint_rotation(const ComplexMatrix& x) {
  const int d = static_cast<int>(x.rows());
  const GellMannBasis& basis = gellmann_basis(d);
  const int dim = basis.size();
  RealMatrix out(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const auto& src = basis.sparse[i];
    for (int j = 0; j < dim; ++j) {
      // 1/2 (tau_j, X tau_i X^dagger) with B_rc = sum_e v_e X(r, e.r) conj(X(c, e.c))
      Complex acc = 0.0;
      for (const auto& t : basis.sparse[j]) {
        Complex b = 0.0;
        for (const auto& e : src) {
          b += e.value * x(t.row, e.row) * std::conj(x(t.col, e.col));
        }
        acc += t.value * std::conj(b);
      }
      out(j, i) = 0.5 * acc.real();
    }
  }
  return out;
}

RealMatrix unitary_rotation(const ComplexMatrix& x) {
  require_unitary(x, "unitary_rotation");
  const double det_dev = std::abs(x.determinant() - 1.0);
  if (det_dev > 1e-10) {
    throw Error(ErrorCode::kInvalidArgument,
                "unitary_rotation: determinant differs from 1 by " +
                    std::to_string(det_dev));
  }
  return adjoint_rotation(x);
}

Channel identity_channel(int d) { return Channel(d, d, {identity(d)}); }

Channel unitary_channel(const ComplexMatrix& u) {
  require_unitary(u, "unitary_channel");
  const int d = static_cast<int>(u.rows());
  return Channel(d, d, {u});
}

ComplexMatrix depolarizing_choi_matrix(int d, double xi) {
  if (d < 2) throw Error(ErrorCode::kInvalidArgument, "depolarizing: d < 2");
  const int n = d * d;
  ComplexVector omega = ComplexVector::Zero(n);
  for (int i = 0; i < d; ++i) omega(i * d + i) = 1.0 / std::sqrt(double(d));
  return xi * outer(omega) + (1.0 - xi) / n * identity(n);
}

Channel depolarizing(int d, double xi) {
  if (!std::isfinite(xi)) {
    throw Error(ErrorCode::kInvalidArgument, "depolarizing: non-finite xi");
  }
  // ChoiMatrix rejects xi < -1/(d^2-1); xi > 1 is caught on the Omega
  // complement where the eigenvalue is (1 - xi)/d^2.
  return choi_to_kraus(ChoiMatrix(d, d, depolarizing_choi_matrix(d, xi)));
}

Channel conjugate_action(const Channel& channel, const ComplexMatrix& u) {
  if (channel.d_in() != channel.d_out() || u.rows() != channel.d_in()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "conjugate_action: unitary and channel dimensions differ");
  }
  require_unitary(u, "conjugate_action");
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(channel.kraus().size());
  for (const auto& k : channel.kraus()) kraus.push_back(u.adjoint() * k * u);
  return Channel(channel.d_in(), channel.d_out(), std::move(kraus));
}

Channel compose(const Channel& second, const Channel& first) {
  if (first.d_out() != second.d_in()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "compose: output of the first map does not match input of "
                "the second");
  }
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(first.kraus().size() * second.kraus().size());
  for (const auto& b : second.kraus()) {
    for (const auto& a : first.kraus()) kraus.push_back(b * a);
  }
  return Channel(first.d_in(), second.d_out(), std::move(kraus));
}

Channel mix(std::span<const Channel> channels,
            std::span<const double> weights) {
  if (channels.empty() || channels.size() != weights.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "mix: need one weight per channel");
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::kInvalidArgument, "mix: weights must sum to 1");
  }
  std::vector<ComplexMatrix> kraus;
  for (std::size_t k = 0; k < channels.size(); ++k) {
    if (weights[k] < 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "mix: negative weight");
    }
    if (channels[k].d_in() != channels[0].d_in() ||
        channels[k].d_out() != channels[0].d_out()) {
      throw Error(ErrorCode::kDimensionMismatch, "mix: dimensions differ");
    }
    if (weights[k] == 0.0) continue;
    const double s = std::sqrt(weights[k]);
    for (const auto& op : channels[k].kraus()) kraus.push_back(s * op);
  }
  return Channel(channels[0].d_in(), channels[0].d_out(), std::move(kraus));
}

Channel random_channel(int d_in, int d_out, int rank, Rng& rng) {
  if (rank < 1) throw Error(ErrorCode::kInvalidArgument, "random_channel: rank < 1");
  const int n = d_out * rank;
  if (n < d_in) {
    throw Error(ErrorCode::kInvalidArgument,
                "random_channel: d_out * rank must be >= d_in");
  }
  const ComplexMatrix u = rng.haar_unitary(n);
  std::vector<ComplexMatrix> kraus;
  for (int k = 0; k < rank; ++k) {
    kraus.push_back(u.block(k * d_out, 0, d_out, d_in));
  }
  return Channel(d_in, d_out, std::move(kraus));
}

}  // namespace qbloch
