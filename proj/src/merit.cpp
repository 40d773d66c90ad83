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

#include "qbloch/merit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qbloch/error.hpp"

namespace qbloch {
namespace {

void require_pure(const DensityMatrix& rho, const char* what) {
  if (!rho.is_pure()) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + ": input state is not pure");
  }
}

ComplexVector from_real(const RealVector& x, int d) {
  ComplexVector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(x(2 * i), x(2 * i + 1));
  return v;
}

RealVector to_real(const ComplexVector& v) {
  RealVector x(2 * v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    x(2 * i) = v(i).real();
    x(2 * i + 1) = v(i).imag();
  }
  return x;
}

DensityMatrix pure_from_real(const RealVector& x, int d) {
  return DensityMatrix::trusted(outer(from_real(x / x.norm(), d)));
}

}  // namespace

double idempotency_deficit(const DensityMatrix& rho) {
  return 1.0 - std::real(hs_inner(rho.matrix(), rho.matrix()));
}

double pure_fidelity(const Channel& channel, const DensityMatrix& rho) {
  require_pure(rho, "pure_fidelity");
  return std::real(hs_inner(channel.apply(rho.matrix()), rho.matrix()));
}

MeritReport f1_of_output(const DensityMatrix& rho, const ComplexMatrix& output) {
  require_pure(rho, "f1");
  if (output.rows() != rho.dim() || output.cols() != rho.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "f1: output dimension differs");
  }
  MeritReport report;
  const double dist = hs_distance(rho.matrix(), output);
  report.f1 = 1.0 - dist * dist;
  report.delta = 1.0 - std::real(hs_inner(output, output));
  report.pure_fidelity = std::real(hs_inner(output, rho.matrix()));
  report.samples_used = 1;
  return report;
}

MeritReport f1(const Channel& channel, const DensityMatrix& rho) {
  return f1_of_output(rho, channel.apply(rho.matrix()));
}

double sampling_tolerance(int n_samples) {
  return 3.0 / std::sqrt(static_cast<double>(std::max(n_samples, 1)));
}

MeritReport minimize_f1(int d, const PureStateMap& map,
                        const MinF1Options& options) {
  if (options.n_samples < 1) {
    throw Error(ErrorCode::kInvalidArgument, "min_f1: n_samples < 1");
  }
  auto evaluate = [&](const DensityMatrix& rho) {
    return f1_of_output(rho, map(rho));
  };
  Rng rng(options.seed);
  MeritReport best;
  best.f1 = std::numeric_limits<double>::infinity();
  RealVector best_x;
  for (int s = 0; s < options.n_samples; ++s) {
    const RealVector x = to_real(rng.haar_vector(d));
    MeritReport r = evaluate(pure_from_real(x, d));
    if (r.f1 < best.f1) {
      best = r;
      best_x = x;
    }
  }

  // Compass search on the unit sphere of C^d = R^{2d}.
  double step = 0.25;
  for (int it = 0; it < options.refine_iterations && step > 1e-9; ++it) {
    bool improved = false;
    for (Eigen::Index k = 0; k < best_x.size(); ++k) {
      for (double sign : {1.0, -1.0}) {
        RealVector trial = best_x;
        trial(k) += sign * step;
        trial.normalize();
        MeritReport r = evaluate(pure_from_real(trial, d));
        if (r.f1 < best.f1) {
          best = r;
          best_x = trial;
          improved = true;
        }
      }
    }
    if (!improved) step /= 2.0;
  }

  best.argmin_state = to_bloch(pure_from_real(best_x, d));
  best.samples_used = options.n_samples;
  best.upper_bound = true;
  best.sampling_tolerance = sampling_tolerance(options.n_samples);
  return best;
}

MeritReport min_f1(const Channel& channel, const MinF1Options& options) {
  if (channel.d_in() != channel.d_out()) {
    throw Error(ErrorCode::kDimensionMismatch, "min_f1: channel is not square");
  }
  return minimize_f1(
      channel.d_in(),
      [&](const DensityMatrix& rho) { return channel.apply(rho.matrix()); },
      options);
}

MeritReport f1_mn(const Cloner& cloner, const DensityMatrix& rho) {
  require_pure(rho, "f1_mn");
  MeritReport worst;
  worst.f1 = std::numeric_limits<double>::infinity();
  for (int k = 0; k < cloner.m(); ++k) {
    MeritReport r = f1_of_output(rho, reduced_map(cloner, k, rho).matrix());
    if (r.f1 < worst.f1) worst = r;
  }
  return worst;
}

MeritReport min_f1_mn(const Cloner& cloner, const MinF1Options& options) {
  // The worst clone is chosen per state, then minimized over states.
  auto map = [&](const DensityMatrix& rho) {
    double lowest = std::numeric_limits<double>::infinity();
    ComplexMatrix chosen;
    for (int k = 0; k < cloner.m(); ++k) {
      ComplexMatrix out = reduced_map(cloner, k, rho).matrix();
      const double v = f1_of_output(rho, out).f1;
      if (v < lowest) {
        lowest = v;
        chosen = std::move(out);
      }
    }
    return chosen;
  };
  return minimize_f1(cloner.d(), map, options);
}

}  // namespace qbloch
