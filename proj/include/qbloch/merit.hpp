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
#include <optional>

#include "qbloch/channels.hpp"
#include "qbloch/cloners.hpp"

namespace qbloch {

struct MeritReport {
  double f1 = 0.0;
  double delta = 0.0;           // idempotency deficit of the output
  double pure_fidelity = 0.0;   // (T(rho), rho)
  std::optional<BlochVector> argmin_state;
  int samples_used = 0;
  /// True for sampled minima: the reported f1 bounds the true minimum from
  /// above.
  bool upper_bound = false;
  double sampling_tolerance = 0.0;
};

/// 1 - tr rho^2.
double idempotency_deficit(const DensityMatrix& rho);

/// (T(rho), rho) for pure rho; mixed input is rejected.
double pure_fidelity(const Channel& channel, const DensityMatrix& rho);

/// 1 - d(rho, T(rho))^2 with its decomposition 1/2 delta + F.
MeritReport f1(const Channel& channel, const DensityMatrix& rho);

/// Merit of an already computed output state for the pure input rho.
MeritReport f1_of_output(const DensityMatrix& rho, const ComplexMatrix& output);

struct MinF1Options {
  int n_samples = 2000;
  int refine_iterations = 50;
  RandomSeed seed{0x5eed};
};

/// Declared sampling tolerance 3/sqrt(n_samples).
double sampling_tolerance(int n_samples);

/// Output of a state map evaluated on a pure d x d input.
using PureStateMap = std::function<ComplexMatrix(const DensityMatrix&)>;

/// Minimum of f1 over n_samples Haar pure states, then a compass search on
/// the unit sphere of C^d started from the best sample.
MeritReport minimize_f1(int d, const PureStateMap& map,
                        const MinF1Options& options);

MeritReport min_f1(const Channel& channel, const MinF1Options& options = {});

/// min over clones k of f1 of the k-th reduced map.
MeritReport f1_mn(const Cloner& cloner, const DensityMatrix& rho);

/// Sampled worst case of f1_mn over pure inputs.
MeritReport min_f1_mn(const Cloner& cloner, const MinF1Options& options = {});

}  // namespace qbloch
