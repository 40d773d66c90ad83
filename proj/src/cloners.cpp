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

#include "qbloch/cloners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qbloch/error.hpp"
#include "qbloch/symmetry.hpp"

namespace qbloch {
namespace {

void check_positive(int value, const char* what) {
  if (value < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " must be positive");
  }
}

std::vector<int> factor_dims(int d, int k) { return std::vector<int>(k, d); }

}  // namespace

std::vector<Permutation> all_permutations(int m) {
  check_positive(m, "all_permutations: m");
  Permutation p(m);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int checked_power(int d, int k) {
  // The global tensor cap can only tighten the cloner cap.
  const long long cap = std::min<long long>(
      kClonerDimensionCap, static_cast<long long>(dimension_cap()));
  long long v = 1;
  for (int i = 0; i < k; ++i) {
    v *= d;
    if (v > cap) {
      throw Error(ErrorCode::kCapExceeded,
                  std::to_string(d) + "^" + std::to_string(k) +
                      " exceeds the cloner dimension cap " + std::to_string(cap));
    }
  }
  return static_cast<int>(v);
}

long long symmetric_dimension(int d, int n) {
  // binomial(n + d - 1, n) computed incrementally stays integral.
  long long r = 1;
  for (int k = 1; k <= n; ++k) r = r * (d - 1 + k) / k;
  return r;
}

ComplexMatrix permutation_operator(const Permutation& sigma, int d) {
  const int m = static_cast<int>(sigma.size());
  check_positive(m, "permutation_operator: length");
  Permutation sorted = sigma;
  std::sort(sorted.begin(), sorted.end());
  for (int j = 0; j < m; ++j) {
    if (sorted[j] != j) {
      throw Error(ErrorCode::kInvalidArgument,
                  "permutation_operator: not a permutation");
    }
  }
  const int dim = checked_power(d, m);
  ComplexMatrix u = ComplexMatrix::Zero(dim, dim);
  std::vector<int> digits(m), image(m);
  for (int col = 0; col < dim; ++col) {
    int rest = col;
    for (int j = m - 1; j >= 0; --j) {
      digits[j] = rest % d;
      rest /= d;
    }
    int row = 0;
    for (int j = 0; j < m; ++j) row = row * d + digits[sigma[j]];
    u(row, col) = 1.0;
  }
  return u;
}

ComplexMatrix symmetric_projector(int d, int n) {
  const int dim = checked_power(d, n);
  ComplexMatrix s = ComplexMatrix::Zero(dim, dim);
  const auto perms = all_permutations(n);
  for (const auto& p : perms) s += permutation_operator(p, d);
  return s / static_cast<double>(perms.size());
}

ComplexMatrix coproduct(int i, int d, int m) {
  const GellMannBasis& basis = gellmann_basis(d);
  if (i < 0 || i >= basis.size()) {
    throw Error(ErrorCode::kInvalidArgument, "coproduct: basis index out of range");
  }
  const int dim = checked_power(d, m);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (int l = 0; l < m; ++l) {
    // I_{d^l} (x) tau_i (x) I_{d^{m-l-1}}
    const int left = checked_power(d, l);
    const int right = checked_power(d, m - l - 1);
    out += tensor(tensor(identity(left), basis[i]), identity(right));
  }
  return out / static_cast<double>(m);
}

DensityMatrix symmetric_input(const DensityMatrix& rho, int n) {
  check_positive(n, "symmetric_input: n");
  checked_power(rho.dim(), n);
  return DensityMatrix::trusted(tensor_power(rho.matrix(), n));
}

Cloner::Cloner(int d, int n, int m, Channel channel)
    : d_(d), n_(n), m_(m), channel_(std::move(channel)) {
  if (d < 2) throw Error(ErrorCode::kInvalidArgument, "Cloner: d < 2");
  check_positive(n, "Cloner: N");
  check_positive(m, "Cloner: M");
  if (n > m) throw Error(ErrorCode::kInvalidArgument, "Cloner: N > M");
  if (channel_.d_in() != checked_power(d, n) ||
      channel_.d_out() != checked_power(d, m)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "Cloner: channel dimensions do not match d^N -> d^M");
  }
}

DensityMatrix reduced_map(const Cloner& cloner, int clone,
                          const DensityMatrix& rho) {
  if (clone < 0 || clone >= cloner.m()) {
    throw Error(ErrorCode::kInvalidArgument, "reduced_map: clone out of range");
  }
  if (rho.dim() != cloner.d()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "reduced_map: state dimension differs from cloner d");
  }
  const ComplexMatrix out =
      cloner.channel().apply(symmetric_input(rho, cloner.n()).matrix());
  const auto dims = factor_dims(cloner.d(), cloner.m());
  return DensityMatrix::trusted(partial_trace(out, dims, clone));
}

MultiIndex unflatten(long long flat, int d, int length) {
  const int radix = d * d;
  MultiIndex out(length);
  for (int k = length - 1; k >= 0; --k) {
    out[k] = static_cast<int>(flat % radix);
    flat /= radix;
  }
  return out;
}

long long flatten(const MultiIndex& index, int d) {
  const int radix = d * d;
  long long flat = 0;
  for (int v : index) {
    if (v < 0 || v >= radix) {
      throw Error(ErrorCode::kInvalidArgument, "flatten: entry out of range");
    }
    flat = flat * radix + v;
  }
  return flat;
}

ComplexMatrix product_basis_element(const MultiIndex& index, int d) {
  const GellMannBasis& basis = gellmann_basis(d);
  if (index.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "product_basis_element: empty index");
  }
  checked_power(d, static_cast<int>(index.size()));
  std::vector<ComplexMatrix> factors;
  for (int v : index) {
    if (v < 0 || v > basis.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "product_basis_element: entry out of range");
    }
    factors.push_back(v == 0 ? identity(d) : basis[v - 1]);
  }
  return tensor_all(factors);
}

ComplexVector product_basis_coefficients(const ComplexMatrix& a, int d, int k) {
  const int dim = checked_power(d, k);
  if (a.rows() != dim || a.cols() != dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "product_basis_coefficients: matrix is not d^k x d^k");
  }
  const GellMannBasis& basis = gellmann_basis(d);
  const int radix = d * d;
  const long long total = static_cast<long long>(dim) * dim;

  // Regroup A[(a_1..a_k), (b_1..b_k)] as t[(a_1 b_1), ..., (a_k b_k)].
  ComplexVector t(total);
  std::vector<int> ra(k), cb(k);
  for (int row = 0; row < dim; ++row) {
    int rest = row;
    for (int l = k - 1; l >= 0; --l) { ra[l] = rest % d; rest /= d; }
    for (int col = 0; col < dim; ++col) {
      rest = col;
      for (int l = k - 1; l >= 0; --l) { cb[l] = rest % d; rest /= d; }
      long long flat = 0;
      for (int l = 0; l < k; ++l) flat = flat * radix + ra[l] * d + cb[l];
      t(flat) = a(row, col);
    }
  }

  // Per-slot projection: coefficient j of X is tr(tau_j X) / w_j with
  // tr(tau_j X) = sum_{a,b} tau_j[b, a] X[a, b].
  ComplexMatrix proj = ComplexMatrix::Zero(radix, radix);
  for (int x = 0; x < d; ++x) proj(0, x * d + x) = 1.0 / d;
  for (int j = 0; j < basis.size(); ++j) {
    for (const auto& e : basis.sparse[j]) {
      proj(j + 1, e.col * d + e.row) += e.value / 2.0;
    }
  }

  ComplexVector scratch(radix);
  long long stride = 1;
  for (int axis = k - 1; axis >= 0; --axis) {
    const long long block = stride * radix;
    for (long long base = 0; base < total; base += block) {
      for (long long off = 0; off < stride; ++off) {
        for (int p = 0; p < radix; ++p) scratch(p) = t(base + off + p * stride);
        const ComplexVector mapped = proj * scratch;
        for (int p = 0; p < radix; ++p) t(base + off + p * stride) = mapped(p);
      }
    }
    stride = block;
  }
  return t;
}

MultiGbrTable multi_gbr(const Cloner& cloner) {
  const int d = cloner.d();
  const int n = cloner.n();
  const int m = cloner.m();
  const long long rows = static_cast<long long>(checked_power(d, m)) *
                         checked_power(d, m);
  const long long cols = static_cast<long long>(checked_power(d, n)) *
                         checked_power(d, n);
  MultiGbrTable table{d, n, m, RealMatrix(rows, cols), RealVector(rows), 0.0};
  for (long long i = 0; i < cols; ++i) {
    const ComplexMatrix out =
        cloner.channel().apply(product_basis_element(unflatten(i, d, n), d));
    const ComplexVector coeff = product_basis_coefficients(out, d, m);
    if (coeff.imag().cwiseAbs().maxCoeff() > 1e-10) {
      throw Error(ErrorCode::kNotHermitian,
                  "multi_gbr: complex coefficient in a Hermitian expansion");
    }
    table.M.col(i) = coeff.real();
  }
  const double norm_in = std::pow(static_cast<double>(d), n);
  table.c = table.M.col(0) / norm_in;
  table.c(0) = 0.0;
  for (long long i = 1; i < cols; ++i) {
    table.trace_violation =
        std::max(table.trace_violation, std::abs(table.M(0, i)));
  }
  return table;
}

FactorFormula factor_formula(const MultiGbrTable& table) {
  const int d = table.d;
  const int dim = bloch_dim(d);
  const double prefactor = std::pow(static_cast<double>(d), table.m - table.n);
  std::vector<double> values;
  for (int j = 1; j <= dim; ++j) {
    for (int l = 0; l < table.m; ++l) {
      MultiIndex out(table.m, 0);
      out[l] = j;
      const long long row = flatten(out, d);
      double sum = 0.0;
      for (int k = 0; k < table.n; ++k) {
        MultiIndex in(table.n, 0);
        in[k] = j;
        sum += table.M(row, flatten(in, d));
      }
      values.push_back(prefactor * sum);
    }
  }
  FactorFormula f;
  f.xi = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
  for (double v : values) f.spread = std::max(f.spread, std::abs(v - f.xi));
  return f;
}

ShrinkResult shrink_factor(const Cloner& cloner, const ShrinkOptions& options) {
  if (options.n_samples < 1) {
    throw Error(ErrorCode::kInvalidArgument, "shrink_factor: n_samples < 1");
  }
  ShrinkResult result;
  result.n_samples = options.n_samples;
  const int cert = std::max(1, options.certification_samples);
  result.symmetry_defect =
      symmetry_defect(cloner, cert, RandomSeed{options.seed.value + 1});
  if (result.symmetry_defect >= kCertifiedSymmetry &&
      !options.allow_uncertified) {
    throw Error(ErrorCode::kNotCertified,
                "shrink_factor: cloner is not symmetric (defect " +
                    std::to_string(result.symmetry_defect) + ")");
  }
  result.covariance_defect =
      covariance_defect(cloner, cert, RandomSeed{options.seed.value + 2});
  result.certified = result.symmetry_defect < kCertifiedSymmetry &&
                     result.covariance_defect < kCertifiedCovariance;

  Rng rng(options.seed);
  std::vector<RealVector> in, out;
  double num = 0.0, den = 0.0;
  for (int s = 0; s < options.n_samples; ++s) {
    const DensityMatrix rho(rng.haar_pure_state(cloner.d()));
    RealVector lam = to_bloch(rho).lambda();
    RealVector lam_out = bloch_components(reduced_map(cloner, 0, rho).matrix());
    num += lam.dot(lam_out);
    den += lam.squaredNorm();
    in.push_back(std::move(lam));
    out.push_back(std::move(lam_out));
  }
  result.xi = num / den;
  for (std::size_t s = 0; s < in.size(); ++s) {
    result.fit_residual =
        std::max(result.fit_residual, (out[s] - result.xi * in[s]).norm());
  }
  const FactorFormula f = factor_formula(multi_gbr(cloner));
  result.factor_formula_xi = f.xi;
  result.factor_spread = f.spread;
  return result;
}

Cloner werner_cloner(int d, int n, int m) {
  if (n > m) throw Error(ErrorCode::kInvalidArgument, "werner_cloner: N > M");
  const int din = checked_power(d, n);
  const int dout = checked_power(d, m);
  const int extra = checked_power(d, m - n);
  const ComplexMatrix s_m = symmetric_projector(d, m);
  const double ratio = static_cast<double>(symmetric_dimension(d, n)) /
                       static_cast<double>(symmetric_dimension(d, m));
  std::vector<ComplexMatrix> kraus;
  for (int e = 0; e < extra; ++e) {
    // S_M (I_{d^N} (x) |e>)
    ComplexMatrix embed = ComplexMatrix::Zero(dout, din);
    for (int i = 0; i < din; ++i) embed(i * extra + e, i) = 1.0;
    kraus.push_back(std::sqrt(ratio) * s_m * embed);
  }
  // Complement of Sym^N: rank-one maps onto a uniform output.
  const ComplexMatrix complement = identity(din) - symmetric_projector(d, n);
  const Spectrum spec = eig_hermitian(complement);
  const double w = 1.0 / std::sqrt(static_cast<double>(dout));
  for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
    if (spec.eigenvalues(k) < 0.5) continue;
    const ComplexVector v = spec.eigenvectors.col(k);
    for (int a = 0; a < dout; ++a) {
      ComplexMatrix op = ComplexMatrix::Zero(dout, din);
      op.row(a) = w * v.adjoint();
      kraus.push_back(std::move(op));
    }
  }
  return Cloner(d, n, m, Channel(din, dout, std::move(kraus)));
}

Cloner compose(const Cloner& second, const Cloner& first) {
  if (first.d() != second.d()) {
    throw Error(ErrorCode::kDimensionMismatch, "compose: different d");
  }
  if (first.m() != second.n()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "compose: output arity " + std::to_string(first.m()) +
                    " does not match input arity " + std::to_string(second.n()));
  }
  Channel joint = compose(second.channel(), first.channel());
  const std::size_t bound =
      static_cast<std::size_t>(joint.d_in()) * joint.d_out();
  if (joint.kraus().size() > bound) {
    joint = choi_to_kraus(kraus_to_choi(joint));
  }
  return Cloner(first.d(), first.n(), second.m(), std::move(joint));
}

ComplexMatrix qubit_c2() {
  const GellMannBasis& pauli = gellmann_basis(2);
  ComplexMatrix c2 = ComplexMatrix::Zero(4, 4);
  for (int a = 0; a < 3; ++a) c2 += tensor(pauli[a], pauli[a]);
  return c2;
}

ComplexMatrix qubit_ansatz_output(double t, double xi, const RealVector& lambda) {
  if (lambda.size() != 3) {
    throw Error(ErrorCode::kDimensionMismatch,
                "qubit_ansatz_output: expected a qubit Bloch vector");
  }
  ComplexMatrix out = identity(4) + t * qubit_c2();
  for (int a = 0; a < 3; ++a) {
    // S_a = 2 Delta_2(sigma_a)
    out += xi * lambda(a) * 2.0 * coproduct(a, 2, 2);
  }
  return out / 4.0;
}

std::array<double, 4> QubitOptimum::spectrum(double t, double xi) {
  std::array<double, 4> s = {(1.0 + t + 2.0 * xi) / 4.0, (1.0 + t) / 4.0,
                             (1.0 + t - 2.0 * xi) / 4.0, (1.0 - 3.0 * t) / 4.0};
  std::sort(s.begin(), s.end());
  return s;
}

ComplexMatrix QubitOptimum::output_state(const RealVector& lambda) const {
  return qubit_ansatz_output(t, xi, lambda);
}

QubitOptimum optimal_qubit_12() {
  // Each eigenvalue a t + b xi + c >= 0 (times 4) at unit Bloch radius.
  struct Constraint {
    double a, b, c;
  };
  const std::array<Constraint, 4> constraints = {{
      {1.0, 2.0, 1.0},   // 1 + t + 2 xi
      {1.0, 0.0, 1.0},   // 1 + t
      {1.0, -2.0, 1.0},  // 1 + t - 2 xi
      {-3.0, 0.0, 1.0},  // 1 - 3 t
  }};
  auto feasible = [&](double t, double xi) {
    for (const auto& k : constraints) {
      if (k.a * t + k.b * xi + k.c < -1e-14) return false;
    }
    return true;
  };
  // The optimum of a linear objective over a bounded polygon sits on a vertex.
  double best_t = 0.0;
  double best_xi = -std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < constraints.size(); ++p) {
    for (std::size_t q = p + 1; q < constraints.size(); ++q) {
      const auto& u = constraints[p];
      const auto& v = constraints[q];
      const double det = u.a * v.b - u.b * v.a;
      if (std::abs(det) < 1e-14) continue;
      const double t = (-u.c * v.b + u.b * v.c) / det;
      const double xi = (-u.a * v.c + u.c * v.a) / det;
      if (feasible(t, xi) && xi > best_xi) {
        best_t = t;
        best_xi = xi;
      }
    }
  }

  // Linear extension T(X) = 1/4 (tr X (I + t C_2) + xi sum_a tr(sigma_a X) S_a).
  const GellMannBasis& pauli = gellmann_basis(2);
  auto apply_map = [&](const ComplexMatrix& x) {
    ComplexMatrix out = x.trace() * (identity(4) + best_t * qubit_c2());
    for (int a = 0; a < 3; ++a) {
      out += best_xi * (pauli[a] * x).trace() * 2.0 * coproduct(a, 2, 2);
    }
    return ComplexMatrix(out / 4.0);
  };
  ComplexMatrix choi = ComplexMatrix::Zero(8, 8);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      ComplexMatrix eij = ComplexMatrix::Zero(2, 2);
      eij(i, j) = 1.0;
      choi += tensor(apply_map(eij), eij) / 2.0;
    }
  }
  choi = (choi + choi.adjoint()) / 2.0;
  Cloner cloner(2, 1, 2, choi_to_kraus(ChoiMatrix(2, 4, choi)));

  const Cloner werner = werner_cloner(2, 1, 2);
  double deviation = 0.0;
  Rng rng(RandomSeed{12});
  for (int s = 0; s < 16; ++s) {
    const ComplexMatrix rho = rng.random_density(2);
    deviation = std::max(deviation, max_abs(cloner.channel().apply(rho) -
                                            werner.channel().apply(rho)));
  }
  return QubitOptimum{best_t, best_xi, std::move(cloner), deviation};
}

}  // namespace qbloch
