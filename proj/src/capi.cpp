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

#include "qbloch/qbloch.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "qbloch/error.hpp"
#include "qbloch/serialize.hpp"
#include "qbloch/verify.hpp"

struct qb_channel {
  qbloch::Channel value;
};

struct qb_cloner {
  qbloch::Cloner value;
};

namespace {

thread_local std::string g_last_error;

qb_status to_status(qbloch::ErrorCode code) {
  using qbloch::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return QB_ERR_INVALID_ARGUMENT;
    case ErrorCode::kDimensionMismatch: return QB_ERR_DIMENSION;
    case ErrorCode::kNotHermitian: return QB_ERR_NOT_HERMITIAN;
    case ErrorCode::kNotPositive: return QB_ERR_NOT_POSITIVE;
    case ErrorCode::kNotTracePreserving: return QB_ERR_NOT_TRACE_PRESERVING;
    case ErrorCode::kCapExceeded: return QB_ERR_CAP_EXCEEDED;
    case ErrorCode::kParse: return QB_ERR_PARSE;
    case ErrorCode::kNotCertified: return QB_ERR_NOT_CERTIFIED;
  }
  return QB_ERR_INTERNAL;
}

template <typename F>
qb_status guarded(F&& body) {
  try {
    body();
    return QB_OK;
  } catch (const qbloch::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const qbloch::Json::exception& e) {
    g_last_error = e.what();
    return QB_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QB_ERR_INTERNAL;
  }
}

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p == nullptr) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void require(const void* p, const char* what) {
  if (p == nullptr) {
    throw qbloch::Error(qbloch::ErrorCode::kInvalidArgument,
                        std::string(what) + " is null");
  }
}

void emit(char** out, const qbloch::Json& j) {
  require(out, "output pointer");
  *out = copy_out(qbloch::dump_json(j));
}

}  // namespace

extern "C" {

const char* qb_version(void) { return qbloch::kVersion; }

uint64_t qb_default_seed(void) { return qbloch::kDefaultSeed; }

const char* qb_last_error(void) { return g_last_error.c_str(); }

const char* qb_status_name(qb_status status) {
  switch (status) {
    case QB_OK: return "ok";
    case QB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QB_ERR_DIMENSION: return "dimension mismatch";
    case QB_ERR_NOT_HERMITIAN: return "not hermitian";
    case QB_ERR_NOT_POSITIVE: return "not positive";
    case QB_ERR_NOT_TRACE_PRESERVING: return "not trace preserving";
    case QB_ERR_CAP_EXCEEDED: return "dimension cap exceeded";
    case QB_ERR_PARSE: return "parse error";
    case QB_ERR_NOT_CERTIFIED: return "not certified";
    case QB_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

void qb_string_free(char* s) { std::free(s); }

qb_status qb_set_dim_cap(size_t cap) {
  return guarded([&] { qbloch::set_dimension_cap(cap); });
}

size_t qb_dim_cap(void) { return qbloch::dimension_cap(); }

qb_status qb_basis_json(int d, char** out) {
  return guarded([&] {
    const auto& basis = qbloch::gellmann_basis(d);
    qbloch::Json list = qbloch::Json::array();
    for (const auto& m : basis.matrices) list.push_back(qbloch::to_json(m));
    emit(out, {{"d", d}, {"basis", std::move(list)}});
  });
}

qb_status qb_bloch_to_json(const char* matrix_json, char** out) {
  return guarded([&] {
    require(matrix_json, "matrix_json");
    const qbloch::DensityMatrix rho(
        qbloch::matrix_from_json(qbloch::parse_json(matrix_json)));
    emit(out, qbloch::to_json(qbloch::to_bloch(rho)));
  });
}

qb_status qb_bloch_from_json(const char* bloch_json, char** out) {
  return guarded([&] {
    require(bloch_json, "bloch_json");
    const qbloch::BlochVector lambda =
        qbloch::bloch_from_json(qbloch::parse_json(bloch_json));
    const auto check = qbloch::is_physical_bloch(lambda);
    emit(out, {{"matrix", qbloch::to_json(qbloch::from_bloch(lambda))},
               {"physical", check.physical},
               {"min_eigenvalue", check.min_eigenvalue}});
  });
}

qb_status qb_channel_from_json(const char* json, qb_channel** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "output pointer");
    *out = new qb_channel{qbloch::channel_from_json(qbloch::parse_json(json))};
  });
}

qb_status qb_channel_depolarizing(int d, double xi, qb_channel** out) {
  return guarded([&] {
    require(out, "output pointer");
    *out = new qb_channel{qbloch::depolarizing(d, xi)};
  });
}

qb_status qb_channel_random(int d, int rank, uint64_t seed, qb_channel** out) {
  return guarded([&] {
    require(out, "output pointer");
    qbloch::Rng rng(qbloch::RandomSeed{seed});
    *out = new qb_channel{qbloch::random_channel(d, d, rank, rng)};
  });
}

qb_status qb_channel_to_json(const qb_channel* channel, char** out) {
  return guarded([&] {
    require(channel, "channel");
    emit(out, qbloch::to_json(channel->value));
  });
}

void qb_channel_free(qb_channel* channel) { delete channel; }

qb_status qb_channel_analyze(const qb_channel* channel, int samples,
                             int refine_iterations, uint64_t seed, char** out) {
  return guarded([&] {
    require(channel, "channel");
    const qbloch::Channel& t = channel->value;
    const qbloch::ChoiMatrix choi = qbloch::kraus_to_choi(t);
    qbloch::Json report = {
        {"d_in", t.d_in()},
        {"d_out", t.d_out()},
        {"kraus_count", t.kraus().size()},
        {"cptp",
         {{"passed", t.trace_defect() <= qbloch::kTraceTolerance &&
                         choi.min_eigenvalue() >= -qbloch::kPositiveTolerance},
          {"trace_defect", t.trace_defect()},
          {"choi_min_eigenvalue", choi.min_eigenvalue()},
          {"trace_tolerance", qbloch::kTraceTolerance},
          {"positivity_tolerance", qbloch::kPositiveTolerance}}}};
    if (t.d_in() == t.d_out()) {
      report["affine"] = qbloch::to_json(qbloch::affine_rep(t));
      qbloch::MinF1Options opts{samples, refine_iterations,
                                qbloch::RandomSeed{seed}};
      report["merit"] = qbloch::to_json(qbloch::min_f1(t, opts));
    }
    emit(out, report);
  });
}

qb_status qb_channel_twirl(const qb_channel* channel, int samples,
                           uint64_t seed, char** out) {
  return guarded([&] {
    require(channel, "channel");
    emit(out, qbloch::to_json(
                  qbloch::twirl_su(channel->value, samples, qbloch::RandomSeed{seed})));
  });
}

qb_status qb_cloner_werner(int d, int n, int m, qb_cloner** out) {
  return guarded([&] {
    require(out, "output pointer");
    *out = new qb_cloner{qbloch::werner_cloner(d, n, m)};
  });
}

qb_status qb_cloner_optimal_qubit_12(qb_cloner** out) {
  return guarded([&] {
    require(out, "output pointer");
    *out = new qb_cloner{qbloch::optimal_qubit_12().cloner};
  });
}

qb_status qb_cloner_compose(const qb_cloner* second, const qb_cloner* first,
                            qb_cloner** out) {
  return guarded([&] {
    require(second, "second");
    require(first, "first");
    require(out, "output pointer");
    *out = new qb_cloner{qbloch::compose(second->value, first->value)};
  });
}

qb_status qb_cloner_from_json(const char* json, qb_cloner** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "output pointer");
    *out = new qb_cloner{qbloch::cloner_from_json(qbloch::parse_json(json))};
  });
}

qb_status qb_cloner_to_json(const qb_cloner* cloner, char** out) {
  return guarded([&] {
    require(cloner, "cloner");
    emit(out, qbloch::to_json(cloner->value));
  });
}

qb_status qb_cloner_choi_json(const qb_cloner* cloner, char** out) {
  return guarded([&] {
    require(cloner, "cloner");
    emit(out, qbloch::to_json(qbloch::kraus_to_choi(cloner->value.channel())));
  });
}

void qb_cloner_free(qb_cloner* cloner) { delete cloner; }

qb_status qb_cloner_shrink(const qb_cloner* cloner, int samples, uint64_t seed,
                           int allow_uncertified, char** out) {
  return guarded([&] {
    require(cloner, "cloner");
    qbloch::ShrinkOptions opts;
    opts.n_samples = samples;
    opts.seed = qbloch::RandomSeed{seed};
    opts.allow_uncertified = allow_uncertified != 0;
    qbloch::Json j = qbloch::to_json(qbloch::shrink_factor(cloner->value, opts));
    j["d"] = cloner->value.d();
    j["n"] = cloner->value.n();
    j["m"] = cloner->value.m();
    j["seed"] = seed;
    emit(out, j);
  });
}

qb_status qb_optimize_qubit_12(char** out) {
  return guarded([&] {
    const qbloch::QubitOptimum opt = qbloch::optimal_qubit_12();
    const auto spectrum = qbloch::QubitOptimum::spectrum(opt.t, opt.xi);
    qbloch::Json levels = qbloch::Json::array();
    for (double v : spectrum) levels.push_back(v);
    emit(out, {{"t", opt.t},
               {"xi", opt.xi},
               {"spectrum", std::move(levels)},
               {"werner_deviation", opt.werner_deviation},
               {"cloner", qbloch::to_json(opt.cloner)}});
  });
}

qb_status qb_verify(const char* suite, uint64_t seed, int include_timings,
                    char** out, int* passed) {
  return guarded([&] {
    require(suite, "suite");
    const qbloch::SuiteReport report = qbloch::run_suite(suite, seed);
    if (passed != nullptr) *passed = report.passed() ? 1 : 0;
    emit(out, qbloch::to_json(report, include_timings != 0));
  });
}

}  // extern "C"
