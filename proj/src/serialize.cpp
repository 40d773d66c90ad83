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

#include "qbloch/serialize.hpp"

#include <cmath>
#include <algorithm>
#include <cstdio>

#include "qbloch/error.hpp"

namespace qbloch {
namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::kInvalidArgument, "dump_json: non-finite number");
  }
  if (v == 0.0) return "0";  // folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dump_into(const Json& value, int indent, int depth, std::string& out) {
  const bool pretty = indent >= 0;
  auto newline = [&](int level) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * level), ' ');
  };
  switch (value.type()) {
    case Json::value_t::object: {
      if (value.empty()) { out += "{}"; return; }
      out += '{';
      bool first = true;
      for (auto it = value.begin(); it != value.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += pretty ? ": " : ":";
        dump_into(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (value.empty()) { out += "[]"; return; }
      // Leaf arrays of numbers stay on one line.
      const bool flat = std::all_of(value.begin(), value.end(),
                                    [](const Json& x) { return x.is_number(); });
      out += '[';
      bool first = true;
      for (const auto& x : value) {
        if (!first) out += pretty && flat ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        dump_into(x, indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_double(value.get<double>());
      return;
    default:
      out += value.dump();
      return;
  }
}

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::kParse, std::string("missing field \"") + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse,
                std::string("field \"") + key + "\": " + e.what());
  }
}

}  // namespace

std::string dump_json(const Json& value, int indent) {
  std::string out;
  dump_into(value, indent, 0, out);
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

Json to_json(const ComplexMatrix& m) {
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      data.push_back({m(r, c).real(), m(r, c).imag()});
    }
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const auto rows = field<long long>(j, "rows");
  const auto cols = field<long long>(j, "cols");
  if (!j.contains("data")) throw Error(ErrorCode::kParse, "matrix: missing \"data\"");
  const Json& data = j["data"];
  if (rows < 1 || cols < 1) throw Error(ErrorCode::kParse, "matrix: non-positive shape");
  if (!data.is_array() || static_cast<long long>(data.size()) != rows * cols) {
    throw Error(ErrorCode::kParse, "matrix: data length does not equal rows*cols");
  }
  ComplexMatrix m(rows, cols);
  for (long long k = 0; k < rows * cols; ++k) {
    const Json& e = data[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw Error(ErrorCode::kParse, "matrix: entries must be [re, im] pairs");
    }
    m(k / cols, k % cols) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  if (!m.allFinite()) throw Error(ErrorCode::kParse, "matrix: non-finite entry");
  return m;
}

Json to_json(const RealMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const RealVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json to_json(const BlochVector& lambda) {
  return {{"d", lambda.d()}, {"lambda", to_json(lambda.lambda())}};
}

BlochVector bloch_from_json(const Json& j) {
  const int d = field<int>(j, "d");
  const auto values = field<std::vector<double>>(j, "lambda");
  RealVector lambda(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) lambda(i) = values[i];
  return BlochVector(d, std::move(lambda));
}

Json to_json(const Channel& channel) {
  Json kraus = Json::array();
  for (const auto& k : channel.kraus()) kraus.push_back(to_json(k));
  return {{"d_in", channel.d_in()}, {"d_out", channel.d_out()},
          {"kraus", std::move(kraus)}};
}

Channel channel_from_json(const Json& j) {
  const int d_in = field<int>(j, "d_in");
  const int d_out = field<int>(j, "d_out");
  if (!j.contains("kraus") || !j.at("kraus").is_array()) {
    throw Error(ErrorCode::kParse, "channel: missing \"kraus\" array");
  }
  std::vector<ComplexMatrix> kraus;
  for (const auto& k : j.at("kraus")) kraus.push_back(matrix_from_json(k));
  return Channel(d_in, d_out, std::move(kraus));
}

Json to_json(const Cloner& cloner) {
  return {{"d", cloner.d()}, {"n", cloner.n()}, {"m", cloner.m()},
          {"channel", to_json(cloner.channel())}};
}

Cloner cloner_from_json(const Json& j) {
  if (!j.contains("channel")) throw Error(ErrorCode::kParse, "cloner: missing \"channel\"");
  return Cloner(field<int>(j, "d"), field<int>(j, "n"), field<int>(j, "m"),
                channel_from_json(j.at("channel")));
}

Json to_json(const ChoiMatrix& choi) {
  return {{"d_in", choi.d_in()}, {"d_out", choi.d_out()},
          {"convention", "(T x Id)(|Omega><Omega|), output factor first"},
          {"matrix", to_json(choi.matrix())}};
}

Json to_json(const AffineRep& rep) {
  return {{"d_in", rep.d_in}, {"d_out", rep.d_out}, {"M", to_json(rep.M)},
          {"c", to_json(rep.c)}};
}

Json to_json(const MeritReport& report) {
  Json j = {{"f1", report.f1},
            {"delta", report.delta},
            {"pure_fidelity", report.pure_fidelity},
            {"samples_used", report.samples_used},
            {"upper_bound", report.upper_bound},
            {"sampling_tolerance", report.sampling_tolerance}};
  j["argmin_state"] = report.argmin_state ? to_json(*report.argmin_state) : Json();
  return j;
}

Json to_json(const TwirlReport& report) {
  return {{"averaged", to_json(report.averaged)},
          {"xi_fit", report.xi_fit},
          {"offdiag_norm", report.offdiag_norm},
          {"c_norm", report.c_norm},
          {"n_samples", report.n_samples},
          {"seed", report.seed.value}};
}

Json to_json(const ShrinkResult& result) {
  return {{"xi", result.xi},
          {"fit_residual", result.fit_residual},
          {"factor_formula_xi", result.factor_formula_xi},
          {"factor_spread", result.factor_spread},
          {"covariance_defect", result.covariance_defect},
          {"symmetry_defect", result.symmetry_defect},
          {"certified", result.certified},
          {"n_samples", result.n_samples}};
}

}  // namespace qbloch
