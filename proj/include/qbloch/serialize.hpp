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

#include <string>

#include <nlohmann/json.hpp>

#include "qbloch/channels.hpp"
#include "qbloch/cloners.hpp"
#include "qbloch/merit.hpp"
#include "qbloch/symmetry.hpp"

namespace qbloch {

using Json = nlohmann::json;

/// Serializes like Json::dump but writes every floating-point number with 17
/// significant digits, so equal values always produce identical bytes.
std::string dump_json(const Json& value, int indent = 2);

/// Parses text, mapping syntax errors to ErrorCode::kParse.
Json parse_json(const std::string& text);

/// {"rows": r, "cols": c, "data": [[re, im], ...]}, row-major.
Json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json to_json(const RealMatrix& m);
Json to_json(const RealVector& v);

/// {"d": d, "lambda": [...]}
Json to_json(const BlochVector& lambda);
BlochVector bloch_from_json(const Json& j);

/// {"d_in": .., "d_out": .., "kraus": [matrix, ...]}
Json to_json(const Channel& channel);
Channel channel_from_json(const Json& j);

/// {"d": .., "n": .., "m": .., "channel": {...}}
Json to_json(const Cloner& cloner);
Cloner cloner_from_json(const Json& j);

Json to_json(const ChoiMatrix& choi);
Json to_json(const AffineRep& rep);
Json to_json(const MeritReport& report);
Json to_json(const TwirlReport& report);
Json to_json(const ShrinkResult& result);

}  // namespace qbloch
