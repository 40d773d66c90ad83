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

// Command-line front end. Talks to the library exclusively through the C API.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qbloch/qbloch.h"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadInput = 2;

struct CallError {
  qb_status status;
  std::string message;
};

void check(qb_status status, const std::string& context) {
  if (status != QB_OK) {
    throw CallError{status, context + ": " + qb_status_name(status) + ": " +
                                qb_last_error()};
  }
}

struct StringDeleter {
  void operator()(char* s) const { qb_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct ChannelDeleter {
  void operator()(qb_channel* c) const { qb_channel_free(c); }
};
using OwnedChannel = std::unique_ptr<qb_channel, ChannelDeleter>;

struct ClonerDeleter {
  void operator()(qb_cloner* c) const { qb_cloner_free(c); }
};
using OwnedCloner = std::unique_ptr<qb_cloner, ClonerDeleter>;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CallError{QB_ERR_INVALID_ARGUMENT, "cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const char* text) {
  std::ofstream out(path);
  if (!out) throw CallError{QB_ERR_INVALID_ARGUMENT, "cannot write " + path};
  out << text << '\n';
}

void print(const OwnedString& s) { std::cout << s.get() << '\n'; }

OwnedChannel load_channel(const std::string& path) {
  qb_channel* raw = nullptr;
  check(qb_channel_from_json(read_file(path).c_str(), &raw), path);
  return OwnedChannel(raw);
}

OwnedCloner load_cloner(const std::string& path) {
  qb_cloner* raw = nullptr;
  check(qb_cloner_from_json(read_file(path).c_str(), &raw), path);
  return OwnedCloner(raw);
}

void apply_dim_cap_from_env() {
  const char* env = std::getenv("QBLOCH_DIM_CAP");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const unsigned long long cap = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') {
    throw CallError{QB_ERR_INVALID_ARGUMENT,
                    std::string("QBLOCH_DIM_CAP is not an integer: ") + env};
  }
  check(qb_set_dim_cap(static_cast<size_t>(cap)), "QBLOCH_DIM_CAP");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Bloch representation, qudit channels and "
               "covariant cloners"};
  app.set_version_flag("--version", std::string(qb_version()));
  app.require_subcommand(1);

  const std::uint64_t default_seed = qb_default_seed();

  int basis_d = 2;
  auto* basis = app.add_subcommand("basis", "print the su(d) basis as JSON");
  basis->add_option("--d", basis_d, "dimension")->required();

  std::string bloch_in;
  auto* bloch = app.add_subcommand("bloch", "convert states and Bloch vectors");
  bloch->require_subcommand(1);
  auto* bloch_to = bloch->add_subcommand("to", "density matrix JSON -> Bloch vector");
  bloch_to->add_option("--in", bloch_in, "matrix JSON file")->required();
  auto* bloch_from = bloch->add_subcommand("from", "Bloch vector JSON -> matrix");
  bloch_from->add_option("--in", bloch_in, "Bloch vector JSON file")->required();

  std::string channel_in;
  int analyze_samples = 2000;
  int analyze_refine = 50;
  std::uint64_t analyze_seed = default_seed;
  auto* channel = app.add_subcommand("channel", "channel analysis");
  channel->require_subcommand(1);
  auto* analyze = channel->add_subcommand(
      "analyze", "affine representation, CPTP certificates and merit report");
  analyze->add_option("--in", channel_in, "channel JSON file")->required();
  analyze->add_option("--samples", analyze_samples, "pure-state samples");
  analyze->add_option("--refine", analyze_refine, "refinement iterations");
  analyze->add_option("--seed", analyze_seed, "random seed");

  std::string twirl_in;
  int twirl_d = 0;
  int twirl_rank = 3;
  int twirl_samples = 10000;
  std::uint64_t twirl_seed = default_seed;
  auto* twirl = app.add_subcommand(
      "twirl", "SU(d) twirl of a channel file, or of a seeded random channel");
  auto* twirl_in_opt = twirl->add_option("--in", twirl_in, "channel JSON file");
  twirl->add_option("--d", twirl_d, "dimension of a random channel")
      ->excludes(twirl_in_opt);
  twirl->add_option("--rank", twirl_rank, "Kraus rank of the random channel");
  twirl->add_option("--samples", twirl_samples, "Haar samples")
      ->check(CLI::Range(100, 100000000));
  twirl->add_option("--seed", twirl_seed, "random seed");

  auto* cloner = app.add_subcommand("cloner", "N -> M cloners");
  cloner->require_subcommand(1);
  int werner_d = 2, werner_n = 1, werner_m = 2;
  std::string emit_choi;
  auto* werner = cloner->add_subcommand("werner", "emit the Werner cloner JSON");
  werner->add_option("--d", werner_d)->required();
  werner->add_option("--n", werner_n)->required();
  werner->add_option("--m", werner_m)->required();
  werner->add_option("--emit-choi", emit_choi, "also write its Choi matrix here");

  std::string shrink_in;
  int shrink_samples = 200;
  std::uint64_t shrink_seed = default_seed;
  bool allow_uncertified = false;
  auto* shrink = cloner->add_subcommand("shrink", "shrink factor of a cloner file");
  shrink->add_option("--in", shrink_in, "cloner JSON file")->required();
  shrink->add_option("--samples", shrink_samples, "pure-state samples");
  shrink->add_option("--seed", shrink_seed, "random seed");
  shrink->add_flag("--allow-uncertified", allow_uncertified,
                   "accept cloners that are not symmetric");

  auto* optimize = cloner->add_subcommand(
      "optimize-qubit-12", "closed-form qubit 1 -> 2 optimum");

  std::string suite = "all";
  std::uint64_t verify_seed = default_seed;
  bool timings = false;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite, "suite name")
      ->check(CLI::IsMember({"prop1", "prop3", "prop7", "prop8", "theorem1",
                             "corollary1", "qubit12", "all"}));
  verify->add_option("--seed", verify_seed, "random seed");
  verify->add_flag("--timings", timings, "include per-check runtimes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitBadInput;
  }

  try {
    apply_dim_cap_from_env();
    char* raw = nullptr;
    if (*basis) {
      check(qb_basis_json(basis_d, &raw), "basis");
      print(OwnedString(raw));
    } else if (*bloch_to) {
      check(qb_bloch_to_json(read_file(bloch_in).c_str(), &raw), bloch_in);
      print(OwnedString(raw));
    } else if (*bloch_from) {
      check(qb_bloch_from_json(read_file(bloch_in).c_str(), &raw), bloch_in);
      print(OwnedString(raw));
    } else if (*analyze) {
      const OwnedChannel t = load_channel(channel_in);
      check(qb_channel_analyze(t.get(), analyze_samples, analyze_refine,
                               analyze_seed, &raw),
            "channel analyze");
      print(OwnedString(raw));
    } else if (*twirl) {
      OwnedChannel t;
      if (!twirl_in.empty()) {
        t = load_channel(twirl_in);
      } else {
        if (twirl_d < 2) {
          throw CallError{QB_ERR_INVALID_ARGUMENT, "twirl: give --in or --d"};
        }
        qb_channel* c = nullptr;
        check(qb_channel_random(twirl_d, twirl_rank, twirl_seed, &c), "twirl");
        t.reset(c);
      }
      check(qb_channel_twirl(t.get(), twirl_samples, twirl_seed, &raw), "twirl");
      print(OwnedString(raw));
    } else if (*werner) {
      qb_cloner* c = nullptr;
      check(qb_cloner_werner(werner_d, werner_n, werner_m, &c), "cloner werner");
      const OwnedCloner w(c);
      if (!emit_choi.empty()) {
        check(qb_cloner_choi_json(w.get(), &raw), "cloner werner");
        write_file(emit_choi, OwnedString(raw).get());
      }
      check(qb_cloner_to_json(w.get(), &raw), "cloner werner");
      print(OwnedString(raw));
    } else if (*shrink) {
      const OwnedCloner c = load_cloner(shrink_in);
      check(qb_cloner_shrink(c.get(), shrink_samples, shrink_seed,
                             allow_uncertified ? 1 : 0, &raw),
            "cloner shrink");
      print(OwnedString(raw));
    } else if (*optimize) {
      check(qb_optimize_qubit_12(&raw), "cloner optimize-qubit-12");
      print(OwnedString(raw));
    } else if (*verify) {
      int passed = 0;
      check(qb_verify(suite.c_str(), verify_seed, timings ? 1 : 0, &raw, &passed),
            "verify");
      print(OwnedString(raw));
      std::cerr << "suite " << suite << ": " << (passed ? "pass" : "FAIL") << '\n';
      return passed ? 0 : kExitVerifyFailed;
    }
  } catch (const CallError& e) {
    std::cerr << "qbloch: " << e.message << '\n';
    return kExitBadInput;
  }
  return 0;
}
