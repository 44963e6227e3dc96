// Copyright 2026 The pdistill Authors
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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "pdistill/linalg.hpp"

namespace pdistill::cli {

/// Everything a run depends on. Reports embed config_to_json(config), which is
/// enough to repeat the run.
struct RunConfig {
  std::string command;
  std::uint64_t seed = 1;
  double tol_psd = tol::kPsd;
  double tol_herm = tol::kHermitian;
  double tol_conv = 1e-12;
  double tol_residual = 1e-9;
  std::size_t restarts = 32;
  std::size_t basis_starts = 4;
  std::size_t max_iters = 200;
  std::string out_dir;  // empty: write to stdout

  // gen
  std::string kind = "density";
  std::size_t dim = 2;
  std::optional<std::size_t> rank;

  // build, sweep
  std::size_t d = 2;
  std::size_t parties = 2;
  Dims shield_dims{2, 2};
  std::optional<std::size_t> shield_rank;
  std::string shield_file;
  std::vector<std::string> unitary_files;

  // eta, distill, bound, certify, sweep
  std::string spec_file;
  std::size_t i = 0;
  std::size_t j = 1;
  bool all_pairs = false;
  std::size_t oracle_samples = 0;
  std::size_t cert_samples = 200;
  std::size_t copies = 1;

  // sweep
  std::string knob = "mix";
  std::vector<double> values;
};

enum ExitCode : int { kOk = 0, kInvalid = 1, kCertificateFailed = 2 };

nlohmann::json config_to_json(const RunConfig& config);

/// Parses argv (flags, then PDISTILL_* environment variables, then defaults).
/// Returns the config or an exit code if parsing ended the run (--help, errors).
std::variant<RunConfig, int> parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pdistill::cli
