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
#include <optional>
#include <string>
#include <vector>

#include "pdistill/filtering.hpp"
#include "pdistill/overlap.hpp"
#include "pdistill/private_state.hpp"

namespace pdistill {

/// Binary Shannon entropy in bits, H(0) = H(1) = 0.
double binary_entropy(double p);

/// 1 - H(p) for a two-projector Bell/GHZ mixture with weight p >= 1/2.
double hashing_rate(double p);

/// Bits of key carried by a private state: log2 d.
double key_rate(const PrivateStateSpec& spec);

struct PairBound {
  std::size_t i = 0;
  std::size_t j = 1;
  bool ok = false;
  std::string error;

  OverlapResult overlap;
  double p = 0.5;             // after relabeling so that p >= 1/2
  double hashing_rate = 0.0;  // 1 - H(p)
  double paper_rate = 0.0;    // max(a1, a2) (1 - H(p))
  double verified_rate = 0.0; // simulated success probability (1 - H(p_sim))

  // simulation of the constructed filters
  double success_prob = 0.0;
  double p_sim = 0.5;
  double residual = 0.0;
  double post_entropy = 0.0;
  FilterVariant variant = FilterVariant::kV;
};

struct BoundOptions {
  OverlapOptions overlap;
};

struct BoundReport {
  std::vector<PairBound> per_pair;  // ordered by (i, j)
  std::optional<std::pair<std::size_t, std::size_t>> best_pair;
  double best_paper_rate = 0.0;
  double best_verified_rate = 0.0;
};

/// Per-pair distillable-entanglement lower bounds from local filtering followed
/// by hashing, with every filter simulated on the exact state.
BoundReport ed_lower_bound(const PrivateStateSpec& spec, const BoundOptions& options = {});

/// Evaluates one pair on an already built state.
PairBound pair_bound(const PrivateState& state, std::size_t i, std::size_t j, const OverlapOptions& options);

struct EfCertificate {
  std::size_t d = 0;
  double log_d = 0.0;
  std::size_t samples = 0;
  double min_entropy_found = 0.0;
  double mean_entropy = 0.0;
  double margin = 0.0;                 // min_entropy_found - log_d
  double max_identity_error = 0.0;     // |S direct - (log d + mean_j S(Xi_j))|, worst sample
  bool passed = false;
  std::optional<ComplexVector> witness;  // first failing range vector
};

/// Samples unit vectors in the range of a bipartite private state and checks that
/// the entropy of the (key_1, shield_1) reduction is at least log2 d.
EfCertificate ef_certificate(const PrivateStateSpec& spec, std::size_t samples, std::uint64_t seed);

}  // namespace pdistill
