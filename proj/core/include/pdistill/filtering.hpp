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

#include <vector>

#include "pdistill/linalg.hpp"
#include "pdistill/overlap.hpp"
#include "pdistill/private_state.hpp"

namespace pdistill {

enum class FilterVariant { kV, kW };

std::string to_string(FilterVariant v);

/// Local filter operators for one key pair (i, j). Each operator maps
/// key_k (x) shield_k onto a qubit whose |0>, |1> stand for key values i, j.
struct FilterSet {
  std::vector<ComplexMatrix> party_ops;  // 2 x (d * shield_dims[k])
  std::size_t i = 0;
  std::size_t j = 1;
  std::size_t scaled_party = 0;
  FilterVariant variant = FilterVariant::kV;
};

struct FilterOutcome {
  DensityMatrix post_state;  // on N qubits
  double success_prob;
  double p;         // weight of (|0..0> + |1..1>)/sqrt(2)
  double residual;  // trace distance to the two-GHZ-projector mixture with weight p
  Complex coherence;  // <0..0|post_state|1..1>
};

struct PredictedOutcome {
  double success_prob;
  double p;
};

/// First party: V = |i><i| (x) <bra_1| + sqrt(a1/a2) e^{i theta} |j><j| (x) <ket_1|
/// when a2 >= a1, otherwise W = sqrt(a2/a1) e^{-i theta} V. Others: P_k.
FilterSet build_filters(const PrivateStateSpec& spec, const OverlapResult& overlap, std::size_t i,
                        std::size_t j);

FilterOutcome apply_filter(const PrivateState& state, const FilterSet& filters);

/// Closed form for the filtered branch: success 2 min(a1, a2) / d and
/// p = 1/2 + eta / (2 sqrt(a1 a2)).
PredictedOutcome predict_outcome(const OverlapResult& overlap, std::size_t d);

/// p |GHZ+><GHZ+| + (1-p) |GHZ-><GHZ-| on `parties` qubits.
ComplexMatrix ideal_ghz_mixture(double p, std::size_t parties);

double operator_norm(const ComplexMatrix& m);

}  // namespace pdistill
