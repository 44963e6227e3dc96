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
#include <vector>

#include "pdistill/linalg.hpp"
#include "pdistill/state_gen.hpp"

namespace pdistill {

/// Generating data of an N-party private state with key dimension d:
///   Gamma = (1/d) sum_{i,j} |i...i><j...j| (x) U_i shield U_j^dagger.
struct PrivateStateSpec {
  std::size_t d = 2;
  std::size_t parties = 2;
  Dims shield_dims;                // dimension of each party's shield factor
  std::vector<UnitaryOp> unitaries;  // one per key value, acting on the joint shield
  DensityMatrix shield;

  std::size_t shield_dim() const { return product(shield_dims); }
  std::size_t key_dim() const;  // d^parties
  std::size_t total_dim() const { return key_dim() * shield_dim(); }

  /// Throws LinalgError naming the broken invariant.
  void validate() const;

  /// [key_1 ... key_N, shield_1 ... shield_N]; factor k of each group belongs to party k.
  SubsystemLayout layout() const;
  SubsystemLayout shield_layout() const;
};

struct PrivateState {
  PrivateStateSpec spec;
  DensityMatrix rho;
};

PrivateState build_private_state(const PrivateStateSpec& spec);

/// Index of |i...i> within the key register.
std::size_t repeated_key_index(std::size_t i, std::size_t d, std::size_t parties);

struct Eigenpair {
  double value;
  ComplexVector vector;
};

/// Nonzero eigenpairs (1/sqrt(d)) sum_j |j...j> (x) U_j |phi_k>, one per shield
/// eigenvalue above 1e-12. Only bipartite specs unless `allow_multipartite`.
std::vector<Eigenpair> eigenvectors_of_pdit(const PrivateStateSpec& spec, bool allow_multipartite = false);

struct TensorPower {
  PrivateStateSpec spec;
  /// Factor permutation over the fine layout of Gamma^{(x)m} (m copies of
  /// [key_1..key_N, shield_1..shield_N]); output factor k is input factor permutation[k].
  Dims permutation;
  Dims fine_dims;  // factor dims of Gamma^{(x)m} before permutation
};

inline constexpr std::size_t kDefaultDimCap = 4096;

/// Spec of Gamma^{(x)m} viewed as a private state with key dimension d^m.
TensorPower tensor_power_spec(const PrivateStateSpec& spec, std::size_t m,
                              std::size_t dim_cap = kDefaultDimCap);

struct RandomSpecOptions {
  std::size_t d = 2;
  std::size_t parties = 2;
  Dims shield_dims{2, 2};
  std::optional<std::size_t> shield_rank;  // defaults to full rank
};

/// Haar unitaries and a Wishart shield drawn from `seed`.
PrivateStateSpec random_spec(const RandomSpecOptions& options, std::uint64_t seed);

/// Convenience constructor from raw matrices; validates everything.
PrivateStateSpec make_spec(std::size_t d, std::size_t parties, Dims shield_dims,
                           std::vector<ComplexMatrix> unitaries, ComplexMatrix shield,
                           const StateTolerances& tolerances = {});

}  // namespace pdistill
