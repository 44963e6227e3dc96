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
#include <span>
#include <vector>

#include "pdistill/linalg.hpp"
#include "pdistill/private_state.hpp"

namespace pdistill {

struct OverlapOptions {
  std::size_t restarts = 32;     // Haar-random starts
  std::size_t basis_starts = 4;  // starts at the largest-modulus standard-basis entries of X
  std::size_t max_iters = 200;
  double conv_tol = 1e-12;
  std::uint64_t seed = 0;
  double eta_floor = 1e-8;
};

/// One product tuple (f_1..f_N ; g_1..g_N) and its overlap <f|X|g> = eta e^{i theta}.
struct ProductOverlap {
  double eta = 0.0;
  double theta = 0.0;
  std::vector<ComplexVector> bra_vectors;
  std::vector<ComplexVector> ket_vectors;
  bool converged = false;
  bool below_floor = false;
  std::size_t best_restart = 0;
  std::size_t iterations = 0;
  std::vector<double> history;  // objective after each sweep of the winning start

  ComplexVector bra() const { return kron_all(bra_vectors); }
  ComplexVector ket() const { return kron_all(ket_vectors); }
};

/// Product overlap of U_i shield U_j^dagger, completed with the diagonal values
///   a1 = <bra| U_i shield U_i^dagger |bra>,  a2 = <ket| U_j shield U_j^dagger |ket>.
struct OverlapResult : ProductOverlap {
  double a1 = 0.0;
  double a2 = 0.0;
};

/// X_ij = U_i shield U_j^dagger.
ComplexMatrix cross_operator(const PrivateStateSpec& spec, std::size_t i, std::size_t j);

/// Local-vector contraction of X|g> against every bra factor except `party`.
ComplexVector contract_bra_side(const ComplexVector& xg, std::span<const std::size_t> local_dims,
                                std::span<const ComplexVector> bra, std::size_t party);

/// Alternating maximization from a single starting ket tuple. For two parties
/// each half-sweep is a joint Schmidt update; otherwise one local vector at a time.
ProductOverlap refine_product_overlap(const ComplexMatrix& x, std::span<const std::size_t> local_dims,
                                      std::vector<ComplexVector> bra, std::vector<ComplexVector> ket,
                                      std::size_t max_iters, double conv_tol);

/// Multistart maximization of |<f_1..f_N| X |g_1..g_N>| over unit product vectors.
/// Deterministic for a given options.seed.
ProductOverlap eta_optimize(const ComplexMatrix& x, std::span<const std::size_t> local_dims,
                            const OverlapOptions& options = {});

/// Fills a1/a2 for the tuple in `result`.
std::pair<double, double> a_values(const PrivateStateSpec& spec, std::size_t i, std::size_t j,
                                   OverlapResult& result);

/// cross_operator + eta_optimize + a_values for one key pair.
OverlapResult optimize_pair(const PrivateStateSpec& spec, std::size_t i, std::size_t j,
                            const OverlapOptions& options = {});

/// Re-evaluates a user-supplied product tuple against X_ij (no optimization).
OverlapResult evaluate_tuple(const PrivateStateSpec& spec, std::size_t i, std::size_t j,
                             std::vector<ComplexVector> bra, std::vector<ComplexVector> ket);

/// Independent lower bound on eta: best of `samples` Haar-random product tuples,
/// each polished by 50 single-vector sweeps. Desk scale only (dim <= 64).
double brute_force_eta(const ComplexMatrix& x, std::span<const std::size_t> local_dims,
                       std::size_t samples, std::uint64_t seed);

}  // namespace pdistill
