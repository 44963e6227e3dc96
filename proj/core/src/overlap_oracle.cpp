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

#include <cmath>

#include "pdistill/overlap.hpp"

namespace pdistill {

namespace {

// <(x) side with slot k replaced by |e_a>| target>, for every a; built from explicit products.
ComplexVector slot_overlaps(const ComplexVector& target, const std::vector<ComplexVector>& side,
                            std::size_t k) {
  const auto dk = side[k].size();
  ComplexVector out(dk);
  std::vector<ComplexVector> probe = side;
  for (Eigen::Index a = 0; a < dk; ++a) {
    probe[k] = ComplexVector::Unit(dk, a);
    out(a) = kron_all(probe).dot(target);
  }
  return out;
}

}  // namespace

double brute_force_eta(const ComplexMatrix& x, std::span<const std::size_t> local_dims,
                       std::size_t samples, std::uint64_t seed) {
  if (x.rows() != x.cols() || product(local_dims) != static_cast<std::size_t>(x.rows()))
    throw LinalgError("brute_force_eta: local dimensions do not match operator");
  if (x.rows() > 64) throw LinalgError("brute_force_eta: desk scale only (dimension <= 64)");
  constexpr int kSweeps = 50;

  double best = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    auto rng = make_rng(seed ^ 0x9e3779b97f4a7c15ULL, s);
    std::vector<ComplexVector> f, g;
    for (std::size_t dim : local_dims) f.push_back(random_unit_vector(dim, rng));
    for (std::size_t dim : local_dims) g.push_back(random_unit_vector(dim, rng));
    for (int sweep = 0; sweep < kSweeps; ++sweep) {
      for (std::size_t k = 0; k < f.size(); ++k) {
        ComplexVector v = slot_overlaps(x * kron_all(g), f, k);
        // maximize |<f_k|v>| -> f_k parallel to v
        if (v.norm() > 0.0) f[k] = v / v.norm();
      }
      for (std::size_t k = 0; k < g.size(); ++k) {
        ComplexVector v = slot_overlaps(x.adjoint() * kron_all(f), g, k);
        if (v.norm() > 0.0) g[k] = v / v.norm();
      }
    }
    best = std::max(best, std::abs(kron_all(f).dot(x * kron_all(g))));
  }
  return best;
}

}  // namespace pdistill
