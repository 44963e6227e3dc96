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

#include "pdistill/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace pdistill {

double binary_entropy(double p) {
  if (p < -1e-12 || p > 1.0 + 1e-12) throw LinalgError("binary_entropy: p = " + std::to_string(p) + " outside [0, 1]");
  p = std::clamp(p, 0.0, 1.0);
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

double hashing_rate(double p) {
  if (p < 0.5 - 1e-12)
    throw LinalgError("hashing_rate: p = " + std::to_string(p) + " < 1/2; relabel the +/- components");
  return std::clamp(1.0 - binary_entropy(p), 0.0, 1.0);
}

double key_rate(const PrivateStateSpec& spec) { return std::log2(static_cast<double>(spec.d)); }

PairBound pair_bound(const PrivateState& state, std::size_t i, std::size_t j, const OverlapOptions& options) {
  const auto& spec = state.spec;
  PairBound pb;
  pb.i = i;
  pb.j = j;
  try {
    pb.overlap = optimize_pair(spec, i, j, options);
    const auto predicted = predict_outcome(pb.overlap, spec.d);
    // sign relabeling keeps the rate formula in its domain
    pb.p = std::max(predicted.p, 1.0 - predicted.p);
    pb.hashing_rate = hashing_rate(pb.p);
    pb.paper_rate = std::max(pb.overlap.a1, pb.overlap.a2) * pb.hashing_rate;

    const auto filters = build_filters(spec, pb.overlap, i, j);
    const auto outcome = apply_filter(state, filters);
    pb.variant = filters.variant;
    pb.success_prob = outcome.success_prob;
    pb.p_sim = outcome.p;
    pb.residual = outcome.residual;
    pb.post_entropy = von_neumann_entropy(outcome.post_state);
    pb.verified_rate = outcome.success_prob * hashing_rate(std::max(outcome.p, 1.0 - outcome.p));
    pb.ok = true;
  } catch (const std::exception& e) {
    pb.ok = false;
    pb.error = e.what();
  }
  return pb;
}

BoundReport ed_lower_bound(const PrivateStateSpec& spec, const BoundOptions& options) {
  const auto state = build_private_state(spec);
  BoundReport report;
  for (std::size_t i = 0; i < spec.d; ++i) {
    for (std::size_t j = i + 1; j < spec.d; ++j) {
      auto pb = pair_bound(state, i, j, options.overlap);
      if (pb.ok) {
        if (!report.best_pair || pb.verified_rate > report.best_verified_rate) {
          report.best_verified_rate = pb.verified_rate;
          report.best_pair = std::make_pair(i, j);
        }
        report.best_paper_rate = std::max(report.best_paper_rate, pb.paper_rate);
      }
      report.per_pair.push_back(std::move(pb));
    }
  }
  return report;
}

EfCertificate ef_certificate(const PrivateStateSpec& spec, std::size_t samples, std::uint64_t seed) {
  spec.validate();
  if (spec.parties != 2) throw LinalgError("ef_certificate: bipartite private states only");
  constexpr double kTol = 1e-9;

  EfCertificate cert;
  cert.d = spec.d;
  cert.log_d = key_rate(spec);
  cert.samples = samples;
  cert.min_entropy_found = std::numeric_limits<double>::infinity();

  const auto pairs = eigenvectors_of_pdit(spec);
  const Dims dims = spec.layout().dims();  // key_1, key_2, shield_1, shield_2
  const std::array<std::size_t, 2> alice{0, 2};
  const std::array<std::size_t, 1> alice_shield{0};
  const auto s = static_cast<Eigen::Index>(spec.shield_dim());
  const double sqrt_d = std::sqrt(static_cast<double>(spec.d));

  auto rng = make_rng(seed);
  double entropy_sum = 0.0;
  bool passed = true;
  for (std::size_t n = 0; n < samples; ++n) {
    const ComplexMatrix coeffs = ginibre(pairs.size(), 1, rng);
    ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(spec.total_dim()));
    for (std::size_t k = 0; k < pairs.size(); ++k) psi += coeffs(static_cast<Eigen::Index>(k), 0) * pairs[k].vector;
    psi.normalize();

    const double direct = von_neumann_entropy(partial_trace(psi * psi.adjoint(), dims, alice));

    double branch_sum = 0.0;
    for (std::size_t j = 0; j < spec.d; ++j) {
      const auto off = static_cast<Eigen::Index>(repeated_key_index(j, spec.d, 2)) * s;
      const ComplexVector branch = sqrt_d * psi.segment(off, s);
      branch_sum += von_neumann_entropy(partial_trace(branch * branch.adjoint(), spec.shield_dims, alice_shield));
    }
    const double identity = cert.log_d + branch_sum / static_cast<double>(spec.d);

    cert.max_identity_error = std::max(cert.max_identity_error, std::abs(direct - identity));
    cert.min_entropy_found = std::min(cert.min_entropy_found, direct);
    entropy_sum += direct;
    const bool ok = direct >= cert.log_d - kTol && std::abs(direct - identity) <= kTol;
    if (!ok && passed) {
      passed = false;
      cert.witness = psi;
    }
  }
  if (samples == 0) cert.min_entropy_found = cert.log_d;
  cert.mean_entropy = samples > 0 ? entropy_sum / static_cast<double>(samples) : cert.log_d;
  cert.margin = cert.min_entropy_found - cert.log_d;
  cert.passed = passed;
  return cert;
}

}  // namespace pdistill
