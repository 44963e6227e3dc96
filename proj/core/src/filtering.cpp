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

#include "pdistill/filtering.hpp"

#include <cmath>

namespace pdistill {

std::string to_string(FilterVariant v) { return v == FilterVariant::kV ? "V" : "W"; }

namespace {

ComplexMatrix branch_operator(std::size_t d, std::size_t i, std::size_t j, const ComplexVector& bra,
                              const ComplexVector& ket, Complex coeff_i, Complex coeff_j) {
  const auto s = bra.size();
  ComplexMatrix op = ComplexMatrix::Zero(2, static_cast<Eigen::Index>(d) * s);
  op.block(0, static_cast<Eigen::Index>(i) * s, 1, s) = coeff_i * bra.adjoint();
  op.block(1, static_cast<Eigen::Index>(j) * s, 1, s) = coeff_j * ket.adjoint();
  return op;
}

SubsystemLayout qubit_layout(std::size_t parties) {
  std::vector<Factor> f;
  for (std::size_t k = 0; k < parties; ++k) f.push_back({"out_" + std::to_string(k + 1), 2, k, FactorRole::kKey});
  return SubsystemLayout(std::move(f));
}

}  // namespace

FilterSet build_filters(const PrivateStateSpec& spec, const OverlapResult& overlap, std::size_t i,
                        std::size_t j) {
  if (i >= spec.d || j >= spec.d || i == j) throw LinalgError("build_filters: need distinct key indices below d");
  if (!(overlap.a1 > 0.0) || !(overlap.a2 > 0.0))
    throw LinalgError("build_filters: a1 and a2 must be positive (a1=" + std::to_string(overlap.a1) +
                      ", a2=" + std::to_string(overlap.a2) + ")");
  if (overlap.bra_vectors.size() != spec.parties || overlap.ket_vectors.size() != spec.parties)
    throw LinalgError("build_filters: overlap tuple does not match party count");

  FilterSet out;
  out.i = i;
  out.j = j;
  out.scaled_party = 0;
  out.variant = overlap.a2 >= overlap.a1 ? FilterVariant::kV : FilterVariant::kW;

  const Complex phase = std::polar(1.0, overlap.theta);
  Complex first_i = 1.0;
  Complex first_j = std::sqrt(overlap.a1 / overlap.a2) * phase;
  if (out.variant == FilterVariant::kW) {
    const Complex w = std::sqrt(overlap.a2 / overlap.a1) * std::conj(phase);
    first_i *= w;
    first_j *= w;
  }
  for (std::size_t k = 0; k < spec.parties; ++k) {
    const bool scaled = k == out.scaled_party;
    out.party_ops.push_back(branch_operator(spec.d, i, j, overlap.bra_vectors[k], overlap.ket_vectors[k],
                                            scaled ? first_i : Complex(1.0), scaled ? first_j : Complex(1.0)));
  }
  return out;
}

FilterOutcome apply_filter(const PrivateState& state, const FilterSet& filters) {
  const auto& spec = state.spec;
  if (filters.party_ops.size() != spec.parties) throw LinalgError("apply_filter: one operator per party required");
  for (std::size_t k = 0; k < spec.parties; ++k) {
    const auto& op = filters.party_ops[k];
    if (op.rows() != 2 || static_cast<std::size_t>(op.cols()) != spec.d * spec.shield_dims[k])
      throw LinalgError("apply_filter: operator for party " + std::to_string(k + 1) +
                        " does not act on key (x) shield");
  }

  // [key_1..key_N, shield_1..shield_N] -> [key_1, shield_1, ..., key_N, shield_N]
  const Dims dims = state.rho.layout().dims();
  Dims perm;
  for (std::size_t k = 0; k < spec.parties; ++k) {
    perm.push_back(k);
    perm.push_back(spec.parties + k);
  }
  const ComplexMatrix grouped = permute_subsystems(state.rho.matrix(), dims, perm);

  ComplexMatrix f = filters.party_ops[0];
  for (std::size_t k = 1; k < spec.parties; ++k) f = kron(f, filters.party_ops[k]);
  ComplexMatrix out = f * grouped * f.adjoint();

  const double success = out.trace().real();
  if (success <= 1e-14) throw LinalgError("apply_filter: degenerate filter, success probability " + std::to_string(success));
  out /= success;
  out = 0.5 * (out + out.adjoint()).eval();

  const ComplexVector plus = bell_vector(+1, 0, 1, 2, spec.parties);
  const double p = plus.dot(out * plus).real();
  const Complex coherence = out(0, out.cols() - 1);
  const double residual = trace_distance(out, ideal_ghz_mixture(p, spec.parties));
  return FilterOutcome{validate_state(std::move(out), qubit_layout(spec.parties)), success, p, residual, coherence};
}

PredictedOutcome predict_outcome(const OverlapResult& overlap, std::size_t d) {
  const double amin = std::min(overlap.a1, overlap.a2);
  const double denom = std::sqrt(overlap.a1 * overlap.a2);
  const double p = denom > 0.0 ? 0.5 + overlap.eta / (2.0 * denom) : 0.5;
  return {2.0 * amin / static_cast<double>(d), p};
}

ComplexMatrix ideal_ghz_mixture(double p, std::size_t parties) {
  const ComplexVector plus = bell_vector(+1, 0, 1, 2, parties);
  const ComplexVector minus = bell_vector(-1, 0, 1, 2, parties);
  return p * plus * plus.adjoint() + (1.0 - p) * minus * minus.adjoint();
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

}  // namespace pdistill
