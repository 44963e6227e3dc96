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

#include "pdistill/private_state.hpp"

#include <cmath>

namespace pdistill {

std::size_t PrivateStateSpec::key_dim() const {
  std::size_t n = 1;
  for (std::size_t k = 0; k < parties; ++k) n *= d;
  return n;
}

void PrivateStateSpec::validate() const {
  if (d < 2) throw LinalgError("private state: key dimension d must be >= 2");
  if (parties < 2) throw LinalgError("private state: need at least 2 parties");
  if (shield_dims.size() != parties)
    throw LinalgError("private state: shield_dims has " + std::to_string(shield_dims.size()) +
                      " entries for " + std::to_string(parties) + " parties");
  for (std::size_t s : shield_dims)
    if (s == 0) throw LinalgError("private state: shield factor of dimension 0");
  if (unitaries.size() != d)
    throw LinalgError("private state: expected " + std::to_string(d) + " unitaries, got " +
                      std::to_string(unitaries.size()));
  const std::size_t sd = shield_dim();
  for (std::size_t i = 0; i < unitaries.size(); ++i)
    if (unitaries[i].dim() != sd)
      throw LinalgError("private state: unitary " + std::to_string(i) + " has dimension " +
                        std::to_string(unitaries[i].dim()) + ", shield dimension is " + std::to_string(sd));
  if (shield.dim() != sd)
    throw LinalgError("private state: shield state has dimension " + std::to_string(shield.dim()) +
                      ", expected " + std::to_string(sd));
}

SubsystemLayout PrivateStateSpec::layout() const {
  std::vector<Factor> f;
  for (std::size_t k = 0; k < parties; ++k)
    f.push_back({"key_" + std::to_string(k + 1), d, k, FactorRole::kKey});
  for (std::size_t k = 0; k < parties; ++k)
    f.push_back({"shield_" + std::to_string(k + 1), shield_dims[k], k, FactorRole::kShield});
  return SubsystemLayout(std::move(f));
}

SubsystemLayout PrivateStateSpec::shield_layout() const {
  std::vector<Factor> f;
  for (std::size_t k = 0; k < parties; ++k)
    f.push_back({"shield_" + std::to_string(k + 1), shield_dims[k], k, FactorRole::kShield});
  return SubsystemLayout(std::move(f));
}

std::size_t repeated_key_index(std::size_t i, std::size_t d, std::size_t parties) {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < parties; ++k) idx = idx * d + i;
  return idx;
}

PrivateState build_private_state(const PrivateStateSpec& spec) {
  spec.validate();
  const auto s = static_cast<Eigen::Index>(spec.shield_dim());
  const auto n = static_cast<Eigen::Index>(spec.total_dim());
  ComplexMatrix gamma = ComplexMatrix::Zero(n, n);
  const double w = 1.0 / static_cast<double>(spec.d);

  std::vector<ComplexMatrix> rotated;  // U_i shield
  rotated.reserve(spec.d);
  for (const auto& u : spec.unitaries) rotated.push_back(u.matrix() * spec.shield.matrix());

  for (std::size_t i = 0; i < spec.d; ++i) {
    const auto row = static_cast<Eigen::Index>(repeated_key_index(i, spec.d, spec.parties)) * s;
    for (std::size_t j = 0; j < spec.d; ++j) {
      const auto col = static_cast<Eigen::Index>(repeated_key_index(j, spec.d, spec.parties)) * s;
      gamma.block(row, col, s, s) = w * rotated[i] * spec.unitaries[j].matrix().adjoint();
    }
  }
  // PSD by construction: Gamma = W (|+><+| (x) shield) W^dagger with W = sum_i |i..i><i| (x) U_i
  return PrivateState{spec, assume_state(std::move(gamma), spec.layout())};
}

std::vector<Eigenpair> eigenvectors_of_pdit(const PrivateStateSpec& spec, bool allow_multipartite) {
  spec.validate();
  if (spec.parties != 2 && !allow_multipartite)
    throw LinalgError("eigenvectors_of_pdit: spec has " + std::to_string(spec.parties) +
                      " parties; pass allow_multipartite to use the |j...j> form");
  const auto s = static_cast<Eigen::Index>(spec.shield_dim());
  const auto n = static_cast<Eigen::Index>(spec.total_dim());
  const double w = 1.0 / std::sqrt(static_cast<double>(spec.d));

  const auto eig = hermitian_eig(spec.shield.matrix());
  std::vector<Eigenpair> out;
  for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
    if (eig.eigenvalues[k] <= 1e-12) continue;
    const ComplexVector phi = eig.eigenvectors.col(static_cast<Eigen::Index>(k));
    ComplexVector psi = ComplexVector::Zero(n);
    for (std::size_t j = 0; j < spec.d; ++j) {
      const auto off = static_cast<Eigen::Index>(repeated_key_index(j, spec.d, spec.parties)) * s;
      psi.segment(off, s) = w * (spec.unitaries[j].matrix() * phi);
    }
    out.push_back({eig.eigenvalues[k], std::move(psi)});
  }
  return out;
}

TensorPower tensor_power_spec(const PrivateStateSpec& spec, std::size_t m, std::size_t dim_cap) {
  spec.validate();
  if (m == 0) throw LinalgError("tensor_power_spec: m must be >= 1");
  const std::size_t n_parties = spec.parties;

  std::size_t new_d = 1;
  std::size_t total = 1;
  for (std::size_t c = 0; c < m; ++c) {
    new_d *= spec.d;
    total *= spec.total_dim();
    if (total > dim_cap)
      throw LinalgError("tensor_power_spec: total dimension exceeds cap " + std::to_string(dim_cap));
  }

  TensorPower out{spec, {}, {}};
  // Fine layout of Gamma^{(x)m}: copy c holds factors [key_1..key_N, shield_1..shield_N].
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t k = 0; k < n_parties; ++k) out.fine_dims.push_back(spec.d);
    for (std::size_t k = 0; k < n_parties; ++k) out.fine_dims.push_back(spec.shield_dims[k]);
  }
  for (std::size_t k = 0; k < n_parties; ++k)
    for (std::size_t c = 0; c < m; ++c) out.permutation.push_back(c * 2 * n_parties + k);
  for (std::size_t k = 0; k < n_parties; ++k)
    for (std::size_t c = 0; c < m; ++c) out.permutation.push_back(c * 2 * n_parties + n_parties + k);

  if (m == 1) return out;

  // Shield-only regrouping: copy-major (c, k) -> party-major (k, c).
  Dims shield_fine;
  Dims shield_perm;
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t k = 0; k < n_parties; ++k) shield_fine.push_back(spec.shield_dims[k]);
  for (std::size_t k = 0; k < n_parties; ++k)
    for (std::size_t c = 0; c < m; ++c) shield_perm.push_back(c * n_parties + k);

  ComplexMatrix shield = spec.shield.matrix();
  for (std::size_t c = 1; c < m; ++c) shield = kron(shield, spec.shield.matrix());
  shield = permute_subsystems(shield, shield_fine, shield_perm);

  std::vector<ComplexMatrix> unitaries;
  unitaries.reserve(new_d);
  for (std::size_t idx = 0; idx < new_d; ++idx) {
    // digits of idx in base d, most significant first = copy 0
    Dims digits(m);
    std::size_t rest = idx;
    for (std::size_t c = m; c-- > 0;) {
      digits[c] = rest % spec.d;
      rest /= spec.d;
    }
    ComplexMatrix u = spec.unitaries[digits[0]].matrix();
    for (std::size_t c = 1; c < m; ++c) u = kron(u, spec.unitaries[digits[c]].matrix());
    unitaries.push_back(permute_subsystems(u, shield_fine, shield_perm));
  }

  Dims new_shield_dims;
  for (std::size_t k = 0; k < n_parties; ++k) {
    std::size_t dim = 1;
    for (std::size_t c = 0; c < m; ++c) dim *= spec.shield_dims[k];
    new_shield_dims.push_back(dim);
  }
  out.spec = make_spec(new_d, n_parties, std::move(new_shield_dims), std::move(unitaries), std::move(shield));
  return out;
}

PrivateStateSpec make_spec(std::size_t d, std::size_t parties, Dims shield_dims,
                           std::vector<ComplexMatrix> unitaries, ComplexMatrix shield,
                           const StateTolerances& tolerances) {
  std::vector<UnitaryOp> ops;
  ops.reserve(unitaries.size());
  for (auto& u : unitaries) ops.emplace_back(std::move(u));

  std::vector<Factor> f;
  for (std::size_t k = 0; k < shield_dims.size(); ++k)
    f.push_back({"shield_" + std::to_string(k + 1), shield_dims[k], k, FactorRole::kShield});
  SubsystemLayout layout(std::move(f));
  if (layout.total_dim() != static_cast<std::size_t>(shield.rows()))
    throw LinalgError("private state: shield matrix dimension " + std::to_string(shield.rows()) +
                      " does not match shield_dims product " + std::to_string(layout.total_dim()));

  PrivateStateSpec spec{d, parties, std::move(shield_dims), std::move(ops),
                        validate_state(std::move(shield), std::move(layout), tolerances)};
  spec.validate();
  return spec;
}

PrivateStateSpec random_spec(const RandomSpecOptions& options, std::uint64_t seed) {
  auto rng = make_rng(seed);
  const std::size_t sd = product(options.shield_dims);
  std::vector<ComplexMatrix> unitaries;
  for (std::size_t i = 0; i < options.d; ++i) unitaries.push_back(random_unitary(sd, rng).matrix());
  const auto shield = random_density(sd, options.shield_rank.value_or(sd), rng);
  return make_spec(options.d, options.parties, options.shield_dims, std::move(unitaries), shield.matrix());
}

}  // namespace pdistill
