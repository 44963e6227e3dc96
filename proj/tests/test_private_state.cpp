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

#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace pdistill;
using namespace pdistill::testing;

namespace {

double max_abs(const ComplexMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

ComplexMatrix power_state(const ComplexMatrix& gamma, std::size_t m) {
  ComplexMatrix out = gamma;
  for (std::size_t c = 1; c < m; ++c) out = kron(out, gamma);
  return out;
}

}  // namespace

TEST(BuildPrivateState, TrivialShieldIsBellState) {
  const auto state = build_private_state(trivial_spec());
  EXPECT_LE(max_abs(state.rho.matrix() - projector(phi_plus())), 1e-15);
  EXPECT_EQ(state.rho.layout().factors()[0].label, "key_1");
  EXPECT_EQ(state.rho.layout().factors()[3].label, "shield_2");
}

TEST(BuildPrivateState, SwapShieldBlocks) {
  const auto state = build_private_state(swap_spec());
  const ComplexMatrix& g = state.rho.matrix();
  ASSERT_EQ(g.rows(), 16);
  EXPECT_LE(max_abs(g - assemble_private_state(swap_spec())), 1e-15);
  // key |00> occupies rows 0..3, key |11> rows 12..15
  EXPECT_LE(max_abs(g.block(0, 0, 4, 4) - identity(4) / 8.0), 1e-15);
  EXPECT_LE(max_abs(g.block(12, 12, 4, 4) - identity(4) / 8.0), 1e-15);
  EXPECT_LE(max_abs(g.block(0, 12, 4, 4) - swap_gate() / 8.0), 1e-15);
  EXPECT_LE(max_abs(g.block(12, 0, 4, 4) - swap_gate() / 8.0), 1e-15);
  EXPECT_LE(max_abs(g.block(4, 0, 8, 16)), 0.0);
}

TEST(BuildPrivateState, CorpusMatchesAssemblyOracleAndValidates) {
  for (std::uint64_t idx = 0; idx < 12; ++idx) {
    const auto spec = corpus_spec(idx);
    const auto state = build_private_state(spec);
    EXPECT_LE(max_abs(state.rho.matrix() - assemble_private_state(spec)), 1e-12) << idx;
    if (spec.total_dim() <= 256) EXPECT_TRUE(check_state(state.rho.matrix(), state.rho.layout()).empty()) << idx;
  }
}

TEST(BuildPrivateState, KeyMeasurementIsPerfectlyCorrelated) {
  for (std::uint64_t idx = 0; idx < 8; ++idx) {
    const auto spec = corpus_spec(idx);
    const auto state = build_private_state(spec);
    const auto s = static_cast<Eigen::Index>(spec.shield_dim());
    for (std::size_t key = 0; key < spec.key_dim(); ++key) {
      const double prob = state.rho.matrix().block(static_cast<Eigen::Index>(key) * s, static_cast<Eigen::Index>(key) * s, s, s)
                              .trace()
                              .real();
      bool repeated = false;
      for (std::size_t i = 0; i < spec.d; ++i) repeated = repeated || key == repeated_key_index(i, spec.d, spec.parties);
      EXPECT_NEAR(prob, repeated ? 1.0 / static_cast<double>(spec.d) : 0.0, 1e-12);
    }
  }
}

TEST(BuildPrivateState, RejectsBrokenSpecs) {
  EXPECT_THROW(make_spec(2, 2, {2, 2}, {identity(4)}, identity(4) / 4.0), LinalgError);
  EXPECT_THROW(make_spec(2, 2, {2, 2}, {identity(4), identity(2)}, identity(4) / 4.0), LinalgError);
  EXPECT_THROW(make_spec(2, 3, {2, 2}, {identity(4), identity(4)}, identity(4) / 4.0), LinalgError);
  EXPECT_THROW(make_spec(1, 2, {2, 2}, {identity(4)}, identity(4) / 4.0), LinalgError);
  EXPECT_THROW(make_spec(2, 2, {2, 2}, {identity(4), identity(4)}, identity(4) / 3.0), InvalidState);
}

TEST(PditEigenvectors, TrivialShield) {
  const auto pairs = eigenvectors_of_pdit(trivial_spec());
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_NEAR(pairs[0].value, 1.0, 1e-15);
  EXPECT_NEAR(std::abs(pairs[0].vector.dot(phi_plus())), 1.0, 1e-15);
}

TEST(PditEigenvectors, SwapShieldSpectrum) {
  const auto pairs = eigenvectors_of_pdit(swap_spec());
  ASSERT_EQ(pairs.size(), 4u);
  for (const auto& p : pairs) EXPECT_NEAR(p.value, 0.25, 1e-15);
  const auto full = hermitian_eig(assemble_private_state(swap_spec()));
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(full.eigenvalues[k], 0.25, 1e-14);
  for (int k = 4; k < 16; ++k) EXPECT_NEAR(full.eigenvalues[k], 0.0, 1e-14);
}

TEST(PditEigenvectors, EigenpairResidualAndReconstruction) {
  for (std::uint64_t idx = 0; idx < 16; ++idx) {
    auto spec = corpus_spec(idx);
    if (spec.parties != 2) continue;
    const auto state = build_private_state(spec);
    const auto pairs = eigenvectors_of_pdit(spec);
    ComplexMatrix rebuilt = ComplexMatrix::Zero(state.rho.matrix().rows(), state.rho.matrix().cols());
    for (const auto& p : pairs) {
      EXPECT_LE((state.rho.matrix() * p.vector - p.value * p.vector).norm(), 1e-10);
      rebuilt += p.value * p.vector * p.vector.adjoint();
    }
    EXPECT_LE((rebuilt - state.rho.matrix()).norm(), 1e-10);
  }
}

TEST(PditEigenvectors, LowRankShieldDropsZeroEigenvalues) {
  RandomSpecOptions opts;
  opts.shield_rank = 2;
  const auto pairs = eigenvectors_of_pdit(random_spec(opts, 3));
  EXPECT_EQ(pairs.size(), 2u);
}

TEST(PditEigenvectors, MultipartiteNeedsFlag) {
  const auto spec = corpus_spec(2);  // three parties
  ASSERT_EQ(spec.parties, 3u);
  EXPECT_THROW(eigenvectors_of_pdit(spec), LinalgError);
  const auto state = build_private_state(spec);
  for (const auto& p : eigenvectors_of_pdit(spec, true))
    EXPECT_LE((state.rho.matrix() * p.vector - p.value * p.vector).norm(), 1e-10);
}

TEST(TensorPower, OneCopyIsIdentity) {
  const auto tp = tensor_power_spec(swap_spec(), 1);
  EXPECT_EQ(tp.permutation, (Dims{0, 1, 2, 3}));
  EXPECT_EQ(tp.spec.d, 2u);
  EXPECT_LE(max_abs(tp.spec.shield.matrix() - swap_spec().shield.matrix()), 0.0);
}

TEST(TensorPower, TrivialShieldSquaresToFourLevelBellState) {
  const auto spec = trivial_spec();
  const auto tp = tensor_power_spec(spec, 2);
  ASSERT_EQ(tp.spec.d, 4u);
  ComplexVector phi4 = ComplexVector::Zero(16);
  for (int i = 0; i < 4; ++i) phi4(i * 4 + i) = 0.5;
  const ComplexMatrix squared = power_state(build_private_state(spec).rho.matrix(), 2);
  EXPECT_LE(max_abs(permute_subsystems(squared, tp.fine_dims, tp.permutation) - projector(phi4)), 1e-15);
  EXPECT_LE(max_abs(build_private_state(tp.spec).rho.matrix() - projector(phi4)), 1e-15);
}

TEST(TensorPower, PermutedPowerEqualsBuiltState) {
  std::vector<PrivateStateSpec> specs{swap_spec(), bell_shield_spec(), corpus_spec(0), corpus_spec(4)};
  for (const auto& spec : specs) {
    const auto tp = tensor_power_spec(spec, 2);
    const ComplexMatrix squared = power_state(build_private_state(spec).rho.matrix(), 2);
    const ComplexMatrix built = build_private_state(tp.spec).rho.matrix();
    EXPECT_LE(max_abs(permute_subsystems(squared, tp.fine_dims, tp.permutation) - built), 1e-12);
    EXPECT_LE(trace_distance(permute_subsystems(squared, tp.fine_dims, tp.permutation), built), 1e-10);
  }
}

TEST(TensorPower, ThreeParties) {
  const auto spec = make_spec(2, 3, {1, 2, 1}, {identity(2), pauli_x()}, diag({0.7, 0.3}));
  const auto tp = tensor_power_spec(spec, 2);
  ASSERT_EQ(tp.spec.d, 4u);
  const ComplexMatrix cubed = power_state(build_private_state(spec).rho.matrix(), 2);
  EXPECT_LE(max_abs(permute_subsystems(cubed, tp.fine_dims, tp.permutation) -
                    build_private_state(tp.spec).rho.matrix()),
            1e-12);
}

TEST(TensorPower, DimensionCap) {
  EXPECT_NO_THROW(tensor_power_spec(swap_spec(), 3));  // 16^3 = 4096
  EXPECT_THROW(tensor_power_spec(swap_spec(), 4), LinalgError);
  EXPECT_THROW(tensor_power_spec(swap_spec(), 2, 255), LinalgError);
  EXPECT_THROW(tensor_power_spec(swap_spec(), 0), LinalgError);
}
