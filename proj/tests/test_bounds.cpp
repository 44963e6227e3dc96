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

#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace pdistill;
using namespace pdistill::testing;

TEST(BinaryEntropy, Values) {
  EXPECT_NEAR(binary_entropy(0.5), 1.0, 1e-15);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_NEAR(binary_entropy(0.25), 0.8112781244591328, 1e-15);
  EXPECT_NEAR(binary_entropy(0.25), von_neumann_entropy(diag({0.25, 0.75})), 1e-15);
  EXPECT_THROW(binary_entropy(1.1), LinalgError);
  EXPECT_THROW(binary_entropy(-0.01), LinalgError);
}

TEST(HashingRate, Values) {
  EXPECT_NEAR(hashing_rate(1.0), 1.0, 1e-15);
  EXPECT_NEAR(hashing_rate(0.5), 0.0, 1e-15);
  EXPECT_NEAR(hashing_rate(0.9), 0.5310044064107189, 1e-15);
  EXPECT_NEAR(hashing_rate(0.9), 1.0 - binary_entropy_oracle(0.9), 1e-15);
  EXPECT_THROW(hashing_rate(0.4), LinalgError);
}

TEST(KeyRate, LogOfKeyDimension) {
  EXPECT_EQ(key_rate(swap_spec()), 1.0);
  RandomSpecOptions opts;
  opts.d = 4;
  EXPECT_EQ(key_rate(random_spec(opts, 1)), 2.0);
  opts.d = 3;
  EXPECT_NEAR(key_rate(random_spec(opts, 1)), 1.584962500721156, 1e-15);
}

TEST(EdLowerBound, SwapShield) {
  const auto report = ed_lower_bound(swap_spec());
  ASSERT_EQ(report.per_pair.size(), 1u);
  const auto& pb = report.per_pair[0];
  ASSERT_TRUE(pb.ok) << pb.error;
  EXPECT_NEAR(pb.overlap.eta, 0.25, 1e-9);
  EXPECT_NEAR(pb.overlap.a1, 0.25, 1e-9);
  EXPECT_NEAR(pb.overlap.a2, 0.25, 1e-9);
  EXPECT_NEAR(pb.p, 1.0, 1e-9);
  EXPECT_NEAR(report.best_paper_rate, 0.25, 1e-6);
  EXPECT_NEAR(report.best_verified_rate, 0.25, 1e-6);
  ASSERT_TRUE(report.best_pair.has_value());
  EXPECT_EQ(*report.best_pair, std::make_pair(std::size_t{0}, std::size_t{1}));
}

TEST(EdLowerBound, TrivialAndBellShield) {
  EXPECT_NEAR(ed_lower_bound(trivial_spec()).best_verified_rate, 1.0, 1e-9);
  const auto bell = ed_lower_bound(bell_shield_spec());
  EXPECT_NEAR(bell.best_verified_rate, 0.5, 1e-6);
  EXPECT_NEAR(bell.best_paper_rate, 0.5, 1e-6);
}

TEST(EdLowerBound, CorpusPropertiesHold) {
  for (std::uint64_t idx = 0; idx < 20; ++idx) {
    const auto spec = corpus_spec(idx);
    const auto report = ed_lower_bound(spec);
    EXPECT_EQ(report.per_pair.size(), spec.d * (spec.d - 1) / 2);
    EXPECT_GT(report.best_verified_rate, 1e-6) << idx;
    double best = 0.0;
    for (const auto& pb : report.per_pair) {
      ASSERT_TRUE(pb.ok) << pb.error;
      EXPECT_LE(pb.verified_rate, pb.paper_rate + 1e-12);
      EXPECT_GE(pb.hashing_rate, 0.0);
      EXPECT_LE(pb.hashing_rate, 1.0);
      // the post-filter state is a two-projector mixture with entropy H(p)
      EXPECT_NEAR(pb.hashing_rate, 1.0 - pb.post_entropy, 1e-9);
      best = std::max(best, pb.verified_rate);
    }
    EXPECT_EQ(report.best_verified_rate, best);
  }
}

TEST(EfCertificate, TrivialShieldHasZeroMargin) {
  const auto cert = ef_certificate(trivial_spec(), 10, 1);
  EXPECT_TRUE(cert.passed);
  EXPECT_NEAR(cert.min_entropy_found, 1.0, 1e-12);
  EXPECT_NEAR(cert.margin, 0.0, 1e-12);
  EXPECT_FALSE(cert.witness.has_value());
}

TEST(EfCertificate, SwapShield) {
  const auto cert = ef_certificate(swap_spec(), 200, 3);
  EXPECT_TRUE(cert.passed);
  EXPECT_GE(cert.margin, -1e-9);
  EXPECT_LE(cert.max_identity_error, 1e-9);
}

TEST(EfCertificate, RandomPtrit) {
  RandomSpecOptions opts;
  opts.d = 3;
  const auto cert = ef_certificate(random_spec(opts, 8), 100, 4);
  EXPECT_TRUE(cert.passed);
  EXPECT_GE(cert.min_entropy_found, std::log2(3.0) - 1e-9);
}

TEST(EfCertificate, ProductShieldBranchesAreTight) {
  // rank-1 product shield and local unitaries keep every branch Xi_j pure
  const ComplexMatrix shield = projector(kron(ket(2, 0), ket(2, 1)));
  const auto spec = make_spec(2, 2, {2, 2}, {identity(4), kron(pauli_x(), pauli_z())}, shield);
  const auto cert = ef_certificate(spec, 50, 5);
  EXPECT_TRUE(cert.passed);
  EXPECT_NEAR(cert.margin, 0.0, 1e-9);
}

TEST(EfCertificate, TensorSquareCertifiesTwiceTheKey) {
  RandomSpecOptions opts;
  const auto tp = tensor_power_spec(random_spec(opts, 12), 2);
  const auto cert = ef_certificate(tp.spec, 30, 6);
  EXPECT_TRUE(cert.passed);
  EXPECT_GE(cert.min_entropy_found, 2.0 - 1e-9);
}

TEST(EfCertificate, RejectsMultipartite) {
  EXPECT_THROW(ef_certificate(corpus_spec(2), 1, 0), LinalgError);
}
