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
#include <random>
#include <string>
#include <vector>

#include "pdistill/linalg.hpp"

namespace pdistill {

struct StateTolerances {
  double hermitian = tol::kHermitian;
  double psd = tol::kPsd;
  double trace = tol::kTrace;
};

enum class Violation { kNotSquare, kNonFinite, kLayout, kHermiticity, kPsd, kTrace };

std::string to_string(Violation v);

struct ViolationDetail {
  Violation kind;
  double amount;  // defect for hermiticity, smallest eigenvalue for PSD, trace - 1 for trace
  std::string message;
};

/// Thrown when a matrix fails density-matrix validation.
class InvalidState : public std::invalid_argument {
 public:
  explicit InvalidState(std::vector<ViolationDetail> violations);
  const std::vector<ViolationDetail>& violations() const { return violations_; }

 private:
  std::vector<ViolationDetail> violations_;
};

/// Hermitian, positive semidefinite, unit-trace matrix with a subsystem layout.
/// Construct through validate_state().
class DensityMatrix {
 public:
  const ComplexMatrix& matrix() const { return matrix_; }
  const SubsystemLayout& layout() const { return layout_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

 private:
  DensityMatrix(ComplexMatrix m, SubsystemLayout layout)
      : matrix_(std::move(m)), layout_(std::move(layout)) {}
  friend DensityMatrix validate_state(ComplexMatrix, SubsystemLayout, const StateTolerances&);
  friend DensityMatrix assume_state(ComplexMatrix, SubsystemLayout, const StateTolerances&);

  ComplexMatrix matrix_;
  SubsystemLayout layout_;
};

class UnitaryOp {
 public:
  explicit UnitaryOp(ComplexMatrix m, double tolerance = tol::kUnitary);
  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

 private:
  ComplexMatrix matrix_;
};

/// Every violated invariant; empty when the matrix is a valid state. An empty
/// layout means "single factor of the full dimension".
std::vector<ViolationDetail> check_state(const ComplexMatrix& m, const SubsystemLayout& layout,
                                         const StateTolerances& tolerances = {});

/// Throws InvalidState listing all violations.
DensityMatrix validate_state(ComplexMatrix m, SubsystemLayout layout = {},
                             const StateTolerances& tolerances = {});

/// Like validate_state but skips the eigenvalue check, for matrices that are
/// positive semidefinite by construction (Gram forms, filtered states).
DensityMatrix assume_state(ComplexMatrix m, SubsystemLayout layout, const StateTolerances& tolerances = {});

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
double von_neumann_entropy(const DensityMatrix& rho);

/// Deterministic engine for (seed, stream); distinct streams are independent substreams.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0);

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, std::mt19937_64& rng);
/// Haar-random unit vector.
ComplexVector random_unit_vector(std::size_t dim, std::mt19937_64& rng);

/// Haar-distributed unitary: QR of a complex Gaussian matrix, with the phases of
/// diag(R) moved into Q.
UnitaryOp random_unitary(std::size_t dim, std::uint64_t seed);
UnitaryOp random_unitary(std::size_t dim, std::mt19937_64& rng);

/// Wishart state G G^dagger / Tr(G G^dagger) with G a dim x rank Gaussian matrix.
DensityMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed,
                             SubsystemLayout layout = {});
DensityMatrix random_density(std::size_t dim, std::size_t rank, std::mt19937_64& rng,
                             SubsystemLayout layout = {});

/// (|i...i> + sign |j...j>)/sqrt(2) in (C^d)^{(x) parties}.
ComplexVector bell_vector(int sign, std::size_t i, std::size_t j, std::size_t d, std::size_t parties);

}  // namespace pdistill
