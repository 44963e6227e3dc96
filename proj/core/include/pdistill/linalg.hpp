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

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pdistill {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using Dims = std::vector<std::size_t>;

// Numerical tolerances shared across the library.
namespace tol {
inline constexpr double kHermitian = 1e-12;  // entrywise, relative to the infinity norm
inline constexpr double kPsd = 1e-10;        // smallest admissible eigenvalue is -kPsd
inline constexpr double kTrace = 1e-10;
inline constexpr double kUnitary = 1e-10;    // Frobenius norm of U^dagger U - I
}  // namespace tol

class LinalgError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class FactorRole { kKey, kShield };

std::string to_string(FactorRole role);
FactorRole factor_role_from_string(const std::string& s);

struct Factor {
  std::string label;
  std::size_t dim = 1;
  std::size_t party = 0;
  FactorRole role = FactorRole::kKey;

  bool operator==(const Factor&) const = default;
};

/// Ordered tensor factors of a Hilbert space. The first factor is the most
/// significant digit of the row-major basis index.
class SubsystemLayout {
 public:
  SubsystemLayout() = default;
  explicit SubsystemLayout(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  bool empty() const { return factors_.empty(); }
  std::size_t total_dim() const;
  Dims dims() const;

  /// Position of the factor carrying `label`; throws LinalgError if absent.
  std::size_t index_of(const std::string& label) const;

  /// Layout of the kept factors, in original order.
  SubsystemLayout restrict_to(std::span<const std::size_t> keep) const;

  bool operator==(const SubsystemLayout&) const = default;

 private:
  std::vector<Factor> factors_;
};

struct HermitianEig {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

struct SchmidtMax {
  double sigma = 0.0;
  ComplexVector left;
  ComplexVector right;
};

std::size_t product(std::span<const std::size_t> dims);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);
/// Kronecker product of a list of vectors, first entry most significant.
ComplexVector kron_all(std::span<const ComplexVector> parts);

/// Reduced matrix on the factors named by `keep`, in layout order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemLayout& layout,
                            std::span<const std::string> keep);
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

/// Reorders tensor factors: output factor k is input factor perm[k].
/// For matrices this is the conjugation P M P^dagger.
ComplexMatrix permute_subsystems(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                 std::span<const std::size_t> perm);
ComplexVector permute_subsystems(const ComplexVector& v, std::span<const std::size_t> dims,
                                 std::span<const std::size_t> perm);

/// Largest entrywise |M - M^dagger| divided by max(1, ||M||_inf).
double hermiticity_defect(const ComplexMatrix& m);

HermitianEig hermitian_eig(const ComplexMatrix& m);

/// Largest singular value of the dim_left x dim_right reshaping of `v` and the
/// unit vectors with <left (x) right | v> = sigma.
SchmidtMax schmidt_max(const ComplexVector& v, std::size_t dim_left, std::size_t dim_right);

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Entropy in bits. Eigenvalues in [-kPsd, 0) are clamped to zero.
double von_neumann_entropy(const ComplexMatrix& rho);

bool all_finite(const ComplexMatrix& m);

}  // namespace pdistill
