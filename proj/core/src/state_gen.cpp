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

#include "pdistill/state_gen.hpp"

#include <cmath>
#include <sstream>

namespace pdistill {

std::string to_string(Violation v) {
  switch (v) {
    case Violation::kNotSquare: return "not_square";
    case Violation::kNonFinite: return "non_finite";
    case Violation::kLayout: return "layout";
    case Violation::kHermiticity: return "hermiticity";
    case Violation::kPsd: return "psd";
    case Violation::kTrace: return "trace";
  }
  return "unknown";
}

namespace {

std::string join_messages(const std::vector<ViolationDetail>& violations) {
  std::ostringstream os;
  os << "invalid density matrix:";
  for (const auto& v : violations) os << " [" << to_string(v.kind) << "] " << v.message << ";";
  return os.str();
}

}  // namespace

InvalidState::InvalidState(std::vector<ViolationDetail> violations)
    : std::invalid_argument(join_messages(violations)), violations_(std::move(violations)) {}

std::vector<ViolationDetail> check_state(const ComplexMatrix& m, const SubsystemLayout& layout,
                                         const StateTolerances& tolerances) {
  std::vector<ViolationDetail> out;
  auto report = [&](Violation kind, double amount, std::string msg) {
    out.push_back({kind, amount, std::move(msg)});
  };

  if (m.rows() != m.cols() || m.rows() == 0) {
    report(Violation::kNotSquare, 0.0,
           "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    return out;
  }
  if (!all_finite(m)) {
    report(Violation::kNonFinite, 0.0, "matrix has NaN or infinite entries");
    return out;
  }
  if (!layout.empty() && layout.total_dim() != static_cast<std::size_t>(m.rows()))
    report(Violation::kLayout, static_cast<double>(layout.total_dim()),
           "layout dimension " + std::to_string(layout.total_dim()) + " != matrix dimension " +
               std::to_string(m.rows()));

  const double defect = hermiticity_defect(m);
  if (defect > tolerances.hermitian) {
    report(Violation::kHermiticity, defect, "hermiticity defect " + std::to_string(defect));
  } else {
    const auto eig = hermitian_eig(m);
    const double smallest = eig.eigenvalues.back();
    if (smallest < -tolerances.psd)
      report(Violation::kPsd, smallest, "smallest eigenvalue " + std::to_string(smallest));
  }
  const double tr_err = m.trace().real() - 1.0;
  if (std::abs(tr_err) > tolerances.trace)
    report(Violation::kTrace, tr_err, "trace deviates from 1 by " + std::to_string(tr_err));
  return out;
}

DensityMatrix validate_state(ComplexMatrix m, SubsystemLayout layout, const StateTolerances& tolerances) {
  auto violations = check_state(m, layout, tolerances);
  if (!violations.empty()) throw InvalidState(std::move(violations));
  if (layout.empty())
    layout = SubsystemLayout({Factor{"sys", static_cast<std::size_t>(m.rows()), 0, FactorRole::kShield}});
  return DensityMatrix(std::move(m), std::move(layout));
}

DensityMatrix assume_state(ComplexMatrix m, SubsystemLayout layout, const StateTolerances& tolerances) {
  std::vector<ViolationDetail> violations;
  if (m.rows() != m.cols() || m.rows() == 0 || !all_finite(m) ||
      (!layout.empty() && layout.total_dim() != static_cast<std::size_t>(m.rows()))) {
    violations = check_state(m, layout, tolerances);
  } else {
    const double defect = hermiticity_defect(m);
    if (defect > tolerances.hermitian)
      violations.push_back({Violation::kHermiticity, defect, "hermiticity defect " + std::to_string(defect)});
    const double tr_err = m.trace().real() - 1.0;
    if (std::abs(tr_err) > tolerances.trace)
      violations.push_back({Violation::kTrace, tr_err, "trace deviates from 1 by " + std::to_string(tr_err)});
  }
  if (!violations.empty()) throw InvalidState(std::move(violations));
  return DensityMatrix(std::move(m), std::move(layout));
}

UnitaryOp::UnitaryOp(ComplexMatrix m, double tolerance) : matrix_(std::move(m)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0)
    throw LinalgError("unitary must be a nonempty square matrix");
  if (!all_finite(matrix_)) throw LinalgError("unitary has non-finite entries");
  const auto n = matrix_.rows();
  const double err = (matrix_.adjoint() * matrix_ - ComplexMatrix::Identity(n, n)).norm();
  if (err > tolerance)
    throw LinalgError("matrix is not unitary: ||U^dagger U - I||_F = " + std::to_string(err));
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return trace_distance(a.matrix(), b.matrix());
}

double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index k = 0; k < g.size(); ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    g.data()[k] = Complex(re, im);
  }
  return g;
}

ComplexVector random_unit_vector(std::size_t dim, std::mt19937_64& rng) {
  ComplexVector v = ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

UnitaryOp random_unitary(std::size_t dim, std::mt19937_64& rng) {
  if (dim == 0) throw LinalgError("random_unitary: dimension must be positive");
  const Eigen::MatrixXcd z = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const Complex diag = r(k, k);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(k) *= diag / mag;
  }
  return UnitaryOp(q);
}

UnitaryOp random_unitary(std::size_t dim, std::uint64_t seed) {
  auto rng = make_rng(seed);
  return random_unitary(dim, rng);
}

DensityMatrix random_density(std::size_t dim, std::size_t rank, std::mt19937_64& rng,
                             SubsystemLayout layout) {
  if (rank < 1 || rank > dim)
    throw LinalgError("random_density: rank " + std::to_string(rank) + " outside [1, " +
                      std::to_string(dim) + "]");
  const ComplexMatrix g = ginibre(dim, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return validate_state(std::move(rho), std::move(layout));
}

DensityMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed,
                             SubsystemLayout layout) {
  auto rng = make_rng(seed);
  return random_density(dim, rank, rng, std::move(layout));
}

ComplexVector bell_vector(int sign, std::size_t i, std::size_t j, std::size_t d, std::size_t parties) {
  if (sign != 1 && sign != -1) throw LinalgError("bell_vector: sign must be +1 or -1");
  if (i >= d || j >= d || i == j) throw LinalgError("bell_vector: need distinct indices below d");
  if (parties == 0) throw LinalgError("bell_vector: need at least one party");
  std::size_t dim = 1;
  std::size_t ii = 0, jj = 0;
  for (std::size_t k = 0; k < parties; ++k) {
    dim *= d;
    ii = ii * d + i;
    jj = jj * d + j;
  }
  ComplexVector v = ComplexVector::Zero(dim);
  v(ii) = 1.0 / std::sqrt(2.0);
  v(jj) = static_cast<double>(sign) / std::sqrt(2.0);
  return v;
}

}  // namespace pdistill
