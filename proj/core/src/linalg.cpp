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

#include "pdistill/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace pdistill {

namespace {

// Row-major strides: the first factor is the most significant digit.
Dims strides_of(std::span<const std::size_t> dims) {
  Dims strides(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) strides[k - 1] = strides[k] * dims[k];
  return strides;
}

// Full-space offsets for every assignment of digits to the selected factors.
std::vector<std::size_t> offsets_for(std::span<const std::size_t> dims,
                                     std::span<const std::size_t> selected) {
  const Dims strides = strides_of(dims);
  std::vector<std::size_t> offsets{0};
  for (std::size_t factor : selected) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * dims[factor]);
    for (std::size_t base : offsets)
      for (std::size_t digit = 0; digit < dims[factor]; ++digit)
        next.push_back(base + digit * strides[factor]);
    offsets = std::move(next);
  }
  return offsets;
}

void check_permutation(std::span<const std::size_t> dims, std::span<const std::size_t> perm) {
  if (perm.size() != dims.size()) throw LinalgError("permutation length does not match factor count");
  std::vector<bool> seen(dims.size(), false);
  for (std::size_t p : perm) {
    if (p >= dims.size() || seen[p]) throw LinalgError("invalid subsystem permutation");
    seen[p] = true;
  }
}

// index map out -> in for a factor permutation
std::vector<std::size_t> permutation_map(std::span<const std::size_t> dims,
                                         std::span<const std::size_t> perm) {
  check_permutation(dims, perm);
  return offsets_for(dims, perm);
}

}  // namespace

std::string to_string(FactorRole role) { return role == FactorRole::kKey ? "key" : "shield"; }

FactorRole factor_role_from_string(const std::string& s) {
  if (s == "key") return FactorRole::kKey;
  if (s == "shield") return FactorRole::kShield;
  throw LinalgError("unknown factor role '" + s + "'");
}

SubsystemLayout::SubsystemLayout(std::vector<Factor> factors) : factors_(std::move(factors)) {
  std::set<std::string> labels;
  for (const auto& f : factors_) {
    if (f.dim == 0) throw LinalgError("factor '" + f.label + "' has dimension 0");
    if (!labels.insert(f.label).second) throw LinalgError("duplicate factor label '" + f.label + "'");
  }
}

std::size_t SubsystemLayout::total_dim() const {
  std::size_t n = 1;
  for (const auto& f : factors_) n *= f.dim;
  return n;
}

Dims SubsystemLayout::dims() const {
  Dims d;
  d.reserve(factors_.size());
  for (const auto& f : factors_) d.push_back(f.dim);
  return d;
}

std::size_t SubsystemLayout::index_of(const std::string& label) const {
  for (std::size_t k = 0; k < factors_.size(); ++k)
    if (factors_[k].label == label) return k;
  throw LinalgError("unknown factor label '" + label + "'");
}

SubsystemLayout SubsystemLayout::restrict_to(std::span<const std::size_t> keep) const {
  std::vector<Factor> kept;
  for (std::size_t k : keep) kept.push_back(factors_.at(k));
  return SubsystemLayout(std::move(kept));
}

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexVector kron_all(std::span<const ComplexVector> parts) {
  ComplexVector out = ComplexVector::Ones(1);
  for (const auto& p : parts) out = kron(out, p);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  const std::size_t n = product(dims);
  if (static_cast<std::size_t>(m.rows()) != n || static_cast<std::size_t>(m.cols()) != n)
    throw LinalgError("layout dimension " + std::to_string(n) + " does not match matrix " +
                      std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  if (keep.empty()) throw LinalgError("partial_trace needs at least one kept factor");

  std::vector<bool> kept(dims.size(), false);
  Dims keep_sorted(keep.begin(), keep.end());
  std::sort(keep_sorted.begin(), keep_sorted.end());
  for (std::size_t k : keep_sorted) {
    if (k >= dims.size() || kept[k]) throw LinalgError("invalid kept factor index");
    kept[k] = true;
  }
  Dims traced;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (!kept[k]) traced.push_back(k);

  const auto keep_off = offsets_for(dims, keep_sorted);
  const auto trace_off = offsets_for(dims, traced);
  const auto dk = static_cast<Eigen::Index>(keep_off.size());
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a)
    for (Eigen::Index b = 0; b < dk; ++b) {
      Complex s = 0.0;
      for (std::size_t t : trace_off) s += m(keep_off[a] + t, keep_off[b] + t);
      out(a, b) = s;
    }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemLayout& layout,
                            std::span<const std::string> keep) {
  Dims idx;
  for (const auto& label : keep) idx.push_back(layout.index_of(label));
  const Dims dims = layout.dims();
  return partial_trace(m, dims, idx);
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                 std::span<const std::size_t> perm) {
  const std::size_t n = product(dims);
  if (static_cast<std::size_t>(m.rows()) != n || static_cast<std::size_t>(m.cols()) != n)
    throw LinalgError("permute_subsystems: dimension mismatch");
  const auto map = permutation_map(dims, perm);
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = m(map[r], map[c]);
  return out;
}

ComplexVector permute_subsystems(const ComplexVector& v, std::span<const std::size_t> dims,
                                 std::span<const std::size_t> perm) {
  if (static_cast<std::size_t>(v.size()) != product(dims))
    throw LinalgError("permute_subsystems: dimension mismatch");
  const auto map = permutation_map(dims, perm);
  ComplexVector out(v.size());
  for (std::size_t r = 0; r < map.size(); ++r) out(r) = v(map[r]);
  return out;
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw LinalgError("matrix is not square");
  if (m.size() == 0) return 0.0;
  const double scale = std::max(1.0, m.cwiseAbs().rowwise().sum().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}

HermitianEig hermitian_eig(const ComplexMatrix& m) {
  const double defect = hermiticity_defect(m);
  if (defect > tol::kHermitian)
    throw LinalgError("hermitian_eig: matrix is not Hermitian (defect " + std::to_string(defect) + ")");

  const Eigen::MatrixXcd sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
  if (solver.info() != Eigen::Success) throw LinalgError("hermitian_eig: solver failed");

  const auto n = sym.rows();
  HermitianEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues[k] = solver.eigenvalues()(n - 1 - k);
    out.eigenvectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

SchmidtMax schmidt_max(const ComplexVector& v, std::size_t dim_left, std::size_t dim_right) {
  if (static_cast<std::size_t>(v.size()) != dim_left * dim_right)
    throw LinalgError("schmidt_max: vector length " + std::to_string(v.size()) + " != " +
                      std::to_string(dim_left) + "x" + std::to_string(dim_right));
  const auto dl = static_cast<Eigen::Index>(dim_left);
  const auto dr = static_cast<Eigen::Index>(dim_right);
  Eigen::MatrixXcd reshaped(dl, dr);
  for (Eigen::Index a = 0; a < dl; ++a)
    for (Eigen::Index b = 0; b < dr; ++b) reshaped(a, b) = v(a * dr + b);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(reshaped, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtMax out;
  out.sigma = svd.singularValues()(0);
  if (out.sigma == 0.0) {
    out.left = ComplexVector::Unit(dl, 0);
    out.right = ComplexVector::Unit(dr, 0);
    return out;
  }
  // <u (x) conj(w) | v> = u^dagger M w = sigma
  out.left = svd.matrixU().col(0);
  out.right = svd.matrixV().col(0).conjugate();
  return out;
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw LinalgError("trace_distance: dimension mismatch");
  const auto eig = hermitian_eig(a - b);
  double s = 0.0;
  for (double l : eig.eigenvalues) s += std::abs(l);
  return 0.5 * s;
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  const auto eig = hermitian_eig(rho);
  double s = 0.0;
  for (double l : eig.eigenvalues) {
    if (l < -tol::kPsd)
      throw LinalgError("von_neumann_entropy: eigenvalue " + std::to_string(l) + " below PSD tolerance");
    if (l > 0.0) s -= l * std::log2(l);
  }
  return s;
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index k = 0; k < m.size(); ++k)
    if (!std::isfinite(m.data()[k].real()) || !std::isfinite(m.data()[k].imag())) return false;
  return true;
}

}  // namespace pdistill
