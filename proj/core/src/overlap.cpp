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

#include "pdistill/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace pdistill {

namespace {

void check_dims(const ComplexMatrix& x, std::span<const std::size_t> local_dims) {
  if (x.rows() != x.cols()) throw LinalgError("overlap: operator must be square");
  if (local_dims.empty()) throw LinalgError("overlap: need at least one local factor");
  if (product(local_dims) != static_cast<std::size_t>(x.rows()))
    throw LinalgError("overlap: local dimensions multiply to " + std::to_string(product(local_dims)) +
                      ", operator dimension is " + std::to_string(x.rows()));
}

double wrap_phase(double theta) {
  if (theta <= -std::numbers::pi) theta += 2.0 * std::numbers::pi;
  return theta;
}

Complex overlap_value(const ComplexMatrix& x, const std::vector<ComplexVector>& bra,
                      const std::vector<ComplexVector>& ket) {
  return kron_all(bra).dot(x * kron_all(ket));  // dot conjugates the left operand
}

// Standard-basis product tuple for a flat index.
std::vector<ComplexVector> basis_tuple(std::size_t flat, std::span<const std::size_t> dims) {
  std::vector<ComplexVector> out(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    out[k] = ComplexVector::Unit(static_cast<Eigen::Index>(dims[k]), static_cast<Eigen::Index>(flat % dims[k]));
    flat /= dims[k];
  }
  return out;
}

void update_side(const ComplexVector& target, std::span<const std::size_t> dims,
                 std::vector<ComplexVector>& side) {
  if (dims.size() == 2) {
    auto sm = schmidt_max(target, dims[0], dims[1]);
    if (sm.sigma > 0.0) {
      side[0] = std::move(sm.left);
      side[1] = std::move(sm.right);
    }
    return;
  }
  for (std::size_t k = 0; k < dims.size(); ++k) {
    ComplexVector v = contract_bra_side(target, dims, side, k);
    const double norm = v.norm();
    if (norm > 0.0) side[k] = v / norm;
  }
}

}  // namespace

ComplexMatrix cross_operator(const PrivateStateSpec& spec, std::size_t i, std::size_t j) {
  spec.validate();
  if (i >= spec.d || j >= spec.d) throw LinalgError("cross_operator: key index out of range");
  ComplexMatrix x = spec.unitaries[i].matrix() * spec.shield.matrix() * spec.unitaries[j].matrix().adjoint();
  if (x.cwiseAbs().maxCoeff() <= 1e-14)
    throw LinalgError("cross_operator: X_ij vanishes; the spec is corrupted");
  return x;
}

ComplexVector contract_bra_side(const ComplexVector& xg, std::span<const std::size_t> local_dims,
                                std::span<const ComplexVector> bra, std::size_t party) {
  const std::size_t n = product(local_dims);
  if (static_cast<std::size_t>(xg.size()) != n) throw LinalgError("contract: dimension mismatch");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(local_dims[party]));
  Dims digits(local_dims.size());
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t rest = idx;
    for (std::size_t k = local_dims.size(); k-- > 0;) {
      digits[k] = rest % local_dims[k];
      rest /= local_dims[k];
    }
    Complex coeff = xg(static_cast<Eigen::Index>(idx));
    for (std::size_t k = 0; k < local_dims.size(); ++k)
      if (k != party) coeff *= std::conj(bra[k](static_cast<Eigen::Index>(digits[k])));
    v(static_cast<Eigen::Index>(digits[party])) += coeff;
  }
  return v;
}

ProductOverlap refine_product_overlap(const ComplexMatrix& x, std::span<const std::size_t> local_dims,
                                      std::vector<ComplexVector> bra, std::vector<ComplexVector> ket,
                                      std::size_t max_iters, double conv_tol) {
  check_dims(x, local_dims);
  if (bra.size() != local_dims.size() || ket.size() != local_dims.size())
    throw LinalgError("refine_product_overlap: tuple size does not match factor count");

  ProductOverlap out;
  double prev = std::abs(overlap_value(x, bra, ket));
  for (std::size_t it = 0; it < max_iters; ++it) {
    update_side(x * kron_all(ket), local_dims, bra);
    update_side(x.adjoint() * kron_all(bra), local_dims, ket);
    const double obj = std::abs(overlap_value(x, bra, ket));
    out.history.push_back(obj);
    out.iterations = it + 1;
    if (obj - prev < conv_tol) {
      out.converged = true;
      break;
    }
    prev = obj;
  }
  const Complex value = overlap_value(x, bra, ket);
  out.eta = std::abs(value);
  out.theta = wrap_phase(std::arg(value));
  out.bra_vectors = std::move(bra);
  out.ket_vectors = std::move(ket);
  return out;
}

ProductOverlap eta_optimize(const ComplexMatrix& x, std::span<const std::size_t> local_dims,
                            const OverlapOptions& options) {
  check_dims(x, local_dims);
  if (options.restarts == 0) throw LinalgError("eta_optimize: restarts must be >= 1");
  const auto n = static_cast<std::size_t>(x.rows());

  // Largest-modulus entries first; ties go to the smaller flat index.
  std::vector<std::size_t> order(n * n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t n_basis = std::min(std::max<std::size_t>(options.basis_starts, 1), order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_basis), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      const double va = std::abs(x.data()[a]);
                      const double vb = std::abs(x.data()[b]);
                      return va != vb ? va > vb : a < b;
                    });

  ProductOverlap best;
  bool have_best = false;
  bool any_converged = false;
  auto consider = [&](ProductOverlap cand, std::size_t index) {
    any_converged = any_converged || cand.converged;
    if (!have_best || cand.eta > best.eta) {
      cand.best_restart = index;
      best = std::move(cand);
      have_best = true;
    }
  };

  for (std::size_t b = 0; b < n_basis; ++b) {
    const std::size_t row = order[b] / n;
    const std::size_t col = order[b] % n;
    consider(refine_product_overlap(x, local_dims, basis_tuple(row, local_dims), basis_tuple(col, local_dims),
                                    options.max_iters, options.conv_tol),
             b);
  }
  for (std::size_t r = 0; r < options.restarts; ++r) {
    auto rng = make_rng(options.seed, r);
    std::vector<ComplexVector> bra, ket;
    for (std::size_t dim : local_dims) bra.push_back(random_unit_vector(dim, rng));
    for (std::size_t dim : local_dims) ket.push_back(random_unit_vector(dim, rng));
    consider(refine_product_overlap(x, local_dims, std::move(bra), std::move(ket), options.max_iters,
                                    options.conv_tol),
             n_basis + r);
  }

  best.converged = any_converged;
  best.below_floor = best.eta < options.eta_floor;
  return best;
}

std::pair<double, double> a_values(const PrivateStateSpec& spec, std::size_t i, std::size_t j,
                                   OverlapResult& result) {
  auto diag_value = [&](std::size_t key, const ComplexVector& v) {
    const ComplexMatrix& u = spec.unitaries[key].matrix();
    const ComplexVector w = u.adjoint() * v;
    const double a = w.dot(spec.shield.matrix() * w).real();
    if (a < -1e-12) throw LinalgError("a_values: negative diagonal value " + std::to_string(a));
    return std::max(a, 0.0);
  };
  if (i >= spec.d || j >= spec.d) throw LinalgError("a_values: key index out of range");
  result.a1 = diag_value(i, result.bra());
  result.a2 = diag_value(j, result.ket());
  return {result.a1, result.a2};
}

OverlapResult optimize_pair(const PrivateStateSpec& spec, std::size_t i, std::size_t j,
                            const OverlapOptions& options) {
  const ComplexMatrix x = cross_operator(spec, i, j);
  OverlapResult result{eta_optimize(x, spec.shield_dims, options)};
  a_values(spec, i, j, result);
  return result;
}

OverlapResult evaluate_tuple(const PrivateStateSpec& spec, std::size_t i, std::size_t j,
                             std::vector<ComplexVector> bra, std::vector<ComplexVector> ket) {
  const ComplexMatrix x = cross_operator(spec, i, j);
  if (bra.size() != spec.parties || ket.size() != spec.parties)
    throw LinalgError("evaluate_tuple: need one bra and one ket vector per party");
  for (std::size_t k = 0; k < spec.parties; ++k) {
    if (static_cast<std::size_t>(bra[k].size()) != spec.shield_dims[k] ||
        static_cast<std::size_t>(ket[k].size()) != spec.shield_dims[k])
      throw LinalgError("evaluate_tuple: vector dimension does not match shield factor");
    bra[k].normalize();
    ket[k].normalize();
  }
  OverlapResult result;
  const Complex value = overlap_value(x, bra, ket);
  result.eta = std::abs(value);
  result.theta = wrap_phase(std::arg(value));
  result.bra_vectors = std::move(bra);
  result.ket_vectors = std::move(ket);
  result.converged = false;
  a_values(spec, i, j, result);
  return result;
}

}  // namespace pdistill
