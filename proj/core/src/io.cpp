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

#include "pdistill/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace pdistill::io {

namespace {

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw FormatError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(where, std::string("missing field '") + key + "'");
  return *it;
}

std::size_t require_count(const json& j, const char* key, const std::string& where) {
  const json& v = require(j, key, where);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw FormatError(where + "/" + key, "expected a nonnegative integer");
  return v.get<std::size_t>();
}

double finite_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw FormatError(where, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw FormatError(where, "non-finite number");
  return x;
}

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

}  // namespace

json layout_to_json(const SubsystemLayout& layout) {
  json arr = json::array();
  for (const auto& f : layout.factors())
    arr.push_back({{"label", f.label}, {"dim", f.dim}, {"party", f.party}, {"role", to_string(f.role)}});
  return arr;
}

json matrix_to_json(const ComplexMatrix& m, const SubsystemLayout& layout) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(complex_to_json(m(r, c)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"layout", layout_to_json(layout)}, {"data", std::move(data)}};
}

json vector_to_json(const ComplexVector& v) { return matrix_to_json(ComplexMatrix(v)); }

MatrixDoc matrix_from_json(const json& j, const std::string& where) {
  const std::size_t rows = require_count(j, "rows", where);
  const std::size_t cols = require_count(j, "cols", where);
  const json& data = require(j, "data", where);
  if (!data.is_array() || data.size() != rows * cols)
    throw FormatError(where + "/data", "expected " + std::to_string(rows * cols) + " [re, im] entries");

  MatrixDoc doc;
  doc.matrix.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t k = 0; k < data.size(); ++k) {
    const std::string at = where + "/data/" + std::to_string(k);
    const json& e = data[k];
    if (!e.is_array() || e.size() != 2) throw FormatError(at, "expected [re, im]");
    doc.matrix.data()[k] = Complex(finite_number(e[0], at + "/0"), finite_number(e[1], at + "/1"));
  }

  if (auto it = j.find("layout"); it != j.end()) {
    if (!it->is_array()) throw FormatError(where + "/layout", "expected an array");
    std::vector<Factor> factors;
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string at = where + "/layout/" + std::to_string(k);
      const json& f = (*it)[k];
      const json& label = require(f, "label", at);
      const json& role = require(f, "role", at);
      if (!label.is_string() || !role.is_string()) throw FormatError(at, "label and role must be strings");
      try {
        factors.push_back(
            {label.get<std::string>(), require_count(f, "dim", at), require_count(f, "party", at),
             factor_role_from_string(role.get<std::string>())});
      } catch (const LinalgError& e) {
        throw FormatError(at, e.what());
      }
    }
    try {
      doc.layout = SubsystemLayout(std::move(factors));
    } catch (const LinalgError& e) {
      throw FormatError(where + "/layout", e.what());
    }
    if (!doc.layout.empty() && doc.layout.total_dim() != rows)
      throw FormatError(where + "/layout", "factor dimensions multiply to " +
                                               std::to_string(doc.layout.total_dim()) + ", matrix has " +
                                               std::to_string(rows) + " rows");
  }
  return doc;
}

ComplexVector vector_from_json(const json& j, const std::string& where) {
  auto doc = matrix_from_json(j, where);
  if (doc.matrix.cols() != 1) throw FormatError(where, "expected a column vector (cols = 1)");
  return doc.matrix.col(0);
}

json spec_to_json(const PrivateStateSpec& spec) {
  json unitaries = json::array();
  for (const auto& u : spec.unitaries) unitaries.push_back(matrix_to_json(u.matrix()));
  return {{"d", spec.d},
          {"parties", spec.parties},
          {"shield_dims", spec.shield_dims},
          {"unitaries", std::move(unitaries)},
          {"shield", matrix_to_json(spec.shield.matrix(), spec.shield.layout())}};
}

PrivateStateSpec spec_from_json(const json& j, const std::string& where, const StateTolerances& tolerances) {
  const std::size_t d = require_count(j, "d", where);
  const std::size_t parties = require_count(j, "parties", where);
  const json& dims_json = require(j, "shield_dims", where);
  if (!dims_json.is_array()) throw FormatError(where + "/shield_dims", "expected an array");
  Dims shield_dims;
  for (std::size_t k = 0; k < dims_json.size(); ++k) {
    if (!dims_json[k].is_number_integer() || dims_json[k].get<long long>() <= 0)
      throw FormatError(where + "/shield_dims/" + std::to_string(k), "expected a positive integer");
    shield_dims.push_back(dims_json[k].get<std::size_t>());
  }
  const json& u_json = require(j, "unitaries", where);
  if (!u_json.is_array()) throw FormatError(where + "/unitaries", "expected an array");
  std::vector<ComplexMatrix> unitaries;
  for (std::size_t k = 0; k < u_json.size(); ++k)
    unitaries.push_back(matrix_from_json(u_json[k], where + "/unitaries/" + std::to_string(k)).matrix);
  ComplexMatrix shield = matrix_from_json(require(j, "shield", where), where + "/shield").matrix;

  try {
    return make_spec(d, parties, std::move(shield_dims), std::move(unitaries), std::move(shield), tolerances);
  } catch (const InvalidState& e) {
    throw FormatError(where + "/shield", e.what());
  } catch (const LinalgError& e) {
    throw FormatError(where.empty() ? "spec" : where, e.what());
  }
}

json overlap_to_json(const OverlapResult& r) {
  json bra = json::array(), ket = json::array();
  for (const auto& v : r.bra_vectors) bra.push_back(vector_to_json(v));
  for (const auto& v : r.ket_vectors) ket.push_back(vector_to_json(v));
  return {{"eta", r.eta},
          {"a1", r.a1},
          {"a2", r.a2},
          {"theta", r.theta},
          {"converged", r.converged},
          {"below_floor", r.below_floor},
          {"best_restart", r.best_restart},
          {"iterations", r.iterations},
          {"bra_vectors", std::move(bra)},
          {"ket_vectors", std::move(ket)}};
}

json filters_to_json(const FilterSet& f) {
  json ops = json::array();
  for (const auto& op : f.party_ops) ops.push_back(matrix_to_json(op));
  return {{"i", f.i},
          {"j", f.j},
          {"variant", to_string(f.variant)},
          {"scaled_party", f.scaled_party},
          {"party_ops", std::move(ops)}};
}

json outcome_to_json(const FilterOutcome& o) {
  return {{"success_prob", o.success_prob},
          {"p", o.p},
          {"residual", o.residual},
          {"coherence", complex_to_json(o.coherence)},
          {"post_state", matrix_to_json(o.post_state.matrix(), o.post_state.layout())}};
}

json pair_bound_to_json(const PairBound& pb) {
  json j = {{"i", pb.i}, {"j", pb.j}, {"ok", pb.ok}};
  if (!pb.ok) {
    j["error"] = pb.error;
    return j;
  }
  j["eta"] = pb.overlap.eta;
  j["a1"] = pb.overlap.a1;
  j["a2"] = pb.overlap.a2;
  j["theta"] = pb.overlap.theta;
  j["converged"] = pb.overlap.converged;
  j["below_floor"] = pb.overlap.below_floor;
  j["p"] = pb.p;
  j["hashing_rate"] = pb.hashing_rate;
  j["paper_rate"] = pb.paper_rate;
  j["verified_rate"] = pb.verified_rate;
  j["success_prob"] = pb.success_prob;
  j["p_sim"] = pb.p_sim;
  j["residual"] = pb.residual;
  j["post_entropy"] = pb.post_entropy;
  j["variant"] = to_string(pb.variant);
  return j;
}

json bound_report_to_json(const BoundReport& r) {
  json pairs = json::array();
  for (const auto& pb : r.per_pair) pairs.push_back(pair_bound_to_json(pb));
  json j = {{"per_pair", std::move(pairs)},
            {"best_paper_rate", r.best_paper_rate},
            {"best_verified_rate", r.best_verified_rate}};
  j["best_pair"] = r.best_pair ? json::array({r.best_pair->first, r.best_pair->second}) : json(nullptr);
  return j;
}

json certificate_to_json(const EfCertificate& c) {
  json j = {{"d", c.d},
            {"log_d", c.log_d},
            {"samples", c.samples},
            {"min_entropy_found", c.min_entropy_found},
            {"mean_entropy", c.mean_entropy},
            {"margin", c.margin},
            {"max_identity_error", c.max_identity_error},
            {"passed", c.passed}};
  j["witness"] = c.witness ? vector_to_json(*c.witness) : json(nullptr);
  return j;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path.string(), "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + " (byte " + std::to_string(e.byte) + ")", e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError(path.string(), "cannot open file for writing");
  out << text;
  if (!out) throw FormatError(path.string(), "write failed");
}

}  // namespace pdistill::io
