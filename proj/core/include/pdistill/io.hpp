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

#include <filesystem>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "pdistill/bounds.hpp"
#include "pdistill/filtering.hpp"
#include "pdistill/linalg.hpp"
#include "pdistill/overlap.hpp"
#include "pdistill/private_state.hpp"

namespace pdistill::io {

using nlohmann::json;

/// Malformed input. `where()` is a file name and/or JSON pointer into the document.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct MatrixDoc {
  ComplexMatrix matrix;
  SubsystemLayout layout;
};

// Matrix interchange format:
//   {"rows": n, "cols": m, "layout": [{"label","dim","party","role"}...],
//    "data": [[re, im], ...]}   (row-major)
json matrix_to_json(const ComplexMatrix& m, const SubsystemLayout& layout = {});
json vector_to_json(const ComplexVector& v);
MatrixDoc matrix_from_json(const json& j, const std::string& where = "");
ComplexVector vector_from_json(const json& j, const std::string& where = "");
json layout_to_json(const SubsystemLayout& layout);

// Spec format: {"d", "parties", "shield_dims", "unitaries": [matrix...], "shield": matrix}
json spec_to_json(const PrivateStateSpec& spec);
PrivateStateSpec spec_from_json(const json& j, const std::string& where = "",
                                const StateTolerances& tolerances = {});

json overlap_to_json(const OverlapResult& r);
json filters_to_json(const FilterSet& f);
json outcome_to_json(const FilterOutcome& o);
json pair_bound_to_json(const PairBound& pb);
json bound_report_to_json(const BoundReport& r);
json certificate_to_json(const EfCertificate& c);

json read_json_file(const std::filesystem::path& path);
/// Two-space indent, trailing newline. Doubles are written in shortest
/// round-trip form, so reading back reproduces every bit.
std::string dump(const json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace pdistill::io
