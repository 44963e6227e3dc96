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

#include "cli.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "pdistill/bounds.hpp"
#include "pdistill/filtering.hpp"
#include "pdistill/io.hpp"
#include "pdistill/overlap.hpp"
#include "pdistill/private_state.hpp"
#include "pdistill/state_gen.hpp"

namespace pdistill::cli {

using nlohmann::json;

namespace {

StateTolerances state_tolerances(const RunConfig& c) {
  StateTolerances t;
  t.hermitian = c.tol_herm;
  t.psd = c.tol_psd;
  return t;
}

OverlapOptions overlap_options(const RunConfig& c) {
  OverlapOptions o;
  o.restarts = c.restarts;
  o.basis_starts = c.basis_starts;
  o.max_iters = c.max_iters;
  o.conv_tol = c.tol_conv;
  o.seed = c.seed;
  return o;
}

PrivateStateSpec load_spec(const RunConfig& c) {
  if (c.spec_file.empty()) throw io::FormatError("--spec", "no spec file given");
  try {
    return io::spec_from_json(io::read_json_file(c.spec_file), "", state_tolerances(c));
  } catch (const io::FormatError& e) {
    if (e.where().rfind(c.spec_file, 0) == 0) throw;
    const std::string what = e.what();
    throw io::FormatError(c.spec_file + ":" + e.where(), what.substr(std::min(what.size(), e.where().size() + 2)));
  }
}

PrivateStateSpec generated_spec(const RunConfig& c, std::optional<std::size_t> shield_rank) {
  RandomSpecOptions opts;
  opts.d = c.d;
  opts.parties = c.parties;
  opts.shield_dims = c.shield_dims;
  opts.shield_rank = shield_rank;
  return random_spec(opts, c.seed);
}

json report_header(const RunConfig& c) { return {{"config", config_to_json(c)}}; }

// Writes `text` to <out_dir>/<name>, or to `out` when no directory was given.
void emit(const RunConfig& c, const std::string& name, const std::string& text, std::ostream& out) {
  if (c.out_dir.empty()) {
    out << text;
    return;
  }
  std::filesystem::create_directories(c.out_dir);
  io::write_text_file(std::filesystem::path(c.out_dir) / name, text);
}

int cmd_gen(const RunConfig& c, std::ostream& out) {
  json doc;
  if (c.kind == "unitary") {
    doc = io::matrix_to_json(random_unitary(c.dim, c.seed).matrix());
  } else {
    const auto rho = random_density(c.dim, c.rank.value_or(c.dim), c.seed);
    doc = io::matrix_to_json(rho.matrix(), rho.layout());
  }
  doc["config"] = config_to_json(c);
  emit(c, c.kind + ".json", io::dump(doc), out);
  return kOk;
}

int cmd_build(const RunConfig& c, std::ostream& out) {
  PrivateStateSpec spec = [&] {
    if (c.shield_file.empty() && c.unitary_files.empty()) return generated_spec(c, c.shield_rank);

    // explicit inputs; whatever is missing is drawn from the seed
    const std::size_t d = c.unitary_files.empty() ? c.d : c.unitary_files.size();
    const std::size_t sd = product(c.shield_dims);
    auto rng = make_rng(c.seed);
    std::vector<ComplexMatrix> unitaries;
    for (const auto& path : c.unitary_files)
      unitaries.push_back(io::matrix_from_json(io::read_json_file(path), path).matrix);
    if (unitaries.empty())
      for (std::size_t k = 0; k < d; ++k) unitaries.push_back(random_unitary(sd, rng).matrix());
    ComplexMatrix shield = c.shield_file.empty()
                               ? random_density(sd, c.shield_rank.value_or(sd), rng).matrix()
                               : io::matrix_from_json(io::read_json_file(c.shield_file), c.shield_file).matrix;
    try {
      return make_spec(d, c.parties, c.shield_dims, std::move(unitaries), std::move(shield), state_tolerances(c));
    } catch (const InvalidState& e) {
      throw io::FormatError(c.shield_file.empty() ? "shield" : c.shield_file, e.what());
    }
  }();
  json doc = io::spec_to_json(spec);
  doc["config"] = config_to_json(c);
  emit(c, "spec.json", io::dump(doc), out);
  return kOk;
}

int cmd_eta(const RunConfig& c, std::ostream& out) {
  const auto spec = load_spec(c);
  const auto result = optimize_pair(spec, c.i, c.j, overlap_options(c));
  json doc = report_header(c);
  doc["input_spec"] = io::spec_to_json(spec);
  doc["overlap"] = io::overlap_to_json(result);
  doc["cauchy_schwarz_bound"] = std::sqrt(result.a1 * result.a2);
  if (c.oracle_samples > 0 && spec.shield_dim() <= 64)
    doc["oracle_eta"] = brute_force_eta(cross_operator(spec, c.i, c.j), spec.shield_dims, c.oracle_samples, c.seed);
  else
    doc["oracle_eta"] = nullptr;
  emit(c, "eta.json", io::dump(doc), out);
  return kOk;
}

int cmd_distill(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto spec = load_spec(c);
  const auto state = build_private_state(spec);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (c.all_pairs) {
    for (std::size_t i = 0; i < spec.d; ++i)
      for (std::size_t j = i + 1; j < spec.d; ++j) pairs.emplace_back(i, j);
  } else {
    pairs.emplace_back(c.i, c.j);
  }

  json doc = report_header(c);
  doc["input_spec"] = io::spec_to_json(spec);
  json results = json::array();
  bool residual_ok = true;
  for (auto [i, j] : pairs) {
    const auto overlap = optimize_pair(spec, i, j, overlap_options(c));
    const auto filters = build_filters(spec, overlap, i, j);
    const auto outcome = apply_filter(state, filters);
    const auto predicted = predict_outcome(overlap, spec.d);
    const bool ok = outcome.residual <= c.tol_residual;
    residual_ok = residual_ok && ok;
    results.push_back({{"i", i},
                       {"j", j},
                       {"overlap", io::overlap_to_json(overlap)},
                       {"predicted", {{"success_prob", predicted.success_prob}, {"p", predicted.p}}},
                       {"filters", io::filters_to_json(filters)},
                       {"outcome", io::outcome_to_json(outcome)},
                       {"residual_ok", ok}});
  }
  doc["pairs"] = std::move(results);
  doc["residual_ok"] = residual_ok;
  emit(c, "distill.json", io::dump(doc), out);
  if (!residual_ok) {
    err << "distill: post-filter residual exceeds --tol-residual " << c.tol_residual << "\n";
    return kInvalid;
  }
  return kOk;
}

int cmd_bound(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto spec = load_spec(c);
  BoundOptions opts;
  opts.overlap = overlap_options(c);
  const auto report = ed_lower_bound(spec, opts);
  json doc = report_header(c);
  doc["input_spec"] = io::spec_to_json(spec);
  doc["key_rate"] = key_rate(spec);
  doc["bound"] = io::bound_report_to_json(report);
  bool residual_ok = true;
  for (const auto& pb : report.per_pair) residual_ok = residual_ok && (!pb.ok || pb.residual <= c.tol_residual);
  doc["residual_ok"] = residual_ok;
  emit(c, "bound.json", io::dump(doc), out);
  if (!residual_ok) {
    err << "bound: post-filter residual exceeds --tol-residual " << c.tol_residual << "\n";
    return kInvalid;
  }
  return kOk;
}

int cmd_certify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto base = load_spec(c);
  const auto spec = c.copies == 1 ? base : tensor_power_spec(base, c.copies).spec;
  const auto cert = ef_certificate(spec, c.cert_samples, c.seed);
  json doc = report_header(c);
  doc["input_spec"] = io::spec_to_json(base);
  doc["certificate"] = io::certificate_to_json(cert);
  emit(c, "certify.json", io::dump(doc), out);
  if (!cert.passed) {
    err << "certify: range vector with reduced entropy " << cert.min_entropy_found << " below log2 d = " << cert.log_d
        << "\n";
    return kCertificateFailed;
  }
  return kOk;
}

// shortest form that reads back to the same double
std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

int cmd_sweep(const RunConfig& c, std::ostream& out) {
  std::optional<PrivateStateSpec> file_spec;
  if (!c.spec_file.empty()) file_spec = load_spec(c);
  if (c.knob == "rank" && file_spec) throw io::FormatError("--knob", "rank sweeps draw their own specs; drop --spec");

  std::vector<double> values = c.values;
  if (values.empty()) {
    if (c.knob == "rank") {
      for (std::size_t r = 1; r <= product(c.shield_dims); ++r) values.push_back(static_cast<double>(r));
    } else {
      for (int k = 0; k <= 10; ++k) values.push_back(k / 10.0);
    }
  }

  BoundOptions opts;
  opts.overlap = overlap_options(c);
  json rows = json::array();
  std::ostringstream csv;
  csv << "knob,eta,p,paper_rate,verified_rate\n";
  for (double v : values) {
    PrivateStateSpec spec = [&] {
      if (c.knob == "rank") {
        if (v < 1.0 || v != std::floor(v)) throw io::FormatError("--values", "rank values must be positive integers");
        return generated_spec(c, static_cast<std::size_t>(v));
      }
      if (v < 0.0 || v > 1.0) throw io::FormatError("--values", "mix weights must lie in [0, 1]");
      // same unitaries and shield for every point; only the white-noise weight moves
      const PrivateStateSpec base = file_spec ? *file_spec : generated_spec(c, c.shield_rank);
      const auto sd = static_cast<Eigen::Index>(base.shield_dim());
      ComplexMatrix shield =
          (1.0 - v) * base.shield.matrix() + v * ComplexMatrix::Identity(sd, sd) / static_cast<double>(sd);
      std::vector<ComplexMatrix> unitaries;
      for (const auto& u : base.unitaries) unitaries.push_back(u.matrix());
      return make_spec(base.d, base.parties, base.shield_dims, std::move(unitaries), std::move(shield),
                       state_tolerances(c));
    }();
    const auto report = ed_lower_bound(spec, opts);
    const PairBound* best = nullptr;
    for (const auto& pb : report.per_pair)
      if (pb.ok && (!best || pb.verified_rate > best->verified_rate)) best = &pb;
    const double nan = std::nan("");
    const double eta = best ? best->overlap.eta : nan, p = best ? best->p : nan;
    const double closed_form = best ? best->paper_rate : nan, verified = best ? best->verified_rate : nan;
    csv << csv_number(v) << ',' << csv_number(eta) << ',' << csv_number(p) << ',' << csv_number(closed_form) << ','
        << csv_number(verified) << "\n";
    json row = {{"knob", v}};
    row["eta"] = best ? json(eta) : json(nullptr);
    row["p"] = best ? json(p) : json(nullptr);
    row["paper_rate"] = best ? json(closed_form) : json(nullptr);
    row["verified_rate"] = best ? json(verified) : json(nullptr);
    rows.push_back(std::move(row));
  }

  if (c.out_dir.empty()) {
    out << csv.str();
    return kOk;
  }
  json doc = report_header(c);
  doc["rows"] = std::move(rows);
  emit(c, "sweep.json", io::dump(doc), out);
  emit(c, "sweep.csv", csv.str(), out);
  return kOk;
}

}  // namespace

json config_to_json(const RunConfig& c) {
  json j = {{"command", c.command},
            {"seed", c.seed},
            {"tolerances", {{"psd", c.tol_psd}, {"herm", c.tol_herm}, {"conv", c.tol_conv}, {"residual", c.tol_residual}}},
            {"optimizer", {{"restarts", c.restarts}, {"basis_starts", c.basis_starts}, {"max_iters", c.max_iters}}},
            {"out", c.out_dir}};
  json args = json::object();
  if (c.command == "gen") {
    args = {{"kind", c.kind}, {"dim", c.dim}};
    args["rank"] = c.rank ? json(*c.rank) : json(nullptr);
  } else if (c.command == "build") {
    args = {{"d", c.d}, {"parties", c.parties}, {"shield_dims", c.shield_dims}, {"shield_file", c.shield_file},
            {"unitary_files", c.unitary_files}};
    args["shield_rank"] = c.shield_rank ? json(*c.shield_rank) : json(nullptr);
  } else if (c.command == "eta") {
    args = {{"spec", c.spec_file}, {"i", c.i}, {"j", c.j}, {"samples", c.oracle_samples}};
  } else if (c.command == "distill") {
    args = {{"spec", c.spec_file}, {"i", c.i}, {"j", c.j}, {"all_pairs", c.all_pairs}};
  } else if (c.command == "bound") {
    args = {{"spec", c.spec_file}};
  } else if (c.command == "certify") {
    args = {{"spec", c.spec_file}, {"samples", c.cert_samples}, {"copies", c.copies}};
  } else if (c.command == "sweep") {
    args = {{"spec", c.spec_file}, {"knob", c.knob},           {"values", c.values},
            {"d", c.d},            {"parties", c.parties},     {"shield_dims", c.shield_dims}};
    args["shield_rank"] = c.shield_rank ? json(*c.shield_rank) : json(nullptr);
  }
  j["args"] = std::move(args);
  return j;
}

std::variant<RunConfig, int> parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Private-state construction, filtering distillation and entanglement bounds", "pdistill"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--seed", c.seed, "RNG seed")->envname("PDISTILL_SEED");
  app.add_option("--tol-psd", c.tol_psd, "Most negative eigenvalue accepted")->envname("PDISTILL_TOL_PSD");
  app.add_option("--tol-herm", c.tol_herm, "Hermiticity tolerance (Frobenius)")->envname("PDISTILL_TOL_HERM");
  app.add_option("--tol-conv", c.tol_conv, "Optimizer convergence tolerance")->envname("PDISTILL_TOL_CONV");
  app.add_option("--tol-residual", c.tol_residual, "Largest accepted post-filter residual")
      ->envname("PDISTILL_TOL_RESIDUAL");
  app.add_option("--restarts", c.restarts, "Random optimizer starts")->envname("PDISTILL_RESTARTS");
  app.add_option("--basis-starts", c.basis_starts, "Standard-basis optimizer starts")
      ->envname("PDISTILL_BASIS_STARTS")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-iters", c.max_iters, "Sweeps per optimizer start")->envname("PDISTILL_MAX_ITERS");
  app.add_option("--out", c.out_dir, "Directory for reports (default: stdout)")->envname("PDISTILL_OUT");

  auto* gen = app.add_subcommand("gen", "Random unitary or density matrix as matrix JSON");
  gen->add_option("--kind", c.kind)->check(CLI::IsMember({"unitary", "density"}));
  gen->add_option("--dim", c.dim)->check(CLI::PositiveNumber);
  gen->add_option("--rank", c.rank)->check(CLI::PositiveNumber);

  auto* build = app.add_subcommand("build", "Private-state spec JSON");
  build->add_option("--d", c.d);
  build->add_option("--parties", c.parties);
  build->add_option("--shield-dims", c.shield_dims)->delimiter(',');
  build->add_option("--shield-rank", c.shield_rank)->check(CLI::PositiveNumber);
  build->add_option("--shield-file", c.shield_file)->check(CLI::ExistingFile);
  build->add_option("--unitary-files", c.unitary_files)->delimiter(',')->check(CLI::ExistingFile);

  auto* eta = app.add_subcommand("eta", "Product-overlap optimization for one key pair");
  eta->add_option("--spec", c.spec_file)->required();
  eta->add_option("--i", c.i);
  eta->add_option("--j", c.j);
  eta->add_option("--samples", c.oracle_samples, "Brute-force oracle samples (0: off)");

  auto* distill = app.add_subcommand("distill", "Build and simulate the local filters");
  distill->add_option("--spec", c.spec_file)->required();
  distill->add_option("--i", c.i);
  distill->add_option("--j", c.j);
  distill->add_flag("--all-pairs", c.all_pairs);

  auto* bound = app.add_subcommand("bound", "Distillable-entanglement lower bound over all key pairs");
  bound->add_option("--spec", c.spec_file)->required();

  auto* certify = app.add_subcommand("certify", "Range-sampling entanglement-of-formation certificate");
  certify->add_option("--spec", c.spec_file)->required();
  certify->add_option("--samples", c.cert_samples)->check(CLI::PositiveNumber);
  certify->add_option("--copies", c.copies, "Certify the m-fold tensor power")->check(CLI::PositiveNumber);

  auto* sweep = app.add_subcommand("sweep", "Bound versus shield rank or white-noise weight, as CSV");
  sweep->add_option("--knob", c.knob)->check(CLI::IsMember({"rank", "mix"}));
  sweep->add_option("--values", c.values)->delimiter(',');
  sweep->add_option("--spec", c.spec_file);
  sweep->add_option("--d", c.d);
  sweep->add_option("--parties", c.parties);
  sweep->add_option("--shield-dims", c.shield_dims)->delimiter(',');
  sweep->add_option("--shield-rank", c.shield_rank)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalid;
  }
  c.command = app.get_subcommands().front()->get_name();
  return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const auto& cmd = config.command;
    if (cmd == "gen") return cmd_gen(config, out);
    if (cmd == "build") return cmd_build(config, out);
    if (cmd == "eta") return cmd_eta(config, out);
    if (cmd == "distill") return cmd_distill(config, out, err);
    if (cmd == "bound") return cmd_bound(config, out, err);
    if (cmd == "certify") return cmd_certify(config, out, err);
    if (cmd == "sweep") return cmd_sweep(config, out);
    err << "unknown command '" << cmd << "'\n";
  } catch (const io::FormatError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const InvalidState& e) {
    err << "invalid state: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kInvalid;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  auto parsed = parse_args(argc, argv, out, err);
  if (const int* code = std::get_if<int>(&parsed)) return *code;
  return run(std::get<RunConfig>(parsed), out, err);
}

}  // namespace pdistill::cli
