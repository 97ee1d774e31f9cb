// Copyright 2026 The qverify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qverify/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "qverify/invariant.hpp"
#include "qverify/oracle.hpp"
#include "qverify/representation.hpp"
#include "qverify/termination.hpp"

namespace qverify {

using nlohmann::json;

namespace {

json number(double x) {
  if (std::isinf(x)) return x > 0 ? "infinite" : "-infinite";
  if (std::isnan(x)) return "nan";
  return x;
}

std::string fmt(double x, int precision = 10) {
  if (std::isinf(x)) return x > 0 ? "infinite" : "-infinite";
  std::ostringstream s;
  s << std::setprecision(precision) << x;
  return s.str();
}

// Rounds entries below 1e-13 in magnitude to zero so report tables are stable.
double chop(double x) { return std::abs(x) < 1e-13 ? 0.0 : x; }

json header(const std::string& command, const ModelFile& model, const EffectiveOptions& opts) {
  json r;
  r["command"] = command;
  r["model_hash"] = model_hash(model);
  r["dim"] = model.dim;
  r["tolerances"] = opts.to_json();
  r["warnings"] = json::array();
  return r;
}

json verdict_json(const TerminationVerdict& v, double zero_tol) {
  json j;
  j["method"] = "spectral";
  j["tolerance"] = zero_tol;
  j["terminates"] = v.terminates;
  j["terminates_at"] = v.terminates_at ? json(*v.terminates_at) : json(nullptr);
  j["almost_terminates"] = v.almost_terminates;
  j["unit_overlap_norm"] = v.unit_overlap_norm;
  j["nilpotent_check_power"] = v.nilpotent_check_power;
  return j;
}

std::string verdict_text(const TerminationVerdict& v) {
  std::ostringstream s;
  s << "  terminates          " << (v.terminates ? "yes" : "no");
  if (v.terminates_at) s << " (at step " << *v.terminates_at << ")";
  s << "\n  almost terminates   " << (v.almost_terminates ? "yes" : "no") << "\n"
    << "  unit-circle overlap " << fmt(v.unit_overlap_norm) << "\n";
  return s.str();
}

json conditions_json(const ConditionReport& c, const ConditionOptions& o) {
  json j;
  j["qv1"] = {{"holds", c.qv1.holds}, {"value", number(c.qv1.value)}};
  j["qv2"] = {{"holds", c.qv2.holds}, {"residual", c.qv2.value}, {"tolerance", o.qv2_tol}};
  j["qv3"] = {{"holds", c.qv3.holds},
              {"tail", c.qv3.value},
              {"horizon", c.qv3_horizon},
              {"tolerance", o.qv3_tol},
              {"routes_agree", c.qv3_routes_agree}};
  if (c.qv3_spectral_overlap) j["qv3"]["spectral_overlap"] = *c.qv3_spectral_overlap;
  return j;
}

struct InvariantRun {
  double value = 0;
  bool sound = true;
  json detail;
};

InvariantRun run_invariant(const QuantumProgram& prog, const Observabled& o,
                           const ProgramRepresentation& rep, const EffectiveOptions& opts) {
  auto [pos, neg] = spectral_split<double>(o.mat());
  InvariantRun run;
  run.detail = json::object();
  FixedPointOptions fp;
  fp.n_max = opts.n_max;
  ConditionOptions co;
  co.tail_tol = opts.tail_tol;
  const std::pair<const char*, MatrixXc> parts[] = {{"positive_part", pos}, {"negative_part", neg}};
  for (const auto& [label, mat] : parts) {
    if (label == std::string("negative_part") && max_abs(mat) == 0) continue;
    const Observabled part(mat);
    const auto cert = least_fixed_point_q(prog.scheme(), part, fp);
    const auto cond = check_conditions(prog, part, cert, co, &rep);
    const double value = cond.qv1.value;
    const bool sound = cond.qv2.holds && cond.qv3.holds && cert.converged;
    run.value += label == std::string("positive_part") ? value : -value;
    run.sound = run.sound && sound;
    json d = conditions_json(cond, co);
    d["value"] = value;
    d["iterations"] = cert.iterations;
    d["converged"] = cert.converged;
    d["monotone"] = cert.monotone;
    d["last_step"] = cert.last_step;
    d["q"] = matrix_to_json(cert.q.mat());
    run.detail[label] = std::move(d);
  }
  return run;
}

}  // namespace

Tolerances EffectiveOptions::tolerances() const {
  Tolerances t;
  t.unit = eps_unit;
  return t;
}

json EffectiveOptions::to_json() const {
  return {{"tail_tol", tail_tol}, {"n_max", n_max}, {"eps_unit", eps_unit}, {"tol", tol}};
}

EffectiveOptions resolve_options(const ModelFile& model, const RunOverrides& overrides) {
  EffectiveOptions o;
  o.tail_tol = overrides.tail_tol.value_or(model.options.tail_tol.value_or(o.tail_tol));
  o.n_max = overrides.n_max.value_or(model.options.n_max.value_or(o.n_max));
  o.eps_unit = overrides.eps_unit.value_or(model.options.eps_unit.value_or(o.eps_unit));
  o.tol = overrides.tol.value_or(model.options.tol.value_or(o.tol));
  if (!(o.tail_tol > 0)) throw ModelError("tail_tol must be positive");
  if (o.n_max < 1) throw ModelError("n_max must be at least 1");
  if (!(o.eps_unit > 0)) throw ModelError("eps_unit must be positive");
  if (!(o.tol > 0)) throw ModelError("tol must be positive");
  return o;
}

Method parse_method(const std::string& name) {
  if (name == "series") return Method::kSeries;
  if (name == "invariant") return Method::kInvariant;
  if (name == "spectral") return Method::kSpectral;
  if (name == "all") return Method::kAll;
  throw std::invalid_argument("unknown method '" + name + "' (series|invariant|spectral|all)");
}

CommandResult run_verify(const ModelFile& model, const std::string& observable_name, Method method,
                         const RunOverrides& overrides) {
  const EffectiveOptions opts = resolve_options(model, overrides);
  const Tolerances tol = opts.tolerances();
  const QuantumProgram prog = to_program(model, tol);
  const Observabled o = observable(model, observable_name);
  const ProgramRepresentation rep = build_representation(prog.scheme(), tol);
  const TerminationVerdict verdict = check_program_termination(rep, prog.rho0());

  CommandResult out;
  out.report = header("verify", model, opts);
  out.report["observable"] = observable_name;
  out.report["termination"] = verdict_json(verdict, tol.zero_vector);
  json& results = out.report["results"] = json::array();
  json& warnings = out.report["warnings"];
  std::ostringstream text;
  text << "verify  observable=" << observable_name << "  model=" << model_hash(model) << "\n";
  text << "  method      value              diagnostics\n";

  std::vector<std::pair<std::string, double>> values;
  bool needs_termination_failed = false;
  const bool all = method == Method::kAll;

  if (all || method == Method::kSeries) {
    SeriesOptions so;
    so.tail_tol = opts.tail_tol;
    so.n_max = opts.n_max;
    const SeriesResult s = terminal_state_series(prog, so);
    const double value = o.expectation(s.rho_star.mat());
    values.emplace_back("series", value);
    results.push_back({{"method", "series"},
                       {"value", value},
                       {"tolerance", opts.tail_tol},
                       {"residual", s.residual},
                       {"n_used", s.n_used},
                       {"converged", s.converged}});
    text << "  series      " << std::setw(18) << std::left << fmt(value) << " residual="
         << fmt(s.residual, 3) << " n_used=" << s.n_used << "\n";
    if (!s.converged) {
      needs_termination_failed = true;
      warnings.push_back("series: non-termination mass " + fmt(s.residual) +
                         " remains after n_max steps; QV3 fails for Q = I, so the series value is "
                         "only a lower estimate of the terminal expectation");
    }
  }
  if (all || method == Method::kInvariant) {
    const InvariantRun inv = run_invariant(prog, o, rep, opts);
    values.emplace_back("invariant", inv.value);
    json r = {{"method", "invariant"}, {"value", inv.value}, {"tolerance", 1e-12}, {"sound", inv.sound}};
    r["parts"] = inv.detail;
    results.push_back(r);
    const auto& pp = inv.detail["positive_part"];
    text << "  invariant   " << std::setw(18) << std::left << fmt(inv.value)
         << " iterations=" << pp["iterations"].get<std::int64_t>()
         << " qv2=" << (pp["qv2"]["holds"].get<bool>() ? "ok" : "FAIL")
         << " qv3=" << (pp["qv3"]["holds"].get<bool>() ? "ok" : "FAIL") << "\n";
    if (!inv.sound) warnings.push_back("invariant: certificate fails QV2 or QV3");
  }
  if (all || method == Method::kSpectral) {
    const double value = expectation_closed_form(rep, prog.rho0(), o);
    values.emplace_back("spectral", value);
    results.push_back({{"method", "spectral"},
                       {"value", value},
                       {"tolerance", tol.proj},
                       {"margin", rep.margin},
                       {"unit_circle_eigenvalues", rep.spectral.right_vectors.cols()}});
    text << "  spectral    " << std::setw(18) << std::left << fmt(value)
         << " margin=" << fmt(rep.margin, 6) << "\n";
  }
  if (!verdict.almost_terminates) {
    warnings.push_back("program is not almost-terminating (QV3 with Q = I fails): termination "
                       "probability is below 1, unit-circle overlap " +
                       fmt(verdict.unit_overlap_norm));
  }

  bool disagree = false;
  json& deltas = out.report["deltas"] = json::array();
  for (std::size_t a = 0; a < values.size(); ++a) {
    for (std::size_t b = a + 1; b < values.size(); ++b) {
      const double delta = std::abs(values[a].second - values[b].second);
      const bool ok = delta <= opts.tol;
      disagree = disagree || !ok;
      deltas.push_back({{"methods", {values[a].first, values[b].first}},
                        {"delta", delta},
                        {"tolerance", opts.tol},
                        {"agree", ok}});
      text << "  delta " << values[a].first << "/" << values[b].first << " = " << fmt(delta, 3)
           << (ok ? "" : "  DISAGREE") << "\n";
    }
  }
  text << verdict_text(verdict);
  for (const auto& w : warnings) text << "warning: " << w.get<std::string>() << "\n";

  out.exit_code = disagree ? kExitDisagreement
                           : (needs_termination_failed ? kExitNotTerminating : kExitOk);
  out.report["exit_code"] = out.exit_code;
  out.text = text.str();
  return out;
}

CommandResult run_runtime(const ModelFile& model, const RunOverrides& overrides) {
  const EffectiveOptions opts = resolve_options(model, overrides);
  const Tolerances tol = opts.tolerances();
  const QuantumProgram prog = to_program(model, tol);
  const ProgramRepresentation rep = build_representation(prog.scheme(), tol);
  const TerminationVerdict verdict = check_program_termination(rep, prog.rho0());

  const double spectral = average_running_time(rep, prog.rho0());
  OracleOptions oo;
  oo.tail_tol = opts.tail_tol;
  oo.n_max = opts.n_max;
  oo.table_steps = 0;
  const OracleResult oracle = oracle_expectation(prog, Observabled(MatrixXc::Identity(prog.dim(), prog.dim())), oo);

  CommandResult out;
  out.report = header("runtime", model, opts);
  out.report["termination"] = verdict_json(verdict, tol.zero_vector);
  out.report["results"] = json::array(
      {{{"method", "spectral"}, {"value", number(spectral)}, {"tolerance", tol.proj}, {"margin", rep.margin}},
       {{"method", "series"},
        {"value", number(oracle.running_time_series)},
        {"tolerance", opts.tail_tol},
        {"residual", oracle.residual},
        {"n_used", oracle.n_used}}});
  std::ostringstream text;
  text << "runtime  model=" << model_hash(model) << "\n"
       << "  spectral    " << fmt(spectral) << "\n"
       << "  series      " << fmt(oracle.running_time_series) << "  (n_used=" << oracle.n_used
       << ", residual=" << fmt(oracle.residual, 3) << ")\n";

  if (std::isinf(spectral) || std::isinf(oracle.running_time_series)) {
    out.exit_code = kExitNotTerminating;
    out.report["warnings"].push_back(
        "average running time is infinite: the program keeps weight " +
        fmt(verdict.unit_overlap_norm) + " on the unit-circle eigenspace (QV3 with Q = I fails)");
  } else {
    const double delta = std::abs(spectral - oracle.running_time_series);
    out.report["deltas"] = json::array(
        {{{"methods", {"spectral", "series"}}, {"delta", delta}, {"tolerance", opts.tol}, {"agree", delta <= opts.tol}}});
    text << "  delta spectral/series = " << fmt(delta, 3) << "\n";
    if (delta > opts.tol) out.exit_code = kExitDisagreement;
  }
  for (const auto& w : out.report["warnings"]) text << "warning: " << w.get<std::string>() << "\n";
  out.report["exit_code"] = out.exit_code;
  out.text = text.str();
  return out;
}

CommandResult run_terminate(const ModelFile& model, bool scheme_scope, const RunOverrides& overrides) {
  const EffectiveOptions opts = resolve_options(model, overrides);
  const Tolerances tol = opts.tolerances();
  CommandResult out;
  out.report = header("terminate", model, opts);
  TerminationVerdict verdict;
  if (scheme_scope) {
    const ProgramScheme scheme = to_scheme(model, tol);
    verdict = check_scheme_termination(build_representation(scheme, tol));
  } else {
    const QuantumProgram prog = to_program(model, tol);
    verdict = check_program_termination(build_representation(prog.scheme(), tol), prog.rho0());
  }
  out.report["scope"] = scheme_scope ? "scheme" : "program";
  out.report["termination"] = verdict_json(verdict, tol.zero_vector);
  out.report["exit_code"] = out.exit_code;
  out.text = std::string("terminate  scope=") + (scheme_scope ? "scheme" : "program") +
             "  model=" + model_hash(model) + "\n" + verdict_text(verdict);
  return out;
}

CommandResult run_spectrum(const ModelFile& model, const RunOverrides& overrides) {
  const EffectiveOptions opts = resolve_options(model, overrides);
  const Tolerances tol = opts.tolerances();
  const ProgramScheme scheme = to_scheme(model, tol);
  const ProgramRepresentation rep = build_representation(scheme, tol);
  const auto& sd = rep.spectral;

  struct Row {
    Complex value;
    bool unit;
    int cluster;
  };
  std::vector<Row> rows;
  for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    rows.push_back({Complex(chop(sd.eigenvalues(i).real()), chop(sd.eigenvalues(i).imag())),
                    static_cast<bool>(sd.unit_circle_flags[idx]), sd.cluster_ids[idx]});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return detail::eigenvalue_order(a.value, b.value);
  });

  CommandResult out;
  out.report = header("spectrum", model, opts);
  json table = json::array();
  std::ostringstream text;
  text << "spectrum  model=" << model_hash(model) << "  (" << rep.dim2 << "x" << rep.dim2 << ")\n"
       << "  re              im              |lambda|        unit\n";
  for (const auto& r : rows) {
    table.push_back({{"re", r.value.real()},
                     {"im", r.value.imag()},
                     {"modulus", std::abs(r.value)},
                     {"unit_circle", r.unit},
                     {"cluster", r.cluster}});
    text << "  " << std::setw(16) << std::left << fmt(r.value.real()) << std::setw(16)
         << fmt(r.value.imag()) << std::setw(16) << fmt(std::abs(r.value)) << (r.unit ? "yes" : "")
         << "\n";
  }
  const double ss = rep.spectral.has_unit_circle() ? semisimplicity_residual(rep) : 0.0;
  out.report["eigenvalues"] = table;
  out.report["spectral_radius"] = sd.spectral_radius;
  out.report["margin"] = rep.margin;
  out.report["unit_circle_count"] = sd.right_vectors.cols();
  out.report["semisimple"] = {{"holds", ss <= tol.proj}, {"residual", ss}, {"tolerance", tol.proj}};
  out.report["zero_nilpotent_index_bound"] = sd.zero_nilpotent_index_bound;
  out.report["exit_code"] = out.exit_code;
  text << "  spectral radius " << fmt(sd.spectral_radius) << ", margin " << fmt(rep.margin)
       << ", unit-circle eigenvalues " << sd.right_vectors.cols() << " (semisimple "
       << (ss <= tol.proj ? "ok" : "FAIL") << ")\n"
       << "  nilpotent index at zero " << sd.zero_nilpotent_index_bound << "\n";
  out.text = text.str();
  return out;
}

CommandResult run_simulate(const ModelFile& model, int steps, const RunOverrides& overrides) {
  const EffectiveOptions opts = resolve_options(model, overrides);
  const QuantumProgram prog = to_program(model, opts.tolerances());
  const StepTrace trace = step_probabilities(prog, steps);
  CommandResult out;
  out.report = header("simulate", model, opts);
  json table = json::array();
  std::ostringstream text;
  text << "simulate  model=" << model_hash(model) << "\n  n       p_n             p^N_n\n";
  double cumulative = 0;
  for (const auto& s : trace.steps) {
    cumulative += s.p_n;
    table.push_back({{"n", s.n},
                     {"p_n", s.p_n},
                     {"p_n_nontermination", s.p_n_nontermination},
                     {"cumulative", cumulative}});
    text << "  " << std::setw(8) << std::left << s.n << std::setw(16) << fmt(s.p_n)
         << fmt(s.p_n_nontermination) << "\n";
  }
  out.report["steps"] = table;
  out.report["residual_mass"] = trace.residual_mass;
  out.report["exit_code"] = out.exit_code;
  out.text = text.str();
  return out;
}

json make_golden(const ModelFile& model, const RunOverrides& overrides) {
  const EffectiveOptions base = resolve_options(model, overrides);
  EffectiveOptions opts = base;
  opts.tail_tol = base.tail_tol / 2;
  opts.n_max = base.n_max * 2;
  const QuantumProgram prog = to_program(model, opts.tolerances());
  OracleOptions oo;
  oo.tail_tol = opts.tail_tol;
  oo.n_max = opts.n_max;
  oo.table_steps = 0;

  json g = header("golden", model, opts);
  g["results"] = json::array();
  for (const auto& [name, mat] : model.observables) {
    const OracleResult r = oracle_expectation(prog, observable(model, name), oo);
    g["results"].push_back({{"method", "series"},
                            {"observable", name},
                            {"value", r.expectation_series},
                            {"tolerance", opts.tail_tol},
                            {"residual", r.residual},
                            {"n_used", r.n_used}});
  }
  const OracleResult r = oracle_expectation(prog, Observabled(MatrixXc::Identity(prog.dim(), prog.dim())), oo);
  g["termination_probability"] = {{"method", "series"}, {"value", r.expectation_series}, {"tolerance", opts.tail_tol}};
  g["running_time"] = {{"method", "series"}, {"value", number(r.running_time_series)}, {"tolerance", opts.tail_tol}};
  return g;
}

std::vector<std::string> compare_golden(const ModelFile& model, const json& golden, double tol) {
  std::vector<std::string> diffs;
  if (golden.value("model_hash", "") != model_hash(model)) {
    diffs.push_back("model hash mismatch: golden " + golden.value("model_hash", "") + ", model " +
                    model_hash(model));
    return diffs;
  }
  const QuantumProgram prog = to_program(model);
  OracleOptions oo;
  oo.table_steps = 0;
  if (model.options.tail_tol) oo.tail_tol = *model.options.tail_tol;
  if (model.options.n_max) oo.n_max = *model.options.n_max;
  for (const auto& rec : golden.at("results")) {
    const std::string name = rec.at("observable");
    const double expected = rec.at("value");
    const double actual = oracle_expectation(prog, observable(model, name), oo).expectation_series;
    if (std::abs(actual - expected) > tol)
      diffs.push_back(name + ": golden " + fmt(expected, 17) + ", now " + fmt(actual, 17));
  }
  const OracleResult r = oracle_expectation(prog, Observabled(MatrixXc::Identity(prog.dim(), prog.dim())), oo);
  const auto& rt = golden.at("running_time").at("value");
  if (rt.is_string()) {
    if (!std::isinf(r.running_time_series)) diffs.push_back("running time: golden infinite, now finite");
  } else if (std::abs(rt.get<double>() - r.running_time_series) > tol * std::max(1.0, rt.get<double>())) {
    diffs.push_back("running time: golden " + fmt(rt.get<double>(), 17) + ", now " +
                    fmt(r.running_time_series, 17));
  }
  return diffs;
}

CommandResult run_regen_goldens(const std::string& dir) {
  namespace fs = std::filesystem;
  CommandResult out;
  out.report = {{"command", "regen-goldens"}, {"written", json::array()}};
  std::vector<fs::path> models;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > 11 && name.ends_with(".model.json")) models.push_back(entry.path());
  }
  std::sort(models.begin(), models.end());
  std::ostringstream text;
  for (const auto& path : models) {
    const ModelFile model = load_model(path.string());
    const std::string stem = path.filename().string().substr(0, path.filename().string().size() - 11);
    const fs::path target = path.parent_path() / (stem + ".golden.json");
    std::ofstream f(target);
    if (!f) throw ModelError(target.string() + ": cannot write");
    f << make_golden(model).dump(1) << "\n";
    out.report["written"].push_back(target.filename().string());
    text << "wrote " << target.string() << "\n";
  }
  out.text = text.str();
  return out;
}

CommandResult guarded(const std::string& command, const std::function<CommandResult()>& body) {
  auto failure = [&](int code, const std::string& what) {
    CommandResult r;
    r.exit_code = code;
    r.report = {{"command", command}, {"error", what}, {"exit_code", code}};
    r.text = "error: " + what + "\n";
    return r;
  };
  try {
    return body();
  } catch (const ModelError& e) {
    return failure(kExitInvalidModel, e.what());
  } catch (const SemisimplicityError& e) {
    return failure(kExitInvalidModel, std::string("invalid program: ") + e.what());
  } catch (const ValidationError& e) {
    return failure(kExitInvalidModel, e.what());
  } catch (const DimensionError& e) {
    return failure(kExitInvalidModel, e.what());
  } catch (const std::exception& e) {
    return failure(kExitError, e.what());
  }
}

}  // namespace qverify
