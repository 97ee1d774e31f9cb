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

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "qverify/report.hpp"

namespace {

struct Args {
  std::string model_path;
  std::string observable;
  std::string method = "all";
  std::string scope = "program";
  std::string json_out;
  std::string golden_dir;
  int steps = 20;
  qverify::RunOverrides overrides;
};

void add_common(CLI::App* cmd, Args& a) {
  cmd->add_option("model", a.model_path, "Model file (JSON)")->required();
  cmd->add_option("--json-out", a.json_out, "Write the JSON report to this path");
  cmd->add_option("--tail-tol", a.overrides.tail_tol, "Series truncation threshold");
  cmd->add_option("--n-max", a.overrides.n_max, "Series iteration cap");
  cmd->add_option("--eps-unit", a.overrides.eps_unit, "Unit-circle threshold");
  cmd->add_option("--tol", a.overrides.tol, "Agreement tolerance between methods");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qverify: expectation, running time and termination of quantum while-loops"};
  app.require_subcommand(1);
  Args a;

  auto* verify = app.add_subcommand("verify", "Expected value of an observable on termination");
  add_common(verify, a);
  verify->add_option("--observable", a.observable, "Observable name from the model")->required();
  verify->add_option("--method", a.method, "series|invariant|spectral|all")
      ->check(CLI::IsMember({"series", "invariant", "spectral", "all"}));

  auto* runtime = app.add_subcommand("runtime", "Average running time");
  add_common(runtime, a);

  auto* terminate = app.add_subcommand("terminate", "Termination verdict");
  add_common(terminate, a);
  terminate->add_option("--scope", a.scope, "program|scheme")->check(CLI::IsMember({"program", "scheme"}));

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of the loop representation");
  add_common(spectrum, a);

  auto* simulate = app.add_subcommand("simulate", "Per-step termination probabilities");
  add_common(simulate, a);
  simulate->add_option("--steps", a.steps, "Number of steps")->check(CLI::PositiveNumber);

  auto* regen = app.add_subcommand("regen-goldens", "Rewrite golden records from model files");
  regen->add_option("dir", a.golden_dir, "Directory of <stem>.model.json files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : qverify::kExitError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const qverify::CommandResult result = qverify::guarded(command, [&]() -> qverify::CommandResult {
    if (command == "regen-goldens") return qverify::run_regen_goldens(a.golden_dir);
    const qverify::ModelFile model = qverify::load_model(a.model_path);
    if (command == "verify")
      return qverify::run_verify(model, a.observable, qverify::parse_method(a.method), a.overrides);
    if (command == "runtime") return qverify::run_runtime(model, a.overrides);
    if (command == "terminate") return qverify::run_terminate(model, a.scope == "scheme", a.overrides);
    if (command == "spectrum") return qverify::run_spectrum(model, a.overrides);
    return qverify::run_simulate(model, a.steps, a.overrides);
  });

  const bool failed = result.exit_code == qverify::kExitError ||
                      result.exit_code == qverify::kExitInvalidModel;
  (failed ? std::cerr : std::cout) << result.text;
  if (!a.json_out.empty()) {
    std::ofstream out(a.json_out);
    if (!out) {
      std::cerr << "error: cannot write " << a.json_out << "\n";
      return qverify::kExitError;
    }
    out << result.report.dump(2) << "\n";
  }
  return result.exit_code;
}
