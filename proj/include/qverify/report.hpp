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

#ifndef QVERIFY_REPORT_HPP
#define QVERIFY_REPORT_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qverify/model.hpp"

namespace qverify {

enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitInvalidModel = 2,
  kExitDisagreement = 3,
  kExitNotTerminating = 4,
};

/// Command-line overrides; unset fields fall back to the model options and
/// then to the built-in defaults.
struct RunOverrides {
  std::optional<double> tail_tol;
  std::optional<std::int64_t> n_max;
  std::optional<double> eps_unit;
  std::optional<double> tol;
};

struct EffectiveOptions {
  double tail_tol = 1e-12;
  std::int64_t n_max = 1'000'000;
  double eps_unit = 1e-7;
  double tol = 1e-6;

  Tolerances tolerances() const;
  nlohmann::json to_json() const;
};

EffectiveOptions resolve_options(const ModelFile& model, const RunOverrides& overrides);

/// JSON report with its human rendering. `exit_code` is the process status.
struct CommandResult {
  nlohmann::json report;
  std::string text;
  int exit_code = kExitOk;
};

enum class Method { kSeries, kInvariant, kSpectral, kAll };
Method parse_method(const std::string& name);

CommandResult run_verify(const ModelFile& model, const std::string& observable_name, Method method,
                         const RunOverrides& overrides = {});
CommandResult run_runtime(const ModelFile& model, const RunOverrides& overrides = {});
CommandResult run_terminate(const ModelFile& model, bool scheme_scope,
                            const RunOverrides& overrides = {});
CommandResult run_spectrum(const ModelFile& model, const RunOverrides& overrides = {});
CommandResult run_simulate(const ModelFile& model, int steps, const RunOverrides& overrides = {});

/// Golden record of a model: oracle expectations of every observable and
/// the series running time, computed at twice the truncation depth.
nlohmann::json make_golden(const ModelFile& model, const RunOverrides& overrides = {});

/// Differences between a fresh oracle run and a committed golden record
/// beyond `tol`; empty when they agree.
std::vector<std::string> compare_golden(const ModelFile& model, const nlohmann::json& golden,
                                        double tol);

/// Rewrites <stem>.golden.json next to every <stem>.model.json in `dir`.
CommandResult run_regen_goldens(const std::string& dir);

/// Runs `body`, mapping ModelError and invalid programs to exit code 2 and
/// any other failure to exit code 1.
CommandResult guarded(const std::string& command, const std::function<CommandResult()>& body);

}  // namespace qverify

#endif  // QVERIFY_REPORT_HPP
