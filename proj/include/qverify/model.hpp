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

#ifndef QVERIFY_MODEL_HPP
#define QVERIFY_MODEL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qverify/program.hpp"

namespace qverify {

/// Malformed or invalid model file. The message names the offending field.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelOptions {
  std::optional<double> tail_tol;
  std::optional<std::int64_t> n_max;
  std::optional<double> eps_unit;
  std::optional<double> tol;  // agreement tolerance between methods

  bool operator==(const ModelOptions&) const = default;
};

/// In-memory image of a model file.
///
///   {
///     "dim": 2,
///     "kraus": [ [[[re, im], ...], ...], ... ],
///     "m0": [[[re, im], ...], ...],
///     "m1": ...,
///     "rho0": ...,                          optional
///     "observables": { "P0": ..., ... },
///     "options": { "tail_tol": 1e-12, "n_max": 1000000, "eps_unit": 1e-7, "tol": 1e-6 }
///   }
struct ModelFile {
  Eigen::Index dim = 0;
  std::vector<MatrixXc> kraus;
  MatrixXc m0, m1;
  std::optional<MatrixXc> rho0;
  std::map<std::string, MatrixXc> observables;
  ModelOptions options;

  bool operator==(const ModelFile& other) const;
};

ModelFile parse_model(const nlohmann::json& j);
nlohmann::json to_json(const ModelFile& model);

ModelFile load_model(const std::string& path);
void save_model(const ModelFile& model, const std::string& path);

/// Canonical serialization used for hashing and goldens.
std::string canonical_text(const ModelFile& model);

/// FNV-1a 64-bit hash of canonical_text, as 16 hex digits.
std::string model_hash(const ModelFile& model);

/// Builds the validated scheme; channel and measurement violations surface as
/// ModelError with the underlying reason.
ProgramScheme to_scheme(const ModelFile& model, const Tolerances& tol = default_tolerances());
QuantumProgram to_program(const ModelFile& model, const Tolerances& tol = default_tolerances());
Observabled observable(const ModelFile& model, const std::string& name);

ModelFile model_from(const ProgramScheme& scheme, std::optional<MatrixXc> rho0,
                     std::map<std::string, MatrixXc> observables = {});

nlohmann::json matrix_to_json(const MatrixXc& m);
MatrixXc matrix_from_json(const nlohmann::json& j, const std::string& where);

}  // namespace qverify

#endif  // QVERIFY_MODEL_HPP
