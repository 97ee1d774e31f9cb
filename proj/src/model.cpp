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

#include "qverify/model.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qverify {

using nlohmann::json;

namespace {

bool same_matrix(const MatrixXc& a, const MatrixXc& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) throw ModelError(where + ": expected a number");
  return j.get<double>();
}

}  // namespace

bool ModelFile::operator==(const ModelFile& other) const {
  if (dim != other.dim || kraus.size() != other.kraus.size() || options != other.options) return false;
  for (std::size_t i = 0; i < kraus.size(); ++i)
    if (!same_matrix(kraus[i], other.kraus[i])) return false;
  if (!same_matrix(m0, other.m0) || !same_matrix(m1, other.m1)) return false;
  if (rho0.has_value() != other.rho0.has_value()) return false;
  if (rho0 && !same_matrix(*rho0, *other.rho0)) return false;
  if (observables.size() != other.observables.size()) return false;
  for (const auto& [name, mat] : observables) {
    auto it = other.observables.find(name);
    if (it == other.observables.end() || !same_matrix(mat, it->second)) return false;
  }
  return true;
}

json matrix_to_json(const MatrixXc& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixXc matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ModelError(where + ": expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) throw ModelError(where + "[0]: expected a non-empty row");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  MatrixXc m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    const std::string rw = where + "[" + std::to_string(i) + "]";
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ModelError(rw + ": expected " + std::to_string(cols) + " entries");
    for (Eigen::Index k = 0; k < cols; ++k) {
      const auto& z = row[static_cast<std::size_t>(k)];
      const std::string zw = rw + "[" + std::to_string(k) + "]";
      if (!z.is_array() || z.size() != 2) throw ModelError(zw + ": expected [re, im]");
      m(i, k) = Complex(number_at(z[0], zw + "[0]"), number_at(z[1], zw + "[1]"));
    }
  }
  return m;
}

ModelFile parse_model(const json& j) {
  if (!j.is_object()) throw ModelError("model: expected a JSON object");
  ModelFile model;
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<std::int64_t>() < 1)
    throw ModelError("dim: expected a positive integer");
  model.dim = j["dim"].get<Eigen::Index>();

  auto square = [&](const json& node, const std::string& where) {
    MatrixXc m = matrix_from_json(node, where);
    if (m.rows() != model.dim || m.cols() != model.dim) {
      std::ostringstream msg;
      msg << where << ": expected " << model.dim << "x" << model.dim << ", got " << m.rows() << "x"
          << m.cols();
      throw ModelError(msg.str());
    }
    return m;
  };

  if (!j.contains("kraus") || !j["kraus"].is_array() || j["kraus"].empty())
    throw ModelError("kraus: expected a non-empty list of matrices");
  for (std::size_t i = 0; i < j["kraus"].size(); ++i)
    model.kraus.push_back(square(j["kraus"][i], "kraus[" + std::to_string(i) + "]"));
  for (const char* key : {"m0", "m1"}) {
    if (!j.contains(key)) throw ModelError(std::string(key) + ": missing");
  }
  model.m0 = square(j["m0"], "m0");
  model.m1 = square(j["m1"], "m1");
  if (j.contains("rho0") && !j["rho0"].is_null()) model.rho0 = square(j["rho0"], "rho0");
  if (j.contains("observables")) {
    if (!j["observables"].is_object()) throw ModelError("observables: expected an object");
    for (const auto& [name, node] : j["observables"].items())
      model.observables[name] = square(node, "observables." + name);
  }
  if (j.contains("options")) {
    const auto& o = j["options"];
    if (!o.is_object()) throw ModelError("options: expected an object");
    if (o.contains("tail_tol")) model.options.tail_tol = number_at(o["tail_tol"], "options.tail_tol");
    if (o.contains("eps_unit")) model.options.eps_unit = number_at(o["eps_unit"], "options.eps_unit");
    if (o.contains("tol")) model.options.tol = number_at(o["tol"], "options.tol");
    if (o.contains("n_max")) {
      if (!o["n_max"].is_number_integer()) throw ModelError("options.n_max: expected an integer");
      model.options.n_max = o["n_max"].get<std::int64_t>();
    }
  }
  return model;
}

json to_json(const ModelFile& model) {
  json j;
  j["dim"] = model.dim;
  j["kraus"] = json::array();
  for (const auto& k : model.kraus) j["kraus"].push_back(matrix_to_json(k));
  j["m0"] = matrix_to_json(model.m0);
  j["m1"] = matrix_to_json(model.m1);
  if (model.rho0) j["rho0"] = matrix_to_json(*model.rho0);
  j["observables"] = json::object();
  for (const auto& [name, m] : model.observables) j["observables"][name] = matrix_to_json(m);
  json o = json::object();
  if (model.options.tail_tol) o["tail_tol"] = *model.options.tail_tol;
  if (model.options.n_max) o["n_max"] = *model.options.n_max;
  if (model.options.eps_unit) o["eps_unit"] = *model.options.eps_unit;
  if (model.options.tol) o["tol"] = *model.options.tol;
  if (!o.empty()) j["options"] = o;
  return j;
}

ModelFile load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError(path + ": cannot open");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ModelError(path + ": " + e.what());
  }
  return parse_model(j);
}

void save_model(const ModelFile& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ModelError(path + ": cannot write");
  out << to_json(model).dump(1) << "\n";
}

std::string canonical_text(const ModelFile& model) { return to_json(model).dump(); }

std::string model_hash(const ModelFile& model) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_text(model)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ProgramScheme to_scheme(const ModelFile& model, const Tolerances& tol) {
  try {
    return ProgramScheme(SuperOperatord(model.kraus, tol), TerminationMeasurement(model.m0, model.m1, tol),
                         tol);
  } catch (const std::invalid_argument& e) {
    throw ModelError(std::string("invalid program: ") + e.what());
  }
}

QuantumProgram to_program(const ModelFile& model, const Tolerances& tol) {
  if (!model.rho0) throw ModelError("rho0: required for this command");
  ProgramScheme scheme = to_scheme(model, tol);
  try {
    return QuantumProgram(std::move(scheme), DensityOperatord(*model.rho0, tol), tol);
  } catch (const std::invalid_argument& e) {
    throw ModelError(std::string("rho0: ") + e.what());
  }
}

Observabled observable(const ModelFile& model, const std::string& name) {
  auto it = model.observables.find(name);
  if (it == model.observables.end()) {
    std::string known;
    for (const auto& [k, v] : model.observables) known += (known.empty() ? "" : ", ") + k;
    throw ModelError("observable '" + name + "' not found (available: " + known + ")");
  }
  try {
    return Observabled(it->second);
  } catch (const std::invalid_argument& e) {
    throw ModelError("observables." + name + ": " + e.what());
  }
}

ModelFile model_from(const ProgramScheme& scheme, std::optional<MatrixXc> rho0,
                     std::map<std::string, MatrixXc> observables) {
  ModelFile model;
  model.dim = scheme.dim();
  model.kraus = scheme.e().kraus();
  model.m0 = scheme.meas().m0();
  model.m1 = scheme.meas().m1();
  model.rho0 = std::move(rho0);
  model.observables = std::move(observables);
  return model;
}

}  // namespace qverify
