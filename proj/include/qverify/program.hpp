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

#ifndef QVERIFY_PROGRAM_HPP
#define QVERIFY_PROGRAM_HPP

#include <cstdint>
#include <vector>

#include "qverify/channels.hpp"

namespace qverify {

using SuperOperatord = SuperOperator<double>;
using DensityOperatord = DensityOperator<double>;
using Observabled = Observable<double>;

/// Two-outcome measurement {M0, M1} checked after every step. Outcome 0
/// halts the program.
class TerminationMeasurement {
 public:
  TerminationMeasurement() = default;
  TerminationMeasurement(MatrixXc m0, MatrixXc m1, const Tolerances& tol = default_tolerances());

  Eigen::Index dim() const { return m0_.rows(); }
  const MatrixXc& m0() const { return m0_; }
  const MatrixXc& m1() const { return m1_; }

  /// rho -> M0 rho M0^H
  const SuperOperatord& e0() const { return e0_; }
  /// rho -> M1 rho M1^H
  const SuperOperatord& e1() const { return e1_; }

 private:
  MatrixXc m0_, m1_;
  SuperOperatord e0_, e1_;
};

/// A trace-preserving step channel together with a termination measurement;
/// a program without its initial state.
class ProgramScheme {
 public:
  ProgramScheme() = default;
  ProgramScheme(SuperOperatord e, TerminationMeasurement meas,
                const Tolerances& tol = default_tolerances());

  Eigen::Index dim() const { return e_.dim(); }
  const SuperOperatord& e() const { return e_; }
  const TerminationMeasurement& meas() const { return meas_; }
  const SuperOperatord& e0() const { return meas_.e0(); }
  const SuperOperatord& e1() const { return meas_.e1(); }
  /// One non-terminating round: measure outcome 1, then apply e.
  const SuperOperatord& g() const { return g_; }

 private:
  SuperOperatord e_;
  TerminationMeasurement meas_;
  SuperOperatord g_;
};

class QuantumProgram {
 public:
  QuantumProgram() = default;
  QuantumProgram(ProgramScheme scheme, DensityOperatord rho0,
                 const Tolerances& tol = default_tolerances());

  Eigen::Index dim() const { return scheme_.dim(); }
  const ProgramScheme& scheme() const { return scheme_; }
  const DensityOperatord& rho0() const { return rho0_; }

 private:
  ProgramScheme scheme_;
  DensityOperatord rho0_;
};

struct StepRecord {
  int n = 0;                          // 1-based step index
  double p_n = 0;                     // terminates exactly at step n
  double p_n_nontermination = 0;      // still running after the check of step n
  DensityOperatord partial_terminal;  // unnormalized E0(G^(n-1)(rho0))
};

struct StepTrace {
  std::vector<StepRecord> steps;
  double residual_mass = 0;
};

/// Per-step termination and non-termination probabilities for steps 1..n_max.
StepTrace step_probabilities(const QuantumProgram& prog, int n_max);

struct SeriesOptions {
  double tail_tol = 1e-12;
  std::int64_t n_max = 1'000'000;
};

struct SeriesResult {
  DensityOperatord rho_star;
  double residual = 0;          // tr(G^(n_used+1)(rho))
  std::int64_t n_used = 0;      // index of the last summand
  double running_time = 0;      // sum_{k <= n_used+1} k p_k
  bool converged = false;       // residual < tail_tol
};

/// rho* = sum_n E0(G^n(rho)), truncated once the non-termination mass drops
/// below tail_tol or n_max is reached.
SeriesResult terminal_state_series(const ProgramScheme& scheme, const MatrixXc& rho,
                                   const SeriesOptions& opts = {});
SeriesResult terminal_state_series(const QuantumProgram& prog, const SeriesOptions& opts = {});

/// max-norm residual of F(rho) = E0(rho) + F(G(rho)) with F evaluated by the
/// series.
double check_recursion(const ProgramScheme& scheme, const DensityOperatord& rho,
                       const SeriesOptions& opts = {});

}  // namespace qverify

#endif  // QVERIFY_PROGRAM_HPP
