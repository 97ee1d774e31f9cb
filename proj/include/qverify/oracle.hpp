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

#ifndef QVERIFY_ORACLE_HPP
#define QVERIFY_ORACLE_HPP

#include "qverify/invariant.hpp"
#include "qverify/program.hpp"

namespace qverify {

// Brute-force reference values taken straight from the definitions: the
// terminal state as a truncated sum and the least fixed point by long
// iteration. Nothing here touches the d^2 x d^2 representation.

struct OracleResult {
  double expectation_series = 0;
  double running_time_series = 0;  // +infinity when the tail mass exceeds sqrt(tail_tol)
  StepTrace p_table;               // first steps only, for reports
  double tail_tol_used = 0;
  std::int64_t n_used = 0;
  double residual = 0;
  double trace_rho_star = 0;
};

struct OracleOptions {
  double tail_tol = 1e-12;
  std::int64_t n_max = 1'000'000;
  int table_steps = 10;
};

OracleResult oracle_expectation(const QuantumProgram& prog, const Observabled& p,
                                const OracleOptions& opts = {});

/// Least fixed point with 10x tighter tolerance and 10x the iteration budget
/// of the verifier defaults. Returns Q (not the completion).
Observabled oracle_fixed_point(const ProgramScheme& scheme, const Observabled& p);

}  // namespace qverify

#endif  // QVERIFY_ORACLE_HPP
