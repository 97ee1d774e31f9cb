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

#include "qverify/oracle.hpp"

#include <algorithm>
#include <limits>

namespace qverify {

OracleResult oracle_expectation(const QuantumProgram& prog, const Observabled& p,
                                const OracleOptions& opts) {
  SeriesOptions series;
  series.tail_tol = opts.tail_tol;
  series.n_max = opts.n_max;
  const SeriesResult s = terminal_state_series(prog, series);

  OracleResult out;
  out.expectation_series = p.expectation(s.rho_star.mat());
  out.trace_rho_star = s.rho_star.trace();
  out.tail_tol_used = opts.tail_tol;
  out.n_used = s.n_used;
  out.residual = s.residual;
  out.running_time_series = s.residual > std::sqrt(opts.tail_tol)
                                ? std::numeric_limits<double>::infinity()
                                : s.running_time;
  if (opts.table_steps > 0) out.p_table = step_probabilities(prog, opts.table_steps);
  return out;
}

Observabled oracle_fixed_point(const ProgramScheme& scheme, const Observabled& p) {
  FixedPointOptions opts;
  opts.tol /= 10;
  opts.n_max *= 10;
  opts.monotone_dense_checks = 0;
  opts.monotone_stride = std::numeric_limits<std::int64_t>::max();
  return least_fixed_point_q(scheme, p, opts).q;
}

}  // namespace qverify
