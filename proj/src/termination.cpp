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

#include "qverify/termination.hpp"

#include <sstream>

namespace qverify {
namespace {

TerminationVerdict verdict_for_vector(const ProgramRepresentation& rep, const VectorXc& x) {
  TerminationVerdict v;
  const double zero = rep.tol.zero_vector * x.norm();
  VectorXc power = x;
  const auto horizon = static_cast<int>(rep.dim2);
  for (int n = 1; n <= horizon; ++n) {
    power = (rep.m * power).eval();
    if (power.norm() <= zero) {
      v.terminates_at = n;
      break;
    }
  }
  v.terminates = v.terminates_at.has_value();
  v.nilpotent_check_power = horizon;
  v.unit_overlap_norm = (rep.unit_projector * x).norm();
  v.almost_terminates = v.unit_overlap_norm <= zero;
  if (v.terminates && !v.almost_terminates) {
    std::ostringstream msg;
    msg << "vector is annihilated after " << *v.terminates_at
        << " steps but keeps weight " << v.unit_overlap_norm << " on the unit circle";
    throw ConsistencyError(msg.str());
  }
  return v;
}

}  // namespace

TerminationVerdict check_program_termination(const ProgramRepresentation& rep,
                                             const DensityOperatord& rho0) {
  detail::require_same_dim(rep.dim, rho0.dim(), "check_program_termination");
  return verdict_for_vector(rep, vec(rho0.mat()));
}

TerminationVerdict check_scheme_termination(const ProgramRepresentation& rep) {
  const VectorXc& phi = rep.phi;
  const double zero = rep.tol.zero_vector * phi.norm();

  // Route 1: |Phi> directly.
  TerminationVerdict verdict;
  const int k = std::max(1, rep.spectral.zero_nilpotent_index_bound);
  VectorXc power = phi;
  std::optional<int> first_zero;
  for (int n = 1; n <= k; ++n) {
    power = (rep.m * power).eval();
    if (!first_zero && power.norm() <= zero) first_zero = n;
  }
  verdict.terminates = power.norm() <= zero;
  verdict.terminates_at = verdict.terminates ? first_zero : std::nullopt;
  verdict.nilpotent_check_power = k;
  verdict.unit_overlap_norm = (rep.unit_projector * phi).norm();
  verdict.almost_terminates = verdict.unit_overlap_norm <= zero;

  // Route 2: the maximally mixed initial state.
  const auto mixed = DensityOperatord::maximally_mixed(rep.dim);
  const TerminationVerdict via_state = check_program_termination(rep, mixed);
  if (via_state.terminates != verdict.terminates ||
      via_state.almost_terminates != verdict.almost_terminates ||
      (verdict.terminates && via_state.terminates_at != verdict.terminates_at)) {
    std::ostringstream msg;
    msg << "scheme verdicts disagree: |Phi> route says terminates=" << verdict.terminates
        << " almost=" << verdict.almost_terminates << ", I/d route says terminates="
        << via_state.terminates << " almost=" << via_state.almost_terminates;
    throw ConsistencyError(msg.str());
  }
  return verdict;
}

}  // namespace qverify
