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

#ifndef QVERIFY_TERMINATION_HPP
#define QVERIFY_TERMINATION_HPP

#include <optional>

#include "qverify/representation.hpp"

namespace qverify {

/// Two independent routes to a scheme verdict disagreed.
class ConsistencyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

struct TerminationVerdict {
  bool terminates = false;
  std::optional<int> terminates_at;  // first n >= 1 with p^N_n = 0
  bool almost_terminates = false;
  double unit_overlap_norm = 0;      // |P_u x|
  int nilpotent_check_power = 0;
};

/// Exact termination: M^n vec(rho0) vanishes for some n <= d^2.
/// Almost termination: vec(rho0) has no component on the modulus-one
/// eigenspace of M.
TerminationVerdict check_program_termination(const ProgramRepresentation& rep,
                                             const DensityOperatord& rho0);

/// Scheme verdict from |Phi> using the nilpotent index bound and the
/// unit-circle projector, cross-checked against the program verdict for
/// rho0 = I/d. Throws ConsistencyError if the two routes disagree.
TerminationVerdict check_scheme_termination(const ProgramRepresentation& rep);

}  // namespace qverify

#endif  // QVERIFY_TERMINATION_HPP
