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

#ifndef QVERIFY_INVARIANT_HPP
#define QVERIFY_INVARIANT_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "qverify/representation.hpp"

namespace qverify {

// Invariant-based expectation of a positive observable P in the terminal
// state. An invariant is a positive Q with
//
//   E*(M0^H P M0 + M1^H Q M1) = Q                              (invariance)
//   tr(Q E1(G^n(rho0))) -> 0                                   (Q-termination)
//
// and then tr(P rho*) = tr((M0^H P M0 + M1^H Q M1) rho0). The least such Q is
// reached by monotone iteration from zero.

struct Qv3Sample {
  std::int64_t n = 0;
  double value = 0;  // tr(Q E1(G^n(rho0)))
};

struct InvariantCertificate {
  Observabled q;
  Observabled completion;  // M0^H P M0 + M1^H Q M1
  double qv2_residual = 0;  // |E*(completion) - Q|_max
  std::vector<Qv3Sample> qv3_tail;
  std::optional<double> qv1_value;  // tr(completion rho0)
  std::int64_t iterations = 0;
  bool converged = false;
  bool monotone = true;        // every sampled Q_{n+1} - Q_n was PSD
  double last_step = 0;        // |Q_{n+1} - Q_n|_max at exit
};

struct FixedPointOptions {
  double tol = 1e-12;
  std::int64_t n_max = 1'000'000;
  // Loewner monotonicity is checked on every iterate up to this count, then
  // every `monotone_stride` iterates.
  std::int64_t monotone_dense_checks = 1000;
  std::int64_t monotone_stride = 256;
};

/// Iterates Q_{n+1} = M0^H P M0 + M1^H E*(Q_n) M1 from Q_0 = 0 and returns
/// Q = E*(lim Q_n). P must be positive semidefinite.
InvariantCertificate least_fixed_point_q(const ProgramScheme& scheme, const Observabled& p,
                                         const FixedPointOptions& opts = {});

/// As above, then samples the Q-termination tail and tr(completion rho0).
InvariantCertificate least_fixed_point_q(const QuantumProgram& prog, const Observabled& p,
                                         const FixedPointOptions& opts = {});

/// Solves (I - D) vec(L) = vec(M0^H P M0) with D = the representation of
/// Q -> M1^H E*(Q) M1 and returns the certificate for Q = E*(L). Only valid
/// when the contracting part has no modulus-one spectrum; throws otherwise.
InvariantCertificate least_fixed_point_q_linear(const ProgramScheme& scheme,
                                                const ProgramRepresentation& rep,
                                                const Observabled& p);

/// Certificate for a user-supplied candidate Q.
InvariantCertificate make_certificate(const ProgramScheme& scheme, const Observabled& p,
                                      const Observabled& q);

struct ConditionOptions {
  double qv2_tol = 1e-9;
  double qv3_tol = 1e-9;
  double tail_tol = 1e-12;           // stop sampling once the running mass is below this
  std::int64_t horizon = 100'000;    // largest n sampled for the Q-termination tail
};

struct ConditionCheck {
  bool holds = false;
  double value = 0;
};

struct ConditionReport {
  ConditionCheck qv1;  // value = tr(completion rho0)
  ConditionCheck qv2;  // value = invariance residual
  ConditionCheck qv3;  // value = tail at the horizon
  std::int64_t qv3_horizon = 0;
  std::optional<double> qv3_spectral_overlap;  // when a representation is supplied
  bool qv3_routes_agree = true;
};

ConditionReport check_conditions(const QuantumProgram& prog, const Observabled& p,
                                 const InvariantCertificate& cert,
                                 const ConditionOptions& opts = {},
                                 const ProgramRepresentation* rep = nullptr);

/// Fills cert.qv3_tail at n = 0, 1, 2, 4, ... and cert.qv1_value.
void sample_qv3_tail(const QuantumProgram& prog, InvariantCertificate& cert,
                     const ConditionOptions& opts = {});

struct InvariantExpectation {
  double value = 0;
  bool sound = false;  // invariance and Q-termination both hold
};

/// tr(completion rho0). `sound` is false when the certificate fails
/// invariance or Q-termination; the value is then not guaranteed to be
/// the terminal expectation.
InvariantExpectation expectation_via_invariant(const QuantumProgram& prog, const Observabled& p,
                                               const InvariantCertificate& cert,
                                               const ConditionOptions& opts = {},
                                               const ProgramRepresentation* rep = nullptr);

/// |tr(completion rho0) - sum_{k<=n} tr(P E0(G^k rho0)) - tr(Q E1(G^n rho0))|
double unrolling_identity_residual(const QuantumProgram& prog, const Observabled& p,
                              const InvariantCertificate& cert, int n);

struct GeneralExpectation {
  double value = 0;
  double positive_part = 0;
  double negative_part = 0;
  bool sound = false;
};

/// Splits a Hermitian O into P1 - P2 with orthogonal supports and evaluates
/// each part through its least fixed point.
GeneralExpectation general_expectation(const QuantumProgram& prog, const Observabled& o,
                                       const FixedPointOptions& opts = {},
                                       const ProgramRepresentation* rep = nullptr);

/// max over a spanning family of density matrices rho of
/// tr(Q rho) - tr(P F(rho)), with F evaluated by the series. Non-positive
/// (within tolerance) when Q is below F*(P) in the Loewner order.
double upper_bound_gap(const ProgramScheme& scheme, const Observabled& p, const MatrixXc& q,
                       const SeriesOptions& series = {});

}  // namespace qverify

#endif  // QVERIFY_INVARIANT_HPP
