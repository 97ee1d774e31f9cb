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

#ifndef QVERIFY_REPRESENTATION_HPP
#define QVERIFY_REPRESENTATION_HPP

#include <limits>

#include "qverify/program.hpp"

namespace qverify {

/// Vectorized form of a program scheme. All matrices are d^2 x d^2 and act
/// on row-major vectorizations vec(A) = (A (x) I)|Phi>.
///
///   n0 = M0 (x) conj(M0)          representation of E0
///   n1 = M1 (x) conj(M1)          representation of E1 (kept for reference, unused)
///   m  = sum_i (E_i M1) (x) conj(E_i M1)   representation of G
///   n_filtered = m - m P_u        m with its modulus-one spectrum removed
///
/// The modulus-one eigenvalues of m are semisimple for every valid program,
/// so P_u is assembled from biorthonormal eigenvector pairs and no Jordan
/// basis is ever formed.
struct ProgramRepresentation {
  Eigen::Index dim = 0;   // d
  Eigen::Index dim2 = 0;  // d^2
  MatrixXc n0;
  MatrixXc n1;
  MatrixXc m;
  SpectralData<double> spectral;
  MatrixXc unit_projector;
  MatrixXc n_filtered;
  VectorXc phi;
  // 1 - max{|lambda| : lambda off the unit circle}; bounds the conditioning of (I - N).
  double margin = 1;
  Eigen::PartialPivLU<MatrixXc> resolvent;  // LU of (I - n_filtered)
  Tolerances tol;

  /// (I - N)^{-1} v via the stored factorization.
  VectorXc solve_resolvent(const VectorXc& v) const { return resolvent.solve(v); }
};

/// Builds the representation blocks and the filtered matrix N.
/// Throws SemisimplicityError when a modulus-one eigenvalue has a nontrivial
/// Jordan block and ValidationError when the spectral radius exceeds one.
ProgramRepresentation build_representation(const ProgramScheme& scheme,
                                           const Tolerances& tol = default_tolerances());

/// <P>_{rho*} = <Phi|(P (x) I) N0 (I - N)^{-1} (rho0 (x) I)|Phi>.
double expectation_closed_form(const ProgramRepresentation& rep, const DensityOperatord& rho0,
                               const Observabled& p);

/// sum_n n p_n = <Phi| N0 (I - N)^{-2} (rho0 (x) I)|Phi>, or +infinity when rho0
/// has weight on the modulus-one eigenspace (termination probability < 1).
double average_running_time(const ProgramRepresentation& rep, const DensityOperatord& rho0);

/// max |N0 M^n - N0 N^n|.
double filtered_power_residual(const ProgramRepresentation& rep, int n);

/// ||M^n alpha|| / ||alpha||, which never exceeds 4 sqrt(d).
double power_growth_ratio(const ProgramRepresentation& rep, const VectorXc& alpha, int n);

/// ||M^n alpha|| <= 4 sqrt(d) ||alpha|| + 1e-9.
bool power_bound_check(const ProgramRepresentation& rep, const VectorXc& alpha, int n);

/// max over modulus-one clusters of |(M - lambda I) P_lambda|_max / max(1, |M|).
double semisimplicity_residual(const ProgramRepresentation& rep);

/// max(|N P_u|_max, |N (I - P_u) - M (I - P_u)|_max).
double filtering_residual(const ProgramRepresentation& rep);

/// Largest |tr(W unvec(P_lambda x))| over the modulus-one clusters. The
/// sequence tr(W unvec(M^n x)) tends to zero iff this is zero.
double asymptotic_overlap(const ProgramRepresentation& rep, const MatrixXc& w, const VectorXc& x);

}  // namespace qverify

#endif  // QVERIFY_REPRESENTATION_HPP
