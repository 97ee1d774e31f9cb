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

#ifndef QVERIFY_CATALOG_HPP
#define QVERIFY_CATALOG_HPP

#include "qverify/program.hpp"

namespace qverify::catalog {

inline MatrixXc pauli_x() {
  MatrixXc x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

inline MatrixXc pauli_z() {
  MatrixXc z(2, 2);
  z << 1, 0, 0, -1;
  return z;
}

/// |i><j| on C^d.
inline MatrixXc ket_bra(Eigen::Index d, Eigen::Index i, Eigen::Index j) {
  MatrixXc m = MatrixXc::Zero(d, d);
  m(i, j) = 1;
  return m;
}

/// Keeps the qubit with probability p, flips it with probability 1 - p.
inline SuperOperatord bit_flip(double p) {
  return SuperOperatord({std::sqrt(p) * MatrixXc::Identity(2, 2), std::sqrt(1 - p) * pauli_x()});
}

/// Computational-basis termination test: outcome 0 on |0>, continue on |1>.
inline TerminationMeasurement computational_measurement() {
  return TerminationMeasurement(ket_bra(2, 0, 0), ket_bra(2, 1, 1));
}

inline ProgramScheme bit_flip_scheme(double p) {
  return ProgramScheme(bit_flip(p), computational_measurement());
}

/// alpha|0> + beta|1>.
inline DensityOperatord qubit_state(Complex alpha, Complex beta) {
  VectorXc psi(2);
  psi << alpha, beta;
  return DensityOperatord::pure(psi);
}

inline QuantumProgram bit_flip_program(double p, Complex alpha, Complex beta) {
  return QuantumProgram(bit_flip_scheme(p), qubit_state(alpha, beta));
}

/// Deterministic X with the computational termination test; nilpotent of
/// index two.
inline ProgramScheme x_flip_scheme() {
  return ProgramScheme(SuperOperatord::unitary(pauli_x()), computational_measurement());
}

/// Halts immediately: M0 = I, M1 = 0.
inline ProgramScheme immediate_halt_scheme(const SuperOperatord& e) {
  const auto d = e.dim();
  return ProgramScheme(e, TerminationMeasurement(MatrixXc::Identity(d, d), MatrixXc::Zero(d, d)));
}

/// Never halts: M0 = 0, M1 = I.
inline ProgramScheme never_halt_scheme(const SuperOperatord& e) {
  const auto d = e.dim();
  return ProgramScheme(e, TerminationMeasurement(MatrixXc::Zero(d, d), MatrixXc::Identity(d, d)));
}

}  // namespace qverify::catalog

#endif  // QVERIFY_CATALOG_HPP
