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

#ifndef QVERIFY_RANDOM_HPP
#define QVERIFY_RANDOM_HPP

#include <random>
#include <vector>

#include "qverify/program.hpp"

// Random instances for property tests and golden generation.
namespace qverify::random {

template <typename Rng>
MatrixXc gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  MatrixXc m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

/// Haar-distributed unitary (QR with phase correction).
template <typename Rng>
MatrixXc unitary(Rng& rng, Eigen::Index d) {
  Eigen::HouseholderQR<MatrixXc> qr(gaussian(rng, d, d));
  MatrixXc q = qr.householderQ();
  const MatrixXc r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j) {
    const Complex diag = r(j, j);
    if (std::abs(diag) > 0) q.col(j) *= diag / std::abs(diag);
  }
  return q;
}

template <typename Rng>
MatrixXc isometry(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  return unitary(rng, rows).leftCols(cols);
}

/// Trace-preserving channel with `kraus` operators cut from a random isometry.
template <typename Rng>
SuperOperatord channel(Rng& rng, Eigen::Index d, int kraus) {
  const MatrixXc v = isometry(rng, d * kraus, d);
  std::vector<MatrixXc> ops;
  for (int i = 0; i < kraus; ++i) ops.push_back(v.middleRows(i * d, d));
  return SuperOperatord(std::move(ops));
}

template <typename Rng>
TerminationMeasurement measurement(Rng& rng, Eigen::Index d) {
  const MatrixXc v = isometry(rng, 2 * d, d);
  return TerminationMeasurement(v.topRows(d), v.bottomRows(d));
}

template <typename Rng>
ProgramScheme scheme(Rng& rng, Eigen::Index d, int kraus = 2) {
  return ProgramScheme(channel(rng, d, kraus), measurement(rng, d));
}

template <typename Rng>
DensityOperatord density(Rng& rng, Eigen::Index d, Eigen::Index rank = -1) {
  const MatrixXc g = gaussian(rng, d, rank < 0 ? d : rank);
  MatrixXc rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperatord(hermitian_part(rho));
}

template <typename Rng>
DensityOperatord pure_state(Rng& rng, Eigen::Index d) {
  return density(rng, d, 1);
}

/// Positive semidefinite with operator norm 1.
template <typename Rng>
Observabled psd(Rng& rng, Eigen::Index d) {
  const MatrixXc g = gaussian(rng, d, d);
  MatrixXc p = g * g.adjoint();
  p /= operator_norm(p);
  return Observabled(hermitian_part(p));
}

template <typename Rng>
Observabled hermitian(Rng& rng, Eigen::Index d) {
  return Observabled(hermitian_part(gaussian(rng, d, d)));
}

template <typename Rng>
QuantumProgram program(Rng& rng, Eigen::Index d, int kraus = 2) {
  return QuantumProgram(scheme(rng, d, kraus), density(rng, d));
}

/// Scheme whose measurement acts as the identity on a random k-dimensional
/// subspace S that the step channel maps unitarily (or by a mixture of
/// unitaries) into itself. Mass inside S never halts, so the representation
/// has modulus-one eigenvalues. Requires 1 <= k < d.
template <typename Rng>
ProgramScheme trapped_scheme(Rng& rng, Eigen::Index d, Eigen::Index k, int unitaries = 1) {
  const Eigen::Index rest = d - k;
  const MatrixXc basis = unitary(rng, d);

  std::uniform_real_distribution<double> u(0.0, 0.9);
  Eigen::VectorXd c(rest), s(rest);
  for (Eigen::Index i = 0; i < rest; ++i) {
    c(i) = u(rng);
    s(i) = std::sqrt(1 - c(i) * c(i));
  }
  const MatrixXc w = unitary(rng, rest);
  MatrixXc m1 = MatrixXc::Zero(d, d), m0 = MatrixXc::Zero(d, d);
  m1.topLeftCorner(k, k).setIdentity();
  m1.bottomRightCorner(rest, rest) = unitary(rng, rest) * c.cast<Complex>().asDiagonal() * w;
  m0.bottomRightCorner(rest, rest) = unitary(rng, rest) * s.cast<Complex>().asDiagonal() * w;

  std::vector<MatrixXc> kraus;
  std::vector<double> weights(static_cast<std::size_t>(unitaries));
  std::uniform_real_distribution<double> wdist(0.1, 1.0);
  double total = 0;
  for (auto& x : weights) total += (x = wdist(rng));
  for (int i = 0; i < unitaries; ++i) {
    MatrixXc e = MatrixXc::Zero(d, d);
    e.topLeftCorner(k, k) = std::sqrt(weights[i] / total) * unitary(rng, k);
    kraus.push_back(e);
  }
  // The complement may be sent anywhere, including into S.
  const int leak = 2;
  const MatrixXc v = isometry(rng, d * leak, rest);
  for (int i = 0; i < leak; ++i) {
    MatrixXc e = MatrixXc::Zero(d, d);
    e.rightCols(rest) = v.middleRows(i * d, d);
    kraus.push_back(e);
  }

  auto rotate = [&](const MatrixXc& a) -> MatrixXc { return basis * a * basis.adjoint(); };
  for (auto& e : kraus) e = rotate(e);
  return ProgramScheme(SuperOperatord(std::move(kraus)),
                       TerminationMeasurement(rotate(m0), rotate(m1)));
}

}  // namespace qverify::random

#endif  // QVERIFY_RANDOM_HPP
