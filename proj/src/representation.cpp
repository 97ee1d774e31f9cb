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

#include "qverify/representation.hpp"

#include <sstream>

namespace qverify {

ProgramRepresentation build_representation(const ProgramScheme& scheme, const Tolerances& tol) {
  ProgramRepresentation rep;
  rep.tol = tol;
  rep.dim = scheme.dim();
  rep.dim2 = rep.dim * rep.dim;
  const auto& m0 = scheme.meas().m0();
  const auto& m1 = scheme.meas().m1();
  rep.n0 = kron(m0, m0.conjugate());
  rep.n1 = kron(m1, m1.conjugate());
  rep.m = matrix_representation(scheme.g());
  rep.phi = max_entangled(rep.dim);

  SpectralOptions opts;
  opts.tol = tol;
  rep.spectral = spectral_decompose(rep.m, opts);
  if (rep.spectral.spectral_radius > 1 + tol.unit) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "representation has spectral radius " << rep.spectral.spectral_radius
        << " > 1; the step channel cannot be trace-preserving";
    throw ValidationError(msg.str());
  }

  rep.unit_projector = rep.spectral.unit_projector();
  const MatrixXc identity = MatrixXc::Identity(rep.dim2, rep.dim2);
  rep.n_filtered = rep.m - rep.m * rep.unit_projector;

  const double scale = norm_scale(rep.m);
  if (rep.spectral.has_unit_circle()) {
    const double ss = semisimplicity_residual(rep);
    if (ss > tol.proj) {
      std::ostringstream msg;
      msg << "modulus-one eigenvalue is not semisimple: |(M - lambda I) P_lambda| = " << ss;
      throw SemisimplicityError(msg.str());
    }
    const MatrixXc& pu = rep.unit_projector;
    const double idempotence = max_abs(pu * pu - pu);
    const double commutator = max_abs(rep.m * pu - pu * rep.m);
    if (idempotence > tol.proj * norm_scale(pu) || commutator > tol.proj * scale) {
      std::ostringstream msg;
      msg << "unit-circle projector is inconsistent: |P^2 - P| = " << idempotence
          << ", |MP - PM| = " << commutator;
      throw SemisimplicityError(msg.str());
    }
  }

  rep.margin = 1 - rep.spectral.contracting_radius();
  rep.resolvent.compute(identity - rep.n_filtered);
  if (!(rep.margin > 0) || !(rep.resolvent.rcond() > 1e-14)) {
    std::ostringstream msg;
    msg << "I - N is singular (margin " << rep.margin << ", rcond " << rep.resolvent.rcond() << ")";
    throw NumericalError(msg.str());
  }
  return rep;
}

double expectation_closed_form(const ProgramRepresentation& rep, const DensityOperatord& rho0,
                               const Observabled& p) {
  detail::require_same_dim(rep.dim, rho0.dim(), "expectation_closed_form");
  detail::require_same_dim(rep.dim, p.dim(), "expectation_closed_form");
  const VectorXc x = vec(rho0.mat());
  const VectorXc terminal = rep.n0 * rep.solve_resolvent(x);
  // <Phi|(P (x) I) v> = tr(P unvec(v))
  const Complex value = (p.mat() * unvec(terminal)).trace();
  if (std::abs(value.imag()) > 1e-9 * std::max(1.0, max_abs(p.mat()))) {
    std::ostringstream msg;
    msg << "closed-form expectation has imaginary part " << value.imag();
    throw NumericalError(msg.str());
  }
  return value.real();
}

double average_running_time(const ProgramRepresentation& rep, const DensityOperatord& rho0) {
  detail::require_same_dim(rep.dim, rho0.dim(), "average_running_time");
  const VectorXc x = vec(rho0.mat());
  if ((rep.unit_projector * x).norm() > rep.tol.zero_vector * x.norm()) {
    return std::numeric_limits<double>::infinity();
  }
  const VectorXc y = rep.solve_resolvent(rep.solve_resolvent(x));
  return unvec(rep.n0 * y).trace().real();
}

double filtered_power_residual(const ProgramRepresentation& rep, int n) {
  if (n < 0) throw std::invalid_argument("filtered_power_residual: n must be >= 0");
  MatrixXc lhs = rep.n0, rhs = rep.n0;
  for (int k = 0; k < n; ++k) {
    lhs = (lhs * rep.m).eval();
    rhs = (rhs * rep.n_filtered).eval();
  }
  return max_abs(lhs - rhs);
}

double power_growth_ratio(const ProgramRepresentation& rep, const VectorXc& alpha, int n) {
  if (alpha.size() != rep.dim2) throw DimensionError("power_growth_ratio: vector length mismatch");
  const double norm = alpha.norm();
  if (norm == 0) return 0;
  VectorXc v = alpha;
  for (int k = 0; k < n; ++k) v = (rep.m * v).eval();
  return v.norm() / norm;
}

bool power_bound_check(const ProgramRepresentation& rep, const VectorXc& alpha, int n) {
  if (alpha.size() != rep.dim2) throw DimensionError("power_bound_check: vector length mismatch");
  VectorXc v = alpha;
  for (int k = 0; k < n; ++k) v = (rep.m * v).eval();
  const double bound = 4 * std::sqrt(static_cast<double>(rep.dim)) * alpha.norm();
  return v.norm() <= bound + 1e-9;
}

double semisimplicity_residual(const ProgramRepresentation& rep) {
  const auto& sd = rep.spectral;
  double worst = 0;
  const double scale = norm_scale(rep.m);
  for (std::size_t c = 0; c < sd.clusters.size(); ++c) {
    if (!sd.clusters[c].on_unit_circle) continue;
    const MatrixXc proj = sd.cluster_projector(static_cast<int>(c));
    const MatrixXc shifted = rep.m - sd.clusters[c].value * MatrixXc::Identity(rep.dim2, rep.dim2);
    worst = std::max(worst, max_abs(shifted * proj) / scale);
  }
  return worst;
}

double filtering_residual(const ProgramRepresentation& rep) {
  const MatrixXc complement = MatrixXc::Identity(rep.dim2, rep.dim2) - rep.unit_projector;
  return std::max(max_abs(rep.n_filtered * rep.unit_projector),
                  max_abs(rep.n_filtered * complement - rep.m * complement));
}

double asymptotic_overlap(const ProgramRepresentation& rep, const MatrixXc& w, const VectorXc& x) {
  const auto& sd = rep.spectral;
  double worst = 0;
  for (std::size_t c = 0; c < sd.clusters.size(); ++c) {
    if (!sd.clusters[c].on_unit_circle) continue;
    const VectorXc component = sd.cluster_projector(static_cast<int>(c)) * x;
    worst = std::max(worst, std::abs((w * unvec(component)).trace()));
  }
  return worst;
}

}  // namespace qverify
