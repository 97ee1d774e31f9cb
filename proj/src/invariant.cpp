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

#include "qverify/invariant.hpp"

#include <sstream>

namespace qverify {
namespace {

MatrixXc completion_of(const ProgramScheme& scheme, const MatrixXc& p, const MatrixXc& q) {
  const auto& m0 = scheme.meas().m0();
  const auto& m1 = scheme.meas().m1();
  return m0.adjoint() * p * m0 + m1.adjoint() * q * m1;
}

InvariantCertificate certificate_for(const ProgramScheme& scheme, const Observabled& p,
                                     const MatrixXc& q) {
  InvariantCertificate cert;
  const MatrixXc completion = hermitian_part(completion_of(scheme, p.mat(), q));
  cert.q = Observabled(hermitian_part(q));
  cert.completion = Observabled(completion);
  cert.qv2_residual = max_abs(apply_dual(scheme.e(), completion) - cert.q.mat());
  return cert;
}

void require_positive(const Observabled& p, const char* what) {
  if (!is_positive_semidefinite(p.mat())) {
    std::ostringstream msg;
    msg << what << ": observable must be positive semidefinite (smallest eigenvalue "
        << hermitian_eigenvalues(p.mat()).minCoeff() << ")";
    throw ValidationError(msg.str());
  }
}

}  // namespace

InvariantCertificate least_fixed_point_q(const ProgramScheme& scheme, const Observabled& p,
                                         const FixedPointOptions& opts) {
  require_positive(p, "least_fixed_point_q");
  detail::require_same_dim(scheme.dim(), p.dim(), "least_fixed_point_q");
  const auto d = scheme.dim();
  const auto& m0 = scheme.meas().m0();
  const auto& m1 = scheme.meas().m1();
  const MatrixXc base = m0.adjoint() * p.mat() * m0;

  MatrixXc q = MatrixXc::Zero(d, d);
  MatrixXc next(d, d);
  bool monotone = true;
  std::int64_t n = 0;
  double step = 0;
  bool converged = false;
  while (n < opts.n_max) {
    next.noalias() = base + m1.adjoint() * apply_dual(scheme.e(), q) * m1;
    ++n;
    const MatrixXc diff = next - q;
    step = max_abs(diff);
    if (n <= opts.monotone_dense_checks || n % opts.monotone_stride == 0) {
      monotone = monotone && is_positive_semidefinite(diff, 1e-9);
    }
    q.swap(next);
    if (step < opts.tol) {
      converged = true;
      break;
    }
  }
  InvariantCertificate cert = certificate_for(scheme, p, apply_dual(scheme.e(), hermitian_part(q)));
  cert.iterations = n;
  cert.converged = converged;
  cert.monotone = monotone;
  cert.last_step = step;
  return cert;
}

InvariantCertificate least_fixed_point_q(const QuantumProgram& prog, const Observabled& p,
                                         const FixedPointOptions& opts) {
  InvariantCertificate cert = least_fixed_point_q(prog.scheme(), p, opts);
  sample_qv3_tail(prog, cert);
  return cert;
}

InvariantCertificate least_fixed_point_q_linear(const ProgramScheme& scheme,
                                                const ProgramRepresentation& rep,
                                                const Observabled& p) {
  require_positive(p, "least_fixed_point_q_linear");
  if (rep.spectral.has_unit_circle()) {
    throw NumericalError(
        "linear fixed-point solve needs a strictly contracting representation; "
        "use the monotone iteration instead");
  }
  const auto& m0 = scheme.meas().m0();
  const MatrixXc base = m0.adjoint() * p.mat() * m0;
  // vec(M1^H E*(L) M1) = M^H vec(L) for the row-major vectorization.
  const MatrixXc system = MatrixXc::Identity(rep.dim2, rep.dim2) - rep.m.adjoint();
  const VectorXc limit = system.partialPivLu().solve(vec(base));
  InvariantCertificate cert =
      certificate_for(scheme, p, apply_dual(scheme.e(), hermitian_part(unvec(limit))));
  cert.converged = true;
  return cert;
}

InvariantCertificate make_certificate(const ProgramScheme& scheme, const Observabled& p,
                                      const Observabled& q) {
  detail::require_same_dim(scheme.dim(), q.dim(), "make_certificate");
  InvariantCertificate cert = certificate_for(scheme, p, q.mat());
  cert.converged = true;
  return cert;
}

void sample_qv3_tail(const QuantumProgram& prog, InvariantCertificate& cert,
                     const ConditionOptions& opts) {
  const auto& scheme = prog.scheme();
  const MatrixXc weight = apply_dual(scheme.e1(), cert.q.mat());
  cert.qv3_tail.clear();
  cert.qv1_value = cert.completion.expectation(prog.rho0().mat());
  MatrixXc state = prog.rho0().mat();
  std::int64_t next_sample = 0;
  for (std::int64_t n = 0;; ++n) {
    const double value = (weight * state).trace().real();
    const bool last = n >= opts.horizon || state.trace().real() < opts.tail_tol;
    if (n == next_sample || last) {
      cert.qv3_tail.push_back({n, value});
      next_sample = next_sample == 0 ? 1 : 2 * next_sample;
    }
    if (last) break;
    state = apply_channel(scheme.g(), state);
  }
}

ConditionReport check_conditions(const QuantumProgram& prog, const Observabled& p,
                                 const InvariantCertificate& cert, const ConditionOptions& opts,
                                 const ProgramRepresentation* rep) {
  detail::require_same_dim(prog.dim(), p.dim(), "check_conditions");
  detail::require_same_dim(prog.dim(), cert.q.dim(), "check_conditions");
  ConditionReport report;
  report.qv1.value = cert.completion.expectation(prog.rho0().mat());
  report.qv1.holds = std::isfinite(report.qv1.value);

  report.qv2.value = max_abs(apply_dual(prog.scheme().e(), cert.completion.mat()) - cert.q.mat());
  report.qv2.holds = report.qv2.value <= opts.qv2_tol;

  InvariantCertificate sampled = cert;
  sample_qv3_tail(prog, sampled, opts);
  const double q_scale = std::max(1.0, max_abs(cert.q.mat()));
  report.qv3.value = sampled.qv3_tail.back().value;
  report.qv3_horizon = sampled.qv3_tail.back().n;
  const bool numeric_holds = std::abs(report.qv3.value) <= opts.qv3_tol * q_scale;
  report.qv3.holds = numeric_holds;
  if (rep != nullptr) {
    const MatrixXc weight = apply_dual(prog.scheme().e1(), cert.q.mat());
    const double overlap = asymptotic_overlap(*rep, weight, vec(prog.rho0().mat()));
    report.qv3_spectral_overlap = overlap;
    const bool spectral_holds = overlap <= opts.qv3_tol * q_scale;
    report.qv3_routes_agree = spectral_holds == numeric_holds;
    report.qv3.holds = spectral_holds;
  }
  return report;
}

InvariantExpectation expectation_via_invariant(const QuantumProgram& prog, const Observabled& p,
                                               const InvariantCertificate& cert,
                                               const ConditionOptions& opts,
                                               const ProgramRepresentation* rep) {
  const ConditionReport conditions = check_conditions(prog, p, cert, opts, rep);
  return {conditions.qv1.value, conditions.qv2.holds && conditions.qv3.holds};
}

double unrolling_identity_residual(const QuantumProgram& prog, const Observabled& p,
                              const InvariantCertificate& cert, int n) {
  if (n < 0) throw std::invalid_argument("unrolling_identity_residual: n must be >= 0");
  const auto& scheme = prog.scheme();
  const double lhs = cert.completion.expectation(prog.rho0().mat());
  MatrixXc state = prog.rho0().mat();
  double rhs = 0;
  for (int k = 0; k <= n; ++k) {
    rhs += p.expectation(apply_channel(scheme.e0(), state));
    if (k < n) state = apply_channel(scheme.g(), state);
  }
  rhs += cert.q.expectation(apply_channel(scheme.e1(), state));
  return std::abs(lhs - rhs);
}

GeneralExpectation general_expectation(const QuantumProgram& prog, const Observabled& o,
                                       const FixedPointOptions& opts,
                                       const ProgramRepresentation* rep) {
  auto [pos, neg] = spectral_split<double>(o.mat());
  const Observabled p1(pos), p2(neg);
  const auto cert1 = least_fixed_point_q(prog.scheme(), p1, opts);
  const auto cert2 = least_fixed_point_q(prog.scheme(), p2, opts);
  const auto e1 = expectation_via_invariant(prog, p1, cert1, {}, rep);
  const auto e2 = expectation_via_invariant(prog, p2, cert2, {}, rep);
  GeneralExpectation out;
  out.positive_part = e1.value;
  out.negative_part = e2.value;
  out.value = e1.value - e2.value;
  out.sound = e1.sound && e2.sound;
  return out;
}

double upper_bound_gap(const ProgramScheme& scheme, const Observabled& p, const MatrixXc& q,
                       const SeriesOptions& series) {
  const auto d = scheme.dim();
  std::vector<VectorXc> kets;
  for (Eigen::Index i = 0; i < d; ++i) kets.push_back(VectorXc::Unit(d, i));
  const double r = 1 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      VectorXc plus = VectorXc::Zero(d), plus_i = VectorXc::Zero(d);
      plus(i) = r;
      plus(j) = r;
      plus_i(i) = r;
      plus_i(j) = Complex(0, r);
      kets.push_back(plus);
      kets.push_back(plus_i);
    }
  }
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& ket : kets) {
    const MatrixXc rho = ket * ket.adjoint();
    const auto f = terminal_state_series(scheme, rho, series);
    const double gap = (q * rho).trace().real() - p.expectation(f.rho_star.mat());
    worst = std::max(worst, gap);
  }
  return worst;
}

}  // namespace qverify
