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

#include "qverify/program.hpp"

#include <sstream>

namespace qverify {

TerminationMeasurement::TerminationMeasurement(MatrixXc m0, MatrixXc m1, const Tolerances& tol)
    : m0_(std::move(m0)), m1_(std::move(m1)) {
  require_square(m0_, "termination measurement M0");
  require_square(m1_, "termination measurement M1");
  if (m0_.rows() != m1_.rows()) throw DimensionError("M0 and M1 have different dimensions");
  const auto d = m0_.rows();
  const double defect =
      max_abs(m0_.adjoint() * m0_ + m1_.adjoint() * m1_ - MatrixXc::Identity(d, d));
  if (defect > tol.tp) {
    std::ostringstream msg;
    msg << "termination measurement is incomplete: max |M0^H M0 + M1^H M1 - I| = " << defect;
    throw ValidationError(msg.str());
  }
  e0_ = SuperOperatord({m0_}, tol);
  e1_ = SuperOperatord({m1_}, tol);
}

ProgramScheme::ProgramScheme(SuperOperatord e, TerminationMeasurement meas, const Tolerances& tol)
    : e_(std::move(e)), meas_(std::move(meas)) {
  if (e_.dim() != meas_.dim()) {
    std::ostringstream msg;
    msg << "step channel acts on dimension " << e_.dim() << " but the measurement on "
        << meas_.dim();
    throw DimensionError(msg.str());
  }
  if (!e_.trace_preserving()) {
    std::ostringstream msg;
    msg << "step channel is not trace-preserving: max |sum E_i^H E_i - I| = "
        << max_abs(e_.kraus_sum() - MatrixXc::Identity(e_.dim(), e_.dim()));
    throw ValidationError(msg.str());
  }
  g_ = compose(e_, meas_.e1());
  const double defect = max_abs(sum(g_, meas_.e0()).kraus_sum() - MatrixXc::Identity(dim(), dim()));
  if (defect > tol.tp) {
    std::ostringstream msg;
    msg << "G + E0 is not trace-preserving: defect " << defect;
    throw ValidationError(msg.str());
  }
}

QuantumProgram::QuantumProgram(ProgramScheme scheme, DensityOperatord rho0, const Tolerances& tol)
    : scheme_(std::move(scheme)), rho0_(std::move(rho0)) {
  if (rho0_.dim() != scheme_.dim()) {
    std::ostringstream msg;
    msg << "initial state has dimension " << rho0_.dim() << ", program has " << scheme_.dim();
    throw DimensionError(msg.str());
  }
  if (std::abs(rho0_.trace() - 1) > tol.tp) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "initial state must have unit trace, got " << rho0_.trace();
    throw ValidationError(msg.str());
  }
}

StepTrace step_probabilities(const QuantumProgram& prog, int n_max) {
  if (n_max < 1) throw std::invalid_argument("step_probabilities: n_max must be >= 1");
  const auto& scheme = prog.scheme();
  StepTrace trace;
  trace.steps.reserve(static_cast<std::size_t>(n_max));
  MatrixXc state = prog.rho0().mat();
  for (int n = 0; n < n_max; ++n) {
    MatrixXc terminal = apply_channel(scheme.e0(), state);
    const double pn_nonterm = apply_channel(scheme.e1(), state).trace().real();
    StepRecord rec;
    rec.n = n + 1;
    rec.p_n = terminal.trace().real();
    rec.p_n_nontermination = pn_nonterm;
    rec.partial_terminal = DensityOperatord(hermitian_part(terminal));
    trace.steps.push_back(std::move(rec));
    state = apply_channel(scheme.g(), state);
  }
  trace.residual_mass = trace.steps.back().p_n_nontermination;
  return trace;
}

SeriesResult terminal_state_series(const ProgramScheme& scheme, const MatrixXc& rho,
                                   const SeriesOptions& opts) {
  if (!(opts.tail_tol > 0)) throw std::invalid_argument("terminal_state_series: tail_tol must be > 0");
  if (opts.n_max < 0) throw std::invalid_argument("terminal_state_series: n_max must be >= 0");
  const auto d = scheme.dim();
  detail::require_same_dim(d, rho.rows(), "terminal_state_series");

  const MatrixXc& m0 = scheme.meas().m0();
  std::vector<MatrixXc> g_kraus = scheme.g().kraus();

  MatrixXc acc = MatrixXc::Zero(d, d);
  MatrixXc state = rho;
  MatrixXc next(d, d), tmp(d, d);
  SeriesResult out;
  for (std::int64_t n = 0;; ++n) {
    tmp.noalias() = m0 * state;
    next.noalias() = tmp * m0.adjoint();
    acc += next;
    out.running_time += static_cast<double>(n + 1) * next.trace().real();

    next.setZero();
    for (const auto& k : g_kraus) {
      tmp.noalias() = k * state;
      next.noalias() += tmp * k.adjoint();
    }
    state.swap(next);
    out.n_used = n;
    out.residual = state.trace().real();
    if (out.residual < opts.tail_tol) {
      out.converged = true;
      break;
    }
    if (n >= opts.n_max) break;
  }
  out.rho_star = DensityOperatord(hermitian_part(acc));
  return out;
}

SeriesResult terminal_state_series(const QuantumProgram& prog, const SeriesOptions& opts) {
  return terminal_state_series(prog.scheme(), prog.rho0().mat(), opts);
}

double check_recursion(const ProgramScheme& scheme, const DensityOperatord& rho,
                       const SeriesOptions& opts) {
  const MatrixXc f_rho = terminal_state_series(scheme, rho.mat(), opts).rho_star.mat();
  const MatrixXc g_rho = apply_channel(scheme.g(), rho.mat());
  const MatrixXc f_g_rho = terminal_state_series(scheme, g_rho, opts).rho_star.mat();
  return max_abs(f_rho - apply_channel(scheme.e0(), rho.mat()) - f_g_rho);
}

}  // namespace qverify
