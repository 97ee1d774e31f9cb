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


#include <gtest/gtest.h>

#include <random>

#include "qverify/catalog.hpp"
#include "qverify/program.hpp"
#include "qverify/random.hpp"
#include "test_util.hpp"

namespace qverify {
namespace {

using catalog::ket_bra;

TEST(Measurement, CompletenessIsEnforced) {
  EXPECT_THROW(TerminationMeasurement(ket_bra(2, 0, 0), MatrixXc::Zero(2, 2)), ValidationError);
  EXPECT_THROW(TerminationMeasurement(ket_bra(2, 0, 0), MatrixXc::Zero(3, 3)), DimensionError);
  EXPECT_NO_THROW(catalog::computational_measurement());
}

TEST(Scheme, RequiresTracePreservingBody) {
  EXPECT_THROW(ProgramScheme(SuperOperatord({ket_bra(2, 0, 0)}), catalog::computational_measurement()),
               ValidationError);
  EXPECT_THROW(ProgramScheme(SuperOperatord::identity(3), catalog::computational_measurement()), DimensionError);
}

TEST(Scheme, StepPlusHaltIsTracePreserving) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    const auto s = random::scheme(rng, 2 + t % 2, 1 + t % 3);
    const MatrixXc total = sum(s.g(), s.e0()).kraus_sum();
    EXPECT_LE(max_abs(total - MatrixXc::Identity(s.dim(), s.dim())), 1e-9);
  }
}

TEST(Program, InitialStateMustHaveUnitTrace) {
  EXPECT_THROW(QuantumProgram(catalog::bit_flip_scheme(0.5), DensityOperatord(0.5 * ket_bra(2, 0, 0))),
               ValidationError);
}

TEST(StepProbabilities, BitFlipGeometricTail) {
  const auto prog = QuantumProgram(catalog::bit_flip_scheme(0.5), DensityOperatord(ket_bra(2, 1, 1)));
  const auto trace = step_probabilities(prog, 12);
  ASSERT_EQ(trace.steps.size(), 12u);
  for (const auto& s : trace.steps) EXPECT_NEAR(s.p_n_nontermination, std::pow(0.5, s.n - 1), 1e-15);
  EXPECT_NEAR(trace.steps[0].p_n, 0.0, 1e-15);
}

TEST(StepProbabilities, ImmediateHalt) {
  std::mt19937_64 rng(42);
  const auto prog = QuantumProgram(catalog::immediate_halt_scheme(random::channel(rng, 3, 2)), random::density(rng, 3));
  const auto trace = step_probabilities(prog, 5);
  EXPECT_NEAR(trace.steps[0].p_n, 1.0, 1e-12);
  for (std::size_t k = 1; k < trace.steps.size(); ++k) EXPECT_EQ(trace.steps[k].p_n, 0.0);
  EXPECT_EQ(trace.residual_mass, 0.0);
}

TEST(StepProbabilities, NeverHalt) {
  std::mt19937_64 rng(43);
  const auto prog = QuantumProgram(catalog::never_halt_scheme(random::channel(rng, 2, 2)), random::density(rng, 2));
  for (const auto& s : step_probabilities(prog, 8).steps) {
    EXPECT_EQ(s.p_n, 0.0);
    EXPECT_NEAR(s.p_n_nontermination, 1.0, 1e-12);
  }
}

TEST(StepProbabilities, ConservationAndOracle) {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 20; ++t) {
    const auto prog = random::program(rng, 2 + t % 2, 1 + t % 3);
    const auto trace = step_probabilities(prog, 30);
    const auto oracle = testing::naive_series(prog.scheme().e().kraus(), prog.scheme().meas().m0(),
                                              prog.scheme().meas().m1(), prog.rho0().mat(), 30);
    double cumulative = 0;
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
      cumulative += trace.steps[k].p_n;
      EXPECT_NEAR(cumulative + trace.steps[k].p_n_nontermination, 1.0, 1e-9);
      EXPECT_NEAR(trace.steps[k].p_n, oracle.p[k], 1e-12);
      EXPECT_TRUE(is_positive_semidefinite(trace.steps[k].partial_terminal.mat()));
    }
  }
}

TEST(Series, BitFlipTerminatesWithProbabilityOne) {
  std::mt19937_64 rng(45);
  for (double p : {0.1, 0.5, 0.9}) {
    const auto prog = QuantumProgram(catalog::bit_flip_scheme(p), random::pure_state(rng, 2));
    const auto s = terminal_state_series(prog);
    EXPECT_TRUE(s.converged);
    EXPECT_NEAR(s.rho_star.trace(), 1.0, 1e-11);
  }
}

TEST(Series, BitFlipStuckBranch) {
  const Complex alpha(0.6, 0), beta(0, 0.8);
  const auto prog = catalog::bit_flip_program(1.0, alpha, beta);
  SeriesOptions opts;
  opts.n_max = 1000;
  const auto s = terminal_state_series(prog, opts);
  EXPECT_FALSE(s.converged);
  EXPECT_NEAR(s.rho_star.trace(), std::norm(alpha), 1e-12);
  EXPECT_NEAR(s.residual, std::norm(beta), 1e-12);
}

TEST(Series, ImmediateHaltIsOneTerm) {
  std::mt19937_64 rng(46);
  const MatrixXc m0 = random::unitary(rng, 2);
  const auto scheme = ProgramScheme(random::channel(rng, 2, 2), TerminationMeasurement(m0, MatrixXc::Zero(2, 2)));
  const auto rho = random::density(rng, 2);
  const auto s = terminal_state_series(QuantumProgram(scheme, rho));
  EXPECT_EQ(s.n_used, 0);
  EXPECT_LE(max_abs(s.rho_star.mat() - m0 * rho.mat() * m0.adjoint()), 1e-15);
  EXPECT_NEAR(s.running_time, 1.0, 1e-12);
}

TEST(Series, MatchesOracleAndIsMonotone) {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 10; ++t) {
    const auto prog = random::program(rng, 2 + t % 2, 2);
    const auto s = terminal_state_series(prog);
    ASSERT_TRUE(s.converged);
    const auto oracle = testing::naive_series(prog.scheme().e().kraus(), prog.scheme().meas().m0(),
                                              prog.scheme().meas().m1(), prog.rho0().mat(),
                                              static_cast<int>(s.n_used) + 1);
    EXPECT_LE(testing::max_abs_diff(s.rho_star.mat(), oracle.rho_star), 1e-11);
    EXPECT_NEAR(s.running_time, oracle.running_time, 1e-9);
    // Partial sums grow in the Loewner order: every summand is PSD.
    for (const auto& step : step_probabilities(prog, 10).steps)
      EXPECT_TRUE(is_positive_semidefinite(step.partial_terminal.mat()));
  }
}

TEST(Recursion, Examples) {
  std::mt19937_64 rng(48);
  for (int t = 0; t < 10; ++t) {
    const auto prog = random::program(rng, 2 + t % 2, 2);
    EXPECT_LE(check_recursion(prog.scheme(), prog.rho0()), 10 * 1e-12);
  }
  const auto halt = catalog::immediate_halt_scheme(random::channel(rng, 2, 2));
  EXPECT_EQ(check_recursion(halt, random::density(rng, 2)), 0.0);
  SeriesOptions short_run;
  short_run.n_max = 100;
  const auto never = ProgramScheme(SuperOperatord::identity(2),
                                   TerminationMeasurement(MatrixXc::Zero(2, 2), MatrixXc::Identity(2, 2)));
  EXPECT_EQ(check_recursion(never, random::density(rng, 2), short_run), 0.0);
}

TEST(Recursion, DualForm) {
  std::mt19937_64 rng(49);
  for (int t = 0; t < 10; ++t) {
    const auto prog = random::program(rng, 2, 2);
    const auto& s = prog.scheme();
    const MatrixXc m = random::hermitian(rng, 2).mat();
    const MatrixXc rho = prog.rho0().mat();
    const double lhs = (m * terminal_state_series(s, rho).rho_star.mat()).trace().real();
    const double rhs = (apply_dual(s.e0(), m) * rho).trace().real() +
                       (m * terminal_state_series(s, apply_channel(s.g(), rho)).rho_star.mat()).trace().real();
    EXPECT_NEAR(lhs, rhs, 10 * 1e-12 * std::max(1.0, operator_norm(m)));
  }
}

}  // namespace
}  // namespace qverify
