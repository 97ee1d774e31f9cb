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


// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "qverify/catalog.hpp"
#include "qverify/invariant.hpp"
#include "qverify/oracle.hpp"
#include "qverify/random.hpp"
#include "qverify/representation.hpp"
#include "qverify/termination.hpp"
#include "test_util.hpp"

namespace qverify {
namespace {

using catalog::ket_bra;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

const Observabled& p0() {
  static const Observabled p(ket_bra(2, 0, 0));
  return p;
}

struct ThreeWay {
  double series = 0, invariant = 0, spectral = 0;
  double spread() const {
    return std::max({std::abs(series - invariant), std::abs(series - spectral), std::abs(invariant - spectral)});
  }
};

ThreeWay three_way(const QuantumProgram& prog, const Observabled& p) {
  ThreeWay w;
  w.series = oracle_expectation(prog, p, {1e-12, 1'000'000, 0}).expectation_series;
  const auto rep = build_representation(prog.scheme());
  w.invariant = expectation_via_invariant(prog, p, least_fixed_point_q(prog, p), {}, &rep).value;
  w.spectral = expectation_closed_form(rep, prog.rho0(), p);
  return w;
}

Outcome criterion1() {
  Outcome o;
  std::mt19937_64 rng(1);
  double worst = 0, slowest = 0;
  const Observabled one(MatrixXc(MatrixXc::Identity(2, 2)));
  for (double p : {0.1, 0.5, 0.9}) {
    for (int t = 0; t < 3; ++t) {
      const auto start = Clock::now();
      const auto prog = QuantumProgram(catalog::bit_flip_scheme(p), random::pure_state(rng, 2));
      const auto w = three_way(prog, one);
      const double secs = std::chrono::duration<double>(Clock::now() - start).count();
      slowest = std::max(slowest, secs);
      for (double v : {w.series, w.invariant, w.spectral}) worst = std::max(worst, std::abs(v - 1));
    }
  }
  if (worst > 1e-6) fail(o, "deviation from 1 is " + sci(worst));
  if (slowest >= 1.0) fail(o, "slowest instance took " + sci(slowest) + " s");
  if (o.pass) o.detail = "max |value - 1| = " + sci(worst) + ", slowest " + sci(slowest) + " s";
  return o;
}

Outcome criterion2() {
  Outcome o;
  double worst = 0;
  const auto rep = build_representation(catalog::bit_flip_scheme(1.0));
  OracleOptions short_series;
  short_series.n_max = 10'000;
  short_series.table_steps = 0;
  const std::pair<Complex, Complex> states[] = {
      {1.0, 0.0}, {0.6, Complex(0, 0.8)}, {std::sqrt(0.5), std::sqrt(0.5)}, {Complex(0.1, 0.2), 0.0}};
  for (auto [alpha, beta] : states) {
    const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
    alpha /= norm;
    beta /= norm;
    const auto prog = catalog::bit_flip_program(1.0, alpha, beta);
    const double expected = std::norm(beta) == 0 ? 1.0 : std::norm(alpha);
    const double spectral = expectation_closed_form(rep, prog.rho0(), p0());
    const double invariant = expectation_via_invariant(prog, p0(), least_fixed_point_q(prog, p0()), {}, &rep).value;
    worst = std::max({worst, std::abs(spectral - expected), std::abs(invariant - expected)});
    const auto series = oracle_expectation(prog, p0(), short_series);
    if (std::abs(series.residual - std::norm(beta)) > 1e-9)
      fail(o, "series residual " + sci(series.residual) + " vs |beta|^2 " + sci(std::norm(beta)));
  }
  if (worst > 1e-9) fail(o, "max deviation " + sci(worst));
  if (o.pass) o.detail = "max deviation " + sci(worst) + "; series residual equals |beta|^2";
  return o;
}

Outcome criterion3() {
  Outcome o;
  const double eps = std::numeric_limits<double>::epsilon();
  double worst_m = 0;
  for (double p : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    const auto rep = build_representation(catalog::bit_flip_scheme(p));
    MatrixXc displayed = MatrixXc::Zero(4, 4);
    displayed(0, 3) = 1 - p;
    displayed(3, 3) = p;
    worst_m = std::max(worst_m, max_abs(rep.m - displayed));
  }
  if (worst_m > 4 * eps) fail(o, "M differs by " + sci(worst_m));
  const auto rep = build_representation(catalog::bit_flip_scheme(0.5));
  const MatrixXc id = MatrixXc::Identity(4, 4);
  MatrixXc inv_displayed = id;
  inv_displayed(0, 3) = 1;
  inv_displayed(3, 3) = 1 / (1 - 0.5);
  MatrixXc inv = MatrixXc::Zero(4, 4);
  for (int k = 0; k < 4; ++k) inv.col(k) = rep.solve_resolvent(id.col(k));
  const double dev = max_abs(inv - inv_displayed);
  if (dev > 1e-12) fail(o, "(I - M)^-1 differs by " + sci(dev));
  const MatrixXc inv2 = inv * inv;
  const double dev2 = std::max(std::abs(inv2(0, 3) - Complex(1 + 2.0)), std::abs(inv2(3, 3) - Complex(4.0)));
  if (dev2 > 1e-12) fail(o, "(I - M)^-2 entries differ by " + sci(dev2));
  if (o.pass) o.detail = "M within " + sci(worst_m) + ", inverse within " + sci(dev);
  return o;
}

Outcome criterion4() {
  Outcome o;
  double worst = 0;
  const Observabled one(MatrixXc(MatrixXc::Identity(2, 2)));
  for (double p : {0.1, 0.5, 0.9}) {
    const auto rep = build_representation(catalog::bit_flip_scheme(p));
    for (double b2 : {0.0, 0.36, 1.0}) {
      const auto prog = catalog::bit_flip_program(p, std::sqrt(1 - b2), Complex(0, std::sqrt(b2)));
      const double expected = 1 + b2 / (1 - p);
      const double spectral = average_running_time(rep, prog.rho0());
      const double series = oracle_expectation(prog, one).running_time_series;
      worst = std::max({worst, std::abs(spectral - expected), std::abs(series - expected)});
    }
  }
  if (worst > 1e-6) fail(o, "max deviation " + sci(worst));
  else o.detail = "max deviation " + sci(worst);
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::mt19937_64 rng(5);
  double worst = 0;
  int failures = 0;
  for (int t = 0; t < 200; ++t) {
    const int d = 2 + t % 2;
    const auto e = random::channel(rng, d, 1 + t % 3);
    const auto rho = random::density(rng, d);
    const auto m = random::hermitian(rng, d);
    const double gap = std::abs((m.mat() * apply_channel(e, rho.mat())).trace().real() -
                                (apply_dual(e, m.mat()) * rho.mat()).trace().real());
    worst = std::max(worst, gap);
    failures += gap > 1e-9;
  }
  if (failures) fail(o, std::to_string(failures) + " failures, max gap " + sci(worst));
  else o.detail = "200 triples, max gap " + sci(worst);
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::mt19937_64 rng(6);
  double worst_mr = 0, worst_remix = 0;
  for (int t = 0; t < 100; ++t) {
    const int d = 2 + t % 2;
    const auto e = random::channel(rng, d, 1 + t % 3);
    const MatrixXc a = random::gaussian(rng, d, d);
    const MatrixXc id = MatrixXc::Identity(d, d);
    const VectorXc phi = testing::naive_phi(d);
    const VectorXc lhs = testing::naive_kron(apply_channel(e, a), id) * phi;
    const VectorXc rhs = matrix_representation(e) * testing::naive_kron(a, id) * phi;
    worst_mr = std::max(worst_mr, (lhs - rhs).norm());
  }
  for (int t = 0; t < 100; ++t) {
    const int d = 2 + t % 2, r = 1 + t % 4;
    const auto e = random::channel(rng, d, r);
    const MatrixXc u = random::unitary(rng, r);
    std::vector<MatrixXc> remixed(static_cast<std::size_t>(r), MatrixXc::Zero(d, d));
    for (int j = 0; j < r; ++j)
      for (int i = 0; i < r; ++i) remixed[j] += u(j, i) * e.kraus()[i];
    worst_remix = std::max(worst_remix, max_abs(matrix_representation(SuperOperatord(remixed)) - matrix_representation(e)));
  }
  if (worst_mr > 1e-9) fail(o, "representation identity residual " + sci(worst_mr));
  if (worst_remix > 1e-9) fail(o, "Kraus remix residual " + sci(worst_remix));
  if (o.pass) o.detail = "identity " + sci(worst_mr) + ", remix " + sci(worst_remix);
  return o;
}

ProgramScheme mixed_scheme(std::mt19937_64& rng, int t) {
  const int d = 2 + t % 2;
  if (t % 4 == 3) return random::trapped_scheme(rng, d, 1, 1 + t % 2);
  return random::scheme(rng, d, 1 + t % 3);
}

Outcome criterion7() {
  Outcome o;
  std::mt19937_64 rng(7);
  double radius = 0, semisimple = 0;
  int with_unit = 0;
  for (int t = 0; t < 100; ++t) {
    const auto rep = build_representation(mixed_scheme(rng, t));
    radius = std::max(radius, rep.spectral.spectral_radius);
    with_unit += rep.spectral.has_unit_circle();
    const double scale = std::max(1.0, operator_norm(rep.m));
    for (std::size_t c = 0; c < rep.spectral.clusters.size(); ++c) {
      const auto& cl = rep.spectral.clusters[c];
      if (!cl.on_unit_circle) continue;
      const MatrixXc pl = rep.spectral.cluster_projector(static_cast<int>(c));
      const MatrixXc shifted = rep.m - cl.value * MatrixXc::Identity(rep.dim2, rep.dim2);
      semisimple = std::max(semisimple, operator_norm(MatrixXc(shifted * pl)) / scale);
    }
  }
  if (radius > 1 + 1e-7) fail(o, "spectral radius " + sci(radius));
  if (semisimple > 1e-6) fail(o, "semisimplicity residual " + sci(semisimple));
  if (o.pass)
    o.detail = "radius " + std::to_string(radius) + ", semisimplicity " + sci(semisimple) + ", " +
               std::to_string(with_unit) + " with unit spectrum";
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::mt19937_64 rng(8);
  double worst = 0;
  for (int t = 0; t < 50; ++t) {
    const auto rep = build_representation(mixed_scheme(rng, t));
    MatrixXc mp = MatrixXc::Identity(rep.dim2, rep.dim2), np = mp;
    for (int n = 0; n <= 20; ++n) {
      worst = std::max(worst, max_abs(rep.n0 * mp - rep.n0 * np));
      mp = mp * rep.m;
      np = np * rep.n_filtered;
    }
  }
  if (worst > 1e-8) fail(o, "max residual " + sci(worst));
  else o.detail = "max residual " + sci(worst);
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> steps(0, 50);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const auto rep = build_representation(mixed_scheme(rng, t));
    const VectorXc alpha = random::gaussian(rng, rep.dim2, 1).col(0);
    const int n = steps(rng);
    VectorXc v = alpha;
    for (int k = 0; k < n; ++k) v = rep.m * v;
    const double bound = 4 * std::sqrt(double(rep.dim)) * alpha.norm() + 1e-9;
    worst = std::max(worst, v.norm() / bound);
    if (v.norm() > bound) fail(o, "bound exceeded at n = " + std::to_string(n));
  }
  if (o.pass) o.detail = "max ||M^n a|| / bound = " + sci(worst);
  return o;
}

Outcome criterion10() {
  Outcome o;
  std::mt19937_64 rng(10);
  double worst = 0;
  int drawn = 0;
  for (int t = 0; t < 50; ++t) {
    QuantumProgram prog;
    do {
      prog = random::program(rng, 2, 1 + t % 3);
      ++drawn;
    } while (!check_program_termination(build_representation(prog.scheme()), prog.rho0()).almost_terminates);
    const auto p = random::psd(rng, 2);
    worst = std::max(worst, three_way(prog, p).spread());
  }
  if (drawn != 50) o.detail = std::to_string(drawn - 50) + " draws rejected; ";
  if (worst > 1e-6) fail(o, "max pairwise delta " + sci(worst));
  else o.detail += "max pairwise delta " + sci(worst);
  return o;
}

Outcome criterion11() {
  Outcome o;
  std::mt19937_64 rng(11);
  double worst = 0;
  int used = 0;
  for (int t = 0; t < 20; ++t) {
    const auto prog = random::program(rng, 2 + t % 2, 2);
    const auto p = random::psd(rng, prog.dim());
    const auto cert = least_fixed_point_q(prog, p);
    if (cert.qv2_residual > 1e-10) {
      fail(o, "fixed point residual " + sci(cert.qv2_residual) + " on instance " + std::to_string(t));
      continue;
    }
    ++used;
    for (int n = 0; n <= 10; ++n) worst = std::max(worst, unrolling_identity_residual(prog, p, cert, n));
  }
  if (worst > 1e-8) fail(o, "max residual " + sci(worst));
  if (o.pass) o.detail = std::to_string(used) + " programs, max residual " + sci(worst);
  return o;
}

Outcome criterion12() {
  Outcome o;
  const auto x = check_scheme_termination(build_representation(catalog::x_flip_scheme()));
  if (!x.terminates || x.terminates_at != 2) fail(o, "X-flip scheme verdict wrong");
  const auto stuck = check_scheme_termination(build_representation(catalog::bit_flip_scheme(1.0)));
  if (stuck.almost_terminates) fail(o, "bit-flip p = 1 reported almost-terminating");
  std::mt19937_64 rng(12);
  int agree = 0;
  for (int t = 0; t < 50; ++t) {
    const auto s = mixed_scheme(rng, t);
    const auto rep = build_representation(s);
    try {
      const auto via_phi = check_scheme_termination(rep);
      const auto via_mixed = check_program_termination(rep, DensityOperatord::maximally_mixed(s.dim()));
      if (via_phi.almost_terminates == via_mixed.almost_terminates && via_phi.terminates == via_mixed.terminates)
        ++agree;
      else
        fail(o, "routes disagree on scheme " + std::to_string(t));
    } catch (const ConsistencyError& e) {
      fail(o, e.what());
    }
  }
  if (o.pass) o.detail = "X-flip at n = 2, p = 1 not almost-terminating, " + std::to_string(agree) + "/50 agree";
  return o;
}

Outcome criterion13() {
  Outcome o;
  std::mt19937_64 rng(13);
  double recon = 0, excess = -1e300;
  for (int t = 0; t < 100; ++t) {
    const int d = 2 + t % 3;
    const MatrixXc a = random::gaussian(rng, d, d);
    const auto parts = positive_part_decompose(a);
    const MatrixXc sum_parts = parts.b1 - parts.b2 + Complex(0, 1) * parts.b3 - Complex(0, 1) * parts.b4;
    recon = std::max(recon, max_abs(sum_parts - a));
    const double bound = (a.adjoint() * a).trace().real();
    for (const MatrixXc* b : {&parts.b1, &parts.b2, &parts.b3, &parts.b4})
      excess = std::max(excess, (*b * *b).trace().real() - bound);
  }
  if (recon > 1e-10) fail(o, "reconstruction residual " + sci(recon));
  if (excess > 1e-9) fail(o, "tr(B^2) exceeds tr(A^H A) by " + sci(excess));
  if (o.pass) o.detail = "reconstruction " + sci(recon);
  return o;
}

}  // namespace
}  // namespace qverify

int main() {
  using qverify::Outcome;
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"bit-flip termination probability, three methods", qverify::criterion1},
      {"bit-flip p = 1 cases", qverify::criterion2},
      {"worked 4x4 representation and inverse", qverify::criterion3},
      {"average running time 1 + |b|^2/(1-p)", qverify::criterion4},
      {"duality suite", qverify::criterion5},
      {"representation identity and Kraus remix", qverify::criterion6},
      {"spectral radius and unit-circle semisimplicity", qverify::criterion7},
      {"N0 M^n = N0 N^n", qverify::criterion8},
      {"power growth bound 4 sqrt(d)", qverify::criterion9},
      {"three-way agreement", qverify::criterion10},
      {"invariant unrolling identity", qverify::criterion11},
      {"termination suite", qverify::criterion12},
      {"positive-part decomposition", qverify::criterion13},
  };
  int failures = 0, index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::printf("%s %2d  %-48s %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
  }
  return failures;
}
