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


// Writes the random models behind the committed golden records. Seeds are
// fixed, so rerunning reproduces the same files bit for bit.

#include <iostream>
#include <random>

#include "qverify/catalog.hpp"
#include "qverify/model.hpp"
#include "qverify/random.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: golden_models <dir>\n";
    return 1;
  }
  const std::string dir = argv[1];
  for (int seed = 1; seed <= 4; ++seed) {
    std::mt19937_64 rng(1000 + seed);
    const auto prog = qverify::random::program(rng, 2, 2);
    const auto p = qverify::random::psd(rng, 2);
    const auto h = qverify::random::hermitian(rng, 2);
    const auto model = qverify::model_from(prog.scheme(), prog.rho0().mat(), {{"P", p.mat()}, {"H", h.mat()}});
    qverify::save_model(model, dir + "/random_d2_" + std::to_string(seed) + ".model.json");
  }
  const auto bf = qverify::catalog::bit_flip_program(0.5, 0.6, 0.8);
  qverify::save_model(qverify::model_from(bf.scheme(), bf.rho0().mat(),
                                          {{"P0", qverify::catalog::ket_bra(2, 0, 0)}, {"Z", qverify::catalog::pauli_z()}}),
                      dir + "/bitflip_p05.model.json");
  return 0;
}
