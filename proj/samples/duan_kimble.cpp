// Copyright 2026 The qsde-elim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Eliminates the cavity from the three-level atom model and prints the limit
// coefficients next to a short generator-residual study.

#include <iostream>

#include "qsde/qsde.hpp"

int main() {
  using namespace qsde;
  const Fixture fx = duan_kimble_fixture(1.0, 2.0, Complex(0.3, 0.4), 4);
  const EliminationResult r = eliminate(fx.family, fx.sub);

  std::cout << "K =\n" << r.limit.drift.matrix() << "\n\n";
  std::cout << "L =\n" << r.limit.annihilation[0].matrix() << "\n\n";
  std::cout << "N =\n" << r.limit.scattering[0][0].matrix() << "\n\n";
  std::cout << "hp_validate(limit): " << (hp_validate(r.limit).passed() ? "pass" : "fail") << "\n\n";

  const FieldAmplitudes amp{{0.3}, {0.5}};
  const ConvergenceReport rep = generator_study(fx.name, fx.family, fx.sub, amp, {2, 4, 8, 16, 32, 64});
  std::cout << convergence_csv(rep) << convergence_summary(rep);
  return rep.verdict ? 0 : 1;
}
