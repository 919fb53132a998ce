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


#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "support/random_models.hpp"

namespace qsde {
namespace {

using testing::Rng;

ScaledFamily hamiltonian_only_family(Rng& rng, int d) {
  const HilbertSpace sp = HilbertSpace::single(d);
  return {1,
          sp,
          Operator::zero(sp),
          Operator::zero(sp),
          Operator(sp, kI * rng.hermitian(d)),
          {Operator::zero(sp)},
          {Operator::zero(sp)},
          {{Operator::identity(sp)}}};
}

TEST(Assemble, DegenerateScalingGivesSlowParts) {
  Rng rng(11);
  ScaledFamily fam = hamiltonian_only_family(rng, 4);
  fam.slow_field[0] = Operator(fam.space, rng.matrix(4, 4));
  const QsdeCoefficients c = assemble(fam, 1.0);
  EXPECT_EQ(c.drift.matrix(), fam.slow_drift.matrix());
  EXPECT_EQ(c.annihilation[0].matrix(), fam.slow_field[0].matrix());
}

TEST(Assemble, CreationIsForcedByHpRelation) {
  const FockToolbox fock = fock_toolbox(3);
  const HilbertSpace sp = fock.b.space();
  const double g = 0.7;
  ScaledFamily fam{1, sp, Operator::zero(sp), Operator::zero(sp), Operator::zero(sp), {Operator::zero(sp)},
                   {g * fock.b}, {{Operator::identity(sp)}}};
  const QsdeCoefficients c = assemble(fam, 3.0);
  EXPECT_EQ(c.creation[0].matrix(), (-g * fock.b_dag).matrix());
}

TEST(Assemble, DuanKimbleNumberCoefficient) {
  const Fixture fx = duan_kimble_fixture(1.0, 2.0, Complex(0.3, 0.4), 4);
  const double k = 5.0;
  const QsdeCoefficients c = assemble(fx.family, k);
  // |e⟩φ_2 sits at index 2: the b†b entry of K is -(γ/2)k²·2.
  EXPECT_NEAR(std::abs(c.drift(2, 2) - Complex(-0.5 * k * k * 2.0)), 0.0, 1e-12);
}

TEST(Assemble, RejectsNonPositiveK) {
  Rng rng(12);
  const ScaledFamily fam = hamiltonian_only_family(rng, 2);
  EXPECT_THROW(assemble(fam, 0.0), InvalidArgument);
  EXPECT_THROW(assemble(fam, -1.0), InvalidArgument);
}

TEST(Assemble, AffineInScalingMonomials) {
  Rng rng(13);
  auto rf = testing::random_structured_family(rng, {2, 3, 2}, 1);
  const double k = 3.0;
  const Matrix expected = k * k * rf.family.fast_drift.matrix() + k * rf.family.coupling_drift.matrix() +
                          rf.family.slow_drift.matrix();
  EXPECT_EQ(assemble(rf.family, k).drift.matrix(), expected);
}

TEST(HpValidate, HamiltonianOnlyPasses) {
  Rng rng(14);
  const QsdeCoefficients c = assemble(hamiltonian_only_family(rng, 5), 1.0);
  const ValidationReport r = hp_validate(c);
  EXPECT_TRUE(r.passed());
  for (const auto& chk : r.checks) EXPECT_LE(chk.max_violation, 1e-14) << chk.name;
}

TEST(HpValidate, RandomConstructionPasses) {
  Rng rng(15);
  for (int rep = 0; rep < 10; ++rep) {
    EXPECT_TRUE(hp_validate(testing::random_hp_coefficients(rng, 5, 1 + rep % 3)).passed());
  }
}

TEST(HpValidate, DriftDefectIsReportedExactly) {
  Rng rng(16);
  QsdeCoefficients c = testing::random_hp_coefficients(rng, 4, 2);
  c.drift += Complex(1e-3) * Operator::identity(c.space);
  const ValidationReport r = hp_validate(c);
  EXPECT_FALSE(r.passed());
  ASSERT_NE(r.find("hp.drift"), nullptr);
  EXPECT_NEAR(r.find("hp.drift")->max_violation, 2e-3, 1e-12);
  EXPECT_EQ(r.failing(), std::vector<std::string>{"hp.drift"});
  EXPECT_NEAR(r.find("hp.drift")->max_violation, testing::hp_defects(c).drift, 1e-14);
}

TEST(HpValidate, ScatteringDefect) {
  Rng rng(17);
  QsdeCoefficients c = testing::random_hp_coefficients(rng, 3, 1);
  c.scattering[0][0] *= Complex(1.1);
  const ValidationReport r = hp_validate(c);
  EXPECT_FALSE(r.find("hp.scattering_coisometry")->passed);
  EXPECT_FALSE(r.find("hp.scattering_isometry")->passed);
  EXPECT_FALSE(r.find("hp.creation")->passed);
}

TEST(HpValidate, MonotoneInTolerance) {
  Rng rng(18);
  QsdeCoefficients c = testing::random_hp_coefficients(rng, 4, 1);
  c.drift += Complex(1e-6) * Operator::identity(c.space);
  EXPECT_FALSE(hp_validate(c, 1e-9).passed());
  EXPECT_TRUE(hp_validate(c, 1e-5).passed());
  EXPECT_TRUE(hp_validate(c, 1e-3).passed());
}

TEST(ScaledHpValidate, ClosedFormConstructionPasses) {
  Rng rng(19);
  for (int rep = 0; rep < 5; ++rep) {
    const auto rf = testing::random_structured_family(rng, {2, 2, 3}, 2);
    EXPECT_TRUE(scaled_hp_validate(rf.family).passed());
  }
}

TEST(ScaledHpValidate, DuanKimblePassesTightly) {
  const Fixture fx = duan_kimble_fixture(1.0, 2.0, Complex(0.3, 0.4), 4);
  EXPECT_TRUE(scaled_hp_validate(fx.family, 1e-12).passed());
}

TEST(ScaledHpValidate, CouplingDefectFailsExactlyOneCheck) {
  Rng rng(20);
  auto rf = testing::random_structured_family(rng, {2, 3}, 1);
  rf.family.coupling_drift += Complex(0.01) * Operator::identity(rf.family.space);
  const ValidationReport r = scaled_hp_validate(rf.family);
  EXPECT_EQ(r.failing(), std::vector<std::string>{"scaled.coupling"});
}

TEST(ScaledHpValidate, ImpliesHpValidateOfAssembly) {
  Rng rng(21);
  for (int rep = 0; rep < 6; ++rep) {
    const auto rf = testing::random_structured_family(rng, {2, 2, 2}, 1 + rep % 2, rep % 2 == 1);
    ASSERT_TRUE(scaled_hp_validate(rf.family).passed());
    for (double k : {1.0, 2.0, 4.0, 8.0}) {
      EXPECT_TRUE(hp_validate(assemble(rf.family, k), 1e-9 * (1 + k + k * k)).passed()) << "k=" << k;
    }
  }
}

TEST(StructuralValidate, DuanKimblePasses) {
  const Fixture fx = duan_kimble_fixture(1.0, 2.0, Complex(0.3, 0.4), 4);
  const ValidationReport r = structural_validate(fx.family, fx.sub);
  EXPECT_TRUE(r.passed());
  for (const char* name : {"structural.b", "structural.c", "structural.d", "structural.e", "limit.field_offdiag",
                           "limit.scattering_slow_fast", "limit.scattering_fast_slow"}) {
    EXPECT_NE(r.find(name), nullptr) << name;
  }
}

TEST(StructuralValidate, NothingFastPasses) {
  Rng rng(22);
  const ScaledFamily fam = hamiltonian_only_family(rng, 3);
  EXPECT_TRUE(structural_validate(fam, SubspacePair(Operator::identity(fam.space))).passed());
}

TEST(StructuralValidate, InjectedSlowCouplingFailsCheckE) {
  Rng rng(23);
  auto rf = testing::random_structured_family(rng, {2, 2}, 1);
  rf.family.coupling_drift += rf.sub.p0();
  const ValidationReport r = structural_validate(rf.family, rf.sub);
  EXPECT_FALSE(r.find("structural.e")->passed);
  EXPECT_NEAR(r.find("structural.e")->max_violation, 1.0, 1e-12);
}

TEST(StructuralValidate, SingularFastPartFailsCheckCAndSkipsLimitChecks) {
  Rng rng(24);
  auto rf = testing::random_structured_family(rng, {2, 2}, 1);
  rf.family.fast_drift = Operator::zero(rf.family.space);
  const ValidationReport r = structural_validate(rf.family, rf.sub);
  EXPECT_FALSE(r.find("structural.c")->passed);
  EXPECT_FALSE(r.find("structural.c")->detail.empty());
  EXPECT_EQ(r.find("limit.field_offdiag"), nullptr);
}

TEST(StructuralValidate, FieldOnSlowSubspaceFailsCheckD) {
  Rng rng(25);
  auto rf = testing::random_structured_family(rng, {2, 2}, 1);
  rf.family.fast_field[0] += rf.sub.p0();
  EXPECT_FALSE(structural_validate(rf.family, rf.sub).find("structural.d")->passed);
}

}  // namespace
}  // namespace qsde
