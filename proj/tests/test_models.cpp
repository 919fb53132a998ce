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

using testing::max_abs_diff;
using testing::Rng;

double limit_distance(const QsdeCoefficients& a, const QsdeCoefficients& b) {
  double d = max_abs_diff(a.drift.matrix(), b.drift.matrix());
  for (int i = 0; i < a.channels; ++i) {
    d = std::max(d, max_abs_diff(a.annihilation[i].matrix(), b.annihilation[i].matrix()));
    d = std::max(d, max_abs_diff(a.creation[i].matrix(), b.creation[i].matrix()));
    for (int j = 0; j < a.channels; ++j) d = std::max(d, max_abs_diff(a.scattering[i][j].matrix(), b.scattering[i][j].matrix()));
  }
  return d;
}

TEST(Fock, SmallestCutoff) {
  const FockToolbox f = fock_toolbox(1);
  Matrix b(2, 2);
  b << 0, 1, 0, 0;
  EXPECT_EQ(f.b.matrix(), b);
  EXPECT_EQ(f.b_dag.matrix(), Matrix(b.adjoint()));
  EXPECT_EQ(f.number.matrix(), Matrix(b.adjoint() * b));
  EXPECT_THROW(fock_toolbox(0), InvalidArgument);
}

TEST(Fock, CommutatorUpToTheEdge) {
  const FockToolbox f = fock_toolbox(5);
  const Matrix comm = f.b.matrix() * f.b_dag.matrix() - f.b_dag.matrix() * f.b.matrix();
  Matrix want = Matrix::Identity(6, 6);
  want(5, 5) = -5.0;
  EXPECT_LE(max_abs_diff(comm, want), 1e-14);
  EXPECT_LE(max_abs_diff(f.number.matrix(), Matrix(f.b_dag.matrix() * f.b.matrix())), 1e-14);
}

TEST(BasisMatrix, Entries) {
  const Operator e = basis_matrix(3, 2, 0);
  EXPECT_EQ(e(2, 0), Complex(1.0));
  EXPECT_EQ(e.matrix().cwiseAbs().sum(), 1.0);
  EXPECT_THROW(basis_matrix(3, 3, 0), InvalidArgument);
  EXPECT_THROW(basis_matrix(0, 0, 0), InvalidArgument);
}

TEST(DuanKimble, FastInverseBlocks) {
  const double gamma = 1.0, g = 2.0;
  const int c = 4;
  const Fixture fx = duan_kimble_fixture(gamma, g, Complex(0.3, 0.4), c);
  const Matrix yt = eliminate(fx.family, fx.sub).fast_inverse.matrix();
  const int d = 3 * (c + 1);
  Matrix want = Matrix::Zero(d, d);
  for (int j = 1; j <= c; ++j) {
    const int idx[3] = {(c + 1) + j, 2 * (c + 1) + j, j - 1};
    const Matrix blk = testing::duan_kimble_block_inverse(gamma, g, j);
    for (int r = 0; r < 3; ++r) {
      for (int s = 0; s < 3; ++s) want(idx[r], idx[s]) = blk(r, s);
    }
  }
  want(c, c) = -2.0 / (gamma * c);  // |e⟩φ_c couples to nothing inside the cutoff
  EXPECT_LE(max_abs_diff(yt, want), 1e-12);

  std::vector<int> fast;
  for (int i = 0; i < d; ++i) {
    if (i != c + 1 && i != 2 * (c + 1)) fast.push_back(i);
  }
  EXPECT_LE(max_abs_diff(yt, testing::lu_partial_inverse(fx.family.fast_drift.matrix(), fast)), 1e-12);
}

TEST(DuanKimble, UndrivenLimitIsTrivial) {
  const Fixture fx = duan_kimble_fixture(1.0, 2.0, 0.0, 3);
  const EliminationResult r = eliminate(fx.family, fx.sub);
  EXPECT_LE(r.limit.drift.matrix().cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE(r.limit.annihilation[0].matrix().cwiseAbs().maxCoeff(), 1e-15);
}

TEST(DuanKimble, LimitDoesNotDependOnCutoff) {
  const EliminationResult a = eliminate(duan_kimble_fixture(1.0, 2.0, Complex(0.3, 0.4), 2).family,
                                        duan_kimble_fixture(1.0, 2.0, Complex(0.3, 0.4), 2).sub);
  const Fixture big = duan_kimble_fixture(1.0, 2.0, Complex(0.3, 0.4), 6);
  EXPECT_LE(limit_distance(a.limit, eliminate(big.family, big.sub).limit), 1e-12);
}

TEST(DuanKimble, ArgumentChecks) {
  EXPECT_THROW(duan_kimble_fixture(0.0, 2.0, 0.3, 4), InvalidArgument);
  EXPECT_THROW(duan_kimble_fixture(1.0, 0.0, 0.3, 4), InvalidArgument);
  EXPECT_THROW(duan_kimble_fixture(1.0, 2.0, 0.3, 1), InvalidArgument);
}

TEST(Cavity, FastInverseActsThroughE11) {
  const CavityCoefficients cav = atom_cavity_coefficients(1.0, 0.5, 0.3, 0.2);
  const int cutoff = 4;
  const Fixture fx = cavity_fixture(cav, cutoff);
  Matrix inv_number = Matrix::Zero(cutoff + 1, cutoff + 1);
  for (int n = 1; n <= cutoff; ++n) inv_number(n, n) = 1.0 / n;
  Eigen::FullPivLU<Matrix> lu(cav.e11.matrix());
  const Matrix want = kron(Operator(cav.e11.space(), lu.inverse()), Operator(HilbertSpace::single(cutoff + 1), inv_number)).matrix();
  EXPECT_LE(max_abs_diff(eliminate(fx.family, fx.sub).fast_inverse.matrix(), want), 1e-12);
}

TEST(Cavity, ResonantAtomFlipsTheScattering) {
  const Fixture fx = atom_cavity_fixture(1.0, 0.5, 0.0, 0.3, 3);
  const EliminationResult r = eliminate(fx.family, fx.sub);
  EXPECT_LE(max_abs_diff(r.limit.scattering[0][0].matrix(), -Matrix::Identity(2, 2)), 1e-12);
  EXPECT_LE(limit_distance(r.limit, *fx.expected_limit), 1e-10);
}

TEST(Cavity, RandomDrawsMatchTheClosedForm) {
  Rng rng(81);
  int accepted = 0;
  while (accepted < 5) {
    const CavityCoefficients cav = testing::random_cavity(rng, 2, 1 + accepted % 2);
    Eigen::JacobiSVD<Matrix> svd(cav.e11.matrix());
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) < 1e-3 * s(0)) continue;
    ++accepted;
    const Fixture fx = cavity_fixture(cav, 3);
    const EliminationResult r = eliminate(fx.family, fx.sub);
    EXPECT_LE(limit_distance(r.limit, *fx.expected_limit), 1e-10 * std::max(1.0, spectral_norm(fx.family.fast_drift)));
  }
}

TEST(Mirror, ScatteringIsUnitaryAndMatchesFunctionalCalculus) {
  const Fixture fx = mirror_fixture(1.0, 0.5, 1.0, 8, 3);
  const EliminationResult r = eliminate(fx.family, fx.sub);
  const Matrix& n = r.limit.scattering[0][0].matrix();
  EXPECT_LE(max_abs_diff(Matrix(n.adjoint() * n), Matrix::Identity(9, 9)), 1e-12);
  EXPECT_LE(limit_distance(r.limit, *fx.expected_limit), 1e-9);
}

TEST(Mirror, ResolventRelation) {
  const FockToolbox f = fock_toolbox(6);
  const Operator x = f.b + f.b_dag;
  const double theta = 0.7, gamma = 1.3;
  const Matrix num = (kI * theta) * x.matrix() + Complex(gamma / 2) * Matrix::Identity(7, 7);
  const Matrix want = num * mirror_resolvent(x, theta, gamma).matrix();
  EXPECT_LE(max_abs_diff(mirror_scattering(x, theta, gamma).matrix(), want), 1e-12);
  const Matrix den = (kI * theta) * x.matrix() - Complex(gamma / 2) * Matrix::Identity(7, 7);
  EXPECT_LE(max_abs_diff(Matrix(den * mirror_resolvent(x, theta, gamma).matrix()), Matrix::Identity(7, 7)), 1e-12);
}

TEST(Mirror, RejectsNonHermitianArgument) {
  const FockToolbox f = fock_toolbox(3);
  EXPECT_THROW(mirror_scattering(f.b, 1.0, 1.0), InvalidArgument);
}

TEST(Builtins, EveryFixtureValidatesAndMatchesItsLimit) {
  for (const auto& name : builtin_names()) {
    const Fixture fx = builtin_fixture(name);
    ValidationReport rep = scaled_hp_validate(fx.family, 1e-10);
    rep.append(structural_validate(fx.family, fx.sub, 1e-10));
    EXPECT_TRUE(rep.passed()) << name;
    const EliminationResult r = eliminate(fx.family, fx.sub);
    ASSERT_TRUE(fx.expected_limit.has_value()) << name;
    EXPECT_LE(limit_distance(r.limit, *fx.expected_limit), 1e-9) << name;
    EXPECT_TRUE(hp_validate(r.limit, 1e-10).passed()) << name;
  }
}

TEST(Builtins, DeterministicConstruction) {
  for (const auto& name : builtin_names()) {
    const Fixture a = builtin_fixture(name);
    const Fixture b = builtin_fixture(name);
    EXPECT_EQ(a.family.fast_drift.matrix(), b.family.fast_drift.matrix()) << name;
    EXPECT_EQ(a.family.coupling_drift.matrix(), b.family.coupling_drift.matrix()) << name;
    EXPECT_EQ(a.family.slow_drift.matrix(), b.family.slow_drift.matrix()) << name;
    EXPECT_EQ(eliminate(a.family, a.sub).limit.drift.matrix(), eliminate(b.family, b.sub).limit.drift.matrix()) << name;
  }
}

TEST(Builtins, Overrides) {
  const Fixture fx = builtin_fixture("duan-kimble", {{"cutoff", 2.0}});
  EXPECT_EQ(fx.family.space.total_dim(), 9);
  EXPECT_THROW(builtin_fixture("duan-kimble", {{"kappa", 1.0}}), InvalidArgument);
  EXPECT_THROW(builtin_fixture("duan-kimble", {{"cutoff", 2.5}}), InvalidArgument);
  EXPECT_THROW(builtin_fixture("cavity", {{"kappa", Complex(1.0, 1.0)}}), InvalidArgument);
  EXPECT_THROW(builtin_fixture("nope"), InvalidArgument);
}

}  // namespace
}  // namespace qsde
