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

TEST(HilbertSpace, TotalDimensionIsProduct) {
  HilbertSpace sp({2, 3, 4});
  EXPECT_EQ(sp.total_dim(), 24);
  EXPECT_EQ(sp.factor_count(), 3);
  EXPECT_EQ(sp.factor(1).total_dim(), 3);
  EXPECT_THROW(HilbertSpace({2, 0}), InvalidArgument);
  EXPECT_THROW(HilbertSpace(std::vector<int>{}), InvalidArgument);
}

TEST(Operator, RejectsWrongShapeAndNonFinite) {
  EXPECT_THROW(Operator(HilbertSpace::single(2), Matrix::Zero(2, 3)), DimensionMismatch);
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(Operator(HilbertSpace::single(2), m), InvalidArgument);
  EXPECT_THROW(Operator::identity(HilbertSpace({2, 2})) + Operator::identity(HilbertSpace::single(4)), DimensionMismatch);
}

TEST(Adjoint, ConjugateTransposeOfRealMatrix) {
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  const Operator x(HilbertSpace::single(2), m);
  Matrix expected(2, 2);
  expected << 0, 0, 1, 0;
  EXPECT_EQ(adjoint(x).matrix(), expected);
}

TEST(Adjoint, RaisingAndLoweringOfThreeLevelAtom) {
  const Operator sp_plus = basis_matrix(3, 0, 1);
  EXPECT_EQ(adjoint(sp_plus).matrix(), basis_matrix(3, 1, 0).matrix());
}

TEST(Adjoint, InvolutionIsBitwise) {
  Rng rng(1);
  const Operator x(HilbertSpace::single(8), rng.matrix(8, 8));
  EXPECT_EQ(adjoint(adjoint(x)).matrix(), x.matrix());
}

TEST(Adjoint, AntiHomomorphism) {
  Rng rng(2);
  const HilbertSpace sp = HilbertSpace::single(6);
  const Operator x(sp, rng.matrix(6, 6)), y(sp, rng.matrix(6, 6));
  const double err = spectral_norm(adjoint(x * y) - adjoint(y) * adjoint(x));
  EXPECT_LE(err, 1e-13 * spectral_norm(x) * spectral_norm(y));
}

TEST(TensorEmbed, IdentityAmpliation) {
  const HilbertSpace target({2, 3});
  for (int f = 0; f < 2; ++f) {
    const Operator id = Operator::identity(target.factor(f));
    EXPECT_EQ(tensor_embed(id, f, target).matrix(), Matrix::Identity(6, 6));
  }
}

TEST(TensorEmbed, SecondFactorHasBlockStructure) {
  const HilbertSpace target({2, 3});
  const FockToolbox fock = fock_toolbox(2);
  const Operator e = tensor_embed(fock.b, 1, target);
  Matrix expected = Matrix::Zero(6, 6);
  expected.block(0, 0, 3, 3) = fock.b.matrix();
  expected.block(3, 3, 3, 3) = fock.b.matrix();
  EXPECT_EQ(e.matrix(), expected);
  EXPECT_THROW(tensor_embed(fock.b, 0, target), DimensionMismatch);
  EXPECT_THROW(tensor_embed(fock.b, 2, target), DimensionMismatch);
}

TEST(TensorEmbed, DisjointFactorsCommuteAndNormIsPreserved) {
  Rng rng(3);
  const HilbertSpace target({3, 4});
  const Operator x(HilbertSpace::single(3), rng.matrix(3, 3));
  const Operator y(HilbertSpace::single(4), rng.matrix(4, 4));
  const Operator ex = tensor_embed(x, 0, target);
  const Operator ey = tensor_embed(y, 1, target);
  EXPECT_LE(spectral_norm(ex * ey - ey * ex), 1e-14);
  EXPECT_NEAR(spectral_norm(ex), spectral_norm(x), 1e-12);
  EXPECT_NEAR(spectral_norm(ey), spectral_norm(y), 1e-12);
}

TEST(SpectralNorm, TrivialCases) {
  EXPECT_NEAR(spectral_norm(Operator::identity(HilbertSpace::single(5))), 1.0, 1e-15);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = Complex(0, 3);
  d(1, 1) = -2.0;
  EXPECT_NEAR(spectral_norm(d), 3.0, 1e-14);
}

TEST(SpectralNorm, AgreesWithEigenvalueOracle) {
  Rng rng(4);
  for (int rep = 0; rep < 5; ++rep) {
    const Matrix x = rng.matrix(16, 16);
    const double a = spectral_norm(x);
    EXPECT_NEAR(a, testing::norm_by_eigenvalues(x), 1e-12 * a);
  }
}

TEST(MatrixExponential, ZeroTimeIsExactIdentity) {
  Rng rng(5);
  const Matrix x = rng.matrix(7, 7);
  EXPECT_EQ(matrix_exponential(x, 0.0), Matrix::Identity(7, 7));
}

TEST(MatrixExponential, DiagonalCase) {
  Matrix x = Matrix::Zero(2, 2);
  x(0, 0) = Complex(-0.5, 2.0);
  x(1, 1) = 0.25;
  const Matrix e = matrix_exponential(x, 1.5);
  EXPECT_NEAR(std::abs(e(0, 0) - std::exp(1.5 * x(0, 0))), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(e(1, 1) - std::exp(1.5 * 0.25)), 0.0, 1e-14);
  EXPECT_EQ(e(0, 1), Complex(0.0));
}

TEST(MatrixExponential, RejectsNegativeAndNonFiniteTime) {
  const Matrix x = Matrix::Identity(2, 2);
  EXPECT_THROW(matrix_exponential(x, -0.1), InvalidArgument);
  EXPECT_THROW(matrix_exponential(x, std::numeric_limits<double>::infinity()), InvalidArgument);
}

TEST(MatrixExponential, MatchesOdeIntegration) {
  Rng rng(6);
  const Matrix x = testing::random_dissipative(rng, 10);
  EXPECT_LE(spectral_norm(Matrix(matrix_exponential(x, 1.0) - testing::ode_exponential(x, 1.0))), 1e-8);
}

TEST(MatrixExponential, SemigroupLawAndContraction) {
  Rng rng(7);
  const Matrix x = testing::random_dissipative(rng, 12);
  for (double s : {0.0, 0.7, 2.0}) {
    for (double t : {0.3, 1.0, 4.0}) {
      const Matrix lhs = matrix_exponential(x, s + t);
      const Matrix rhs = matrix_exponential(x, s) * matrix_exponential(x, t);
      EXPECT_LE(spectral_norm(Matrix(lhs - rhs)), 1e-10 * std::max(1.0, spectral_norm(lhs)));
      EXPECT_LE(spectral_norm(lhs), 1.0 + 1e-9);
    }
  }
}

TEST(SubspacePair, CoordinateProjection) {
  const auto sub = SubspacePair::from_basis_indices(HilbertSpace::single(4), {1, 3});
  EXPECT_EQ(sub.rank(), 2);
  EXPECT_EQ(sub.slow_basis()(1, 0), Complex(1.0));
  EXPECT_EQ(sub.slow_basis()(3, 1), Complex(1.0));
  EXPECT_EQ(sub.fast_basis().cols(), 2);
  EXPECT_EQ((sub.p0().matrix() + sub.p1().matrix()), Matrix::Identity(4, 4));
}

TEST(SubspacePair, RejectsNonProjectionsAndRankZero) {
  Matrix m = Matrix::Identity(2, 2) * 0.5;
  EXPECT_THROW(SubspacePair(Operator(HilbertSpace::single(2), m)), InvalidArgument);
  Matrix nh = Matrix::Zero(2, 2);
  nh(0, 1) = 1.0;
  EXPECT_THROW(SubspacePair(Operator(HilbertSpace::single(2), nh)), InvalidArgument);
  EXPECT_THROW(SubspacePair(Operator::zero(HilbertSpace::single(2))), InvalidArgument);
}

TEST(SubspacePair, RotatedProjectionHasOrthonormalBases) {
  Rng rng(8);
  const Matrix u = rng.unitary(5);
  const Matrix v = u.leftCols(2);
  const SubspacePair sub(Operator(HilbertSpace::single(5), v * v.adjoint()));
  EXPECT_EQ(sub.rank(), 2);
  EXPECT_LE(spectral_norm(Matrix(sub.slow_basis().adjoint() * sub.slow_basis() - Matrix::Identity(2, 2))), 1e-12);
  EXPECT_LE(spectral_norm(Matrix(sub.slow_basis() * sub.slow_basis().adjoint() - v * v.adjoint())), 1e-12);
  EXPECT_LE(spectral_norm(Matrix(sub.slow_basis().adjoint() * sub.fast_basis())), 1e-12);
}

TEST(RestrictedInverse, DiagonalExample) {
  Matrix y = Matrix::Zero(3, 3);
  y(1, 1) = -2.0;
  y(2, 2) = -5.0;
  const HilbertSpace sp = HilbertSpace::single(3);
  const auto sub = SubspacePair::from_basis_indices(sp, {0});
  const Matrix yt = restricted_inverse(Operator(sp, y), sub).matrix();
  Matrix expected = Matrix::Zero(3, 3);
  expected(1, 1) = -0.5;
  expected(2, 2) = -0.2;
  EXPECT_LE(testing::max_abs_diff(yt, expected), 1e-15);
}

TEST(RestrictedInverse, AgreesWithLinearSolveOracle) {
  Rng rng(9);
  const HilbertSpace sp = HilbertSpace::single(7);
  const auto sub = SubspacePair::from_basis_indices(sp, {0, 3});
  const Matrix p1 = sub.p1().matrix();
  const Matrix y = p1 * rng.matrix(7, 7) * p1;
  const Matrix yt = restricted_inverse(Operator(sp, y), sub).matrix();
  EXPECT_LE(testing::max_abs_diff(yt, testing::lu_partial_inverse(y, {1, 2, 4, 5, 6})), 1e-10 * spectral_norm(yt));
  EXPECT_LE(spectral_norm(Matrix(yt * y - p1)), 1e-10);
  EXPECT_LE(spectral_norm(Matrix(y * yt - p1)), 1e-10);
  EXPECT_LE(spectral_norm(Matrix(yt * sub.p0().matrix())), 1e-14);
}

TEST(RestrictedInverse, Errors) {
  const HilbertSpace sp = HilbertSpace::single(3);
  const auto sub = SubspacePair::from_basis_indices(sp, {0});
  Matrix y = Matrix::Zero(3, 3);
  y(1, 1) = -1.0;  // y(2,2) = 0: singular on range(p1)
  EXPECT_THROW(restricted_inverse(Operator(sp, y), sub), SingularFastDynamics);
  y(2, 2) = -1e-14;
  EXPECT_THROW(restricted_inverse(Operator(sp, y), sub), SingularFastDynamics);
  EXPECT_NO_THROW(restricted_inverse(Operator(sp, y), sub, 1e15));
  y(0, 0) = 1.0;
  EXPECT_THROW(restricted_inverse(Operator(sp, y), sub), StructuralViolation);
}

TEST(RestrictedInverse, NothingFastGivesZero) {
  const HilbertSpace sp = HilbertSpace::single(2);
  const SubspacePair sub(Operator::identity(sp));
  EXPECT_EQ(restricted_inverse(Operator::zero(sp), sub).matrix(), Matrix::Zero(2, 2));
}

TEST(ScaledTolerance, UsesLargestNormButAtLeastOne) {
  EXPECT_EQ(scaled_tolerance(1e-9, {0.5}), 1e-9);
  EXPECT_EQ(scaled_tolerance(1e-9, {0.5, 40.0}), 4e-8);
}

}  // namespace
}  // namespace qsde
