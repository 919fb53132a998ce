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

/**
 * @file elimination.hpp
 * Adiabatic elimination of the fast subspace.
 *
 * Given a scaled family and the slow subspace H0 with projection P0, the
 * limit coefficients on H0 are
 *
 *   K    = P0 (B - A Ỹ A) P0
 *   L_i  = P0 (G_i - A Ỹ F_i) P0
 *   M_i  = -Σ_j P0 W_ij (G_j† - F_j† Ỹ A) P0
 *   N_ij = Σ_l P0 W_il (F_l† Ỹ F_j + δ_lj) P0
 *
 * where Ỹ is the partial inverse of Y on range(P1). The result is expressed
 * in the orthonormal basis of H0 held by the SubspacePair.
 */
#pragma once

#include <string>
#include <vector>

#include "qsde/operator.hpp"
#include "qsde/qsde_model.hpp"

namespace qsde {

struct EliminationResult {
  QsdeCoefficients limit;  // on HilbertSpace::single(rank(p0))
  Operator fast_inverse;   // Ỹ on the full space
  Matrix compression;      // isometry from H0 coordinates into H

  /// V X V†: a limit operator represented on the full space.
  Matrix embed(const Operator& x) const { return compression * x.matrix() * compression.adjoint(); }
};

/**
 * Limit coefficients of a validated scaled family.
 *
 * Both scaled_hp_validate and structural_validate must pass at `tol`;
 * otherwise PreconditionFailed is thrown with the combined report.
 */
inline EliminationResult eliminate(const ScaledFamily& fam, const SubspacePair& sub, double tol = kDefaultTolerance,
                                   double cond_limit = kDefaultConditionLimit) {
  ValidationReport report = scaled_hp_validate(fam, tol);
  report.append(structural_validate(fam, sub, tol, cond_limit));
  if (!report.passed()) {
    std::string names;
    for (const auto& f : report.failing()) names += (names.empty() ? "" : ", ") + f;
    throw PreconditionFailed("elimination preconditions failed: " + names, std::move(report));
  }

  const Operator yt_op = restricted_inverse(fam.fast_drift, sub, cond_limit, tol);
  const Matrix& yt = yt_op.matrix();
  const Matrix& v = sub.slow_basis();
  const Matrix& a = fam.coupling_drift.matrix();
  const int d = fam.space.total_dim();
  const int r = sub.rank();
  const auto n = static_cast<std::size_t>(fam.channels);
  const HilbertSpace slow_space = HilbertSpace::single(r);

  // V† X V equals the compression of P0 X P0 since V†P0 = V†.
  auto compress = [&](const Matrix& x) { return Operator(slow_space, v.adjoint() * x * v); };

  Operator drift = compress(fam.slow_drift.matrix() - a * yt * a);

  std::vector<Operator> ann;
  ann.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ann.push_back(compress(fam.slow_field[i].matrix() - a * yt * fam.fast_field[i].matrix()));
  }

  std::vector<Operator> cre;
  cre.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix acc = Matrix::Zero(d, d);
    for (std::size_t j = 0; j < n; ++j) {
      acc -= fam.scattering[i][j].matrix() *
             (fam.slow_field[j].matrix().adjoint() - fam.fast_field[j].matrix().adjoint() * yt * a);
    }
    cre.push_back(compress(acc));
  }

  OperatorGrid scat(n);
  for (std::size_t i = 0; i < n; ++i) {
    scat[i].reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      Matrix acc = Matrix::Zero(d, d);
      for (std::size_t l = 0; l < n; ++l) {
        Matrix inner = fam.fast_field[l].matrix().adjoint() * yt * fam.fast_field[j].matrix();
        if (l == j) inner += Matrix::Identity(d, d);
        acc += fam.scattering[i][l].matrix() * inner;
      }
      scat[i].push_back(compress(acc));
    }
  }

  return {QsdeCoefficients{fam.channels, slow_space, std::move(drift), std::move(ann), std::move(cre), std::move(scat)},
          yt_op, v};
}

/// Bounded operators of an atom-cavity model on the auxiliary space H'.
struct CavityCoefficients {
  int channels;
  Operator e00, e01, e10, e11;
  std::vector<Operator> fast_field;  // F_i
  std::vector<Operator> slow_field;  // G_i
  OperatorGrid scattering;           // S_ij
};

/**
 * Closed-form cavity elimination on H':
 *   K = E00 - E01 E11⁻¹ E10,  L_i = G_i - E01 E11⁻¹ F_i,
 *   N_ij = Σ_l S_il (F_l† E11⁻¹ F_j + δ_lj),  M_i = -Σ_j N_ij L_j†.
 * `e11_inv` is checked against `cav.e11` and InverseMismatch is thrown when
 * E11·e11_inv differs from I by more than tol·max(1, |E11||e11_inv|).
 */
inline QsdeCoefficients cavity_closed_form(const CavityCoefficients& cav, const Operator& e11_inv,
                                           double tol = kDefaultTolerance) {
  const HilbertSpace& sp = cav.e00.space();
  const int d = sp.total_dim();
  const auto n = static_cast<std::size_t>(cav.channels);
  if (cav.channels < 1 || cav.fast_field.size() != n || cav.slow_field.size() != n || cav.scattering.size() != n) {
    throw DimensionMismatch("cavity coefficients do not match the channel count");
  }
  const Matrix& inv = e11_inv.matrix();
  const double mismatch = spectral_norm(Matrix(cav.e11.matrix() * inv - Matrix::Identity(d, d)));
  if (mismatch > scaled_tolerance(tol, {spectral_norm(cav.e11) * spectral_norm(e11_inv)})) {
    throw InverseMismatch("supplied inverse of E11 fails verification (|E11 X - I| = " + std::to_string(mismatch) + ")");
  }

  const Matrix e01_inv = cav.e01.matrix() * inv;
  Operator drift(sp, cav.e00.matrix() - e01_inv * cav.e10.matrix());

  std::vector<Operator> ann;
  for (std::size_t i = 0; i < n; ++i) ann.emplace_back(sp, cav.slow_field[i].matrix() - e01_inv * cav.fast_field[i].matrix());

  OperatorGrid scat(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Matrix acc = Matrix::Zero(d, d);
      for (std::size_t l = 0; l < n; ++l) {
        Matrix inner = cav.fast_field[l].matrix().adjoint() * inv * cav.fast_field[j].matrix();
        if (l == j) inner += Matrix::Identity(d, d);
        acc += cav.scattering[i][l].matrix() * inner;
      }
      scat[i].emplace_back(sp, std::move(acc));
    }
  }

  std::vector<Operator> cre;
  for (std::size_t i = 0; i < n; ++i) {
    Matrix acc = Matrix::Zero(d, d);
    for (std::size_t j = 0; j < n; ++j) acc -= scat[i][j].matrix() * ann[j].matrix().adjoint();
    cre.emplace_back(sp, std::move(acc));
  }
  return {cav.channels, sp, std::move(drift), std::move(ann), std::move(cre), std::move(scat)};
}

}  // namespace qsde
