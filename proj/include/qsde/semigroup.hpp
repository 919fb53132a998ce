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
 * @file semigroup.hpp
 * Coherent-amplitude semigroups of an HP equation.
 *
 * For amplitudes α, β ∈ ℂⁿ the compression of U_t between exponential
 * vectors e(α 1_[0,t]) and e(β 1_[0,t]), renormalised by e^{(|α|²+|β|²)t/2},
 * is a contraction semigroup on the initial space with generator
 *
 *   ℒ^(αβ) = Σ_ij α_i* N_ij β_j + Σ_i α_i* M_i + Σ_i L_i β_i + K - (|α|²+|β|²)/2.
 *
 * U_t itself is never formed: matrix elements against exponential vectors of
 * simple functions reduce to ordered products of these semigroups.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qsde/operator.hpp"
#include "qsde/qsde_model.hpp"

namespace qsde {

struct FieldAmplitudes {
  std::vector<Complex> alpha;
  std::vector<Complex> beta;

  static FieldAmplitudes vacuum(int channels) {
    return {std::vector<Complex>(static_cast<std::size_t>(channels)), std::vector<Complex>(static_cast<std::size_t>(channels))};
  }
  int channels() const { return static_cast<int>(alpha.size()); }
};

inline double squared_norm(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

/// Piecewise-constant ℂⁿ-valued function on [0, t): values[j] holds on [breakpoints[j], breakpoints[j+1]).
class SimpleFunction {
 public:
  SimpleFunction(std::vector<double> breakpoints, std::vector<std::vector<Complex>> values)
      : breaks_(std::move(breakpoints)), values_(std::move(values)) {
    if (breaks_.size() < 2) throw InvalidArgument("simple function needs at least one interval");
    if (breaks_.front() != 0.0) throw InvalidArgument("simple function must start at 0");
    for (std::size_t i = 1; i < breaks_.size(); ++i) {
      if (!(breaks_[i] > breaks_[i - 1]) || !std::isfinite(breaks_[i])) {
        throw InvalidArgument("simple function breakpoints must be strictly increasing and finite");
      }
    }
    if (values_.size() != breaks_.size() - 1) throw InvalidArgument("simple function needs one value per interval");
    for (const auto& v : values_) {
      if (v.size() != values_.front().size()) throw InvalidArgument("simple function values have inconsistent length");
    }
  }

  static SimpleFunction constant(double t, std::vector<Complex> value) { return {{0.0, t}, {std::move(value)}}; }

  const std::vector<double>& breakpoints() const { return breaks_; }
  const std::vector<std::vector<Complex>>& values() const { return values_; }
  double end() const { return breaks_.back(); }
  int channels() const { return static_cast<int>(values_.front().size()); }

  /// Value on the interval containing s (right-continuous; s == end() maps to the last interval).
  const std::vector<Complex>& at(double s) const {
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), s);
    auto idx = static_cast<std::size_t>(std::distance(breaks_.begin(), it));
    idx = std::clamp<std::size_t>(idx, 1, values_.size());
    return values_[idx - 1];
  }

  /// ∫ |f(s)|² ds, exact for a step function.
  double squared_l2() const {
    double acc = 0.0;
    for (std::size_t j = 0; j < values_.size(); ++j) acc += squared_norm(values_[j]) * (breaks_[j + 1] - breaks_[j]);
    return acc;
  }

 private:
  std::vector<double> breaks_;
  std::vector<std::vector<Complex>> values_;
};

inline void check_amplitudes(const QsdeCoefficients& c, const FieldAmplitudes& amp) {
  if (amp.alpha.size() != static_cast<std::size_t>(c.channels) || amp.beta.size() != static_cast<std::size_t>(c.channels)) {
    throw DimensionMismatch("amplitudes have " + std::to_string(amp.alpha.size()) + "/" + std::to_string(amp.beta.size()) +
                            " entries but the model has " + std::to_string(c.channels) + " channels");
  }
}

/// ℒ^(αβ) as a dense operator.
inline Operator generator(const QsdeCoefficients& c, const FieldAmplitudes& amp) {
  c.check_shape();
  check_amplitudes(c, amp);
  const auto n = static_cast<std::size_t>(c.channels);
  Matrix out = c.drift.matrix();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex ai = std::conj(amp.alpha[i]);
    for (std::size_t j = 0; j < n; ++j) out += (ai * amp.beta[j]) * c.scattering[i][j].matrix();
    out += ai * c.creation[i].matrix();
    out += amp.beta[i] * c.annihilation[i].matrix();
  }
  out.diagonal().array() -= 0.5 * (squared_norm(amp.alpha) + squared_norm(amp.beta));
  return {c.space, std::move(out)};
}

/// T_t^(αβ) = exp(t ℒ^(αβ)).
inline Operator evolve(const QsdeCoefficients& c, const FieldAmplitudes& amp, double t) {
  return matrix_exponential(generator(c, amp), t);
}

/**
 * Largest eigenvalue of ℒ^(αβ) + ℒ^(αβ)†.
 *
 * Non-positive (up to rounding) whenever the HP relations hold. The value
 * is returned with its sign so that shifts of K by a multiple of the
 * identity show up one-to-one.
 */
inline double dissipativity_check(const QsdeCoefficients& c, const FieldAmplitudes& amp) {
  const Matrix g = generator(c, amp).matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(Matrix(g + g.adjoint()), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff();
}

/**
 * ⟨u1 ⊗ e(f1), U_t u2 ⊗ e(f2)⟩ for step functions f1, f2 on [0, t].
 *
 * On the common refinement 0 = s_0 < ... < s_m = t with amplitude pairs
 * (a_j, b_j) = (f1, f2) on [s_j, s_{j+1}), the cocycle property gives
 *
 *   |e(f1)| |e(f2)| ⟨u1, T^(a_0 b_0)_{s_1-s_0} ··· T^(a_{m-1} b_{m-1})_{s_m - s_{m-1}} u2⟩
 *
 * with |e(f)| = exp(½ ∫|f|²).
 */
inline Complex cocycle_matrix_element(const QsdeCoefficients& c, const Vector& u1, const Vector& u2,
                                      const SimpleFunction& f1, const SimpleFunction& f2, double t) {
  if (u1.size() != c.space.total_dim() || u2.size() != c.space.total_dim()) {
    throw DimensionMismatch("vectors do not match the coefficient space");
  }
  if (f1.end() != t || f2.end() != t) throw InvalidArgument("simple functions must be defined on exactly [0, t]");
  if (f1.channels() != c.channels || f2.channels() != c.channels) throw DimensionMismatch("simple function channel count");

  std::vector<double> grid = f1.breakpoints();
  grid.insert(grid.end(), f2.breakpoints().begin(), f2.breakpoints().end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  Vector w = u2;
  // Apply the rightmost factor first.
  for (std::size_t j = grid.size() - 1; j-- > 0;) {
    const double mid = 0.5 * (grid[j] + grid[j + 1]);
    const FieldAmplitudes amp{f1.at(mid), f2.at(mid)};
    w = matrix_exponential(generator(c, amp).matrix(), grid[j + 1] - grid[j]) * w;
  }
  const double norms = std::exp(0.5 * (f1.squared_l2() + f2.squared_l2()));
  return norms * u1.dot(w);
}

}  // namespace qsde
