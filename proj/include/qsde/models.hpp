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
 * @file models.hpp
 * Worked models: a truncated Fock toolbox and ready-made scaled families.
 *
 * Cavity modes are truncated to φ_0..φ_c with b†φ_c = 0, so the number
 * operator b†b is exact on the retained states while [b, b†] = I fails in
 * the last diagonal entry only. Tensor factors are ordered (system, cavity)
 * and the slow subspace is always system ⊗ φ_0.
 */
#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsde/elimination.hpp"
#include "qsde/operator.hpp"
#include "qsde/qsde_model.hpp"

namespace qsde {

struct FockToolbox {
  int cutoff;
  Operator b;
  Operator b_dag;
  Operator number;
};

inline FockToolbox fock_toolbox(int cutoff) {
  if (cutoff < 1) throw InvalidArgument("Fock cutoff must be >= 1");
  const HilbertSpace sp = HilbertSpace::single(cutoff + 1);
  Matrix b = Matrix::Zero(cutoff + 1, cutoff + 1);
  Matrix n = Matrix::Zero(cutoff + 1, cutoff + 1);
  for (int i = 1; i <= cutoff; ++i) b(i - 1, i) = std::sqrt(static_cast<double>(i));
  for (int i = 0; i <= cutoff; ++i) n(i, i) = static_cast<double>(i);
  Matrix bd = b.adjoint();
  return {cutoff, Operator(sp, std::move(b)), Operator(sp, std::move(bd)), Operator(sp, std::move(n))};
}

/// |i⟩⟨j| on ℂ^dim.
inline Operator basis_matrix(int dim, int i, int j) {
  if (dim < 1 || i < 0 || j < 0 || i >= dim || j >= dim) throw InvalidArgument("basis_matrix index out of range");
  Matrix m = Matrix::Zero(dim, dim);
  m(i, j) = 1.0;
  return {HilbertSpace::single(dim), std::move(m)};
}

/// f(h) for Hermitian h via its eigendecomposition.
inline Matrix hermitian_function(const Matrix& h, const std::function<Complex(double)>& f) {
  if (spectral_norm(Matrix(h - h.adjoint())) > scaled_tolerance(kDefaultTolerance, {spectral_norm(h)})) {
    throw InvalidArgument("functional calculus needs a Hermitian operand");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(Matrix(0.5 * (h + h.adjoint())));
  const Matrix& v = eig.eigenvectors();
  Vector fx(v.cols());
  for (Eigen::Index i = 0; i < fx.size(); ++i) fx(i) = f(eig.eigenvalues()(i));
  return v * fx.asDiagonal() * v.adjoint();
}

/// (iθx + γ/2)(iθx - γ/2)⁻¹ applied to a Hermitian x.
inline Operator mirror_scattering(const Operator& x, double theta, double gamma) {
  return {x.space(), hermitian_function(x.matrix(), [&](double s) {
            return (kI * theta * s + gamma / 2) / (kI * theta * s - gamma / 2);
          })};
}

/// (iθx - γ/2)⁻¹ applied to a Hermitian x.
inline Operator mirror_resolvent(const Operator& x, double theta, double gamma) {
  return {x.space(), hermitian_function(x.matrix(), [&](double s) { return 1.0 / (kI * theta * s - gamma / 2); })};
}

struct Fixture {
  std::string name;
  ScaledFamily family;
  SubspacePair sub;
  std::optional<QsdeCoefficients> expected_limit;
  std::map<std::string, Complex> params;
};

namespace detail {

inline OperatorGrid identity_grid(int channels, const HilbertSpace& sp) {
  OperatorGrid w(static_cast<std::size_t>(channels));
  for (int i = 0; i < channels; ++i) {
    for (int j = 0; j < channels; ++j) w[i].push_back(i == j ? Operator::identity(sp) : Operator::zero(sp));
  }
  return w;
}

inline std::vector<int> ground_indices(int system_dim, int cutoff) {
  std::vector<int> idx;
  for (int a = 0; a < system_dim; ++a) idx.push_back(a * (cutoff + 1));
  return idx;
}

// Limit coefficients with M derived from M_i = -Σ_j N_ij L_j†.
inline QsdeCoefficients with_derived_creation(int channels, const HilbertSpace& sp, Operator k, std::vector<Operator> l,
                                              OperatorGrid n) {
  std::vector<Operator> m;
  for (int i = 0; i < channels; ++i) {
    Operator acc = Operator::zero(sp);
    for (int j = 0; j < channels; ++j) acc -= n[i][j] * adjoint(l[j]);
    m.push_back(std::move(acc));
  }
  return {channels, sp, std::move(k), std::move(l), std::move(m), std::move(n)};
}

inline void require_valid(const ScaledFamily& fam, const SubspacePair& sub, const std::string& name, double tol) {
  ValidationReport report = scaled_hp_validate(fam, tol);
  report.append(structural_validate(fam, sub, tol));
  if (!report.passed()) throw PreconditionFailed(name + " fixture fails validation", std::move(report));
}

}  // namespace detail

/**
 * Cavity mode b coupled to a system on H' through
 *   Y = E11⊗b†b, A = E10⊗b† + E01⊗b, B = E00⊗I,
 *   F_i = F_i⊗b†, G_i = G_i⊗I, W_ij = S_ij⊗I,
 * with H0 = H'⊗φ0. The expected limit comes from cavity_closed_form.
 */
inline Fixture cavity_fixture(const CavityCoefficients& cav, int cutoff, double tol = kDefaultTolerance) {
  const HilbertSpace& hp = cav.e00.space();
  const int hd = hp.total_dim();
  const auto n = static_cast<std::size_t>(cav.channels);
  if (cav.channels < 1 || cav.fast_field.size() != n || cav.slow_field.size() != n || cav.scattering.size() != n) {
    throw DimensionMismatch("cavity coefficients do not match the channel count");
  }
  const FockToolbox fock = fock_toolbox(cutoff);
  const Operator id = Operator::identity(fock.b.space());

  std::vector<Operator> f, g;
  OperatorGrid w(n);
  for (std::size_t i = 0; i < n; ++i) {
    f.push_back(kron(cav.fast_field[i], fock.b_dag));
    g.push_back(kron(cav.slow_field[i], id));
    for (std::size_t j = 0; j < n; ++j) w[i].push_back(kron(cav.scattering[i][j], id));
  }
  ScaledFamily fam{cav.channels,
                   f.front().space(),
                   kron(cav.e11, fock.number),
                   kron(cav.e10, fock.b_dag) + kron(cav.e01, fock.b),
                   kron(cav.e00, id),
                   std::move(f),
                   std::move(g),
                   std::move(w)};
  SubspacePair sub = SubspacePair::from_basis_indices(fam.space, detail::ground_indices(hd, cutoff));
  detail::require_valid(fam, sub, "cavity", tol);

  Eigen::FullPivLU<Matrix> lu(cav.e11.matrix());
  if (!lu.isInvertible()) throw SingularFastDynamics("E11 is not invertible");
  const Operator e11_inv(hp, lu.inverse());
  QsdeCoefficients expected = cavity_closed_form(cav, e11_inv, tol);
  // cavity_closed_form works on H'; the slow subspace has the same coordinates.
  expected.space = HilbertSpace::single(hd);
  auto retag = [&](Operator& x) { x = Operator(expected.space, x.matrix()); };
  retag(expected.drift);
  for (auto& x : expected.annihilation) retag(x);
  for (auto& x : expected.creation) retag(x);
  for (auto& row : expected.scattering) {
    for (auto& x : row) retag(x);
  }
  return {"cavity", std::move(fam), std::move(sub), std::move(expected), {{"cutoff", cutoff}}};
}

/**
 * Two-level atom (basis g, e) in a damped cavity:
 *   F = √κ, E11 = -κ/2 + iΔ, E10 = g σ₋, E01 = -g σ₊, E00 = iΩ(σ₊ + σ₋), G = 0, S = 1.
 * At Δ = 0 the limit has N = -1.
 */
inline CavityCoefficients atom_cavity_coefficients(double kappa, double g, double detuning, double drive) {
  if (!(kappa > 0.0)) throw InvalidArgument("kappa must be positive");
  const HilbertSpace sp = HilbertSpace::single(2);
  const Operator id = Operator::identity(sp);
  const Operator sm = basis_matrix(2, 0, 1);
  const Operator sp_ = basis_matrix(2, 1, 0);
  return {1,
          kI * drive * (sp_ + sm),
          -g * sp_,
          g * sm,
          Complex(-kappa / 2, detuning) * id,
          {std::sqrt(kappa) * id},
          {Operator::zero(sp)},
          {{id}}};
}

inline Fixture atom_cavity_fixture(double kappa, double g, double detuning, double drive, int cutoff) {
  Fixture fx = cavity_fixture(atom_cavity_coefficients(kappa, g, detuning, drive), cutoff);
  fx.params = {{"kappa", kappa}, {"g", g}, {"detuning", detuning}, {"drive", drive}, {"cutoff", cutoff}};
  return fx;
}

/**
 * Three-level atom (basis e, +, -) in a cavity with decay γ and coupling g
 * on the e-+ transition, driven with amplitude α on the e-- transition:
 *   Y = -(γ/2) b†b + g(σ₋^(+) b† - σ₊^(+) b),  A = σ₋^(-) α* - σ₊^(-) α,
 *   F = √γ b†,  B = G = 0,  W = I,  H0 = span{|+⟩φ0, |-⟩φ0}.
 * Limit: K = -(|α|²γ/(2g²)) P₋, L = -(α*√γ/g) σ₋^(-)σ₊^(+), N = I - 2P₋.
 */
inline Fixture duan_kimble_fixture(double gamma, double g, Complex drive_alpha, int cutoff) {
  if (!(gamma > 0.0)) throw InvalidArgument("gamma must be positive");
  if (g == 0.0 || !std::isfinite(g)) throw InvalidArgument("coupling g must be nonzero");
  if (cutoff < 2) throw InvalidArgument("cavity cutoff must be >= 2");
  const FockToolbox fock = fock_toolbox(cutoff);
  const Operator atom_id = Operator::identity(HilbertSpace::single(3));
  const Operator cav_id = Operator::identity(fock.b.space());
  // σ₊^(±) = |e⟩⟨±|, σ₋^(±) = |±⟩⟨e|
  const Operator sp_plus = basis_matrix(3, 0, 1);
  const Operator sp_minus = basis_matrix(3, 0, 2);
  const Operator sm_plus = adjoint(sp_plus);
  const Operator sm_minus = adjoint(sp_minus);

  const Operator y = Complex(-gamma / 2) * kron(atom_id, fock.number) +
                     g * (kron(sm_plus, fock.b_dag) - kron(sp_plus, fock.b));
  const Operator a = kron(std::conj(drive_alpha) * sm_minus - drive_alpha * sp_minus, cav_id);
  const HilbertSpace sp = y.space();
  ScaledFamily fam{1, sp, y, a, Operator::zero(sp), {std::sqrt(gamma) * kron(atom_id, fock.b_dag)},
                   {Operator::zero(sp)}, detail::identity_grid(1, sp)};
  SubspacePair sub = SubspacePair::from_basis_indices(sp, {cutoff + 1, 2 * (cutoff + 1)});

  // H0 coordinates: (|+⟩φ0, |-⟩φ0).
  const HilbertSpace slow = HilbertSpace::single(2);
  Matrix k = Matrix::Zero(2, 2);
  k(1, 1) = -std::norm(drive_alpha) * gamma / (2 * g * g);
  Matrix l = Matrix::Zero(2, 2);
  l(1, 0) = -std::conj(drive_alpha) * std::sqrt(gamma) / g;
  Matrix n = Matrix::Identity(2, 2);
  n(1, 1) = -1.0;
  QsdeCoefficients expected = detail::with_derived_creation(1, slow, Operator(slow, k), {Operator(slow, l)},
                                                            {{Operator(slow, n)}});
  return {"duan-kimble",
          std::move(fam),
          std::move(sub),
          std::move(expected),
          {{"gamma", gamma}, {"g", g}, {"alpha", drive_alpha}, {"cutoff", cutoff}}};
}

/**
 * Cavity with an oscillating end mirror (mode c, position x' = c + c†):
 *   Y = (iθx' - γ/2) ⊗ b†b,  B = iΩ c†c ⊗ I,  F = √γ I ⊗ b†,  A = G = 0,  W = I,
 * H0 = mirror ⊗ φ0. Limit: K = iΩ c†c, L = M = 0,
 * N = (iθx' + γ/2)(iθx' - γ/2)⁻¹ by functional calculus on the truncated x'.
 */
inline Fixture mirror_fixture(double gamma, double theta, double omega, int mirror_cutoff, int cavity_cutoff) {
  if (!(gamma > 0.0) || !(theta > 0.0) || !(omega > 0.0)) throw InvalidArgument("gamma, theta and omega must be positive");
  if (mirror_cutoff < 2 || cavity_cutoff < 2) throw InvalidArgument("mirror and cavity cutoffs must be >= 2");
  const FockToolbox mirror = fock_toolbox(mirror_cutoff);
  const FockToolbox cav = fock_toolbox(cavity_cutoff);
  const Operator mirror_id = Operator::identity(mirror.b.space());
  const Operator cav_id = Operator::identity(cav.b.space());
  const Operator x = mirror.b + mirror.b_dag;
  const Operator hamiltonian = (kI * omega) * mirror.number;

  const Operator y = kron((kI * theta) * x - Complex(gamma / 2) * mirror_id, cav.number);
  const HilbertSpace sp = y.space();
  ScaledFamily fam{1, sp, y, Operator::zero(sp), kron(hamiltonian, cav_id), {std::sqrt(gamma) * kron(mirror_id, cav.b_dag)},
                   {Operator::zero(sp)}, detail::identity_grid(1, sp)};
  SubspacePair sub = SubspacePair::from_basis_indices(sp, detail::ground_indices(mirror_cutoff + 1, cavity_cutoff));

  const HilbertSpace slow = HilbertSpace::single(mirror_cutoff + 1);
  auto on_slow = [&](const Operator& op) { return Operator(slow, op.matrix()); };
  QsdeCoefficients expected{1,
                            slow,
                            on_slow(hamiltonian),
                            {Operator::zero(slow)},
                            {Operator::zero(slow)},
                            {{on_slow(mirror_scattering(x, theta, gamma))}}};
  return {"mirror",
          std::move(fam),
          std::move(sub),
          std::move(expected),
          {{"gamma", gamma},
           {"theta", theta},
           {"omega", omega},
           {"mirror_cutoff", mirror_cutoff},
           {"cavity_cutoff", cavity_cutoff}}};
}

/**
 * Damped, driven oscillator with nothing to eliminate:
 *   K = i(ω b†b + d(b + b†)) - (κ/2) b b†,  L = √κ b,  N = 1,
 * as a family with Y = A = F = 0 and P0 = I. With d = 0 every window
 * span{φ0..φm} is invariant under K and L.
 */
inline Fixture truncation_demo_fixture(double omega, double kappa, double drive, int cutoff) {
  if (!(kappa >= 0.0)) throw InvalidArgument("kappa must be nonnegative");
  const FockToolbox fock = fock_toolbox(cutoff);
  const HilbertSpace sp = fock.b.space();
  const Operator k = kI * (omega * fock.number + drive * (fock.b + fock.b_dag)) -
                     Complex(kappa / 2) * (fock.b * fock.b_dag);
  const Operator l = std::sqrt(kappa) * fock.b;
  ScaledFamily fam{1, sp, Operator::zero(sp), Operator::zero(sp), k, {Operator::zero(sp)}, {l}, detail::identity_grid(1, sp)};
  SubspacePair sub(Operator::identity(sp));
  QsdeCoefficients expected = detail::with_derived_creation(1, sp, k, {l}, detail::identity_grid(1, sp));
  return {"truncation-demo",
          std::move(fam),
          std::move(sub),
          std::move(expected),
          {{"omega", omega}, {"kappa", kappa}, {"drive", drive}, {"cutoff", cutoff}}};
}

/// Names accepted by builtin_fixture.
inline std::vector<std::string> builtin_names() { return {"cavity", "duan-kimble", "mirror", "truncation-demo"}; }

/// Default parameters of a builtin fixture.
inline std::map<std::string, Complex> builtin_defaults(const std::string& name) {
  if (name == "cavity") return {{"kappa", 1.0}, {"g", 0.5}, {"detuning", 0.0}, {"drive", 0.3}, {"cutoff", 4.0}};
  if (name == "duan-kimble") return {{"gamma", 1.0}, {"g", 2.0}, {"alpha", Complex(0.3, 0.4)}, {"cutoff", 4.0}};
  if (name == "mirror") {
    return {{"gamma", 1.0}, {"theta", 0.5}, {"omega", 1.0}, {"mirror_cutoff", 8.0}, {"cavity_cutoff", 3.0}};
  }
  if (name == "truncation-demo") return {{"omega", 1.0}, {"kappa", 1.0}, {"drive", 0.5}, {"cutoff", 16.0}};
  throw InvalidArgument("unknown builtin fixture '" + name + "'");
}

namespace detail {

inline double real_param(const std::map<std::string, Complex>& p, const std::string& key) {
  const Complex v = p.at(key);
  if (v.imag() != 0.0) throw InvalidArgument("parameter '" + key + "' must be real");
  return v.real();
}

inline int int_param(const std::map<std::string, Complex>& p, const std::string& key) {
  const double v = real_param(p, key);
  if (v != std::floor(v) || std::abs(v) > 1e6) throw InvalidArgument("parameter '" + key + "' must be an integer");
  return static_cast<int>(v);
}

}  // namespace detail

/// Builds a builtin fixture; `overrides` replaces defaults and may not introduce unknown keys.
inline Fixture builtin_fixture(const std::string& name, const std::map<std::string, Complex>& overrides = {}) {
  auto p = builtin_defaults(name);
  for (const auto& [key, value] : overrides) {
    if (!p.count(key)) throw InvalidArgument("fixture '" + name + "' has no parameter '" + key + "'");
    p[key] = value;
  }
  using detail::int_param;
  using detail::real_param;
  if (name == "cavity") {
    return atom_cavity_fixture(real_param(p, "kappa"), real_param(p, "g"), real_param(p, "detuning"), real_param(p, "drive"),
                               int_param(p, "cutoff"));
  }
  if (name == "duan-kimble") {
    return duan_kimble_fixture(real_param(p, "gamma"), real_param(p, "g"), p.at("alpha"), int_param(p, "cutoff"));
  }
  if (name == "mirror") {
    return mirror_fixture(real_param(p, "gamma"), real_param(p, "theta"), real_param(p, "omega"),
                          int_param(p, "mirror_cutoff"), int_param(p, "cavity_cutoff"));
  }
  return truncation_demo_fixture(real_param(p, "omega"), real_param(p, "kappa"), real_param(p, "drive"),
                                 int_param(p, "cutoff"));
}

}  // namespace qsde
