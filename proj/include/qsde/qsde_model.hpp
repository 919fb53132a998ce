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
 * @file qsde_model.hpp
 * Hudson-Parthasarathy coefficient families and their validators.
 *
 * A right HP equation
 *
 *   dU_t = U_t { Σ (N_ij - δ_ij) dΛ^ij + Σ M_i dA^i† + Σ L_i dA^i + K dt }
 *
 * is represented by QsdeCoefficients. A singularly scaled family
 * K(k) = k²Y + kA + B, L_i(k) = kF_i + G_i, N_ij(k) = W_ij is a ScaledFamily;
 * the creation coefficients M_i(k) are never stored there and are always
 * derived from M_i = -Σ_j N_ij L_j†.
 */
#pragma once

#include <string>
#include <vector>

#include "qsde/operator.hpp"

namespace qsde {

/// Coefficients (K, L_i, M_i, N_ij) of a right Hudson-Parthasarathy equation.
struct QsdeCoefficients {
  int channels;
  HilbertSpace space;
  Operator drift;                   // K, coefficient of dt
  std::vector<Operator> annihilation;  // L_i, coefficient of dA^i
  std::vector<Operator> creation;      // M_i, coefficient of dA^i†
  OperatorGrid scattering;             // N_ij, gauge coefficients

  /// Throws unless every operator lives on `space` and the channel lists have the right shape.
  void check_shape() const {
    if (channels < 1) throw InvalidArgument("coefficient family needs at least one channel");
    const auto n = static_cast<std::size_t>(channels);
    if (annihilation.size() != n || creation.size() != n || scattering.size() != n) {
      throw DimensionMismatch("coefficient lists do not match the channel count");
    }
    auto same = [&](const Operator& x) {
      if (!(x.space() == space)) throw DimensionMismatch("coefficient operator lives on the wrong space");
    };
    same(drift);
    for (std::size_t i = 0; i < n; ++i) {
      same(annihilation[i]);
      same(creation[i]);
      if (scattering[i].size() != n) throw DimensionMismatch("scattering grid is not n x n");
      for (const auto& x : scattering[i]) same(x);
    }
  }
};

/// K(k) = k²·fast_drift + k·coupling_drift + slow_drift, L_i(k) = k·fast_field_i + slow_field_i, N_ij = scattering_ij.
struct ScaledFamily {
  int channels;
  HilbertSpace space;
  Operator fast_drift;      // Y
  Operator coupling_drift;  // A
  Operator slow_drift;      // B
  std::vector<Operator> fast_field;  // F_i
  std::vector<Operator> slow_field;  // G_i
  OperatorGrid scattering;           // W_ij

  void check_shape() const {
    if (channels < 1) throw InvalidArgument("scaled family needs at least one channel");
    const auto n = static_cast<std::size_t>(channels);
    if (fast_field.size() != n || slow_field.size() != n || scattering.size() != n) {
      throw DimensionMismatch("field lists do not match the channel count");
    }
    auto same = [&](const Operator& x) {
      if (!(x.space() == space)) throw DimensionMismatch("family operator lives on the wrong space");
    };
    same(fast_drift);
    same(coupling_drift);
    same(slow_drift);
    for (std::size_t i = 0; i < n; ++i) {
      same(fast_field[i]);
      same(slow_field[i]);
      if (scattering[i].size() != n) throw DimensionMismatch("scattering grid is not n x n");
      for (const auto& x : scattering[i]) same(x);
    }
  }
};

struct ValidationCheck {
  std::string name;
  double max_violation;  // spectral norm of the defect; +inf when the check could not be evaluated
  double tolerance;      // effective threshold, already scaled
  bool passed;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }

  std::vector<std::string> failing() const {
    std::vector<std::string> out;
    for (const auto& c : checks) {
      if (!c.passed) out.push_back(c.name);
    }
    return out;
  }

  const ValidationCheck* find(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }

  void add(std::string name, double violation, double tolerance, std::string detail = {}) {
    checks.push_back({std::move(name), violation, tolerance, violation <= tolerance, std::move(detail)});
  }

  void append(const ValidationReport& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }
};

/// Thrown when an operation's validated preconditions do not hold; carries the report.
class PreconditionFailed : public Error {
 public:
  PreconditionFailed(const std::string& what, ValidationReport report) : Error(what), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Coefficients at scaling parameter k, with M_i derived from the HP relation.
inline QsdeCoefficients assemble(const ScaledFamily& fam, double k) {
  fam.check_shape();
  if (!(k > 0.0) || !std::isfinite(k)) throw InvalidArgument("assemble: k must be a positive finite number");
  const auto n = static_cast<std::size_t>(fam.channels);
  const Matrix drift = (k * k) * fam.fast_drift.matrix() + k * fam.coupling_drift.matrix() + fam.slow_drift.matrix();

  std::vector<Operator> ann;
  ann.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ann.emplace_back(fam.space, k * fam.fast_field[i].matrix() + fam.slow_field[i].matrix());
  }
  std::vector<Operator> cre;
  cre.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix m = Matrix::Zero(fam.space.total_dim(), fam.space.total_dim());
    for (std::size_t j = 0; j < n; ++j) m -= fam.scattering[i][j].matrix() * ann[j].matrix().adjoint();
    cre.emplace_back(fam.space, std::move(m));
  }
  return {fam.channels, fam.space, Operator(fam.space, drift), std::move(ann), std::move(cre), fam.scattering};
}

namespace detail {

inline Matrix unit_if(bool diag, int d) { return diag ? Matrix(Matrix::Identity(d, d)) : Matrix(Matrix::Zero(d, d)); }

// Co-isometry Σ_j X_mj X_lj† = δ_ml and isometry Σ_j X_jm† X_jl = δ_ml of an operator grid.
inline void check_unitary_grid(ValidationReport& report, const OperatorGrid& grid, int d, double tol,
                               const std::string& prefix) {
  const std::size_t n = grid.size();
  double co_v = 0.0, co_scale = 1.0, iso_v = 0.0, iso_scale = 1.0;
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t l = 0; l < n; ++l) {
      Matrix co = -unit_if(m == l, d);
      Matrix iso = -unit_if(m == l, d);
      double cs = 0.0, is = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        co += grid[m][j].matrix() * grid[l][j].matrix().adjoint();
        iso += grid[j][m].matrix().adjoint() * grid[j][l].matrix();
        cs += spectral_norm(grid[m][j]) * spectral_norm(grid[l][j]);
        is += spectral_norm(grid[j][m]) * spectral_norm(grid[j][l]);
      }
      co_v = std::max(co_v, spectral_norm(co));
      iso_v = std::max(iso_v, spectral_norm(iso));
      co_scale = std::max(co_scale, cs);
      iso_scale = std::max(iso_scale, is);
    }
  }
  report.add(prefix + "_coisometry", co_v, tol * co_scale);
  report.add(prefix + "_isometry", iso_v, tol * iso_scale);
}

}  // namespace detail

/**
 * Checks the Hudson-Parthasarathy relations
 *   K + K† = -Σ L_i L_i†,   M_i = -Σ_j N_ij L_j†,   Σ_j N_mj N_lj† = Σ_j N_jm† N_jl = δ_ml.
 * Each violation is the spectral norm of the defect; the threshold is
 * tol · max(1, norms of the terms in that relation).
 */
inline ValidationReport hp_validate(const QsdeCoefficients& c, double tol = kDefaultTolerance) {
  c.check_shape();
  ValidationReport report;
  const int d = c.space.total_dim();
  const auto n = static_cast<std::size_t>(c.channels);

  Matrix k_defect = c.drift.matrix() + c.drift.matrix().adjoint();
  double k_scale = spectral_norm(c.drift);
  double l_sq = 0.0;
  for (const auto& l : c.annihilation) {
    k_defect += l.matrix() * l.matrix().adjoint();
    const double ln = spectral_norm(l);
    l_sq += ln * ln;
  }
  report.add("hp.drift", spectral_norm(k_defect), tol * std::max({1.0, k_scale, l_sq}));

  double m_v = 0.0, m_scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    Matrix defect = c.creation[i].matrix();
    double s = spectral_norm(c.creation[i]);
    double cross = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      defect += c.scattering[i][j].matrix() * c.annihilation[j].matrix().adjoint();
      cross += spectral_norm(c.scattering[i][j]) * spectral_norm(c.annihilation[j]);
    }
    m_v = std::max(m_v, spectral_norm(defect));
    m_scale = std::max({m_scale, s, cross});
  }
  report.add("hp.creation", m_v, tol * m_scale);
  detail::check_unitary_grid(report, c.scattering, d, tol, "hp.scattering");
  return report;
}

/**
 * Order-by-order HP relations for a scaled family:
 *   Y + Y† = -Σ F F†,  A + A† = -Σ (F G† + G F†),  B + B† = -Σ G G†,  W unitary.
 * Passing these is equivalent to assemble(fam, k) passing hp_validate for every k.
 */
inline ValidationReport scaled_hp_validate(const ScaledFamily& fam, double tol = kDefaultTolerance) {
  fam.check_shape();
  ValidationReport report;
  const Matrix& y = fam.fast_drift.matrix();
  const Matrix& a = fam.coupling_drift.matrix();
  const Matrix& b = fam.slow_drift.matrix();

  Matrix dy = y + y.adjoint();
  Matrix da = a + a.adjoint();
  Matrix db = b + b.adjoint();
  double sy = 0.0, sa = 0.0, sb = 0.0;
  for (int i = 0; i < fam.channels; ++i) {
    const Matrix& f = fam.fast_field[static_cast<std::size_t>(i)].matrix();
    const Matrix& g = fam.slow_field[static_cast<std::size_t>(i)].matrix();
    dy += f * f.adjoint();
    da += f * g.adjoint() + g * f.adjoint();
    db += g * g.adjoint();
    const double fn = spectral_norm(f);
    const double gn = spectral_norm(g);
    sy += fn * fn;
    sa += 2.0 * fn * gn;
    sb += gn * gn;
  }
  report.add("scaled.fast", spectral_norm(dy), tol * std::max({1.0, spectral_norm(y), sy}));
  report.add("scaled.coupling", spectral_norm(da), tol * std::max({1.0, spectral_norm(a), sa}));
  report.add("scaled.slow", spectral_norm(db), tol * std::max({1.0, spectral_norm(b), sb}));
  detail::check_unitary_grid(report, fam.scattering, fam.space.total_dim(), tol, "scaled.scattering");
  return report;
}

/**
 * Structural requirements on the slow subspace plus the side conditions
 * that make the eliminated coefficients satisfy the HP relations.
 *
 *   structural.b   Y P0 = 0
 *   structural.c   Ỹ exists with ỸY = YỸ = P1 (condition number <= cond_limit)
 *   structural.d   F_j† P0 = 0
 *   structural.e   P0 A P0 = 0
 *   limit.field_offdiag      P0 (G_i - A Ỹ F_i) P1 = 0
 *   limit.scattering_slow_fast  Σ_l P0 W_il (F_l† Ỹ F_j + δ_lj) P1 = 0
 *   limit.scattering_fast_slow  Σ_l P1 W_il (F_l† Ỹ F_j + δ_lj) P0 = 0
 *
 * The limit.* checks need Ỹ and are omitted when structural.c fails.
 */
inline ValidationReport structural_validate(const ScaledFamily& fam, const SubspacePair& sub, double tol = kDefaultTolerance,
                                            double cond_limit = kDefaultConditionLimit) {
  fam.check_shape();
  if (!(fam.space == sub.space())) throw DimensionMismatch("structural_validate: family and subspace spaces differ");
  ValidationReport report;
  const int d = fam.space.total_dim();
  const auto n = static_cast<std::size_t>(fam.channels);
  const Matrix& p0 = sub.p0().matrix();
  const Matrix& p1 = sub.p1().matrix();
  const Matrix& y = fam.fast_drift.matrix();
  const Matrix& a = fam.coupling_drift.matrix();
  const double yn = spectral_norm(y);
  const double an = spectral_norm(a);

  report.add("structural.b", spectral_norm(Matrix(y * p0)), scaled_tolerance(tol, {yn}));

  Matrix yt;
  try {
    yt = restricted_inverse(fam.fast_drift, sub, cond_limit, tol).matrix();
    const double ytn = spectral_norm(yt);
    const double v = std::max(spectral_norm(Matrix(yt * y - p1)), spectral_norm(Matrix(y * yt - p1)));
    report.add("structural.c", v, scaled_tolerance(tol, {yn * ytn}));
  } catch (const Error& e) {
    report.add("structural.c", std::numeric_limits<double>::infinity(), scaled_tolerance(tol, {yn}), e.what());
    yt.resize(0, 0);
  }

  double dv = 0.0, ds = 1.0;
  for (const auto& f : fam.fast_field) {
    dv = std::max(dv, spectral_norm(Matrix(f.matrix().adjoint() * p0)));
    ds = std::max(ds, spectral_norm(f));
  }
  report.add("structural.d", dv, tol * ds);
  report.add("structural.e", spectral_norm(Matrix(p0 * a * p0)), scaled_tolerance(tol, {an}));

  if (yt.size() == 0) return report;
  const double ytn = spectral_norm(yt);

  double lv = 0.0, ls = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Matrix& f = fam.fast_field[i].matrix();
    const Matrix& g = fam.slow_field[i].matrix();
    lv = std::max(lv, spectral_norm(Matrix(p0 * (g - a * yt * f) * p1)));
    ls = std::max({ls, spectral_norm(g), an * ytn * spectral_norm(f)});
  }
  report.add("limit.field_offdiag", lv, tol * ls);

  double sf = 0.0, fs = 0.0, ss = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Matrix acc = Matrix::Zero(d, d);
      double s = 0.0;
      for (std::size_t l = 0; l < n; ++l) {
        const Matrix& fl = fam.fast_field[l].matrix();
        const Matrix& fj = fam.fast_field[j].matrix();
        acc += fam.scattering[i][l].matrix() * (fl.adjoint() * yt * fj + detail::unit_if(l == j, d));
        s += spectral_norm(fam.scattering[i][l]) * (spectral_norm(fl) * ytn * spectral_norm(fj) + 1.0);
      }
      sf = std::max(sf, spectral_norm(Matrix(p0 * acc * p1)));
      fs = std::max(fs, spectral_norm(Matrix(p1 * acc * p0)));
      ss = std::max(ss, s);
    }
  }
  report.add("limit.scattering_slow_fast", sf, tol * ss);
  report.add("limit.scattering_fast_slow", fs, tol * ss);
  return report;
}

}  // namespace qsde
