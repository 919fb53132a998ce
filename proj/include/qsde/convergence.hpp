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
 * @file convergence.hpp
 * Numerical witnesses for the convergence of the prelimit equations.
 *
 * Two complementary measurements are provided:
 *
 *  - generator residuals: |ℒ^(k;αβ) u_k - ℒ^(αβ) u| with the corrected
 *    vector u_k = u + u1/k + u2/k², which cancels the k² and k¹ terms of the
 *    prelimit generator on the slow subspace;
 *  - semigroup gaps: sup over [0, T] of |T_t^(k)† - T_t†| restricted to the
 *    slow subspace, located on a time grid and refined around its peaks.
 *
 * A third study truncates a fixed coefficient set to the first few basis
 * vectors and compares the resulting semigroups across cutoffs.
 *
 * All studies run sequentially in a fixed order, so reports are
 * bit-reproducible for a given fixture, schedule and grid.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsde/elimination.hpp"
#include "qsde/operator.hpp"
#include "qsde/qsde_model.hpp"
#include "qsde/semigroup.hpp"

#include <boost/math/tools/minima.hpp>

namespace qsde {

/// Values at or below this are treated as exact zeros by the study verdicts.
inline constexpr double kNegligible = 1e-12;
/// rate_fit drops points at or below this floor.
inline constexpr double kRateFloor = 1e-14;

/// Field-dressed parts A^(αβ), B^(αβ) with ℒ^(k;αβ) = k²Y + k A^(αβ) + B^(αβ).
struct DressedParts {
  Operator coupling;  // A^(αβ)
  Operator slow;      // B^(αβ)
};

/**
 * A^(αβ) = Σ F_i β_i - Σ α_i* W_ij F_j† + A
 * B^(αβ) = Σ α_i* W_ij β_j + Σ G_i β_i - Σ α_i* W_ij G_j† + B - (|α|²+|β|²)/2
 */
inline DressedParts field_dressed_parts(const ScaledFamily& fam, const FieldAmplitudes& amp) {
  fam.check_shape();
  const auto n = static_cast<std::size_t>(fam.channels);
  if (amp.alpha.size() != n || amp.beta.size() != n) throw DimensionMismatch("amplitudes do not match the channel count");
  Matrix a = fam.coupling_drift.matrix();
  Matrix b = fam.slow_drift.matrix();
  for (std::size_t i = 0; i < n; ++i) {
    a += amp.beta[i] * fam.fast_field[i].matrix();
    b += amp.beta[i] * fam.slow_field[i].matrix();
    const Complex ai = std::conj(amp.alpha[i]);
    for (std::size_t j = 0; j < n; ++j) {
      const Matrix& w = fam.scattering[i][j].matrix();
      a -= ai * (w * fam.fast_field[j].matrix().adjoint());
      b += (ai * amp.beta[j]) * w;
      b -= ai * (w * fam.slow_field[j].matrix().adjoint());
    }
  }
  b.diagonal().array() -= 0.5 * (squared_norm(amp.alpha) + squared_norm(amp.beta));
  return {Operator(fam.space, std::move(a)), Operator(fam.space, std::move(b))};
}

/// u_k = u + u1/k + u2/k² with u in H0 and u1, u2 in its complement.
struct KurtzCorrector {
  Vector slow;    // u
  Vector first;   // u1 = -Ỹ A^(αβ) u
  Vector second;  // u2 = -Ỹ P1 (B^(αβ) - A^(αβ) Ỹ A^(αβ)) u

  Vector at(double k) const { return slow + first / k + second / (k * k); }
};

namespace detail {

inline void require_structure(const ScaledFamily& fam, const SubspacePair& sub, double tol, double cond_limit) {
  ValidationReport report = structural_validate(fam, sub, tol, cond_limit);
  if (!report.passed()) throw PreconditionFailed("structural requirements fail for the corrector", std::move(report));
}

// The linear maps u ↦ u1 and u ↦ u2 on the full space.
struct CorrectorMaps {
  Matrix first;
  Matrix second;
};

inline CorrectorMaps corrector_maps(const Matrix& yt, const Matrix& p1, const DressedParts& dressed) {
  const Matrix& a = dressed.coupling.matrix();
  const Matrix& b = dressed.slow.matrix();
  return {-yt * a, -yt * p1 * (b - a * yt * a)};
}

}  // namespace detail

inline KurtzCorrector kurtz_corrector(const ScaledFamily& fam, const SubspacePair& sub, const FieldAmplitudes& amp,
                                      const Vector& u, double tol = kDefaultTolerance,
                                      double cond_limit = kDefaultConditionLimit) {
  if (u.size() != fam.space.total_dim()) throw DimensionMismatch("corrector seed vector has the wrong length");
  if ((sub.p0().matrix() * u - u).norm() > tol * std::max(1.0, u.norm())) {
    throw InvalidArgument("corrector seed vector is not in the slow subspace");
  }
  detail::require_structure(fam, sub, tol, cond_limit);
  const Matrix yt = restricted_inverse(fam.fast_drift, sub, cond_limit, tol).matrix();
  const auto maps = detail::corrector_maps(yt, sub.p1().matrix(), field_dressed_parts(fam, amp));
  return {u, maps.first * u, maps.second * u};
}

struct CancellationDefects {
  double quadratic;  // |Y u|
  double linear;     // |Y u1 + A^(αβ) u|
};

inline CancellationDefects cancellation_defects(const ScaledFamily& fam, const FieldAmplitudes& amp,
                                                const KurtzCorrector& corr) {
  const Matrix& y = fam.fast_drift.matrix();
  const DressedParts dressed = field_dressed_parts(fam, amp);
  return {(y * corr.slow).norm(), (y * corr.first + dressed.coupling.matrix() * corr.slow).norm()};
}

enum class Correction { kurtz, none };

/// |ℒ^(k;αβ) u_k - V ℒ^(αβ) V† u| for a single slow vector u (u_k = u when correction is none).
inline double generator_residual(const ScaledFamily& fam, const SubspacePair& sub, const QsdeCoefficients& limit,
                                 const FieldAmplitudes& amp, const Vector& u, double k,
                                 Correction correction = Correction::kurtz, double tol = kDefaultTolerance,
                                 double cond_limit = kDefaultConditionLimit) {
  if (limit.space.total_dim() != sub.rank()) throw DimensionMismatch("limit coefficients do not live on the slow subspace");
  const KurtzCorrector corr = kurtz_corrector(fam, sub, amp, u, tol, cond_limit);
  const Vector uk = correction == Correction::kurtz ? corr.at(k) : u;
  const Matrix& v = sub.slow_basis();
  const Vector lhs = generator(assemble(fam, k), amp).matrix() * uk;
  const Vector rhs = v * (generator(limit, amp).matrix() * (v.adjoint() * u));
  return (lhs - rhs).norm();
}

/**
 * Residuals as operators on H0: for each k the spectral norm of
 *   ℒ^(k;αβ) (I + C1/k + C2/k²) V - V ℒ^(αβ),
 * i.e. the supremum of generator_residual over unit vectors u in H0.
 */
inline std::vector<double> generator_residual_norms(const ScaledFamily& fam, const SubspacePair& sub,
                                                    const QsdeCoefficients& limit, const FieldAmplitudes& amp,
                                                    const std::vector<double>& ks, Correction correction = Correction::kurtz,
                                                    double tol = kDefaultTolerance,
                                                    double cond_limit = kDefaultConditionLimit) {
  if (limit.space.total_dim() != sub.rank()) throw DimensionMismatch("limit coefficients do not live on the slow subspace");
  detail::require_structure(fam, sub, tol, cond_limit);
  const Matrix yt = restricted_inverse(fam.fast_drift, sub, cond_limit, tol).matrix();
  const auto maps = detail::corrector_maps(yt, sub.p1().matrix(), field_dressed_parts(fam, amp));
  const Matrix& v = sub.slow_basis();
  const Matrix target = v * generator(limit, amp).matrix();
  const Matrix c1 = maps.first * v;
  const Matrix c2 = maps.second * v;

  std::vector<double> out;
  out.reserve(ks.size());
  for (double k : ks) {
    const Matrix vk = correction == Correction::kurtz ? Matrix(v + c1 / k + c2 / (k * k)) : v;
    out.push_back(spectral_norm(Matrix(generator(assemble(fam, k), amp).matrix() * vk - target)));
  }
  return out;
}

/// |P0 (B^(αβ) - A^(αβ) Ỹ A^(αβ)) V - V ℒ^(αβ)|: the k → ∞ limit of the corrected residual.
inline double limit_generator_defect(const ScaledFamily& fam, const SubspacePair& sub, const QsdeCoefficients& limit,
                                     const FieldAmplitudes& amp, double tol = kDefaultTolerance,
                                     double cond_limit = kDefaultConditionLimit) {
  const Matrix yt = restricted_inverse(fam.fast_drift, sub, cond_limit, tol).matrix();
  const DressedParts dressed = field_dressed_parts(fam, amp);
  const Matrix& a = dressed.coupling.matrix();
  const Matrix& v = sub.slow_basis();
  const Matrix lhs = sub.p0().matrix() * (dressed.slow.matrix() - a * yt * a) * v;
  return spectral_norm(Matrix(lhs - v * generator(limit, amp).matrix()));
}

/// Uniform grid t_i = T·i/(points-1), i = 0..points-1.
inline std::vector<double> time_grid(double t_max, int points) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw InvalidArgument("time horizon must be positive");
  if (points < 2) throw InvalidArgument("time grid needs at least 2 points");
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = t_max * i / (points - 1);
  return out;
}

/// Halvings of the first grid interval sampled by semigroup_gap (fast transients live there).
inline constexpr int kGapTransientLevels = 24;

/**
 * sup over [0, T] of |T_t^(k)† V - V T_t†|, the adjoint prelimit and limit
 * semigroups compared on the slow subspace. Bounded by 2.
 *
 * The uniform grid is augmented with t_1·2^-j (j = 1..24) because the
 * prelimit transient has width ~1/k² and sits inside the first interval.
 * Every sampled local maximum is then refined by Brent's method on its two
 * neighbouring intervals, so the result does not depend on the grid as long
 * as the grid separates the peaks.
 */
inline double semigroup_gap(const ScaledFamily& fam, const SubspacePair& sub, const QsdeCoefficients& limit,
                            const FieldAmplitudes& amp, double t_max, int grid_points, double k) {
  if (limit.space.total_dim() != sub.rank()) throw DimensionMismatch("limit coefficients do not live on the slow subspace");
  const Matrix prelimit = generator(assemble(fam, k), amp).matrix();
  const Matrix lim = generator(limit, amp).matrix();
  const Matrix& v = sub.slow_basis();
  auto gap_at = [&](double t) {
    if (t <= 0.0) return 0.0;  // both propagators are the identity
    return spectral_norm(Matrix(matrix_exponential(prelimit, t).adjoint() * v - v * matrix_exponential(lim, t).adjoint()));
  };

  const auto grid = time_grid(t_max, grid_points);
  std::vector<double> ts{0.0};
  for (int j = kGapTransientLevels; j >= 1; --j) ts.push_back(std::ldexp(grid[1], -j));
  ts.insert(ts.end(), grid.begin() + 1, grid.end());
  std::vector<double> vals;
  vals.reserve(ts.size());
  for (double t : ts) vals.push_back(gap_at(t));

  double gap = 0.0;
  for (double x : vals) gap = std::max(gap, x);
  const std::size_t last = ts.size() - 1;
  for (std::size_t i = 1; i <= last; ++i) {
    const bool peak = vals[i] >= vals[i - 1] && (i == last || vals[i] >= vals[i + 1]);
    if (!peak || vals[i] == 0.0) continue;
    std::uintmax_t iters = 100;
    const auto best = boost::math::tools::brent_find_minima([&](double t) { return -gap_at(t); }, ts[i - 1],
                                                             ts[std::min(i + 1, last)], 40, iters);
    gap = std::max(gap, -best.second);
  }
  return gap;
}

struct RateFit {
  double slope;
  double intercept;
  std::vector<std::size_t> excluded;  // indices dropped at the numerical floor
};

/// Least-squares slope of log(value) against log(k); values at or below `floor` are dropped.
inline RateFit rate_fit(const std::vector<double>& ks, const std::vector<double>& values, double floor = kRateFloor) {
  if (ks.size() != values.size()) throw InvalidArgument("rate_fit: schedule and values differ in length");
  std::vector<double> x, y;
  std::vector<std::size_t> excluded;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (!(ks[i] > 0.0)) throw InvalidArgument("rate_fit: schedule entries must be positive");
    if (!(values[i] >= 0.0)) throw InvalidArgument("rate_fit: values must be nonnegative");
    if (values[i] <= floor) {
      excluded.push_back(i);
      continue;
    }
    x.push_back(std::log(ks[i]));
    y.push_back(std::log(values[i]));
  }
  if (x.size() < 3) throw InvalidArgument("rate_fit: fewer than 3 points above the numerical floor");
  const double m = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (!(sxx > 0.0)) throw InvalidArgument("rate_fit: schedule has no spread");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx, std::move(excluded)};
}

enum class StudyKind { generator, semigroup, truncation };

inline const char* to_string(StudyKind kind) {
  switch (kind) {
    case StudyKind::generator: return "generator";
    case StudyKind::semigroup: return "semigroup";
    case StudyKind::truncation: return "truncation";
  }
  return "unknown";
}

enum class CutoffStatus { not_checked, ok, suspect };

struct ConvergenceReport {
  std::string fixture;
  StudyKind kind;
  std::vector<double> schedule;  // k values (truncation: lower cutoff of each compared pair)
  std::vector<double> values;    // residuals or gaps, one per schedule entry
  std::optional<double> fitted_rate;
  std::vector<std::size_t> excluded;
  double t_max = 0.0;  // 0 for generator studies
  int grid_points = 0;
  FieldAmplitudes amplitudes;
  bool verdict = false;
  CutoffStatus cutoff = CutoffStatus::not_checked;
};

namespace detail {

inline bool all_negligible(const std::vector<double>& v) {
  for (double x : v) {
    if (x > kNegligible) return false;
  }
  return true;
}

inline void fit_if_possible(ConvergenceReport& r) {
  try {
    RateFit fit = rate_fit(r.schedule, r.values);
    r.fitted_rate = fit.slope;
    r.excluded = std::move(fit.excluded);
  } catch (const InvalidArgument&) {
    r.fitted_rate.reset();
    r.excluded.clear();
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      if (r.values[i] <= kRateFloor) r.excluded.push_back(i);
    }
  }
}

inline void check_schedule(const std::vector<double>& ks) {
  if (ks.empty()) throw InvalidArgument("empty k schedule");
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (!(ks[i] > 0.0)) throw InvalidArgument("k schedule entries must be positive");
    if (i > 0 && !(ks[i] > ks[i - 1])) throw InvalidArgument("k schedule must be strictly increasing");
  }
}

}  // namespace detail

/// Decay exponent accepted by the generator-study verdict: fitted slope <= -1 + 0.15.
inline constexpr double kGeneratorRateBound = -0.85;
/// Semigroup-study verdict: last gap <= first gap / kGapDecayFactor.
inline constexpr double kGapDecayFactor = 5.0;

/**
 * Corrected generator residuals over a k schedule.
 * Verdict: all residuals negligible, or a fitted log-log slope <= -0.85.
 */
inline ConvergenceReport generator_study(const std::string& name, const ScaledFamily& fam, const SubspacePair& sub,
                                         const FieldAmplitudes& amp, const std::vector<double>& ks,
                                         double tol = kDefaultTolerance, double cond_limit = kDefaultConditionLimit) {
  detail::check_schedule(ks);
  const EliminationResult elim = eliminate(fam, sub, tol, cond_limit);
  ConvergenceReport r;
  r.fixture = name;
  r.kind = StudyKind::generator;
  r.schedule = ks;
  r.values = generator_residual_norms(fam, sub, elim.limit, amp, ks, Correction::kurtz, tol, cond_limit);
  r.amplitudes = amp;
  detail::fit_if_possible(r);
  r.verdict = detail::all_negligible(r.values) || (r.fitted_rate && *r.fitted_rate <= kGeneratorRateBound);
  return r;
}

/**
 * Semigroup gaps over a k schedule.
 * Verdict: all gaps negligible, or last gap <= first gap / 5.
 */
inline ConvergenceReport semigroup_study(const std::string& name, const ScaledFamily& fam, const SubspacePair& sub,
                                         const FieldAmplitudes& amp, const std::vector<double>& ks, double t_max,
                                         int grid_points, double tol = kDefaultTolerance,
                                         double cond_limit = kDefaultConditionLimit) {
  detail::check_schedule(ks);
  const EliminationResult elim = eliminate(fam, sub, tol, cond_limit);
  ConvergenceReport r;
  r.fixture = name;
  r.kind = StudyKind::semigroup;
  r.schedule = ks;
  for (double k : ks) r.values.push_back(semigroup_gap(fam, sub, elim.limit, amp, t_max, grid_points, k));
  r.t_max = t_max;
  r.grid_points = grid_points;
  r.amplitudes = amp;
  detail::fit_if_possible(r);
  r.verdict = detail::all_negligible(r.values) || r.values.back() <= r.values.front() / kGapDecayFactor;
  return r;
}

/// Compression P X P onto the first `dim` basis vectors, as a `dim`-dimensional operator.
inline Operator leading_block(const Operator& x, int dim) {
  return {HilbertSpace::single(dim), x.matrix().topLeftCorner(dim, dim)};
}

/**
 * Coefficients truncated to the first cutoff+1 basis vectors:
 * K_c = P K P, L_c = P L P, M_c = -L_c†, N = I.
 */
inline QsdeCoefficients truncate_coefficients(const QsdeCoefficients& c, int cutoff) {
  const int dim = cutoff + 1;
  if (cutoff < 0 || dim > c.space.total_dim()) throw InvalidArgument("truncation cutoff exceeds the reference space");
  const auto n = static_cast<std::size_t>(c.channels);
  const HilbertSpace sp = HilbertSpace::single(dim);
  std::vector<Operator> ann, cre;
  OperatorGrid scat(n);
  for (std::size_t i = 0; i < n; ++i) {
    ann.push_back(leading_block(c.annihilation[i], dim));
    cre.push_back(-adjoint(ann.back()));
    for (std::size_t j = 0; j < n; ++j) scat[i].push_back(i == j ? Operator::identity(sp) : Operator::zero(sp));
  }
  return {c.channels, sp, leading_block(c.drift, dim), std::move(ann), std::move(cre), std::move(scat)};
}

/**
 * Successive truncation gaps of a coefficient set with trivial scattering.
 *
 * For consecutive cutoffs c < c' the gap is the max over the time grid of
 * |(T_t^(c) - T_t^(c')) Q| where Q spans the first `probe_dim` basis
 * vectors. Verdict: each gap is strictly below its predecessor or
 * negligible.
 */
inline ConvergenceReport truncation_study(const std::string& name, const QsdeCoefficients& reference,
                                          const std::vector<int>& cutoffs, const FieldAmplitudes& amp, double t_max,
                                          int grid_points, int probe_dim = 1, double tol = kDefaultTolerance) {
  reference.check_shape();
  const auto n = static_cast<std::size_t>(reference.channels);
  const int d = reference.space.total_dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Matrix expected = i == j ? Matrix(Matrix::Identity(d, d)) : Matrix(Matrix::Zero(d, d));
      if (spectral_norm(Matrix(reference.scattering[i][j].matrix() - expected)) > tol) {
        throw InvalidArgument("truncation study requires trivial scattering N_ij = δ_ij");
      }
    }
  }
  if (cutoffs.size() < 2) throw InvalidArgument("truncation study needs at least two cutoffs");
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (i > 0 && cutoffs[i] <= cutoffs[i - 1]) throw InvalidArgument("cutoffs must be strictly increasing");
    if (cutoffs[i] + 1 > d) throw InvalidArgument("cutoff " + std::to_string(cutoffs[i]) + " exceeds the reference space");
  }
  if (probe_dim < 1 || probe_dim > cutoffs.front() + 1) throw InvalidArgument("probe dimension must fit inside the smallest cutoff");

  const auto times = time_grid(t_max, grid_points);
  // Probe columns of T_t^(c), zero-padded to the largest cutoff.
  const int top = cutoffs.back() + 1;
  auto probe_columns = [&](int cutoff) {
    const Matrix gen = generator(truncate_coefficients(reference, cutoff), amp).matrix();
    std::vector<Matrix> out;
    out.reserve(times.size());
    for (double t : times) {
      Matrix cols = Matrix::Zero(top, probe_dim);
      cols.topRows(cutoff + 1) = matrix_exponential(gen, t).leftCols(probe_dim);
      out.push_back(std::move(cols));
    }
    return out;
  };

  ConvergenceReport r;
  r.fixture = name;
  r.kind = StudyKind::truncation;
  r.t_max = t_max;
  r.grid_points = grid_points;
  r.amplitudes = amp;
  auto prev = probe_columns(cutoffs.front());
  for (std::size_t c = 1; c < cutoffs.size(); ++c) {
    auto cur = probe_columns(cutoffs[c]);
    double gap = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) gap = std::max(gap, spectral_norm(Matrix(prev[i] - cur[i])));
    r.schedule.push_back(cutoffs[c - 1]);
    r.values.push_back(gap);
    prev = std::move(cur);
  }
  detail::fit_if_possible(r);
  r.verdict = true;
  for (std::size_t i = 1; i < r.values.size(); ++i) {
    if (!(r.values[i] < r.values[i - 1] || r.values[i] <= kNegligible)) r.verdict = false;
  }
  return r;
}

/**
 * Compares a study against a rerun at a larger Fock cutoff. Any value that
 * moves by more than `rel` (relative to the base value, values below
 * kNegligible on both sides count as equal) marks the report suspect.
 */
inline CutoffStatus compare_cutoff_rerun(const ConvergenceReport& base, const ConvergenceReport& rerun, double rel = 0.10) {
  if (base.values.size() != rerun.values.size()) throw InvalidArgument("cutoff rerun has a different schedule");
  for (std::size_t i = 0; i < base.values.size(); ++i) {
    const double a = base.values[i];
    const double b = rerun.values[i];
    if (a <= kNegligible && b <= kNegligible) continue;
    if (std::abs(a - b) > rel * a) return CutoffStatus::suspect;
  }
  return CutoffStatus::ok;
}

}  // namespace qsde
