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
 * @file operator.hpp
 * Dense complex operators on truncated tensor-product Hilbert spaces.
 *
 * Everything here is dense. The intended dimension budget is a few hundred
 * at most (a three-level atom times a 40-photon cavity is 123); beyond that
 * the O(d^3) exponentials and SVDs dominate every study.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "qsde/errors.hpp"

namespace qsde {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Default absolute tolerance for "equals zero" checks, scaled by operator norms.
inline constexpr double kDefaultTolerance = 1e-9;
/// Default condition-number gate for inverting the fast generator.
inline constexpr double kDefaultConditionLimit = 1e12;

/// Ordered list of tensor factor dimensions.
class HilbertSpace {
 public:
  explicit HilbertSpace(std::vector<int> factor_dims) : dims_(std::move(factor_dims)) {
    if (dims_.empty()) throw InvalidArgument("HilbertSpace needs at least one factor");
    for (int d : dims_) {
      if (d < 1) throw InvalidArgument("HilbertSpace factor dimension must be >= 1, got " + std::to_string(d));
    }
    total_ = std::accumulate(dims_.begin(), dims_.end(), 1, std::multiplies<>());
  }

  static HilbertSpace single(int dim) { return HilbertSpace({dim}); }

  const std::vector<int>& factor_dims() const { return dims_; }
  int total_dim() const { return total_; }
  int factor_count() const { return static_cast<int>(dims_.size()); }

  HilbertSpace factor(int index) const {
    if (index < 0 || index >= factor_count()) throw DimensionMismatch("factor index out of range");
    return single(dims_[static_cast<std::size_t>(index)]);
  }

  std::string describe() const {
    std::string s = "[";
    for (std::size_t i = 0; i < dims_.size(); ++i) s += (i ? "," : "") + std::to_string(dims_[i]);
    return s + "]";
  }

  friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

 private:
  std::vector<int> dims_;
  int total_ = 1;
};

inline bool all_finite(const Matrix& m) { return m.allFinite(); }

/// A square complex matrix tagged with the space it acts on.
class Operator {
 public:
  Operator(HilbertSpace space, Matrix entries) : space_(std::move(space)), m_(std::move(entries)) {
    const auto d = space_.total_dim();
    if (m_.rows() != d || m_.cols() != d) {
      throw DimensionMismatch("operator entries are " + std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()) +
                              " but space " + space_.describe() + " has dimension " + std::to_string(d));
    }
    if (!all_finite(m_)) throw InvalidArgument("operator has non-finite entries");
  }

  static Operator zero(const HilbertSpace& space) {
    return {space, Matrix::Zero(space.total_dim(), space.total_dim())};
  }
  static Operator identity(const HilbertSpace& space) {
    return {space, Matrix::Identity(space.total_dim(), space.total_dim())};
  }

  const HilbertSpace& space() const { return space_; }
  const Matrix& matrix() const { return m_; }
  int dim() const { return space_.total_dim(); }
  Complex operator()(int row, int col) const { return m_(row, col); }

  Operator& operator+=(const Operator& rhs) {
    require_same_space(rhs);
    m_ += rhs.m_;
    return *this;
  }
  Operator& operator-=(const Operator& rhs) {
    require_same_space(rhs);
    m_ -= rhs.m_;
    return *this;
  }
  Operator& operator*=(Complex c) {
    m_ *= c;
    return *this;
  }

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator-(Operator a) { return a *= -1.0; }
  friend Operator operator*(Complex c, Operator a) { return a *= c; }
  friend Operator operator*(Operator a, Complex c) { return a *= c; }
  friend Operator operator*(const Operator& a, const Operator& b) {
    a.require_same_space(b);
    return {a.space_, a.m_ * b.m_};
  }
  friend Vector operator*(const Operator& a, const Vector& v) {
    if (v.size() != a.dim()) throw DimensionMismatch("vector length does not match operator dimension");
    return a.m_ * v;
  }

 private:
  void require_same_space(const Operator& other) const {
    if (!(space_ == other.space_)) {
      throw DimensionMismatch("operators act on different spaces " + space_.describe() + " and " +
                              other.space_.describe());
    }
  }

  HilbertSpace space_;
  Matrix m_;
};

using OperatorGrid = std::vector<std::vector<Operator>>;

inline Operator adjoint(const Operator& x) { return {x.space(), x.matrix().adjoint()}; }

/// Largest singular value.
inline double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}
inline double spectral_norm(const Vector& v) { return v.norm(); }
inline double spectral_norm(const Operator& x) { return spectral_norm(x.matrix()); }

/// Kronecker product respecting factor order; the result lives on the concatenated space.
inline Operator kron(const Operator& a, const Operator& b) {
  std::vector<int> dims = a.space().factor_dims();
  dims.insert(dims.end(), b.space().factor_dims().begin(), b.space().factor_dims().end());
  return {HilbertSpace(std::move(dims)), Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval()};
}

/**
 * Ampliation I ⊗ ... ⊗ x ⊗ ... ⊗ I of a single-factor operator into `target`.
 * `factor_index` is zero-based.
 */
inline Operator tensor_embed(const Operator& x, int factor_index, const HilbertSpace& target) {
  if (factor_index < 0 || factor_index >= target.factor_count()) {
    throw DimensionMismatch("factor index " + std::to_string(factor_index) + " out of range for " + target.describe());
  }
  const int fdim = target.factor_dims()[static_cast<std::size_t>(factor_index)];
  if (x.dim() != fdim) {
    throw DimensionMismatch("operator dimension " + std::to_string(x.dim()) + " does not match factor " +
                            std::to_string(factor_index) + " of " + target.describe());
  }
  int left = 1;
  int right = 1;
  for (int i = 0; i < factor_index; ++i) left *= target.factor_dims()[static_cast<std::size_t>(i)];
  for (int i = factor_index + 1; i < target.factor_count(); ++i) right *= target.factor_dims()[static_cast<std::size_t>(i)];
  Matrix m = Eigen::kroneckerProduct(Matrix::Identity(left, left),
                                     Eigen::kroneckerProduct(x.matrix(), Matrix::Identity(right, right)).eval())
                 .eval();
  return {target, std::move(m)};
}

/**
 * exp(t·x) for t >= 0.
 *
 * Scaling and squaring with a degree-13 diagonal Padé approximant (Eigen's
 * MatrixFunctions module). t = 0 returns the identity exactly.
 */
inline Matrix matrix_exponential(const Matrix& x, double t) {
  if (!std::isfinite(t)) throw InvalidArgument("matrix_exponential: time is not finite");
  if (t < 0.0) throw InvalidArgument("matrix_exponential: negative time (semigroup, not group)");
  if (x.rows() != x.cols()) throw DimensionMismatch("matrix_exponential: matrix is not square");
  if (t == 0.0) return Matrix::Identity(x.rows(), x.cols());
  if (!all_finite(x)) throw InvalidArgument("matrix_exponential: non-finite entries");
  Matrix scaled = t * x;
  return scaled.exp();
}

inline Operator matrix_exponential(const Operator& x, double t) { return {x.space(), matrix_exponential(x.matrix(), t)}; }

/// tol * max(1, norms...): the scale convention for every "equals zero" check.
inline double scaled_tolerance(double tol, std::initializer_list<double> norms) {
  double scale = 1.0;
  for (double n : norms) scale = std::max(scale, n);
  return tol * scale;
}

/**
 * Orthogonal splitting H = H0 ⊕ H0^⊥ given by the projection onto the slow subspace.
 *
 * Besides the two projections this keeps orthonormal bases of both ranges.
 * When the projection is a coordinate projection (diagonal with 0/1 entries)
 * the bases are the corresponding standard basis vectors in increasing
 * index order; otherwise they are eigenvectors of the projection.
 */
class SubspacePair {
 public:
  SubspacePair(const Operator& slow_projection, double tol = kDefaultTolerance)
      : p0_(slow_projection), p1_(Operator::identity(slow_projection.space()) - slow_projection) {
    const Matrix& p = p0_.matrix();
    const double scale = scaled_tolerance(tol, {spectral_norm(p)});
    if (spectral_norm(Matrix(p - p.adjoint())) > scale) throw InvalidArgument("slow projection is not Hermitian");
    if (spectral_norm(Matrix(p * p - p)) > scale) throw InvalidArgument("slow projection is not idempotent");

    const int d = p0_.dim();
    const bool diagonal = spectral_norm(Matrix(p - Matrix(p.diagonal().asDiagonal()))) <= scale;
    if (diagonal) {
      std::vector<int> slow, fast;
      for (int i = 0; i < d; ++i) {
        const double v = p(i, i).real();
        if (std::abs(v - 1.0) <= scale) {
          slow.push_back(i);
        } else if (std::abs(v) <= scale) {
          fast.push_back(i);
        } else {
          throw InvalidArgument("slow projection has a diagonal entry that is neither 0 nor 1");
        }
      }
      slow_basis_ = coordinate_columns(d, slow);
      fast_basis_ = coordinate_columns(d, fast);
    } else {
      Eigen::SelfAdjointEigenSolver<Matrix> eig(Matrix(0.5 * (p + p.adjoint())));
      const auto& w = eig.eigenvalues();
      std::vector<int> slow, fast;
      for (int i = 0; i < d; ++i) (w(i) > 0.5 ? slow : fast).push_back(i);
      slow_basis_ = Matrix(d, static_cast<Eigen::Index>(slow.size()));
      fast_basis_ = Matrix(d, static_cast<Eigen::Index>(fast.size()));
      for (std::size_t j = 0; j < slow.size(); ++j) slow_basis_.col(static_cast<Eigen::Index>(j)) = eig.eigenvectors().col(slow[j]);
      for (std::size_t j = 0; j < fast.size(); ++j) fast_basis_.col(static_cast<Eigen::Index>(j)) = eig.eigenvectors().col(fast[j]);
    }
    if (slow_basis_.cols() < 1) throw InvalidArgument("slow projection has rank 0");
  }

  /// Coordinate projection onto the listed basis indices.
  static SubspacePair from_basis_indices(const HilbertSpace& space, const std::vector<int>& indices) {
    Matrix p = Matrix::Zero(space.total_dim(), space.total_dim());
    for (int i : indices) {
      if (i < 0 || i >= space.total_dim()) throw InvalidArgument("basis index " + std::to_string(i) + " out of range");
      p(i, i) = 1.0;
    }
    return SubspacePair(Operator(space, std::move(p)));
  }

  const Operator& p0() const { return p0_; }
  const Operator& p1() const { return p1_; }
  const HilbertSpace& space() const { return p0_.space(); }
  int rank() const { return static_cast<int>(slow_basis_.cols()); }

  /// Isometry from H0 coordinates into H (columns: orthonormal basis of range(p0)).
  const Matrix& slow_basis() const { return slow_basis_; }
  /// Isometry onto range(p1); may have zero columns.
  const Matrix& fast_basis() const { return fast_basis_; }

 private:
  static Matrix coordinate_columns(int d, const std::vector<int>& idx) {
    Matrix m = Matrix::Zero(d, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j) m(idx[j], static_cast<Eigen::Index>(j)) = 1.0;
    return m;
  }

  Operator p0_;
  Operator p1_;
  Matrix slow_basis_;
  Matrix fast_basis_;
};

/**
 * Partial inverse of the fast generator on range(p1).
 *
 * Requires y·p0 = 0 and p0·y = 0 (otherwise no operator can satisfy both
 * Ỹy = p1 and yỸ = p1), then inverts the compression of y to range(p1)
 * through an SVD, refusing when the compressed block's condition number
 * exceeds `cond_limit`.
 */
inline Operator restricted_inverse(const Operator& y, const SubspacePair& sub, double cond_limit = kDefaultConditionLimit,
                                   double tol = kDefaultTolerance) {
  if (!(y.space() == sub.space())) throw DimensionMismatch("restricted_inverse: operator and subspace live on different spaces");
  const Matrix& ym = y.matrix();
  const Matrix& p0 = sub.p0().matrix();
  const double bound = scaled_tolerance(tol, {spectral_norm(ym)});
  const double right = spectral_norm(Matrix(ym * p0));
  const double left = spectral_norm(Matrix(p0 * ym));
  if (right > bound || left > bound) {
    throw StructuralViolation("fast generator does not vanish on the slow subspace: |Y P0| = " + std::to_string(right) +
                              ", |P0 Y| = " + std::to_string(left));
  }
  const Matrix& q = sub.fast_basis();
  if (q.cols() == 0) return Operator::zero(y.space());

  const Matrix block = q.adjoint() * ym * q;
  Eigen::JacobiSVD<Matrix> svd(block, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  if (!(smin > 0.0) || smax / smin > cond_limit) {
    throw SingularFastDynamics("fast generator is singular on the complement of the slow subspace (condition number " +
                               (smin > 0.0 ? std::to_string(smax / smin) : std::string("inf")) + ", limit " +
                               std::to_string(cond_limit) + ")");
  }
  const Matrix inv = svd.matrixV() * s.cwiseInverse().asDiagonal() * svd.matrixU().adjoint();
  Matrix out = q * inv * q.adjoint();
  return {y.space(), std::move(out)};
}

}  // namespace qsde
