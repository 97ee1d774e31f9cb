// Copyright 2026 The qverify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QVERIFY_CHANNELS_HPP
#define QVERIFY_CHANNELS_HPP

#include <sstream>
#include <utility>
#include <vector>

#include "qverify/numeric.hpp"

namespace qverify {

/// Completely positive, trace non-increasing map rho -> sum_i E_i rho E_i^H
/// given by its Kraus operators. Construction rejects lists whose
/// sum_i E_i^H E_i exceeds the identity.
template <typename Real>
class SuperOperator {
 public:
  using Mat = CMatrix<Real>;

  SuperOperator() = default;

  explicit SuperOperator(std::vector<Mat> kraus, const Tolerances& tol = default_tolerances())
      : kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw ValidationError("super-operator needs at least one Kraus operator");
    dim_ = kraus_.front().rows();
    for (std::size_t i = 0; i < kraus_.size(); ++i) {
      const Mat& k = kraus_[i];
      if (k.rows() != dim_ || k.cols() != dim_) {
        std::ostringstream msg;
        msg << "Kraus operator " << i << " is " << k.rows() << "x" << k.cols() << ", expected "
            << dim_ << "x" << dim_;
        throw DimensionError(msg.str());
      }
      if (!k.allFinite()) {
        std::ostringstream msg;
        msg << "Kraus operator " << i << " has non-finite entries";
        throw ValidationError(msg.str());
      }
    }
    if (dim_ == 0) throw DimensionError("super-operator on a zero-dimensional space");
    const Mat sum = kraus_sum();
    const auto evals = hermitian_eigenvalues(sum);
    if (evals.maxCoeff() > 1 + tol.tp) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "sum of E_i^H E_i is not below the identity: largest eigenvalue " << evals.maxCoeff();
      throw ValidationError(msg.str());
    }
    trace_preserving_ = max_abs(sum - Mat::Identity(dim_, dim_)) <= tol.tp;
  }

  static SuperOperator identity(Eigen::Index d) { return SuperOperator({Mat::Identity(d, d)}); }
  static SuperOperator zero(Eigen::Index d) { return SuperOperator({Mat::Zero(d, d)}); }
  static SuperOperator unitary(const Mat& u) { return SuperOperator({u}); }

  Eigen::Index dim() const { return dim_; }
  const std::vector<Mat>& kraus() const { return kraus_; }
  bool trace_preserving() const { return trace_preserving_; }

  Mat kraus_sum() const {
    Mat sum = Mat::Zero(dim_, dim_);
    for (const auto& k : kraus_) sum.noalias() += k.adjoint() * k;
    return sum;
  }

 private:
  Eigen::Index dim_ = 0;
  std::vector<Mat> kraus_;
  bool trace_preserving_ = false;
};

/// Positive semidefinite operator with trace at most one.
template <typename Real>
class DensityOperator {
 public:
  using Mat = CMatrix<Real>;

  DensityOperator() = default;

  explicit DensityOperator(Mat m, const Tolerances& tol = default_tolerances()) : mat_(std::move(m)) {
    require_square(mat_, "density operator");
    if (!mat_.allFinite()) throw ValidationError("density operator has non-finite entries");
    if (!is_hermitian(mat_, tol.herm)) throw ValidationError("density operator is not Hermitian");
    const auto evals = hermitian_eigenvalues(mat_);
    if (evals.minCoeff() < -tol.num * std::max<Real>(1, evals.cwiseAbs().maxCoeff())) {
      std::ostringstream msg;
      msg << "density operator is not positive semidefinite: smallest eigenvalue " << evals.minCoeff();
      throw ValidationError(msg.str());
    }
    if (trace() > 1 + tol.tp) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "density operator has trace " << trace() << " > 1";
      throw ValidationError(msg.str());
    }
  }

  /// |psi><psi| for a normalized ket.
  static DensityOperator pure(const CVector<Real>& psi) {
    return DensityOperator(psi * psi.adjoint());
  }
  static DensityOperator maximally_mixed(Eigen::Index d) {
    return DensityOperator(Mat::Identity(d, d) / static_cast<Real>(d));
  }

  Eigen::Index dim() const { return mat_.rows(); }
  const Mat& mat() const { return mat_; }
  Real trace() const { return mat_.trace().real(); }

 private:
  Mat mat_;
};

/// Hermitian operator.
template <typename Real>
class Observable {
 public:
  using Mat = CMatrix<Real>;

  Observable() = default;

  explicit Observable(Mat m, const Tolerances& tol = default_tolerances()) : mat_(std::move(m)) {
    require_square(mat_, "observable");
    if (!mat_.allFinite()) throw ValidationError("observable has non-finite entries");
    if (!is_hermitian(mat_, tol.herm)) {
      std::ostringstream msg;
      msg << "observable is not Hermitian: max |A - A^H| = " << max_abs(mat_ - mat_.adjoint());
      throw ValidationError(msg.str());
    }
  }

  Eigen::Index dim() const { return mat_.rows(); }
  const Mat& mat() const { return mat_; }

  /// <A>_rho = tr(A rho), real part.
  Real expectation(const Mat& rho) const { return (mat_ * rho).trace().real(); }

 private:
  Mat mat_;
};

namespace detail {

inline void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw DimensionError(msg.str());
  }
}

}  // namespace detail

/// sum_i E_i A E_i^H for an arbitrary square A.
template <typename Real>
CMatrix<Real> apply_channel(const SuperOperator<Real>& e, const CMatrix<Real>& a) {
  detail::require_same_dim(e.dim(), a.rows(), "apply");
  require_square(a, "apply");
  CMatrix<Real> out = CMatrix<Real>::Zero(a.rows(), a.cols());
  for (const auto& k : e.kraus()) out.noalias() += k * a * k.adjoint();
  return out;
}

template <typename Real>
DensityOperator<Real> apply_channel(const SuperOperator<Real>& e, const DensityOperator<Real>& rho) {
  return DensityOperator<Real>(apply_channel(e, rho.mat()));
}

/// Heisenberg picture: sum_i E_i^H M E_i.
template <typename Real>
CMatrix<Real> apply_dual(const SuperOperator<Real>& e, const CMatrix<Real>& m) {
  detail::require_same_dim(e.dim(), m.rows(), "apply_dual");
  require_square(m, "apply_dual");
  CMatrix<Real> out = CMatrix<Real>::Zero(m.rows(), m.cols());
  for (const auto& k : e.kraus()) out.noalias() += k.adjoint() * m * k;
  return out;
}

template <typename Real>
Observable<Real> apply_dual(const SuperOperator<Real>& e, const Observable<Real>& m) {
  return Observable<Real>(hermitian_part(apply_dual(e, m.mat())));
}

/// e after f: Kraus list {E_i F_j}, unsimplified.
template <typename Real>
SuperOperator<Real> compose(const SuperOperator<Real>& e, const SuperOperator<Real>& f) {
  detail::require_same_dim(e.dim(), f.dim(), "compose");
  std::vector<CMatrix<Real>> kraus;
  kraus.reserve(e.kraus().size() * f.kraus().size());
  for (const auto& ei : e.kraus())
    for (const auto& fj : f.kraus()) kraus.push_back(ei * fj);
  return SuperOperator<Real>(std::move(kraus));
}

/// e + f as a Kraus union. Throws if the sum is not trace non-increasing.
template <typename Real>
SuperOperator<Real> sum(const SuperOperator<Real>& e, const SuperOperator<Real>& f) {
  detail::require_same_dim(e.dim(), f.dim(), "sum");
  std::vector<CMatrix<Real>> kraus = e.kraus();
  kraus.insert(kraus.end(), f.kraus().begin(), f.kraus().end());
  return SuperOperator<Real>(std::move(kraus));
}

/// d^2 x d^2 matrix sum_i E_i (x) conj(E_i). Acting on the row-major
/// vectorization: vec(e(A)) = M vec(A).
template <typename Real>
CMatrix<Real> matrix_representation(const SuperOperator<Real>& e) {
  const Eigen::Index d = e.dim();
  CMatrix<Real> m = CMatrix<Real>::Zero(d * d, d * d);
  for (const auto& k : e.kraus()) m += kron(k, k.conjugate());
  return m;
}

/// sum_ij |i><j| (x) e(|i><j|). Diagnostic only.
template <typename Real>
CMatrix<Real> choi_matrix(const SuperOperator<Real>& e) {
  const Eigen::Index d = e.dim();
  CMatrix<Real> choi = CMatrix<Real>::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      CMatrix<Real> unit = CMatrix<Real>::Zero(d, d);
      unit(i, j) = 1;
      choi.block(i * d, j * d, d, d) = apply_channel(e, unit);
    }
  }
  return choi;
}

template <typename Real>
struct PositiveParts {
  CMatrix<Real> b1, b2, b3, b4;

  CMatrix<Real> reconstruct() const {
    const std::complex<Real> i(0, 1);
    return b1 - b2 + i * b3 - i * b4;
  }
};

/// Splits a Hermitian matrix into positive and negative spectral parts with
/// orthogonal supports: h = pos - neg.
template <typename Real>
std::pair<CMatrix<Real>, CMatrix<Real>> spectral_split(const CMatrix<Real>& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(hermitian_part(h));
  const auto& v = es.eigenvectors();
  const auto& w = es.eigenvalues();
  const Eigen::Index n = h.rows();
  CMatrix<Real> pos = CMatrix<Real>::Zero(n, n), neg = CMatrix<Real>::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const CMatrix<Real> proj = v.col(k) * v.col(k).adjoint();
    if (w(k) > 0)
      pos += w(k) * proj;
    else if (w(k) < 0)
      neg -= w(k) * proj;
  }
  return {hermitian_part(pos), hermitian_part(neg)};
}

/// A = B1 - B2 + i B3 - i B4 with every B_j positive semidefinite.
template <typename Real>
PositiveParts<Real> positive_part_decompose(const CMatrix<Real>& a) {
  require_square(a, "positive_part_decompose");
  const std::complex<Real> i(0, 1);
  auto [b1, b2] = spectral_split<Real>((a + a.adjoint()) / 2);
  auto [b3, b4] = spectral_split<Real>((-i * (a - a.adjoint()) / 2).eval());
  return {std::move(b1), std::move(b2), std::move(b3), std::move(b4)};
}

}  // namespace qverify

#endif  // QVERIFY_CHANNELS_HPP
