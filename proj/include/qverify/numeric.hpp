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

#ifndef QVERIFY_NUMERIC_HPP
#define QVERIFY_NUMERIC_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qverify {

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using MatrixXc = CMatrix<double>;
using VectorXc = CVector<double>;
using Complex = std::complex<double>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a modulus-one eigenvalue of a program representation carries a
// nontrivial Jordan block. Valid programs never do.
class SemisimplicityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Numerical thresholds shared by every module. Values marked "scaled" are
/// multiplied by max(1, ||A||) of the matrix under test.
struct Tolerances {
  double herm = 1e-9;         // Hermiticity, scaled
  double eig = 1e-8;          // eigenpair residuals, scaled
  double unit = 1e-7;         // | |lambda| - 1 | threshold for the unit circle
  double proj = 1e-6;         // projector idempotence / commutation, scaled
  double num = 1e-9;          // generic identities
  double tp = 1e-9;           // trace preservation of Kraus sums
  double cluster = 1e-6;      // eigenvalue clustering, scaled by spectral radius
  double zero_vector = 1e-9;  // relative norm below which a vector is zero
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

/// Kronecker product: (a (x) b)(i*rb + k, j*cb + l) = a(i,j) * b(k,l).
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                            a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real max_abs(
    const Eigen::MatrixBase<Derived>& a) {
  if (a.size() == 0) return 0;
  return a.cwiseAbs().maxCoeff();
}

/// Largest singular value.
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real operator_norm(
    const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> svd(a.eval());
  return svd.singularValues()(0);
}

template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real norm_scale(
    const Eigen::MatrixBase<Derived>& a) {
  return std::max<typename Eigen::NumTraits<typename Derived::Scalar>::Real>(1, operator_norm(a));
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    std::ostringstream msg;
    msg << what << ": expected a non-empty square matrix, got " << a.rows() << "x" << a.cols();
    throw DimensionError(msg.str());
  }
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& a) {
  return a.allFinite();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a, double tol = default_tolerances().herm) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint()) <= tol * std::max<double>(1, max_abs(a));
}

template <typename Derived>
CMatrix<typename Eigen::NumTraits<typename Derived::Scalar>::Real> hermitian_part(
    const Eigen::MatrixBase<Derived>& a) {
  return (a + a.adjoint()) / 2;
}

/// Eigenvalues of the Hermitian part, ascending.
template <typename Derived>
Eigen::Matrix<typename Eigen::NumTraits<typename Derived::Scalar>::Real, Eigen::Dynamic, 1>
hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

/// True iff `a` is Hermitian within tol_herm and lambda_min >= -tol * max(1, ||a||).
template <typename Derived>
bool is_positive_semidefinite(const Eigen::MatrixBase<Derived>& a,
                              double tol = default_tolerances().num,
                              double tol_herm = default_tolerances().herm) {
  require_square(a, "is_positive_semidefinite");
  if (!is_hermitian(a, tol_herm)) return false;
  auto evals = hermitian_eigenvalues(a);
  double scale = std::max<double>(1, evals.cwiseAbs().maxCoeff());
  return evals.minCoeff() >= -tol * scale;
}

/// Loewner order x <= y, i.e. y - x is positive semidefinite.
template <typename DerivedX, typename DerivedY>
bool loewner_leq(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y,
                 double tol = default_tolerances().num) {
  return is_positive_semidefinite((y - x).eval(), tol);
}

/// |Phi> = sum_j |jj>, the unnormalized maximally entangled vector of C^d (x) C^d.
template <typename Real = double>
CVector<Real> max_entangled(Eigen::Index d) {
  CVector<Real> phi = CVector<Real>::Zero(d * d);
  for (Eigen::Index j = 0; j < d; ++j) phi(j * d + j) = 1;
  return phi;
}

/// (A (x) I)|Phi>, which is the row-major flattening of A.
template <typename Derived>
CVector<typename Eigen::NumTraits<typename Derived::Scalar>::Real> vec(
    const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  require_square(a, "vec");
  const Eigen::Index d = a.rows();
  CVector<Real> out(d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) out(i * d + j) = a(i, j);
  return out;
}

template <typename Derived>
CMatrix<typename Eigen::NumTraits<typename Derived::Scalar>::Real> unvec(
    const Eigen::MatrixBase<Derived>& v) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (d * d != v.size()) throw DimensionError("unvec: length is not a perfect square");
  CMatrix<Real> out(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) out(i, j) = v(i * d + j);
  return out;
}

/// Eigen-structure of a square matrix. Eigenpairs are only materialized for
/// the modulus-one clusters; everything else is summarized by eigenvalues
/// and the nilpotent index bound at zero.
template <typename Real>
struct SpectralData {
  struct Cluster {
    std::complex<Real> value;  // mean of the member eigenvalues
    int multiplicity = 0;
    bool on_unit_circle = false;
    // Columns [first_pair, first_pair + multiplicity) of right_vectors /
    // left_vectors span this cluster. -1 when no pairs were built.
    int first_pair = -1;
  };

  Eigen::Index dim = 0;
  CVector<Real> eigenvalues;  // descending modulus, then real part, then imag part
  std::vector<int> cluster_ids;
  std::vector<bool> unit_circle_flags;
  std::vector<Cluster> clusters;
  CMatrix<Real> right_vectors;  // dim x r
  CMatrix<Real> left_vectors;   // dim x r, left^H right = I
  CVector<Real> pair_eigenvalues;
  int zero_nilpotent_index_bound = 0;
  Real spectral_radius = 0;
  Real norm = 0;

  bool has_unit_circle() const { return right_vectors.cols() > 0; }

  /// Sum over unit-circle pairs of right * left^H.
  CMatrix<Real> unit_projector() const {
    if (!has_unit_circle()) return CMatrix<Real>::Zero(dim, dim);
    return right_vectors * left_vectors.adjoint();
  }

  /// Spectral projector of a single cluster.
  CMatrix<Real> cluster_projector(int cluster) const {
    const Cluster& c = clusters.at(static_cast<std::size_t>(cluster));
    if (c.first_pair < 0) throw std::out_of_range("cluster_projector: cluster has no eigenpairs");
    return right_vectors.middleCols(c.first_pair, c.multiplicity) *
           left_vectors.middleCols(c.first_pair, c.multiplicity).adjoint();
  }

  /// max{|lambda| : |lambda| < 1 - eps_unit}, 0 when none.
  Real contracting_radius() const {
    Real r = 0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
      if (!unit_circle_flags[static_cast<std::size_t>(i)]) r = std::max(r, std::abs(eigenvalues(i)));
    return r;
  }
};

namespace detail {

template <typename Real>
bool eigenvalue_order(const std::complex<Real>& a, const std::complex<Real>& b) {
  const Real ma = std::abs(a), mb = std::abs(b);
  if (ma != mb) return ma > mb;
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

template <typename Real>
int numerical_rank(const CMatrix<Real>& a, Real threshold) {
  Eigen::JacobiSVD<CMatrix<Real>> svd(a);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > threshold) ++rank;
  return rank;
}

}  // namespace detail

/// Smallest k with rank(a^k) == rank(a^(k+1)); this is the size of the largest
/// Jordan block at eigenvalue zero.
template <typename Real>
int nilpotent_index_at_zero(const CMatrix<Real>& a, Real tol = 1e-9) {
  require_square(a, "nilpotent_index_at_zero");
  const Eigen::Index n = a.rows();
  const Real threshold = tol * norm_scale(a);
  CMatrix<Real> power = CMatrix<Real>::Identity(n, n);
  int previous = static_cast<int>(n);
  for (int k = 0; k < n; ++k) {
    power = (power * a).eval();
    const int r = detail::numerical_rank<Real>(power, threshold);
    if (r == previous) return k;
    previous = r;
  }
  return static_cast<int>(n);
}

struct SpectralOptions {
  Tolerances tol{};
  bool compute_nilpotent_index = true;
};

/// Eigenvalues of `a`, clustered, with biorthonormal eigenpairs for every
/// cluster on the unit circle. Throws SemisimplicityError when a unit-circle
/// cluster does not have a full eigenspace.
template <typename Derived>
SpectralData<typename Eigen::NumTraits<typename Derived::Scalar>::Real> spectral_decompose(
    const Eigen::MatrixBase<Derived>& input, const SpectralOptions& opts = {}) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  using Mat = CMatrix<Real>;
  require_square(input, "spectral_decompose");
  const Mat a = input.template cast<std::complex<Real>>();
  const Eigen::Index n = a.rows();

  SpectralData<Real> out;
  out.dim = n;
  out.norm = operator_norm(a);

  Eigen::ComplexEigenSolver<Mat> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "eigensolver did not converge (dimension " << n << ", norm " << out.norm << ")";
    throw NumericalError(msg.str());
  }
  std::vector<std::complex<Real>> values(solver.eigenvalues().data(),
                                         solver.eigenvalues().data() + n);
  std::sort(values.begin(), values.end(), detail::eigenvalue_order<Real>);
  out.eigenvalues = Eigen::Map<CVector<Real>>(values.data(), n);
  out.spectral_radius = n > 0 ? std::abs(values.front()) : 0;

  // Single-linkage clustering.
  const Real cluster_eps = opts.tol.cluster * std::max<Real>(1, out.spectral_radius);
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(values[i] - values[j]) <= cluster_eps) parent[find(j)] = find(i);

  out.cluster_ids.assign(static_cast<std::size_t>(n), -1);
  out.unit_circle_flags.assign(static_cast<std::size_t>(n), false);
  std::vector<int> root_to_cluster(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const int root = find(i);
    if (root_to_cluster[root] < 0) {
      root_to_cluster[root] = static_cast<int>(out.clusters.size());
      out.clusters.push_back({});
    }
    auto& c = out.clusters[root_to_cluster[root]];
    c.value += values[i];
    c.multiplicity += 1;
    out.cluster_ids[i] = root_to_cluster[root];
  }
  for (auto& c : out.clusters) {
    c.value /= static_cast<Real>(c.multiplicity);
    c.on_unit_circle = std::abs(std::abs(c.value) - 1) <= opts.tol.unit;
  }
  for (int i = 0; i < n; ++i) {
    out.unit_circle_flags[i] = out.clusters[out.cluster_ids[i]].on_unit_circle;
  }

  // Eigenspaces of the unit-circle clusters from the SVD of (a - lambda I).
  const Real scale = std::max<Real>(1, out.norm);
  std::vector<Mat> rights, lefts;
  std::vector<std::complex<Real>> pair_values;
  int pair_count = 0;
  for (std::size_t ci = 0; ci < out.clusters.size(); ++ci) {
    auto& c = out.clusters[ci];
    if (!c.on_unit_circle) continue;
    const Mat shifted = a - c.value * Mat::Identity(n, n);
    Eigen::JacobiSVD<Mat> svd(shifted, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const int k = c.multiplicity;
    const Real sigma = svd.singularValues()(n - k);
    if (sigma > opts.tol.proj * scale) {
      std::ostringstream msg;
      msg << "eigenvalue " << c.value << " of modulus one has algebraic multiplicity " << k
          << " but a smaller eigenspace (singular value " << sigma
          << "); modulus-one eigenvalues of a program representation must be semisimple";
      throw SemisimplicityError(msg.str());
    }
    Mat right = svd.matrixV().rightCols(k);
    Mat left = svd.matrixU().rightCols(k);
    const Mat overlap = left.adjoint() * right;
    Eigen::JacobiSVD<Mat> overlap_svd(overlap);
    const auto& os = overlap_svd.singularValues();
    if (os(k - 1) <= opts.tol.proj * os(0)) {
      std::ostringstream msg;
      msg << "left and right eigenspaces at eigenvalue " << c.value
          << " are nearly orthogonal (Jordan block on the unit circle)";
      throw SemisimplicityError(msg.str());
    }
    left = (left * overlap.inverse().adjoint()).eval();
    c.first_pair = pair_count;
    pair_count += k;
    rights.push_back(std::move(right));
    lefts.push_back(std::move(left));
    for (int j = 0; j < k; ++j) pair_values.push_back(c.value);
  }
  out.right_vectors.resize(n, pair_count);
  out.left_vectors.resize(n, pair_count);
  out.pair_eigenvalues.resize(pair_count);
  for (std::size_t b = 0, col = 0; b < rights.size(); ++b) {
    const auto k = rights[b].cols();
    out.right_vectors.middleCols(col, k) = rights[b];
    out.left_vectors.middleCols(col, k) = lefts[b];
    col += static_cast<std::size_t>(k);
  }
  for (int j = 0; j < pair_count; ++j) out.pair_eigenvalues(j) = pair_values[j];

  out.zero_nilpotent_index_bound = opts.compute_nilpotent_index
                                       ? nilpotent_index_at_zero<Real>(a, opts.tol.num)
                                       : static_cast<int>(n);
  return out;
}

}  // namespace qverify

#endif  // QVERIFY_NUMERIC_HPP
