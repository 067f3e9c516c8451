#pragma once

#include "kenv/types.hpp"

#include <cmath>
#include <string>

namespace kenv {

enum class KernelFamily { Gaussian, Laplacian, Polynomial, Exponential, Linear };

std::string to_string(KernelFamily family);
KernelFamily kernel_family_from_string(const std::string& name);

/// Kernel family plus its single hyperparameter: bandwidth sigma for
/// Gaussian/Laplacian, integer degree for Polynomial, unused for
/// Exponential/Linear.
struct KernelSpec {
  KernelFamily family = KernelFamily::Gaussian;
  double param = 1.0;

  bool has_bandwidth() const {
    return family == KernelFamily::Gaussian || family == KernelFamily::Laplacian;
  }
  bool uses_param() const {
    return has_bandwidth() || family == KernelFamily::Polynomial;
  }

  void validate() const;
};

namespace detail {

// Shared evaluation path; inputs assumed validated. Symmetry of the result
// in (x, x') is bit-exact because both orders run the identical arithmetic.
template <typename DerivedA, typename DerivedB>
double kernel_value(const KernelSpec& spec, const Eigen::MatrixBase<DerivedA>& x,
                    const Eigen::MatrixBase<DerivedB>& y) {
  switch (spec.family) {
    case KernelFamily::Gaussian:
      return std::exp(-(x - y).squaredNorm() / (spec.param * spec.param));
    case KernelFamily::Laplacian:
      return std::exp(-(x - y).norm() / spec.param);
    case KernelFamily::Polynomial: {
      const double base = x.dot(y) + 1.0;
      double out = 1.0;
      for (int k = 0; k < static_cast<int>(spec.param); ++k) out *= base;
      return out;
    }
    case KernelFamily::Exponential:
      return std::exp(x.dot(y));
    case KernelFamily::Linear:
      return x.dot(y);
  }
  return 0.0;  // unreachable
}

}  // namespace detail

/// K(x, x') for a single pair of p-vectors.
template <typename DerivedA, typename DerivedB>
double eval_kernel(const KernelSpec& spec, const Eigen::MatrixBase<DerivedA>& x,
                   const Eigen::MatrixBase<DerivedB>& y) {
  spec.validate();
  if (x.size() != y.size() || x.size() < 1)
    throw std::invalid_argument("eval_kernel: dimension mismatch");
  if (!x.allFinite() || !y.allFinite())
    throw std::invalid_argument("eval_kernel: non-finite input");
  return detail::kernel_value(spec, x, y);
}

/// n x n kernel matrix over the rows of X. Upper triangle computed, lower
/// mirrored, so symmetry holds to the bit.
struct GramMatrix {
  Matrix values;
  KernelSpec kernel;
  std::uint64_t fingerprint = 0;

  Index size() const { return values.rows(); }
};

GramMatrix gram(const KernelSpec& spec, ConstMatrixRef X);

/// Row [K(x_new, x_1), ..., K(x_new, x_n)] against the rows of X_train.
template <typename Derived>
RowVector kernel_row(const KernelSpec& spec, ConstMatrixRef X_train,
                     const Eigen::MatrixBase<Derived>& x_new) {
  spec.validate();
  if (x_new.size() != X_train.cols())
    throw std::invalid_argument("kernel_row: dimension mismatch");
  if (!x_new.allFinite() || !X_train.allFinite())
    throw std::invalid_argument("kernel_row: non-finite input");
  RowVector out(X_train.rows());
  for (Index i = 0; i < X_train.rows(); ++i)
    out(i) = detail::kernel_value(spec, x_new.transpose(), X_train.row(i));
  return out;
}

/// m x n block of kernel rows: entry (i, j) = K(x_new_i, x_train_j).
Matrix cross_gram(const KernelSpec& spec, ConstMatrixRef X_train,
                  ConstMatrixRef X_new);

/// Median of all pairwise Euclidean distances between rows of X; the anchor
/// for default bandwidth grids. Throws if the median distance is zero.
double median_heuristic_bandwidth(ConstMatrixRef X);

/// Symmetric eigendecomposition of a Gram matrix, shared across a lambda
/// path: (K + lambda I)^-1 B costs O(n^2) per lambda once this exists.
struct GramEigen {
  Vector eigenvalues;  // ascending
  Matrix vectors;      // columns = eigenvectors
  KernelSpec kernel;
  std::uint64_t fingerprint = 0;

  Index size() const { return eigenvalues.size(); }
};

GramEigen eigendecompose(const GramMatrix& K);

}  // namespace kenv
