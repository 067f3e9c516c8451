#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>

namespace kenv {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;

using ConstMatrixRef = Eigen::Ref<const Matrix>;
using MatrixRef = Eigen::Ref<Matrix>;

/// Thrown when a symmetric factorization fails (matrix not positive
/// definite after any allowed jitter) or a solve reports a numerical fault.
struct NotPositiveDefinite : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Paired response block (n x r) and predictor block (n x p).
struct DataSet {
  Matrix Y;  // n x r
  Matrix X;  // n x p

  Index n() const { return Y.rows(); }
  Index r() const { return Y.cols(); }
  Index p() const { return X.cols(); }

  void validate() const {
    if (Y.rows() != X.rows())
      throw std::invalid_argument("DataSet: Y and X row counts differ");
    if (Y.rows() < 1 || Y.cols() < 1 || X.cols() < 1)
      throw std::invalid_argument("DataSet: empty block");
    if (!Y.allFinite() || !X.allFinite())
      throw std::invalid_argument("DataSet: non-finite entries");
  }
};

/// FNV-1a over raw bytes; seed parameter allows chaining.
std::uint64_t fnv1a(const void* data, std::size_t bytes,
                    std::uint64_t h = 1469598103934665603ULL);

/// Order-sensitive hash of a dense block (dims + entries), for cheap
/// "same training data" checks.
std::uint64_t matrix_fingerprint(ConstMatrixRef X);

}  // namespace kenv
