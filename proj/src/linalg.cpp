#include "kenv/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace kenv {

void EnvelopeBasis::validate(double tol) const {
  const Index rr = r(), uu = u();
  if (uu < 1 || uu > rr) throw std::invalid_argument("EnvelopeBasis: bad dimensions");
  if (G0.rows() != rr || G0.cols() != rr - uu)
    throw std::invalid_argument("EnvelopeBasis: complement dimensions");
  const Matrix gtg = G.transpose() * G - Matrix::Identity(uu, uu);
  if (gtg.cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("EnvelopeBasis: G not orthonormal");
  if (uu < rr) {
    const Matrix g0tg0 =
        G0.transpose() * G0 - Matrix::Identity(rr - uu, rr - uu);
    if (g0tg0.cwiseAbs().maxCoeff() > tol)
      throw std::invalid_argument("EnvelopeBasis: G0 not orthonormal");
    if ((G.transpose() * G0).cwiseAbs().maxCoeff() > tol)
      throw std::invalid_argument("EnvelopeBasis: G and G0 not orthogonal");
  }
}

void canonicalize_column_signs(MatrixRef M) {
  for (Index j = 0; j < M.cols(); ++j) {
    for (Index i = 0; i < M.rows(); ++i) {
      if (std::abs(M(i, j)) > 1e-12) {
        if (M(i, j) < 0.0) M.col(j) = -M.col(j);
        break;
      }
    }
  }
}

Matrix orthogonal_complement(ConstMatrixRef G) {
  const Index r = G.rows(), u = G.cols();
  if (u >= r) return Matrix(r, 0);
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ() * Matrix::Identity(r, r);
  Matrix G0 = Q.rightCols(r - u);
  canonicalize_column_signs(G0);
  return G0;
}

EnvelopeBasis make_envelope_basis(ConstMatrixRef G) {
  const Index r = G.rows(), u = G.cols();
  if (u < 1 || u > r) throw std::invalid_argument("make_envelope_basis: bad dimensions");
  const Matrix gtg = G.transpose() * G - Matrix::Identity(u, u);
  if (gtg.cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("make_envelope_basis: G not orthonormal");
  EnvelopeBasis basis;
  basis.G = G;
  canonicalize_column_signs(basis.G);
  basis.G0 = orthogonal_complement(basis.G);
  return basis;
}

EnvelopeBasis orthonormalize(ConstMatrixRef B) {
  const Index r = B.rows(), u = B.cols();
  if (u < 1 || u > r) throw std::invalid_argument("orthonormalize: bad dimensions");
  Eigen::ColPivHouseholderQR<Matrix> qr(B);
  if (qr.rank() < u) throw std::invalid_argument("orthonormalize: rank-deficient input");
  Matrix Q = qr.householderQ() * Matrix::Identity(r, r);
  Matrix G = Q.leftCols(u);
  canonicalize_column_signs(G);
  return make_envelope_basis(G);
}

EnvelopeBasis basis_from_columns(ConstMatrixRef V,
                                 const std::vector<Index>& idx) {
  const Index r = V.rows();
  if (V.cols() != r) throw std::invalid_argument("basis_from_columns: V not square");
  const Index u = static_cast<Index>(idx.size());
  if (u < 1 || u > r) throw std::invalid_argument("basis_from_columns: bad index set");
  std::vector<bool> in_set(static_cast<std::size_t>(r), false);
  EnvelopeBasis basis;
  basis.G.resize(r, u);
  for (Index k = 0; k < u; ++k) {
    const Index j = idx[static_cast<std::size_t>(k)];
    if (j < 0 || j >= r || in_set[static_cast<std::size_t>(j)])
      throw std::invalid_argument("basis_from_columns: bad index set");
    in_set[static_cast<std::size_t>(j)] = true;
    basis.G.col(k) = V.col(j);
  }
  basis.G0.resize(r, r - u);
  Index k0 = 0;
  for (Index j = 0; j < r; ++j)
    if (!in_set[static_cast<std::size_t>(j)]) basis.G0.col(k0++) = V.col(j);
  return basis;
}

Matrix haar_orthogonal(Index r, Rng& rng) {
  if (r < 1) throw std::invalid_argument("haar_orthogonal: r >= 1 required");
  Matrix Z(r, r);
  for (Index j = 0; j < r; ++j)
    for (Index i = 0; i < r; ++i) Z(i, j) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(Z);
  Matrix Q = qr.householderQ() * Matrix::Identity(r, r);
  const Matrix& QR = qr.matrixQR();
  for (Index j = 0; j < r; ++j)
    if (QR(j, j) < 0.0) Q.col(j) = -Q.col(j);
  return Q;
}

double logdet_psd(ConstMatrixRef M, double jitter) {
  const Index k = M.rows();
  if (M.cols() != k) throw std::invalid_argument("logdet_psd: not square");
  if (jitter < 0.0) throw std::invalid_argument("logdet_psd: negative jitter");
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw std::invalid_argument("logdet_psd: not symmetric");
  Matrix A = M;
  if (jitter > 0.0) A.diagonal().array() += jitter;
  Eigen::LLT<Matrix> llt(A);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefinite("logdet_psd: factorization failed");
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

Matrix solve_regularized(const GramMatrix& K, double lambda, ConstMatrixRef B) {
  if (!(lambda > 0.0)) throw std::invalid_argument("solve_regularized: lambda > 0 required");
  if (B.rows() != K.size())
    throw std::invalid_argument("solve_regularized: dimension mismatch");
  Matrix A = K.values;
  A.diagonal().array() += lambda;
  Eigen::LLT<Matrix> llt(A);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefinite("solve_regularized: numerical fault in factorization");
  return llt.solve(B);
}

double projection_distance(ConstMatrixRef G1, ConstMatrixRef G2) {
  if (G1.rows() != G2.rows())
    throw std::invalid_argument("projection_distance: dimension mismatch");
  return (G1 * G1.transpose() - G2 * G2.transpose()).norm();
}

}  // namespace kenv
