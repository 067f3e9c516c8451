#pragma once

#include "kenv/kernel.hpp"
#include "kenv/rng.hpp"
#include "kenv/types.hpp"

#include <vector>

namespace kenv {

/// Semi-orthogonal r x u basis G for a subspace together with an r x (r-u)
/// basis G0 for its orthogonal complement. G0 is always derived from G by
/// the same deterministic complement construction, so identical G blocks
/// give identical G0 blocks.
struct EnvelopeBasis {
  Matrix G;
  Matrix G0;

  Index r() const { return G.rows(); }
  Index u() const { return G.cols(); }

  Matrix projector() const { return G * G.transpose(); }

  /// Checks the semi-orthogonality invariants to the given per-entry tol.
  void validate(double tol = 1e-10) const;
};

/// Flips column signs so the first entry with |x| > 1e-12 is positive.
void canonicalize_column_signs(MatrixRef M);

/// Deterministic orthonormal complement of a semi-orthogonal block.
Matrix orthogonal_complement(ConstMatrixRef G);

/// Wraps an already-orthonormal G (checked to 1e-8) with its canonical
/// complement. Column signs of both blocks are canonicalized.
EnvelopeBasis make_envelope_basis(ConstMatrixRef G);

/// Orthonormal basis for span(B) plus complement; throws on rank-deficient B.
EnvelopeBasis orthonormalize(ConstMatrixRef B);

/// Basis from selected columns of an orthogonal matrix V: G = V(:, idx),
/// G0 = the remaining columns in order.
EnvelopeBasis basis_from_columns(ConstMatrixRef V, const std::vector<Index>& idx);

/// Haar-distributed random orthogonal matrix (QR of an iid normal block
/// with the R diagonal sign correction).
Matrix haar_orthogonal(Index r, Rng& rng);

/// log|M + jitter I| via Cholesky; throws NotPositiveDefinite if the
/// factorization fails after the jitter.
double logdet_psd(ConstMatrixRef M, double jitter = 0.0);

/// (K + lambda I)^{-1} B through an LLT factorization (never an explicit
/// inverse).
Matrix solve_regularized(const GramMatrix& K, double lambda, ConstMatrixRef B);

/// Basis-invariant subspace distance ||G1 G1' - G2 G2'||_F.
double projection_distance(ConstMatrixRef G1, ConstMatrixRef G2);

/// Covariance estimates tied to the basis that produced them.
struct CovEstimates {
  Matrix Omega;   // u x u
  Matrix Omega0;  // (r-u) x (r-u)
  Matrix Sigma;   // r x r
};

}  // namespace kenv
