#pragma once

#include "kenv/kernel.hpp"
#include "kenv/linalg.hpp"
#include "kenv/types.hpp"

namespace kenv {

/// Moment matrices of the partially maximized objective:
///   A = S_Y^{-1} (regularized inverse of the sample response covariance)
///   B = S_{Y|K}^lambda = S_Y - (1/n) Y' K (K + lambda I)^{-1} Y
/// both built from centered responses. S_Y itself is kept for the
/// complement covariance estimate.
struct EnvelopeObjectiveInputs {
  Matrix A;
  Matrix B;
  Matrix S_Y;
  Index u = 0;  // target subspace dimension, set by the caller

  Index r() const { return A.rows(); }
};

EnvelopeObjectiveInputs build_moment_matrices(ConstMatrixRef Y_c,
                                              const GramMatrix& K,
                                              double lambda);

/// Same matrices through a precomputed Gram eigendecomposition; O(n^2 r)
/// per lambda, used along penalty paths.
EnvelopeObjectiveInputs build_moment_matrices(ConstMatrixRef Y_c,
                                              const GramEigen& K_eig,
                                              double lambda);

/// log|G' A G| + log|G' B G| for semi-orthogonal G; +inf when either inner
/// matrix is numerically singular. Throws if G is not orthonormal to 1e-8.
double envelope_objective(const EnvelopeObjectiveInputs& inputs,
                          ConstMatrixRef G);

struct GrassmannSettings {
  double tol = 1e-8;      // relative objective change, inner loop
  int max_iter = 200;     // inner iterations per direction
  double damping = 0.5;   // fixed-point step blend
  int scan_m2 = 512;      // extra start candidates when the deflated dim is 2
  int scan_m3_polar = 32;  // ... and a polar x azimuth grid when it is 3
  int scan_m3_azimuth = 64;
};

struct GrassmannSolution {
  EnvelopeBasis basis;
  double objective_value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Sequential one-direction-at-a-time minimization of the envelope
/// objective over semi-orthogonal r x u matrices. Each direction solves the
/// deflated scalar problem phi(w) = log(w'A_k w) + log(w'B_k w) on the unit
/// sphere of the current complement, started from the best of an eigenvector
/// census of A_k and B_k (plus coarse scans in dimensions <= 3 and the
/// projected warm-start column when provided) and refined by damped
/// fixed-point iterations on the stationarity condition with monotone
/// step acceptance. With a warm start, both the warm and the cold sweep run
/// and the better result is returned, so a warm start can never hurt.
GrassmannSolution estimate_envelope(const EnvelopeObjectiveInputs& inputs,
                                    const EnvelopeBasis* init = nullptr,
                                    const GrassmannSettings& settings = {});

}  // namespace kenv
