#pragma once

#include "kenv/envelope_opt.hpp"
#include "kenv/kernel.hpp"
#include "kenv/krr.hpp"
#include "kenv/linalg.hpp"
#include "kenv/types.hpp"

#include <vector>

namespace kenv {

/// Fitted kernel envelope model. Predictions are the projection of the
/// centered kernel ridge fit onto the estimated envelope subspace:
///   f(x) = G A k(x)' + y_mean,  A = G' (Y - y_mean)' (K + lambda I)^{-1}.
struct KenvModel {
  EnvelopeBasis basis;
  Matrix dual_coefs;  // u x n
  KernelSpec kernel;
  double lambda = 0.0;
  Index u = 0;
  Matrix X_train;  // n x p
  Vector y_mean;   // r
  CovEstimates cov;
  double objective_value = 0.0;
  bool optimizer_converged = true;
  std::uint64_t gram_fingerprint = 0;

  Index n() const { return X_train.rows(); }
  Index r() const { return basis.r(); }
};

KenvModel kenv_fit(const DataSet& data, const KernelSpec& kernel, Index u,
                   double lambda, const EnvelopeBasis* warm_init = nullptr,
                   const GrassmannSettings& settings = {});

/// Fit with a known envelope basis (no subspace estimation).
KenvModel kenv_fit_fixed_basis(const DataSet& data, const KernelSpec& kernel,
                               const EnvelopeBasis& basis, double lambda);

Matrix kenv_predict(const KenvModel& model, ConstMatrixRef X_new);

/// Fits along a strictly decreasing penalty sequence. The Gram matrix is
/// built and eigendecomposed once; each model after the first is
/// warm-started at the previous basis.
struct LambdaPath {
  std::vector<double> lambdas;
  std::vector<KenvModel> models;
};

LambdaPath kenv_path(const DataSet& data, const KernelSpec& kernel, Index u,
                     const std::vector<double>& lambdas,
                     const GrassmannSettings& settings = {});

/// 30 log-spaced values from lambda_max = trace(K)/n down by four decades.
std::vector<double> default_lambda_grid(const GramMatrix& K, int count = 30,
                                        double decades = 4.0);
std::vector<double> log_spaced_descending(double lambda_max, int count,
                                          double decades);

}  // namespace kenv
