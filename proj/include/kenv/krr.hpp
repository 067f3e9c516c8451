#pragma once

#include "kenv/kernel.hpp"
#include "kenv/types.hpp"

namespace kenv {

/// Multivariate kernel ridge regression: f(x) = dual_coefs' k(x) + y_mean
/// with dual_coefs = (K + lambda I)^{-1} (Y - y_mean).
struct KrrModel {
  Matrix dual_coefs;  // n x r
  KernelSpec kernel;
  double lambda = 0.0;
  Matrix X_train;     // n x p
  Vector y_mean;      // r
};

KrrModel krr_fit(const DataSet& data, const KernelSpec& kernel, double lambda);

/// Fit against an already-built Gram matrix of data.X.
KrrModel krr_fit(const DataSet& data, const GramMatrix& K, double lambda);

Matrix krr_predict(const KrrModel& model, ConstMatrixRef X_new);

}  // namespace kenv
