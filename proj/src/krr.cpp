#include "kenv/krr.hpp"

#include "kenv/linalg.hpp"

namespace kenv {

KrrModel krr_fit(const DataSet& data, const KernelSpec& kernel, double lambda) {
  data.validate();
  return krr_fit(data, gram(kernel, data.X), lambda);
}

KrrModel krr_fit(const DataSet& data, const GramMatrix& K, double lambda) {
  data.validate();
  if (data.n() < 2) throw std::invalid_argument("krr_fit: n >= 2 required");
  if (!(lambda > 0.0)) throw std::invalid_argument("krr_fit: lambda > 0 required");
  if (K.size() != data.n()) throw std::invalid_argument("krr_fit: Gram size mismatch");

  KrrModel model;
  model.y_mean = data.Y.colwise().mean();
  const Matrix Yc = data.Y.rowwise() - model.y_mean.transpose();
  model.dual_coefs = solve_regularized(K, lambda, Yc);
  model.kernel = K.kernel;
  model.lambda = lambda;
  model.X_train = data.X;
  return model;
}

Matrix krr_predict(const KrrModel& model, ConstMatrixRef X_new) {
  if (X_new.cols() != model.X_train.cols())
    throw std::invalid_argument("krr_predict: predictor dimension mismatch");
  if (X_new.rows() == 0) return Matrix(0, model.dual_coefs.cols());
  Matrix pred = cross_gram(model.kernel, model.X_train, X_new) * model.dual_coefs;
  pred.rowwise() += model.y_mean.transpose();
  return pred;
}

}  // namespace kenv
