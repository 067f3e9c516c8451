#include "kenv/kenv.hpp"

#include <cmath>

namespace kenv {

namespace {

Matrix symmetrized(const Matrix& M) { return 0.5 * (M + M.transpose()); }

CovEstimates covariance_estimates(const EnvelopeBasis& basis,
                                  const EnvelopeObjectiveInputs& inputs) {
  CovEstimates cov;
  cov.Omega = symmetrized(basis.G.transpose() * inputs.B * basis.G);
  cov.Omega0 = symmetrized(basis.G0.transpose() * inputs.S_Y * basis.G0);
  cov.Sigma = symmetrized(basis.G * cov.Omega * basis.G.transpose() +
                          basis.G0 * cov.Omega0 * basis.G0.transpose());
  return cov;
}

KenvModel assemble_model(const DataSet& data, const KernelSpec& kernel,
                         std::uint64_t fingerprint, double lambda,
                         const EnvelopeBasis& basis, bool converged,
                         double objective, const Matrix& krr_dual,
                         const Vector& y_mean,
                         const EnvelopeObjectiveInputs& inputs) {
  KenvModel model;
  model.basis = basis;
  model.dual_coefs = basis.G.transpose() * krr_dual.transpose();
  model.kernel = kernel;
  model.lambda = lambda;
  model.u = basis.u();
  model.X_train = data.X;
  model.y_mean = y_mean;
  model.cov = covariance_estimates(basis, inputs);
  model.objective_value = objective;
  model.optimizer_converged = converged;
  model.gram_fingerprint = fingerprint;
  return model;
}

void check_fit_args(const DataSet& data, Index u, double lambda) {
  data.validate();
  if (data.n() < 2) throw std::invalid_argument("kenv_fit: n >= 2 required");
  if (u < 1 || u > data.r())
    throw std::invalid_argument("kenv_fit: 1 <= u <= r required");
  if (!(lambda > 0.0)) throw std::invalid_argument("kenv_fit: lambda > 0 required");
}

}  // namespace

KenvModel kenv_fit(const DataSet& data, const KernelSpec& kernel, Index u,
                   double lambda, const EnvelopeBasis* warm_init,
                   const GrassmannSettings& settings) {
  check_fit_args(data, u, lambda);
  const GramMatrix K = gram(kernel, data.X);
  const Vector y_mean = data.Y.colwise().mean();
  const Matrix Yc = data.Y.rowwise() - y_mean.transpose();
  EnvelopeObjectiveInputs inputs = build_moment_matrices(Yc, K, lambda);
  inputs.u = u;
  const GrassmannSolution sol = estimate_envelope(inputs, warm_init, settings);
  const Matrix krr_dual = solve_regularized(K, lambda, Yc);
  return assemble_model(data, kernel, K.fingerprint, lambda, sol.basis,
                        sol.converged, sol.objective_value, krr_dual, y_mean,
                        inputs);
}

KenvModel kenv_fit_fixed_basis(const DataSet& data, const KernelSpec& kernel,
                               const EnvelopeBasis& basis, double lambda) {
  check_fit_args(data, basis.u(), lambda);
  if (basis.r() != data.r())
    throw std::invalid_argument("kenv_fit_fixed_basis: basis dimension mismatch");
  const GramMatrix K = gram(kernel, data.X);
  const Vector y_mean = data.Y.colwise().mean();
  const Matrix Yc = data.Y.rowwise() - y_mean.transpose();
  EnvelopeObjectiveInputs inputs = build_moment_matrices(Yc, K, lambda);
  inputs.u = basis.u();
  const EnvelopeBasis canonical = make_envelope_basis(basis.G);
  const Matrix krr_dual = solve_regularized(K, lambda, Yc);
  return assemble_model(data, kernel, K.fingerprint, lambda, canonical, true,
                        envelope_objective(inputs, canonical.G), krr_dual,
                        y_mean, inputs);
}

Matrix kenv_predict(const KenvModel& model, ConstMatrixRef X_new) {
  if (X_new.cols() != model.X_train.cols())
    throw std::invalid_argument("kenv_predict: predictor dimension mismatch");
  if (X_new.rows() == 0) return Matrix(0, model.r());
  const Matrix Kn = cross_gram(model.kernel, model.X_train, X_new);
  Matrix pred = Kn * model.dual_coefs.transpose() * model.basis.G.transpose();
  pred.rowwise() += model.y_mean.transpose();
  return pred;
}

LambdaPath kenv_path(const DataSet& data, const KernelSpec& kernel, Index u,
                     const std::vector<double>& lambdas,
                     const GrassmannSettings& settings) {
  if (lambdas.empty()) throw std::invalid_argument("kenv_path: empty lambda grid");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0))
      throw std::invalid_argument("kenv_path: lambdas must be positive");
    if (i > 0 && !(lambdas[i] < lambdas[i - 1]))
      throw std::invalid_argument("kenv_path: lambdas must be strictly decreasing");
  }
  check_fit_args(data, u, lambdas.front());

  const GramMatrix K = gram(kernel, data.X);
  const GramEigen eig = eigendecompose(K);
  const Vector y_mean = data.Y.colwise().mean();
  const Matrix Yc = data.Y.rowwise() - y_mean.transpose();
  const Matrix W = eig.vectors.transpose() * Yc;

  LambdaPath path;
  path.lambdas = lambdas;
  path.models.reserve(lambdas.size());
  const EnvelopeBasis* warm = nullptr;
  for (const double lambda : lambdas) {
    EnvelopeObjectiveInputs inputs = build_moment_matrices(Yc, eig, lambda);
    inputs.u = u;
    const GrassmannSolution sol = estimate_envelope(inputs, warm, settings);
    const Vector inv = (eig.eigenvalues.array() + lambda).inverse();
    const Matrix krr_dual = eig.vectors * (inv.asDiagonal() * W);
    path.models.push_back(assemble_model(data, kernel, K.fingerprint, lambda,
                                         sol.basis, sol.converged,
                                         sol.objective_value, krr_dual, y_mean,
                                         inputs));
    warm = &path.models.back().basis;
  }
  return path;
}

std::vector<double> log_spaced_descending(double lambda_max, int count,
                                          double decades) {
  if (count < 1 || !(lambda_max > 0.0) || !(decades > 0.0))
    throw std::invalid_argument("log_spaced_descending: bad arguments");
  std::vector<double> grid(static_cast<std::size_t>(count));
  if (count == 1) {
    grid[0] = lambda_max;
    return grid;
  }
  const double lmax = std::log10(lambda_max);
  for (int i = 0; i < count; ++i)
    grid[static_cast<std::size_t>(i)] =
        std::pow(10.0, lmax - decades * i / (count - 1));
  return grid;
}

std::vector<double> default_lambda_grid(const GramMatrix& K, int count,
                                        double decades) {
  const double lambda_max = K.values.trace() / static_cast<double>(K.size());
  return log_spaced_descending(lambda_max, count, decades);
}

}  // namespace kenv
