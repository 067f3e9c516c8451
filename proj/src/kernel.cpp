#include "kenv/kernel.hpp"

#include <algorithm>
#include <cstring>
#include <vector>

namespace kenv {

std::uint64_t fnv1a(const void* data, std::size_t bytes, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < bytes; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t matrix_fingerprint(ConstMatrixRef X) {
  std::uint64_t h = fnv1a(nullptr, 0);
  const Index rows = X.rows(), cols = X.cols();
  h = fnv1a(&rows, sizeof(rows), h);
  h = fnv1a(&cols, sizeof(cols), h);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      const double v = X(i, j);
      h = fnv1a(&v, sizeof(v), h);
    }
  return h;
}

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::Gaussian: return "gaussian";
    case KernelFamily::Laplacian: return "laplacian";
    case KernelFamily::Polynomial: return "polynomial";
    case KernelFamily::Exponential: return "exponential";
    case KernelFamily::Linear: return "linear";
  }
  return "?";
}

KernelFamily kernel_family_from_string(const std::string& name) {
  if (name == "gaussian") return KernelFamily::Gaussian;
  if (name == "laplacian") return KernelFamily::Laplacian;
  if (name == "polynomial") return KernelFamily::Polynomial;
  if (name == "exponential") return KernelFamily::Exponential;
  if (name == "linear") return KernelFamily::Linear;
  throw std::invalid_argument("unknown kernel family: " + name);
}

void KernelSpec::validate() const {
  if (has_bandwidth()) {
    if (!(param > 0.0) || !std::isfinite(param))
      throw std::invalid_argument("KernelSpec: bandwidth must be positive");
  } else if (family == KernelFamily::Polynomial) {
    if (!(param >= 1.0) || param != std::floor(param))
      throw std::invalid_argument("KernelSpec: polynomial degree must be a positive integer");
  }
}

namespace {

std::uint64_t spec_fingerprint(const KernelSpec& spec, std::uint64_t h) {
  const int fam = static_cast<int>(spec.family);
  h = fnv1a(&fam, sizeof(fam), h);
  h = fnv1a(&spec.param, sizeof(spec.param), h);
  return h;
}

}  // namespace

GramMatrix gram(const KernelSpec& spec, ConstMatrixRef X) {
  spec.validate();
  const Index n = X.rows();
  if (n < 1) throw std::invalid_argument("gram: empty input");
  if (!X.allFinite()) throw std::invalid_argument("gram: non-finite input");

  GramMatrix out;
  out.kernel = spec;
  out.fingerprint = spec_fingerprint(spec, matrix_fingerprint(X));
  out.values.resize(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const double v = detail::kernel_value(spec, X.row(i), X.row(j));
      out.values(i, j) = v;
      out.values(j, i) = v;
    }
  }
  if (!out.values.allFinite())
    throw std::invalid_argument("gram: non-finite kernel values");
  return out;
}

Matrix cross_gram(const KernelSpec& spec, ConstMatrixRef X_train,
                  ConstMatrixRef X_new) {
  spec.validate();
  if (X_new.cols() != X_train.cols())
    throw std::invalid_argument("cross_gram: dimension mismatch");
  if (!X_new.allFinite() || !X_train.allFinite())
    throw std::invalid_argument("cross_gram: non-finite input");
  Matrix out(X_new.rows(), X_train.rows());
  for (Index i = 0; i < X_new.rows(); ++i)
    for (Index j = 0; j < X_train.rows(); ++j)
      out(i, j) = detail::kernel_value(spec, X_new.row(i), X_train.row(j));
  return out;
}

double median_heuristic_bandwidth(ConstMatrixRef X) {
  const Index n = X.rows();
  if (n < 2) throw std::invalid_argument("median_heuristic_bandwidth: need n >= 2");
  std::vector<double> dists;
  dists.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      dists.push_back((X.row(i) - X.row(j)).norm());
  std::sort(dists.begin(), dists.end());
  const std::size_t m = dists.size();
  const double med = (m % 2 == 1) ? dists[m / 2]
                                  : 0.5 * (dists[m / 2 - 1] + dists[m / 2]);
  if (!(med > 0.0))
    throw std::invalid_argument("median_heuristic_bandwidth: all points identical");
  return med;
}

GramEigen eigendecompose(const GramMatrix& K) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(K.values);
  if (es.info() != Eigen::Success)
    throw NotPositiveDefinite("eigendecompose: solver failed");
  GramEigen out;
  out.eigenvalues = es.eigenvalues();
  out.vectors = es.eigenvectors();
  out.kernel = K.kernel;
  out.fingerprint = K.fingerprint;
  return out;
}

}  // namespace kenv
