#include "kenv/envelope_opt.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace kenv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Matrix symmetrized(const Matrix& M) { return 0.5 * (M + M.transpose()); }

Matrix regularized_inverse_spd(const Matrix& S) {
  Eigen::LLT<Matrix> llt(S);
  if (llt.info() != Eigen::Success) {
    // Jitter only when the plain factorization fails.
    const double jitter = 1e-8 * S.trace() / static_cast<double>(S.rows());
    Matrix Sj = S;
    Sj.diagonal().array() += jitter;
    llt.compute(Sj);
    if (llt.info() != Eigen::Success)
      throw NotPositiveDefinite("build_moment_matrices: S_Y not positive definite after jitter");
  }
  Matrix A = llt.solve(Matrix::Identity(S.rows(), S.cols()));
  return symmetrized(A);
}

double phi_scalar(const Matrix& Ak, const Matrix& Bk, const Vector& w) {
  const double a = w.dot(Ak * w);
  const double b = w.dot(Bk * w);
  if (!(a > 0.0) || !(b > 0.0)) return kInf;
  return std::log(a) + std::log(b);
}

// Orthonormal complement of a unit vector via its Householder reflector.
Matrix householder_complement(const Vector& w) {
  const Index m = w.size();
  Vector v = w;
  v(0) += (w(0) >= 0.0) ? 1.0 : -1.0;
  const double beta = 2.0 / v.squaredNorm();
  Matrix out(m, m - 1);
  for (Index j = 1; j < m; ++j) {
    out.col(j - 1) = -beta * v(j) * v;
    out(j, j - 1) += 1.0;
  }
  return out;
}

struct InnerResult {
  Vector w;
  double phi = kInf;
  int iterations = 0;
  bool converged = false;
};

// Minimize phi(w) = log(w'Ak w) + log(w'Bk w) over the unit sphere.
InnerResult minimize_direction(const Matrix& Ak, const Matrix& Bk,
                               const Vector* warm,
                               const GrassmannSettings& s) {
  const Index m = Ak.rows();
  InnerResult res;
  if (m == 1) {
    res.w = Vector::Ones(1);
    res.phi = phi_scalar(Ak, Bk, res.w);
    res.converged = true;
    return res;
  }

  // Candidate starts: eigenvector census of Ak then Bk, coarse scans for
  // m <= 3, warm-start direction last. Ties within 1e-12 keep the earliest.
  std::vector<Vector> candidates;
  Eigen::SelfAdjointEigenSolver<Matrix> esA(Ak), esB(Bk);
  for (Index j = 0; j < m; ++j) candidates.push_back(esA.eigenvectors().col(j));
  for (Index j = 0; j < m; ++j) candidates.push_back(esB.eigenvectors().col(j));
  if (m == 2) {
    double best = kInf;
    Vector bw(2);
    for (int i = 0; i < s.scan_m2; ++i) {
      const double t = std::numbers::pi * i / s.scan_m2;
      Vector w(2);
      w << std::cos(t), std::sin(t);
      const double a = w.dot(Ak * w), b = w.dot(Bk * w);
      if (a > 0.0 && b > 0.0 && a * b < best) {
        best = a * b;
        bw = w;
      }
    }
    if (best < kInf) candidates.push_back(bw);
  } else if (m == 3) {
    double best = kInf;
    Vector bw(3);
    for (int i = 1; i < s.scan_m3_polar; ++i) {
      const double th = std::numbers::pi * i / s.scan_m3_polar;
      const double st = std::sin(th), ct = std::cos(th);
      for (int j = 0; j < s.scan_m3_azimuth; ++j) {
        const double ph = 2.0 * std::numbers::pi * j / s.scan_m3_azimuth;
        Vector w(3);
        w << st * std::cos(ph), st * std::sin(ph), ct;
        const double a = w.dot(Ak * w), b = w.dot(Bk * w);
        if (a > 0.0 && b > 0.0 && a * b < best) {
          best = a * b;
          bw = w;
        }
      }
    }
    if (best < kInf) candidates.push_back(bw);
  }
  if (warm) candidates.push_back(*warm);

  Vector w;
  double phi = kInf;
  for (const Vector& c : candidates) {
    const double v = phi_scalar(Ak, Bk, c);
    if (v < phi - 1e-12) {
      phi = v;
      w = c;
    }
  }
  if (!(phi < kInf)) {
    // Objective singular in every direction tried; report the flattest
    // candidate and let the caller's sentinel handle it.
    res.w = esB.eigenvectors().col(m - 1);
    res.phi = kInf;
    res.converged = false;
    return res;
  }

  // Damped fixed-point iteration on the stationarity condition: move toward
  // the smallest eigendirection of A/(w'Aw) + B/(w'Bw), accepting only
  // objective decreases (halving the step otherwise).
  bool converged = false;
  int it = 0;
  while (it < s.max_iter) {
    ++it;
    const double a = w.dot(Ak * w), b = w.dot(Bk * w);
    Matrix M = Ak / a + Bk / b;
    Eigen::SelfAdjointEigenSolver<Matrix> esM(symmetrized(M));
    Vector v = esM.eigenvectors().col(0);
    if (v.dot(w) < 0.0) v = -v;

    double step = s.damping;
    double phi_new = kInf;
    Vector w_new;
    bool improved = false;
    while (step >= 1e-3) {
      w_new = ((1.0 - step) * w + step * v).normalized();
      phi_new = phi_scalar(Ak, Bk, w_new);
      if (phi_new < phi) {
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) {
      converged = true;  // no descent available: stationary
      break;
    }
    const double rel = std::abs(phi - phi_new) / (std::abs(phi) + 1e-12);
    w = w_new;
    phi = phi_new;
    if (rel < s.tol) {
      converged = true;
      break;
    }
  }

  res.w = w;
  res.phi = phi;
  res.iterations = it;
  res.converged = converged;
  return res;
}

GrassmannSolution run_sweep(const EnvelopeObjectiveInputs& in,
                            const Matrix* warm_G,
                            const GrassmannSettings& s) {
  const Index r = in.r(), u = in.u;
  Matrix G(r, u);
  Matrix C = Matrix::Identity(r, r);  // complement of the partial basis
  int total_iters = 0;
  bool final_converged = true;
  for (Index k = 0; k < u; ++k) {
    const Matrix Ak = symmetrized(C.transpose() * in.A * C);
    const Matrix Bk = symmetrized(C.transpose() * in.B * C);
    Vector warm_dir;
    const Vector* warm_ptr = nullptr;
    if (warm_G && warm_G->cols() > k) {
      warm_dir = C.transpose() * warm_G->col(k);
      if (warm_dir.norm() > 1e-8) {
        warm_dir.normalize();
        warm_ptr = &warm_dir;
      }
    }
    const InnerResult inner = minimize_direction(Ak, Bk, warm_ptr, s);
    total_iters += inner.iterations;
    final_converged = inner.converged;
    G.col(k) = C * inner.w;
    if (r - k > 1)
      C = (C * householder_complement(inner.w)).eval();
    else
      C.resize(r, 0);
  }

  GrassmannSolution sol;
  sol.basis = make_envelope_basis(G);
  sol.objective_value = envelope_objective(in, sol.basis.G);
  sol.iterations = total_iters;
  sol.converged = final_converged;
  return sol;
}

void check_inputs(const EnvelopeObjectiveInputs& in) {
  const Index r = in.A.rows();
  if (in.A.cols() != r || in.B.rows() != r || in.B.cols() != r)
    throw std::invalid_argument("envelope inputs: A and B must be square of equal size");
  const double scale = std::max({1.0, in.A.cwiseAbs().maxCoeff(), in.B.cwiseAbs().maxCoeff()});
  if ((in.A - in.A.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale ||
      (in.B - in.B.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw std::invalid_argument("envelope inputs: A and B must be symmetric");
}

}  // namespace

EnvelopeObjectiveInputs build_moment_matrices(ConstMatrixRef Y_c,
                                              const GramMatrix& K,
                                              double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("build_moment_matrices: lambda > 0 required");
  const Index n = Y_c.rows();
  if (K.size() != n) throw std::invalid_argument("build_moment_matrices: size mismatch");
  EnvelopeObjectiveInputs out;
  out.S_Y = symmetrized((Y_c.transpose() * Y_c) / static_cast<double>(n));
  const Matrix C = solve_regularized(K, lambda, Y_c);
  out.B = symmetrized(out.S_Y - (Y_c.transpose() * (K.values * C)) / static_cast<double>(n));
  out.A = regularized_inverse_spd(out.S_Y);
  return out;
}

EnvelopeObjectiveInputs build_moment_matrices(ConstMatrixRef Y_c,
                                              const GramEigen& K_eig,
                                              double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("build_moment_matrices: lambda > 0 required");
  const Index n = Y_c.rows();
  if (K_eig.size() != n) throw std::invalid_argument("build_moment_matrices: size mismatch");
  EnvelopeObjectiveInputs out;
  out.S_Y = symmetrized((Y_c.transpose() * Y_c) / static_cast<double>(n));
  const Matrix W = K_eig.vectors.transpose() * Y_c;
  const Vector shrink =
      K_eig.eigenvalues.array() / (K_eig.eigenvalues.array() + lambda);
  out.B = symmetrized(out.S_Y -
                      (W.transpose() * shrink.asDiagonal() * W) / static_cast<double>(n));
  out.A = regularized_inverse_spd(out.S_Y);
  return out;
}

double envelope_objective(const EnvelopeObjectiveInputs& inputs,
                          ConstMatrixRef G) {
  check_inputs(inputs);
  const Index r = inputs.r(), u = G.cols();
  if (G.rows() != r || u < 1 || u > r)
    throw std::invalid_argument("envelope_objective: bad basis dimensions");
  if ((G.transpose() * G - Matrix::Identity(u, u)).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("envelope_objective: G not orthonormal");
  try {
    const double la = logdet_psd(symmetrized(G.transpose() * inputs.A * G));
    const double lb = logdet_psd(symmetrized(G.transpose() * inputs.B * G));
    return la + lb;
  } catch (const NotPositiveDefinite&) {
    return kInf;
  }
}

GrassmannSolution estimate_envelope(const EnvelopeObjectiveInputs& inputs,
                                    const EnvelopeBasis* init,
                                    const GrassmannSettings& settings) {
  check_inputs(inputs);
  const Index r = inputs.r(), u = inputs.u;
  if (u < 1 || u > r)
    throw std::invalid_argument("estimate_envelope: 1 <= u <= r required");

  if (u == r) {
    GrassmannSolution sol;
    sol.basis = make_envelope_basis(Matrix::Identity(r, r));
    sol.objective_value = envelope_objective(inputs, sol.basis.G);
    sol.iterations = 0;
    sol.converged = true;
    return sol;
  }

  GrassmannSolution best = run_sweep(inputs, nullptr, settings);
  if (init) {
    if (init->r() != r || init->u() != u)
      throw std::invalid_argument("estimate_envelope: warm start dimension mismatch");
    GrassmannSolution warm = run_sweep(inputs, &init->G, settings);
    warm.iterations += best.iterations;
    if (warm.objective_value < best.objective_value) best = warm;
    const double init_obj = envelope_objective(inputs, init->G);
    if (init_obj < best.objective_value) {
      best.basis = make_envelope_basis(init->G);
      best.objective_value = envelope_objective(inputs, best.basis.G);
      best.converged = true;
    }
  }
  return best;
}

}  // namespace kenv
