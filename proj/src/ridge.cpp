#include "pcpr/ridge.hpp"

#include <cmath>
#include <string>

namespace pcpr {

double estimate_sigma_max(const Matrix& a, double rel_tol) {
  if (a.size() == 0) return 0.0;
  Rng rng(0x5eedULL);
  Vector v = rng.unit_vector(a.cols());
  double ev = 0.0;
  constexpr int kMaxIter = 50000;
  for (int it = 0; it < kMaxIter; ++it) {
    Vector w = a.transpose() * (a * v);
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    const double ev_next = v.dot(w);
    v = w / nw;
    if (it > 0 && std::abs(ev_next - ev) <= rel_tol * std::abs(ev_next)) {
      ev = ev_next;
      break;
    }
    ev = ev_next;
  }
  return std::sqrt(std::max(ev, 0.0));
}

DataMatrix::DataMatrix(Matrix a) : a_(std::move(a)) {
  if (!a_.allFinite())
    throw validation_error("DataMatrix: non-finite entries");
  sigma_max_ = estimate_sigma_max(a_);
  if (sigma_max_ > 1.0 + 1e-6)
    throw validation_error("DataMatrix: sigma_max(A) = " +
                           std::to_string(sigma_max_) + " exceeds 1");
}

Vector ridge_cg(const DataMatrix& m, double lambda, const Vector& u,
                double tol) {
  if (!(lambda > 0.0)) throw validation_error("ridge_cg: lambda must be > 0");
  if (u.size() != m.cols())
    throw validation_error("ridge_cg: u has dimension " +
                           std::to_string(u.size()) + ", matrix has " +
                           std::to_string(m.cols()) + " columns");
  if (!(tol > 0.0 && tol < 1.0))
    throw validation_error("ridge_cg: tol must be in (0, 1)");
  const double u_norm = u.norm();
  if (u_norm == 0.0) return Vector::Zero(u.size());

  const double target = tol * u_norm;
  // kappa(A^T A + lambda I) <= (1+lambda)/lambda; CG reaches relative
  // residual tol within ~ sqrt(kappa)/2 * ln(2/tol) iterations
  const double bound =
      0.5 * std::sqrt((1.0 + lambda) / lambda) * std::log(2.0 / tol) + 1.0;
  const long max_iter = 10 * static_cast<long>(std::ceil(bound));

  Vector x = Vector::Zero(u.size());
  Vector r = u;
  Vector p = r;
  double rs = r.squaredNorm();
  for (long it = 0; it < max_iter; ++it) {
    const Vector ap = m.gram(p) + lambda * p;
    const double alpha = rs / p.dot(ap);
    x += alpha * p;
    r -= alpha * ap;
    const double rs_next = r.squaredNorm();
    if (std::sqrt(rs_next) <= target) return x;
    p = r + (rs_next / rs) * p;
    rs = rs_next;
  }
  throw convergence_error("ridge_cg: no convergence in " +
                          std::to_string(max_iter) + " iterations, residual " +
                          std::to_string(std::sqrt(rs) / u_norm) +
                          " relative vs target " + std::to_string(tol));
}

Vector ridge_noisy(const DataMatrix& m, double lambda, const Vector& u, int k,
                   Rng& rng) {
  Vector x = ridge_cg(m, lambda, u, 1e-13);
  if (k < 0) return x;
  const double scale = std::pow(10.0, -k);
  for (Index i = 0; i < x.size(); ++i) x[i] += rng.uniform(-scale, scale);
  return x;
}

Vector ridge_svrg(const DataMatrix& m, double lambda, const Vector& u,
                  int passes, Rng& rng) {
  if (!(lambda > 0.0)) throw validation_error("ridge_svrg: lambda must be > 0");
  if (u.size() != m.cols())
    throw validation_error("ridge_svrg: dimension mismatch");
  if (passes < 2) throw validation_error("ridge_svrg: passes must be >= 2");
  const Index d_rows = m.rows();
  const Index d = m.cols();
  if (u.norm() == 0.0) return Vector::Zero(d);

  const Matrix& a = m.a();
  // finite-sum smoothness: the uniform-sampling estimator uses scaled rows
  // sqrt(d') a_i, so the average per-row constant is ||A||_F^2 + lambda
  const double l_bar = a.squaredNorm() + lambda;
  const double step = 1.0 / (4.0 * l_bar);
  const auto objective = [&](const Vector& y) {
    return 0.5 * ((a * y).squaredNorm() + lambda * y.squaredNorm()) - u.dot(y);
  };
  // |f*| <= ||u||^2/(2 lambda); flag divergence at 10x that scale
  const double blowup = 10.0 * u.squaredNorm() / (2.0 * lambda);

  Vector y = Vector::Zero(d);
  int passes_used = 0;
  while (passes_used < passes) {
    const Vector snapshot = y;
    const Vector full_grad = m.gram(snapshot) + lambda * snapshot - u;
    ++passes_used;
    const int chunk = std::min(2, passes - passes_used);
    if (chunk == 0) break;
    const long steps = static_cast<long>(chunk) * d_rows;
    for (long t = 0; t < steps; ++t) {
      const Index i = rng.uniform_index(d_rows);
      const auto row = a.row(i);
      const double corr =
          static_cast<double>(d_rows) * row.dot(y - snapshot);
      Vector g = full_grad + lambda * (y - snapshot);
      g += corr * row.transpose();
      y -= step * g;
    }
    passes_used += chunk;
    if (objective(y) > blowup)
      throw convergence_error("ridge_svrg: objective blew up after " +
                              std::to_string(passes_used) + " passes");
  }
  return y;
}

RidgeOracle RidgeOracle::exact_cg(const DataMatrix& m, double lambda,
                                  double eps_prime) {
  if (!(eps_prime > 0.0 && eps_prime < 1.0))
    throw validation_error("RidgeOracle: eps' must be in (0, 1)");
  RidgeOracle o(m, lambda, eps_prime, OracleKind::exact_cg, 0);
  o.cg_tol_ = std::max(eps_prime * lambda, 1e-15);
  return o;
}

RidgeOracle RidgeOracle::noisy(const DataMatrix& m, double lambda, int k,
                               std::uint64_t seed) {
  const double eps =
      k < 0 ? 1e-13 / lambda  // the inner exact solve's accuracy
            : std::sqrt(static_cast<double>(m.cols())) * std::pow(10.0, -k);
  RidgeOracle o(m, lambda, eps, OracleKind::noisy, seed);
  o.noise_k_ = k;
  return o;
}

RidgeOracle RidgeOracle::svrg(const DataMatrix& m, double lambda, int passes,
                              double calibrated_eps, std::uint64_t seed) {
  if (passes < 2) throw validation_error("RidgeOracle: svrg passes must be >= 2");
  RidgeOracle o(m, lambda, calibrated_eps, OracleKind::svrg, seed);
  o.passes_ = passes;
  return o;
}

Vector RidgeOracle::solve(const Vector& u) {
  ++calls_;
  switch (kind_) {
    case OracleKind::exact_cg:
      return ridge_cg(*matrix_, lambda_, u, cg_tol_);
    case OracleKind::noisy:
      return ridge_noisy(*matrix_, lambda_, u, noise_k_, rng_);
    case OracleKind::svrg:
      return ridge_svrg(*matrix_, lambda_, u, passes_, rng_);
  }
  throw std::logic_error("RidgeOracle: unknown kind");
}

Vector mult_s(RidgeOracle& oracle, const Vector& chi) {
  const DataMatrix& m = oracle.matrix();
  if (chi.size() != m.cols())
    throw validation_error("mult_s: chi dimension mismatch");
  return oracle.solve(m.gram(chi) - oracle.lambda() * chi);
}

}  // namespace pcpr
