#pragma once

#include "pcpr/rng.hpp"
#include "pcpr/types.hpp"

#include <cstdint>

namespace pcpr {

// Estimate of the largest singular value via power iteration on A^T A,
// stopped at relative change rel_tol.
double estimate_sigma_max(const Matrix& a, double rel_tol = 1e-6);

// Dense data matrix with sigma_max(A) <= 1 enforced at construction.
class DataMatrix {
 public:
  explicit DataMatrix(Matrix a);

  Index rows() const { return a_.rows(); }
  Index cols() const { return a_.cols(); }
  const Matrix& a() const { return a_; }

  Vector apply(const Vector& v) const { return a_ * v; }
  Vector apply_t(const Vector& w) const { return a_.transpose() * w; }
  Vector gram(const Vector& v) const { return a_.transpose() * (a_ * v); }

  double sigma_max_estimate() const { return sigma_max_; }

 private:
  Matrix a_;
  double sigma_max_;
};

// Conjugate gradient on (A^T A + lambda I) x = u, stopped at
// ||residual|| <= tol ||u||. The operator's condition number is at most
// (1+lambda)/lambda; iteration is capped at 10x the bound that implies.
Vector ridge_cg(const DataMatrix& m, double lambda, const Vector& u, double tol);

// Exact solve plus i.i.d. uniform noise in [-10^-k, 10^-k] per coordinate.
// k < 0 is the no-noise sentinel.
Vector ridge_noisy(const DataMatrix& m, double lambda, const Vector& u, int k,
                   Rng& rng);

// SVRG on f(y) = 1/2 y^T (A^T A + lambda I) y - u^T y, rows sampled
// uniformly, epoch length 2 d' stochastic steps. Each d' stochastic steps and
// each full gradient count as one pass; returns the iterate when the pass
// budget runs out.
Vector ridge_svrg(const DataMatrix& m, double lambda, const Vector& u,
                  int passes, Rng& rng);

enum class OracleKind { exact_cg, noisy, svrg };

// eps'-approximate ridge regression solver:
//   ||solve(u) - (A^T A + lambda I)^{-1} u|| <= eps' ||u||
// (for the noisy kind the declared eps' = sqrt(d) 10^-k holds at unit input
// scale, since the injected noise is absolute). Counts its solves.
class RidgeOracle {
 public:
  // eps_prime bounds the solution error; internally CG is run to residual
  // eps_prime * lambda, which implies it.
  static RidgeOracle exact_cg(const DataMatrix& m, double lambda,
                              double eps_prime);
  static RidgeOracle noisy(const DataMatrix& m, double lambda, int k,
                           std::uint64_t seed);
  // calibrated_eps is the empirically validated accuracy for this pass count.
  static RidgeOracle svrg(const DataMatrix& m, double lambda, int passes,
                          double calibrated_eps, std::uint64_t seed);

  Vector solve(const Vector& u);

  const DataMatrix& matrix() const { return *matrix_; }
  double lambda() const { return lambda_; }
  double eps_prime() const { return eps_prime_; }
  OracleKind kind() const { return kind_; }
  long calls() const { return calls_; }
  void reset_calls() { calls_ = 0; }

 private:
  RidgeOracle(const DataMatrix& m, double lambda, double eps_prime,
              OracleKind kind, std::uint64_t seed)
      : matrix_(&m), lambda_(lambda), eps_prime_(eps_prime), kind_(kind),
        rng_(seed) {}

  const DataMatrix* matrix_;
  double lambda_;
  double eps_prime_;
  OracleKind kind_;
  double cg_tol_ = 1e-13;  // residual target for the exact solves
  int noise_k_ = -1;
  int passes_ = 0;
  Rng rng_;
  long calls_ = 0;
};

// Algorithm-1 operator: one ridge call approximating
//   S chi = (A^T A + lambda I)^{-1} (A^T A - lambda I) chi.
Vector mult_s(RidgeOracle& oracle, const Vector& chi);

}  // namespace pcpr
