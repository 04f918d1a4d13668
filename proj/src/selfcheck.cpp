#include "pcpr/selfcheck.hpp"

#include "pcpr/datagen.hpp"
#include "pcpr/io.hpp"
#include "pcpr/pcp.hpp"
#include "pcpr/pcr.hpp"
#include "pcpr/recurrence.hpp"
#include "pcpr/rng.hpp"
#include "pcpr/sign_poly.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <sstream>

namespace pcpr {

namespace {

constexpr double kTie = 1e-12;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

void require(SuiteResult& r, bool ok, const std::string& line) {
  r.lines.push_back(std::string(ok ? "ok   " : "FAIL ") + line);
  if (!ok) r.pass = false;
}

// lhs <= bound, reported as a margin line
void bound_check(SuiteResult& r, double lhs, double bound,
                 const std::string& what) {
  require(r, lhs <= bound, what + ": " + fmt(lhs) + " <= " + fmt(bound));
}

Matrix random_symmetric(Rng& rng, Index d, const Vector& eigenvalues) {
  const Matrix q = random_orthonormal(rng, d, d);
  return q * eigenvalues.asDiagonal() * q.transpose();
}

// closed forms used only as oracles
double cheb_t_closed(int n, double x) {
  if (x >= 1.0) return std::cosh(n * std::acosh(x));
  if (x <= -1.0) {
    const double v = std::cosh(n * std::acosh(-x));
    return n % 2 == 0 ? v : -v;
  }
  return std::cos(n * std::acos(x));
}

double cheb_u_closed(int n, double x) {
  if (std::abs(x) > 1.0) {
    const double ax = std::abs(x);
    const double s = std::sqrt(ax * ax - 1.0);
    const double hi = std::pow(ax + s, n + 1);
    const double lo = std::pow(ax - s, n + 1);
    const double v = (hi - lo) / (2.0 * s);
    return (x < 0.0 && n % 2 == 1) ? -v : v;
  }
  const double theta = std::acos(x);
  const double st = std::sin(theta);
  if (st < 1e-8) return 0.0;  // caller avoids the endpoints
  return std::sin((n + 1) * theta) / st;
}

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

Vector dense_ridge_solve(const DataMatrix& m, double lambda, const Vector& u) {
  const Matrix op = m.a().transpose() * m.a() +
                    lambda * Matrix::Identity(m.cols(), m.cols());
  return op.ldlt().solve(u);
}

}  // namespace

double projection_error_spectral(const EigenReference& ref, const Vector& chi,
                                 double lambda, double gamma, int n) {
  const PcpParams params = PcpParams::make(lambda, gamma, n);
  const ChebSum q = sign_q_coeffs(params.kappa, n);
  const Vector& evals = ref.eigenvalues();
  const Matrix& vecs = ref.eigenvectors();
  double acc = 0.0;
  for (Index i = 0; i < evals.size(); ++i) {
    const double s = (evals[i] - lambda) / (evals[i] + lambda);
    const double g =
        s * clenshaw_scalar(q, 1.0 + params.kappa - 2.0 * s * s);
    const double target = evals[i] >= lambda - kTie ? 1.0 : 0.0;
    const double coeff = 0.5 * (g + 1.0) - target;
    const double beta = vecs.col(i).dot(chi);
    acc += coeff * coeff * beta * beta;
  }
  return std::sqrt(acc) / chi.norm();
}

int min_degree_for_error(const EigenReference& ref, const Vector& chi,
                         double lambda, double gamma, double tol, int n_max) {
  for (int n = 1; n <= n_max; ++n) {
    if (projection_error_spectral(ref, chi, lambda, gamma, n) <= tol) return n;
  }
  return 0;
}

SuiteResult check_chebyshev_recurrence() {
  SuiteResult r("chebyshev-recurrence");
  double worst_t = 0.0, worst_u = 0.0;
  for (int n = 1; n <= 50; ++n) {
    for (int i = 0; i < 200; ++i) {
      const double x = -2.0 + 4.0 * i / 199.0;
      const double t_lhs = cheb_t(n + 1, x);
      const double t_rhs = 2.0 * x * cheb_t(n, x) - cheb_t(n - 1, x);
      worst_t = std::max(worst_t, std::abs(t_lhs - t_rhs) /
                                      std::max(1.0, std::abs(t_lhs)));
      const double u_lhs = cheb_u(n + 1, x);
      const double u_rhs = 2.0 * x * cheb_u(n, x) - cheb_u(n - 1, x);
      worst_u = std::max(worst_u, std::abs(u_lhs - u_rhs) /
                                      std::max(1.0, std::abs(u_lhs)));
    }
  }
  bound_check(r, worst_t, 1e-10, "T three-term consistency (rel)");
  bound_check(r, worst_u, 1e-10, "U three-term consistency (rel)");
  return r;
}

SuiteResult check_chebyshev_closed_form() {
  SuiteResult r("chebyshev-closed-form");
  double worst_t = 0.0, worst_u = 0.0;
  for (int n = 0; n <= 30; ++n) {
    for (int i = 0; i < 120; ++i) {
      const double x = -1.6 + 3.2 * i / 119.0;
      if (std::abs(std::abs(x) - 1.0) < 0.02) continue;  // U closed form degenerates
      const double t_ref = cheb_t_closed(n, x);
      worst_t = std::max(worst_t, std::abs(cheb_t(n, x) - t_ref) /
                                      std::max(1.0, std::abs(t_ref)));
      const double u_ref = cheb_u_closed(n, x);
      worst_u = std::max(worst_u, std::abs(cheb_u(n, x) - u_ref) /
                                      std::max(1.0, std::abs(u_ref)));
    }
  }
  bound_check(r, worst_t, 1e-12, "T recurrence vs closed form (rel)");
  bound_check(r, worst_u, 1e-12, "U recurrence vs closed form (rel)");
  bound_check(r,
              std::abs(cheb_t(5, 1.2) - std::cosh(5 * std::acosh(1.2))) /
                  std::cosh(5 * std::acosh(1.2)),
              1e-12, "T_5(1.2) vs cosh form (rel)");
  bound_check(r, std::abs(cheb_u(3, 1.1) - cheb_u_closed(3, 1.1)) /
                     std::abs(cheb_u_closed(3, 1.1)),
              1e-12, "U_3(1.1) vs closed form (rel)");
  return r;
}

SuiteResult check_chebyshev_derivative() {
  SuiteResult r("chebyshev-derivative");
  const double h = 1e-6;
  double worst = 0.0;
  for (int n = 1; n <= 12; ++n) {
    for (int i = 0; i < 100; ++i) {
      const double x = -0.9 + 1.8 * i / 99.0;
      const double fd = (cheb_t(n, x + h) - cheb_t(n, x - h)) / (2.0 * h);
      worst = std::max(worst, std::abs(fd - n * cheb_u(n - 1, x)));
    }
  }
  bound_check(r, worst, 1e-4, "d/dx T_n = n U_{n-1} (abs, central diff)");
  return r;
}

SuiteResult check_chebyshev_interpolation(std::uint64_t seed) {
  SuiteResult r("chebyshev-interpolation");
  Rng rng(seed);
  double worst = 0.0;
  for (int n : {3, 8, 17}) {
    Vector c(n + 1);
    for (int k = 0; k <= n; ++k) c[k] = rng.uniform(-1.0, 1.0);
    const ChebSum poly{c};
    const auto p = [&poly](double x) { return clenshaw_scalar(poly, x); };
    const ChebSum fitted = interp_coeffs(p, n);
    for (int i = 0; i < 100; ++i) {
      const double x = -1.0 + 2.0 * i / 99.0;
      worst = std::max(worst, std::abs(clenshaw_scalar(fitted, x) - p(x)));
    }
  }
  bound_check(r, worst, 1e-10, "degree-<=n interpolation exactness (abs)");

  // fixed cases: constants and the identity
  const ChebSum ones = interp_coeffs([](double) { return 1.0; }, 4);
  require(r,
          std::abs(ones.coeffs[0] - 1.0) < 1e-14 &&
              ones.coeffs.tail(4).cwiseAbs().maxCoeff() < 1e-14,
          "f = 1 maps to (1, 0, 0, 0, 0)");
  const ChebSum ident = interp_coeffs([](double x) { return x; }, 3);
  require(r,
          std::abs(ident.coeffs[1] - 1.0) < 1e-14 &&
              std::abs(ident.coeffs[0]) < 1e-14 &&
              ident.coeffs.tail(2).cwiseAbs().maxCoeff() < 1e-14,
          "f = x maps to (0, 1, 0, 0)");
  return r;
}

SuiteResult check_chebyshev_bounded() {
  SuiteResult r("chebyshev-bounded");
  double worst = 0.0;
  for (int n = 0; n <= 200; n += (n < 20 ? 1 : 7)) {
    for (int i = 0; i <= 200; ++i) {
      const double x = -1.0 + 2.0 * i / 200.0;
      worst = std::max(worst, std::abs(cheb_t(n, x)));
    }
  }
  bound_check(r, worst, 1.0 + 1e-12, "|T_n| on [-1,1], n <= 200");
  return r;
}

SuiteResult check_clenshaw_direct(std::uint64_t seed) {
  SuiteResult r("chebyshev-clenshaw");
  Rng rng(seed);
  double worst = 0.0;
  for (int len : {1, 2, 7, 12, 33, 64}) {
    Vector c(len);
    for (int k = 0; k < len; ++k) c[k] = rng.uniform(-1.0, 1.0);
    const ChebSum sum{c};
    for (int i = 0; i <= 50; ++i) {
      const double x = (i == 50) ? 0.37 : -1.0 + 2.0 * i / 49.0;
      double direct = 0.0;
      for (int k = 0; k < len; ++k) direct += c[k] * cheb_t(k, x);
      worst = std::max(worst, std::abs(clenshaw_scalar(sum, x) - direct));
    }
  }
  bound_check(r, worst, 1e-12, "clenshaw vs direct sum (abs)");
  return r;
}

SuiteResult check_sign_accuracy() {
  SuiteResult r("sign-accuracy");
  for (double alpha : {0.05, 0.1, 0.2}) {
    for (double eps : {1e-2, 1e-3}) {
      const SignPoly p = build_sign_poly(alpha, eps);
      double worst = 0.0;
      for (int i = 0; i < 5000; ++i) {
        const double x = alpha + (1.0 - alpha) * i / 4999.0;
        worst = std::max(worst, std::abs(eval_sign_poly(p, x) - 1.0));
        worst = std::max(worst, std::abs(eval_sign_poly(p, -x) + 1.0));
      }
      bound_check(r, worst, eps,
                  "max |g - sgn| outside the gap, alpha=" + fmt(alpha) +
                      " eps=" + fmt(eps) + " n=" + std::to_string(p.degree_q));
      double inside = 0.0;
      for (int i = 0; i < 1000; ++i) {
        const double x = -alpha + 2.0 * alpha * i / 999.0;
        inside = std::max(inside, std::abs(eval_sign_poly(p, x)));
      }
      bound_check(r, inside, 1.0 + 1e-12,
                  "containment |g| on [-alpha, alpha], alpha=" + fmt(alpha));
    }
  }
  return r;
}

SuiteResult check_sign_inner_bound() {
  SuiteResult r("sign-inner-bound");
  for (auto [alpha, eps] :
       {std::pair{0.05, 1e-3}, std::pair{0.1, 1e-3}, std::pair{0.2, 1e-2}}) {
    const SignPoly p = build_sign_poly(alpha, eps);
    const double kappa = p.kappa;
    double low = 0.0;    // most negative q value seen
    double excess = 0.0; // worst violation of the envelope
    for (int i = 0; i < 1000; ++i) {
      const double y = kappa * (1.0 - 1e-6) * i / 999.0;
      const double q = eval_inner_q(p, 1.0 + y);
      const double envelope = std::pow((kappa - y) / 2.0, -0.5);
      low = std::min(low, q);
      excess = std::max(excess, q - envelope);
    }
    require(r, low >= 0.0,
            "q(1+y) >= 0 above the interval, alpha=" + fmt(alpha) +
                " (min " + fmt(low) + ")");
    bound_check(r, excess, 0.0,
                "q(1+y) <= ((kappa-y)/2)^-1/2 margin, alpha=" + fmt(alpha));
  }
  return r;
}

SuiteResult check_sign_coeff_decay() {
  SuiteResult r("sign-coeff-decay");
  for (auto [alpha, eps] :
       {std::pair{0.05, 1e-3}, std::pair{0.1, 1e-3}, std::pair{0.2, 1e-2}}) {
    const SignPoly p = build_sign_poly(alpha, eps);
    double worst_ratio = 0.0;
    for (Index i = 0; i < p.q_coeffs.coeffs.size(); ++i) {
      const double bound = coeff_decay_bound(p.kappa, static_cast<int>(i));
      worst_ratio =
          std::max(worst_ratio, std::abs(p.q_coeffs.coeffs[i]) / bound);
    }
    bound_check(r, worst_ratio, 1.0,
                "max |c_i| / bound_i, alpha=" + fmt(alpha) +
                    " n=" + std::to_string(p.degree_q));
  }
  // kappa = 0.02, n = 30 interpolation route gives the same coefficients
  const double kappa = 0.02;
  const ChebSum via_formula = sign_q_coeffs(kappa, 30);
  const ChebSum via_interp = interp_coeffs(
      [kappa](double x) { return std::pow((1.0 + kappa - x) / 2.0, -0.5); },
      30);
  bound_check(
      r, (via_formula.coeffs - via_interp.coeffs).cwiseAbs().maxCoeff(), 1e-12,
      "closed cosine form vs interpolation (abs)");
  return r;
}

SuiteResult check_sign_oddness() {
  SuiteResult r("sign-oddness");
  const SignPoly p = build_sign_poly(0.1, 1e-3);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double x = -1.0 + 2.0 * i / 499.0;
    worst = std::max(worst,
                     std::abs(eval_sign_poly(p, -x) + eval_sign_poly(p, x)));
  }
  bound_check(r, worst, 1e-15, "g(-x) + g(x)");
  require(r, eval_sign_poly(p, 0.0) == 0.0, "g(0) = 0 exactly");
  return r;
}

SuiteResult check_recurrence_exact(std::uint64_t seed) {
  SuiteResult r("recurrence-exact");
  Rng rng(seed);
  const double kappa = 0.02;
  for (auto [d, n] : {std::pair{6, 10}, std::pair{13, 25}, std::pair{30, 40}}) {
    Vector eigs(d);
    for (int i = 0; i < d; ++i) eigs[i] = rng.uniform(-1.0, 1.0 + kappa);
    eigs[0] = -1.0;
    eigs[d - 1] = 1.0 + kappa;
    const Matrix m = random_symmetric(rng, d, eigs);
    Vector c(n + 1);
    for (int k = 0; k <= n; ++k) c[k] = rng.uniform(-1.0, 1.0);
    const ChebSum sum{c};
    const Vector chi = rng.unit_vector(d);
    const Vector got = cheb_matrix_sum(exact_oracle(m), sum, chi);
    const Vector want = cheb_matrix_sum_dense(m, sum, chi);
    bound_check(r, (got - want).norm() / want.norm(), 1e-9,
                "exact recurrence vs eigendecomposition, d=" +
                    std::to_string(d) + " N=" + std::to_string(n) + " (rel)");
  }
  // M = I: the sum collapses to (sum_k c_k) chi
  {
    const int d = 5, n = 9;
    Vector c(n + 1);
    for (int k = 0; k <= n; ++k) c[k] = rng.uniform(-1.0, 1.0);
    const Vector chi = rng.unit_vector(d);
    const Vector got =
        cheb_matrix_sum(exact_oracle(Matrix::Identity(d, d)), ChebSum{c}, chi);
    bound_check(r, (got - c.sum() * chi).norm(), 1e-12,
                "M = I gives (sum c_k) chi (abs)");
  }
  // zero input stays exactly zero
  {
    const int d = 7;
    const Matrix m = random_symmetric(rng, d, Vector::Constant(d, 0.5));
    Vector c(11);
    for (int k = 0; k < 11; ++k) c[k] = rng.uniform(-1.0, 1.0);
    const Vector got =
        cheb_matrix_sum(exact_oracle(m), ChebSum{c}, Vector::Zero(d));
    require(r, got.norm() == 0.0, "zero input maps to exactly zero");
  }
  return r;
}

SuiteResult check_recurrence_intermediate(std::uint64_t seed) {
  SuiteResult r("recurrence-intermediate");
  Rng rng(seed);
  const int d = 8, n = 12;
  const double kappa = 0.02;
  Vector eigs(d);
  for (int i = 0; i < d; ++i) eigs[i] = rng.uniform(-1.0, 1.0 + kappa);
  const Matrix m = random_symmetric(rng, d, eigs);
  Vector c(n + 1);
  for (int k = 0; k <= n; ++k) c[k] = rng.uniform(-1.0, 1.0);
  const ChebSum sum{c};
  const Vector chi = rng.unit_vector(d);
  RecurrenceTrace trace;
  cheb_matrix_sum(exact_oracle(m), sum, chi, &trace);
  double worst = 0.0;
  for (int rr = 0; rr <= n + 1; ++rr) {
    Vector want = Vector::Zero(d);
    for (int k = rr; k <= n; ++k) {
      const Matrix u_poly = matrix_function(
          m, [k, rr](double x) { return cheb_u(k - rr, x); });
      want += u_poly * (c[k] * chi);
    }
    worst = std::max(worst, (trace.b[rr] - want).norm() /
                                std::max(1.0, want.norm()));
  }
  bound_check(r, worst, 1e-9,
              "b_r = sum_{k>=r} U_{k-r}(M) c_k chi, all r (rel)");
  return r;
}

SuiteResult check_recurrence_noise(std::uint64_t seed) {
  SuiteResult r("recurrence-noise");
  Rng rng(seed);
  const int d = 30, n = 25;
  const double kappa = 0.02;  // alpha = 0.1
  Vector eigs(d);
  for (int i = 0; i < d; ++i) eigs[i] = rng.uniform(-1.0, 1.0 + kappa);
  eigs[0] = -1.0;
  eigs[d - 1] = 1.0 + kappa;
  const Matrix m = random_symmetric(rng, d, eigs);
  const ChebSum q = sign_q_coeffs(kappa, n);
  const Vector chi = rng.unit_vector(d);
  const Vector want = cheb_matrix_sum_dense(m, q, chi);

  const MatVecOracle exact = exact_oracle(m);
  const Vector got_exact = cheb_matrix_sum(exact, q, chi);
  bound_check(r, (got_exact - want).norm() / want.norm(), 1e-9,
              "exact oracle vs eigendecomposition (rel)");

  const double root = std::sqrt(2.0 * kappa + kappa * kappa);
  const double rho = 1.0 + kappa + root;
  double c_c = 0.0;
  double rho_k = 1.0;
  for (Index k = 0; k < q.coeffs.size(); ++k) {
    c_c = std::max(c_c, rho_k * std::abs(q.coeffs[k]));  // ||chi|| = 1
    rho_k *= rho;
  }
  const StabilityBudget base{n, 1.0, rho / (2.0 * root), rho, c_c, 0.0};

  double prev_err = 0.0;
  for (double eps : {1e-10, 1e-8, 1e-6}) {
    StabilityBudget budget = base;
    budget.eps_prime = eps;
    const double predicted = predicted_error(budget);
    const Vector got = cheb_matrix_sum(noisy_oracle(exact, eps, seed), q, chi);
    const double measured = (got - want).norm();
    bound_check(r, measured, predicted,
                "noisy eps'=" + fmt(eps) + " measured <= predicted");
    require(r, measured >= prev_err,
            "error nondecreasing in eps' (" + fmt(measured) + ")");
    // at most linear growth between the 100x noise levels, with slack
    if (prev_err > 0.0)
      bound_check(r, measured / prev_err, 150.0,
                  "error growth per 100x eps' step stays ~linear");
    prev_err = measured;
  }
  return r;
}

SuiteResult check_ridge_contracts(std::uint64_t seed) {
  SuiteResult r("ridge-contracts");
  const Dataset ds =
      gen_random_a({/*d_prime=*/50, /*d=*/30, /*a=*/0.1, /*lambda=*/0.1,
                    /*seed=*/seed, /*noise_scale=*/0.1});
  const double lambda = 0.1;
  Rng rng(seed + 1);

  RidgeOracle cg = RidgeOracle::exact_cg(ds.a, lambda, 1e-10);
  RidgeOracle noisy = RidgeOracle::noisy(ds.a, lambda, 6, seed);
  // 50 passes reaches ~5e-3 worst-case on this instance; declared with margin
  RidgeOracle svrg = RidgeOracle::svrg(ds.a, lambda, 50, 2e-2, seed);
  double worst_cg = 0.0, worst_noisy = 0.0, worst_svrg = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Vector u = rng.unit_vector(30);
    const Vector want = dense_ridge_solve(ds.a, lambda, u);
    worst_cg = std::max(worst_cg, (cg.solve(u) - want).norm());
    worst_noisy = std::max(worst_noisy, (noisy.solve(u) - want).norm());
    worst_svrg = std::max(worst_svrg, (svrg.solve(u) - want).norm());
  }
  bound_check(r, worst_cg, cg.eps_prime(), "exact-cg solution error");
  bound_check(r, worst_noisy, noisy.eps_prime(),
              "noisy(6) solution error vs sqrt(d) 1e-6");
  bound_check(r, worst_svrg, svrg.eps_prime(),
              "svrg(50 passes) solution error vs calibrated eps'");
  return r;
}

SuiteResult check_spectrum_map(std::uint64_t seed) {
  SuiteResult r("spectrum-map");
  for (int trial = 0; trial < 3; ++trial) {
    const double lambda = trial == 2 ? 0.25 : 0.1;
    const double a = trial == 1 ? 0.0 : 0.1;
    const Dataset ds = gen_random_a({30, 20, a, lambda, seed + trial, 0.1});
    const Matrix gram = ds.a.a().transpose() * ds.a.a();
    const Matrix op = gram + lambda * Matrix::Identity(20, 20);
    Matrix s = op.ldlt().solve(gram - lambda * Matrix::Identity(20, 20));
    s = 0.5 * (s + s.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(s);
    bound_check(r, -es.eigenvalues().minCoeff(), 1.0 + 1e-10,
                "eigenvalues of S >= -1 (lambda=" + fmt(lambda) + ")");
    bound_check(r, es.eigenvalues().maxCoeff(),
                (1.0 - lambda) / (1.0 + lambda) + 1e-10,
                "eigenvalues of S <= (1-lambda)/(1+lambda)");
  }
  return r;
}

SuiteResult check_mult_s_linearity(std::uint64_t seed) {
  SuiteResult r("mult-s-linearity");
  const double lambda = 0.1;
  const Dataset ds = gen_random_a({30, 20, 0.1, lambda, seed, 0.1});
  RidgeOracle oracle = RidgeOracle::exact_cg(ds.a, lambda, 1e-12);
  Rng rng(seed + 2);
  const Vector c1 = rng.unit_vector(20);
  const Vector c2 = rng.unit_vector(20);
  const Vector mixed = mult_s(oracle, 0.7 * c1 - 1.3 * c2);
  const Vector split = 0.7 * mult_s(oracle, c1) - 1.3 * mult_s(oracle, c2);
  bound_check(r, (mixed - split).norm(), 1e-9, "mult_s linearity (abs)");

  // dense cross-check of the operator itself
  const Matrix gram = ds.a.a().transpose() * ds.a.a();
  const Matrix op = gram + lambda * Matrix::Identity(20, 20);
  const Vector want =
      op.ldlt().solve(gram * c1 - lambda * c1);
  bound_check(r, (mult_s(oracle, c1) - want).norm(), 1e-9,
              "mult_s vs dense S (abs)");
  return r;
}

SuiteResult check_projector_properties(std::uint64_t seed) {
  SuiteResult r("spectral-projector");
  const double lambda = 0.1;
  const Dataset ds = gen_random_a({20, 12, 0.1, lambda, seed, 0.1});
  const EigenReference ref(ds.a);
  bound_check(r, ref.residual(ds.a), 1e-8, "eigenpair residual");
  bound_check(r, ref.orthonormality_defect(), 1e-10, "orthonormality defect");
  Rng rng(seed + 3);
  const Vector v = rng.unit_vector(12);
  const Vector u = rng.unit_vector(12);
  const Vector pv = spectral_projector(ref, lambda, v);
  bound_check(r, (spectral_projector(ref, lambda, pv) - pv).norm(), 1e-12,
              "idempotence (abs)");
  bound_check(r,
              std::abs(u.dot(pv) - spectral_projector(ref, lambda, u).dot(v)),
              1e-10, "symmetry <u, Pv> = <Pu, v>");
  require(r, (spectral_projector(ref, 0.0, v) - v).norm() < 1e-12,
          "threshold 0 returns v");
  require(r,
          spectral_projector(ref, ref.eigenvalues()[0] + 1.0, v).norm() == 0.0,
          "threshold above lambda_1 returns 0");
  // range inclusion P_{(1+g)l} <= P_l <= P_{(1-g)l} via compositions
  const double gamma = 0.1;
  const Vector hi = spectral_projector(ref, (1.0 + gamma) * lambda, v);
  const Vector lo = spectral_projector(ref, (1.0 - gamma) * lambda, v);
  bound_check(r, (spectral_projector(ref, lambda, hi) - hi).norm(), 1e-12,
              "P_l P_hi = P_hi");
  bound_check(r, (spectral_projector(ref, (1.0 - gamma) * lambda, pv) - pv).norm(),
              1e-12, "P_lo P_l = P_l");
  return r;
}

SuiteResult check_pcp_properties(std::uint64_t seed) {
  SuiteResult r("pcp-properties");
  const double lambda = 0.1, gamma = 0.1, eps = 1e-4;
  const Dataset ds = gen_random_a({40, 30, 0.1, lambda, seed, 0.1});
  const EigenReference ref = ds.truth->reference();
  const Vector chi = ds.a.apply_t(ds.b);
  const PcpParams params = pcp_schedule(lambda, gamma, eps);
  RidgeOracle oracle = RidgeOracle::exact_cg(ds.a, lambda, 1e-12);

  const Vector xi = quick_pcp(oracle, chi, params);
  require(r, oracle.calls() == params.ridge_calls(),
          "ridge call count = 2n+1 (" + std::to_string(oracle.calls()) + ")");
  const Vector xi_star = spectral_projector(ref, lambda, chi);
  bound_check(r, (xi - xi_star).norm() / chi.norm(), eps,
              "eigengap projection error at the schedule (n=" +
                  std::to_string(params.n) + ")");

  const PcpApproxReport apx =
      check_pcp_approx(ref, lambda, gamma, eps, chi, xi);
  require(r, apx.pass(), "gap-free properties hold: head " + fmt(apx.head.lhs) +
                             " tail " + fmt(apx.tail.lhs) + " band " +
                             fmt(apx.band.lhs) + " vs " + fmt(apx.head.bound));

  const Vector xi2 = quick_pcp(oracle, xi, params);
  bound_check(r, (xi2 - xi).norm(), 3.0 * eps * chi.norm(),
              "approximate idempotence");

  // the exact solution is a (0,0)-approximate projection
  const PcpApproxReport exact_apx =
      check_pcp_approx(ref, lambda, gamma, 1e-12, chi, xi_star);
  require(r, exact_apx.pass(), "exact reference passes at eps = 1e-12");

  // negative control: an instance with all mass below the gap must fail
  {
    Rng rng(seed + 4);
    Matrix low = rng.gaussian_matrix(20, 12);
    low *= 0.28 / estimate_sigma_max(low);  // all eigenvalues < 0.09
    const DataMatrix low_m(std::move(low));
    const EigenReference low_ref(low_m);
    const Vector v = rng.unit_vector(12);
    const PcpApproxReport bad =
        check_pcp_approx(low_ref, lambda, gamma, eps, v, v);
    require(r, !bad.tail.pass() && bad.tail.lhs > 0.9,
            "copy-through output fails the tail property (margin " +
                fmt(bad.tail.lhs) + ")");
  }

  // sign identity: (I + sgn(S))/2 equals the projector
  {
    const Matrix gram = ds.a.a().transpose() * ds.a.a();
    const Matrix op = gram + lambda * Matrix::Identity(30, 30);
    Matrix s = op.ldlt().solve(gram - lambda * Matrix::Identity(30, 30));
    s = 0.5 * (s + s.transpose()).eval();
    const Matrix p_sign =
        0.5 * (Matrix::Identity(30, 30) + matrix_function(s, sign_of));
    bound_check(r, (p_sign * chi - xi_star).norm() / chi.norm(), 1e-8,
                "(I + sgn(S))/2 vs spectral projector");
  }

  // minimal sufficient degree scales ~1/gamma (spectral model + one real run)
  {
    const int n_02 = min_degree_for_error(ref, chi, lambda, 0.2, 0.98 * eps, 2000);
    const int n_01 = min_degree_for_error(ref, chi, lambda, 0.1, 0.98 * eps, 2000);
    const int n_005 = min_degree_for_error(ref, chi, lambda, 0.05, 0.98 * eps, 2000);
    require(r, n_02 > 0 && n_01 > 0 && n_005 > 0,
            "minimal degrees found: n(0.2)=" + std::to_string(n_02) +
                " n(0.1)=" + std::to_string(n_01) +
                " n(0.05)=" + std::to_string(n_005));
    require(r, n_01 <= 2.5 * n_02 && n_005 <= 2.5 * n_01,
            "halving gamma at most 2.5x the minimal degree");
    RidgeOracle o2 = RidgeOracle::exact_cg(ds.a, lambda, 1e-12);
    const Vector xi_min =
        quick_pcp(o2, chi, PcpParams::make(lambda, 0.1, n_01));
    bound_check(r, (xi_min - xi_star).norm() / chi.norm(), eps,
                "real run at the minimal degree meets the target");
  }
  return r;
}

SuiteResult check_pcr_properties(std::uint64_t seed) {
  SuiteResult r("pcr-properties");
  const double lambda = 0.1, gamma = 0.1, eps = 1e-3;
  const Dataset ds = gen_random_a({40, 30, 0.1, lambda, seed, 0.1});
  const EigenReference ref = ds.truth->reference();
  const PcrParams params = pcr_schedule(lambda, gamma, eps);
  RidgeOracle oracle = RidgeOracle::exact_cg(ds.a, lambda, 1e-12);

  const Vector x = quick_pcr(oracle, ds.b, params);
  require(r, oracle.calls() == params.ridge_calls(),
          "ridge call count = 2n+m+2 (" + std::to_string(oracle.calls()) + ")");
  const Vector x_star = exact_pcr_reference(ref, ds.a, lambda, ds.b);
  bound_check(r, (x - x_star).norm() / ds.b.norm(), eps,
              "eigengap regression error at the schedule (n=" +
                  std::to_string(params.pcp.n) + " m=" +
                  std::to_string(params.m) + ")");
  // consistency with the gap-free notion: ||x - x*|| <= 10 (eps/lambda) ||b||
  bound_check(r, (x - x_star).norm() / ds.b.norm(),
              10.0 * eps / lambda, "gap-free notion consistency");

  // geometric convergence of the reduction in isolation (exact solves)
  {
    const Vector v = spectral_projector(ref, lambda, ds.a.apply_t(ds.b));
    Vector s_inf = Vector::Zero(30);
    for (Index i = 0; i < 30; ++i)
      if (ref.eigenvalues()[i] >= lambda - kTie)
        s_inf += ref.eigenvectors().col(i).dot(v) / ref.eigenvalues()[i] *
                 ref.eigenvectors().col(i);
    const Vector s1 = dense_ridge_solve(ds.a, lambda, v);
    Vector s = v;
    double prev = (s - s_inf).norm();
    double worst_rate = 0.0;
    for (int k = 1; k <= 12; ++k) {
      s = lambda * dense_ridge_solve(ds.a, lambda, s) + s1;
      const double cur = (s - s_inf).norm();
      if (prev > 1e-11 * s_inf.norm())
        worst_rate = std::max(worst_rate, cur / prev);
      prev = cur;
    }
    bound_check(r, worst_rate, 0.75, "reduction contraction rate");
  }

  // gap-free instance: the two regression properties
  {
    const Dataset gf = gen_random_a({40, 30, 0.0, lambda, seed + 5, 0.1});
    const EigenReference gf_ref = gf.truth->reference();
    RidgeOracle o2 = RidgeOracle::exact_cg(gf.a, lambda, 1e-12);
    const Vector x_gf = quick_pcr(o2, gf.b, params);
    const PcrApproxReport apx =
        check_pcr_approx(gf_ref, gf.a, lambda, gamma, eps, gf.b, x_gf);
    require(r, apx.pass(),
            "gap-free regression properties: tail " + fmt(apx.tail.lhs) +
                " <= " + fmt(apx.tail.bound) + ", residual " +
                fmt(apx.regression.lhs) + " <= " + fmt(apx.regression.bound));
  }

  // argmin characterization of the reference
  {
    Rng rng(seed + 6);
    const double base = (ds.a.apply(x_star) - ds.b).norm();
    double best_other = std::numeric_limits<double>::infinity();
    for (int t = 0; t < 100; ++t) {
      const Vector y = x_star + rng.gaussian_vector(30);
      const Vector py = spectral_projector(ref, lambda, y);
      best_other = std::min(best_other, (ds.a.apply(py) - ds.b).norm());
    }
    bound_check(r, base, best_other + 1e-10,
                "reference beats random projected candidates");
  }

  // regressand orthogonal to the range: everything stays at zero
  {
    Rng rng(seed + 7);
    const Vector w = rng.gaussian_vector(40);
    const Matrix gram = ds.a.a().transpose() * ds.a.a();
    const Vector b_perp =
        w - ds.a.apply(gram.ldlt().solve(ds.a.apply_t(w)));
    RidgeOracle o3 = RidgeOracle::exact_cg(ds.a, lambda, 1e-12);
    const Vector x0 = quick_pcr(o3, b_perp, params);
    bound_check(r, x0.norm(), 1e-6 * b_perp.norm(),
                "kernel regressand maps to ~0");
  }
  return r;
}

SuiteResult check_datagen_properties(std::uint64_t seed) {
  SuiteResult r("datagen");
  const SynthSpec spec{60, 40, 0.1, 0.1, seed, 0.1};
  const Dataset ds = gen_random_a(spec);
  const Dataset ds2 = gen_random_a(spec);
  require(r,
          (ds.a.a() - ds2.a.a()).cwiseAbs().maxCoeff() == 0.0 &&
              (ds.b - ds2.b).cwiseAbs().maxCoeff() == 0.0,
          "same seed is bit-identical");

  // spectrum placement: exactly half per interval, none inside the gap
  const Vector& evals = ds.truth->eigenvalues;
  int above = 0, below = 0, inside = 0;
  for (Index i = 0; i < evals.size(); ++i) {
    if (evals[i] >= spec.lambda * (1.0 + spec.a))
      ++above;
    else if (evals[i] <= spec.lambda * (1.0 - spec.a))
      ++below;
    else
      ++inside;
  }
  require(r, above == 20 && below == 20 && inside == 0,
          "eigenvalue split 20/20 with an empty gap");
  bound_check(r, ds.a.sigma_max_estimate(), 1.0 + 1e-6, "sigma_max <= 1");

  const EigenReference ref = ds.truth->reference();
  bound_check(r, ref.orthonormality_defect(), 1e-10, "V orthonormality");
  {
    Rng orng(seed);
    const Matrix u = random_orthonormal(orng, 60, 40);
    bound_check(r,
                (u.transpose() * u - Matrix::Identity(40, 40))
                    .cwiseAbs()
                    .maxCoeff(),
                1e-10, "U-factor orthonormality");
  }
  bound_check(r, ref.residual(ds.a), 1e-8, "factor consistency residual");
  require(r, ds.b.dot(ds.a.apply(ds.truth->x_true)) > 0.0,
          "b correlates with A x_true");

  // round trips
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / ("pcpr-selfcheck-" + std::to_string(seed));
  fs::create_directories(dir);
  const std::string stem = (dir / "ds").string();
  save_dataset(stem, ds, &spec);
  const Dataset back = load_dataset(stem);
  require(r,
          (back.a.a() - ds.a.a()).cwiseAbs().maxCoeff() == 0.0 &&
              (back.b - ds.b).cwiseAbs().maxCoeff() == 0.0 &&
              back.truth.has_value(),
          "binary bundle round-trips bit-exactly");
  const std::string csv = (dir / "a.csv").string();
  write_matrix_csv(csv, ds.a.a());
  const Matrix a_csv = read_matrix_csv(csv);
  double rel = 0.0;
  for (Index i = 0; i < a_csv.rows(); ++i)
    for (Index j = 0; j < a_csv.cols(); ++j)
      rel = std::max(rel, std::abs(a_csv(i, j) - ds.a.a()(i, j)) /
                              std::max(1e-300, std::abs(ds.a.a()(i, j))));
  bound_check(r, rel, 1e-15, "csv round-trip (rel)");

  bool rejected = false;
  std::string message;
  try {
    DataMatrix bad(1.2 * ds.a.a());
  } catch (const validation_error& e) {
    rejected = true;
    message = e.what();
  }
  require(r, rejected && message.find("sigma_max") != std::string::npos,
          "sigma_max > 1 rejected with the measured value");
  fs::remove_all(dir);
  return r;
}

std::vector<SuiteResult> run_selfcheck(std::uint64_t seed) {
  return {
      check_chebyshev_recurrence(),
      check_chebyshev_closed_form(),
      check_chebyshev_derivative(),
      check_chebyshev_interpolation(seed),
      check_chebyshev_bounded(),
      check_clenshaw_direct(seed),
      check_sign_accuracy(),
      check_sign_inner_bound(),
      check_sign_coeff_decay(),
      check_sign_oddness(),
      check_recurrence_exact(seed),
      check_recurrence_intermediate(seed),
      check_recurrence_noise(seed),
      check_ridge_contracts(seed),
      check_spectrum_map(seed),
      check_mult_s_linearity(seed),
      check_projector_properties(seed),
      check_pcp_properties(seed),
      check_pcr_properties(seed),
      check_datagen_properties(seed),
  };
}

}  // namespace pcpr
