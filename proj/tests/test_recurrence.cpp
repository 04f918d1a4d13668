#include "pcpr/metrics.hpp"
#include "pcpr/recurrence.hpp"
#include "pcpr/rng.hpp"
#include "pcpr/selfcheck.hpp"
#include "pcpr/sign_poly.hpp"

#include <doctest.h>

#include <Eigen/QR>

#include <cmath>

using namespace pcpr;

namespace {

Matrix symmetric_with_spectrum(Rng& rng, Index d, const Vector& eigs) {
  const Matrix g = rng.gaussian_matrix(d, d);
  Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  return q * eigs.asDiagonal() * q.transpose();
}

}  // namespace

TEST_CASE("degree zero needs no oracle") {
  int calls = 0;
  const MatVecOracle oracle{[&calls](const Vector& u) -> Vector {
                              ++calls;
                              return u;
                            },
                            0.0, 4};
  const Vector chi = Vector::LinSpaced(4, 1.0, 4.0);
  const Vector out =
      cheb_matrix_sum(oracle, ChebSum{Vector::Constant(1, 3.0)}, chi);
  CHECK((out - 3.0 * chi).norm() == 0.0);
  CHECK(calls == 0);
}

TEST_CASE("oracle applied exactly N times") {
  int calls = 0;
  const MatVecOracle oracle{[&calls](const Vector& u) -> Vector {
                              ++calls;
                              return 0.5 * u;
                            },
                            0.0, 3};
  Vector c(8);
  c.setConstant(1.0);
  cheb_matrix_sum(oracle, ChebSum{c}, Vector::Ones(3));
  CHECK(calls == 7);
}

TEST_CASE("degree one expands to c0 chi + c1 M chi") {
  Rng rng(4);
  const Matrix m = symmetric_with_spectrum(rng, 5, rng.gaussian_vector(5));
  const Vector chi = rng.unit_vector(5);
  Vector c(2);
  c << 0.3, -1.7;
  const Vector got = cheb_matrix_sum(exact_oracle(m), ChebSum{c}, chi);
  CHECK((got - (0.3 * chi - 1.7 * (m * chi))).norm() < 1e-14);
}

TEST_CASE("identity operator collapses to the coefficient sum") {
  Rng rng(5);
  Vector c(10);
  for (int k = 0; k < 10; ++k) c[k] = rng.uniform(-1.0, 1.0);
  const Vector chi = rng.unit_vector(6);
  const Vector out =
      cheb_matrix_sum(exact_oracle(Matrix::Identity(6, 6)), ChebSum{c}, chi);
  CHECK((out - c.sum() * chi).norm() < 1e-13);
}

TEST_CASE("random symmetric operator matches the dense oracle") {
  Rng rng(17);
  Vector eigs(6);
  for (int i = 0; i < 6; ++i) eigs[i] = rng.uniform(-1.0, 1.0);
  const Matrix m = symmetric_with_spectrum(rng, 6, eigs);
  Vector c(10);
  for (int k = 0; k < 10; ++k) c[k] = rng.uniform(-1.0, 1.0);
  const Vector chi = rng.unit_vector(6);
  const Vector got = cheb_matrix_sum(exact_oracle(m), ChebSum{c}, chi);
  const Vector want = cheb_matrix_sum_dense(m, ChebSum{c}, chi);
  CHECK((got - want).norm() / want.norm() < 1e-10);
}

TEST_CASE("dimension mismatch is rejected") {
  const MatVecOracle oracle = exact_oracle(Matrix::Identity(4, 4));
  CHECK_THROWS_AS(
      cheb_matrix_sum(oracle, ChebSum{Vector::Ones(3)}, Vector::Ones(5)),
      validation_error);
}

TEST_CASE("zero input stays exactly zero") {
  Rng rng(23);
  const Matrix m = symmetric_with_spectrum(rng, 5, Vector::Constant(5, 0.3));
  Vector c(7);
  for (int k = 0; k < 7; ++k) c[k] = rng.uniform(-1.0, 1.0);
  const Vector out = cheb_matrix_sum(exact_oracle(m), ChebSum{c}, Vector::Zero(5));
  CHECK(out.norm() == 0.0);
}

TEST_CASE("predicted error closed form") {
  StabilityBudget b{10, 1.0, 11.0, 1.0, 5.0, 0.0};
  CHECK(predicted_error(b) == 0.0);
  b.eps_prime = 1e-6;
  CHECK(predicted_error(b) == doctest::Approx(0.0231).epsilon(1e-12));
  b.eps_prime = 1.0 / (4.0 * 10 * 11.0) * 1.01;  // just above admissible
  CHECK_THROWS_AS(predicted_error(b), validation_error);
}

TEST_CASE("noisy wrapper is deterministic with exact magnitude") {
  Rng rng(31);
  const Matrix m = symmetric_with_spectrum(rng, 8, Vector::Constant(8, 0.5));
  const MatVecOracle base = exact_oracle(m);
  const MatVecOracle n1 = noisy_oracle(base, 1e-6, 99);
  const MatVecOracle n2 = noisy_oracle(base, 1e-6, 99);
  const Vector u = rng.unit_vector(8);
  const Vector a = n1.apply(u);
  const Vector b = n2.apply(u);
  CHECK((a - b).norm() == 0.0);
  CHECK(std::abs((a - m * u).norm() - 1e-6 * u.norm()) < 1e-15);
}

TEST_CASE("stability budgets for the projection operator") {
  const PcpParams params = PcpParams::make(0.1, 0.1, 60);
  const ChebSum q = sign_q_coeffs(params.kappa, params.n);

  const StabilityBudget gap_free = budget_for_pcp(params, q, 1e-8);
  CHECK(gap_free.rho > 1.0);
  CHECK(gap_free.c_t == 1.0);
  CHECK(gap_free.c_u >= 1.0);
  CHECK(std::isfinite(gap_free.c_c));
  // rho^k |c_k| stays below the decay-bound prefactor e sqrt(32(k+1))/kappa
  const double prefactor = std::exp(1.0) *
                           std::sqrt(32.0 * (params.n + 1)) / params.kappa;
  CHECK(gap_free.c_c <= prefactor);

  const StabilityBudget eigengap = budget_for_pcp_eigengap(params, q, 1e-8);
  CHECK(eigengap.rho == 1.0);
  CHECK(eigengap.c_u == params.n + 1.0);
  CHECK(eigengap.c_c == q.coeffs.cwiseAbs().maxCoeff());
}

TEST_CASE("noise propagates linearly and within the predicted bound") {
  Rng rng(41);
  const int d = 20, n = 18;
  const double kappa = 0.02;
  Vector eigs(d);
  for (int i = 0; i < d; ++i) eigs[i] = rng.uniform(-1.0, 1.0 + kappa);
  const Matrix m = symmetric_with_spectrum(rng, d, eigs);
  const ChebSum q = sign_q_coeffs(kappa, n);
  const Vector chi = rng.unit_vector(d);
  const Vector want = cheb_matrix_sum_dense(m, q, chi);
  const MatVecOracle exact = exact_oracle(m);

  const double root = std::sqrt(2.0 * kappa + kappa * kappa);
  const double rho = 1.0 + kappa + root;
  double c_c = 0.0, rho_k = 1.0;
  for (Index k = 0; k < q.coeffs.size(); ++k) {
    c_c = std::max(c_c, rho_k * std::abs(q.coeffs[k]));
    rho_k *= rho;
  }
  double prev = 0.0;
  for (double eps : {1e-10, 1e-8, 1e-6}) {
    const StabilityBudget budget{n, 1.0, rho / (2.0 * root), rho, c_c, eps};
    const Vector got = cheb_matrix_sum(noisy_oracle(exact, eps, 7), q, chi);
    const double err = (got - want).norm();
    CHECK(err <= predicted_error(budget));
    CHECK(err >= prev);
    prev = err;
  }
}

TEST_CASE("module property suites") {
  for (const SuiteResult& suite :
       {check_recurrence_exact(3), check_recurrence_intermediate(3),
        check_recurrence_noise(3)}) {
    INFO(suite.name);
    CHECK(suite.pass);
  }
}
