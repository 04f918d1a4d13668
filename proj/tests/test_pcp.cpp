#include "pcpr/datagen.hpp"
#include "pcpr/pcp.hpp"
#include "pcpr/selfcheck.hpp"

#include <doctest.h>

#include <Eigen/QR>

#include <cmath>

using namespace pcpr;

TEST_CASE("parameter derivation") {
  const PcpParams p = PcpParams::make(0.1, 0.1, 50);
  CHECK(p.gamma_eff == 0.1);
  CHECK(p.alpha == doctest::Approx(0.1 / 2.1).epsilon(1e-15));
  CHECK(p.kappa == 2.0 * p.alpha * p.alpha);
  CHECK(p.ridge_calls() == 101);

  // gamma = 0 derives the effective ratio from n
  const PcpParams q = PcpParams::make(0.1, 0.0, 100);
  CHECK(q.gamma_eff == doctest::Approx(std::log(100.0) / 100.0).epsilon(1e-15));
  CHECK_THROWS_AS(PcpParams::make(0.1, 0.0, 1), validation_error);

  CHECK_THROWS_AS(PcpParams::make(0.0, 0.1, 10), validation_error);
  CHECK_THROWS_AS(PcpParams::make(0.1, 0.7, 10), validation_error);
  CHECK_THROWS_AS(PcpParams::make(0.1, 0.1, 0), validation_error);
}

TEST_CASE("full projection when every eigenvalue clears the threshold") {
  Rng rng(21);
  Eigen::HouseholderQR<Matrix> qr(rng.gaussian_matrix(20, 15));
  const DataMatrix ortho(qr.householderQ() * Matrix::Identity(20, 15));
  RidgeOracle oracle = RidgeOracle::exact_cg(ortho, 0.5, 1e-12);
  const Vector chi = rng.unit_vector(15);
  const PcpParams params = pcp_schedule(0.5, 0.1, 1e-6);
  const Vector xi = quick_pcp(oracle, chi, params);
  CHECK((xi - chi).norm() <= 1e-6 * chi.norm());
}

TEST_CASE("empty projection when the matrix is zero") {
  const DataMatrix zero(Matrix::Zero(12, 8));
  RidgeOracle oracle = RidgeOracle::exact_cg(zero, 0.5, 1e-12);
  Rng rng(22);
  const Vector chi = rng.unit_vector(8);
  const Vector xi = quick_pcp(oracle, chi, pcp_schedule(0.5, 0.1, 1e-6));
  CHECK(xi.norm() <= 1e-6 * chi.norm());
}

TEST_CASE("eigengap instance matches the dense reference") {
  const double lambda = 0.1;
  const Dataset ds = gen_random_a({40, 30, 0.1, lambda, 77, 0.1});
  RidgeOracle oracle = RidgeOracle::exact_cg(ds.a, lambda, 1e-12);
  const Vector chi = ds.a.apply_t(ds.b);
  const PcpParams params = pcp_schedule(lambda, 0.1, 1e-4);
  const Vector xi = quick_pcp(oracle, chi, params);
  CHECK(oracle.calls() == params.ridge_calls());
  const Vector want = exact_pcp_reference(ds.a, lambda, chi);
  CHECK((xi - want).norm() <= 1e-4 * chi.norm());
}

TEST_CASE("degree zero is rejected") {
  const DataMatrix zero(Matrix::Zero(4, 3));
  RidgeOracle oracle = RidgeOracle::exact_cg(zero, 0.5, 1e-10);
  PcpParams params = pcp_schedule(0.5, 0.1, 1e-4);
  params.n = 0;
  CHECK_THROWS_AS(quick_pcp(oracle, Vector::Ones(3), params), validation_error);
  CHECK_THROWS_AS(quick_pcp(oracle, Vector::Ones(2), pcp_schedule(0.5, 0.1, 1e-4)),
                  validation_error);  // dimension mismatch
}

TEST_CASE("reference projector on eigenvectors") {
  const Dataset ds = gen_random_a({30, 20, 0.1, 0.1, 33, 0.1});
  const EigenReference ref = ds.truth->reference();
  const Vector top = ref.eigenvectors().col(0);
  const Vector bottom = ref.eigenvectors().col(19);
  CHECK((exact_pcp_reference(ref, 0.1, top) - top).norm() < 1e-12);
  CHECK(exact_pcp_reference(ref, 0.1, bottom).norm() < 1e-12);
}

TEST_CASE("module property suite") {
  const SuiteResult suite = check_pcp_properties(3);
  INFO(suite.name);
  CHECK(suite.pass);
}
