#pragma once

#include "pcpr/metrics.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pcpr {

// One property suite: every line is "ok ..." or "FAIL ...", with the
// measured margin printed alongside the bound it is held to.
struct SuiteResult {
  std::string name;
  bool pass = true;
  std::vector<std::string> lines;

  SuiteResult() = default;
  explicit SuiteResult(std::string suite_name) : name(std::move(suite_name)) {}
};

// Scalar spectral model of one projection run at degree n: the error
// ||xi - xi*|| / ||chi|| that the method attains with exact arithmetic,
// evaluated directly on the eigenvalues. Used to locate minimal degrees
// cheaply before confirming with a real run.
double projection_error_spectral(const EigenReference& ref, const Vector& chi,
                                 double lambda, double gamma, int n);

// Smallest n in [1, n_max] whose spectral-model error is <= tol (0 if none).
int min_degree_for_error(const EigenReference& ref, const Vector& chi,
                         double lambda, double gamma, double tol, int n_max);

SuiteResult check_chebyshev_recurrence();
SuiteResult check_chebyshev_closed_form();
SuiteResult check_chebyshev_derivative();
SuiteResult check_chebyshev_interpolation(std::uint64_t seed);
SuiteResult check_chebyshev_bounded();
SuiteResult check_clenshaw_direct(std::uint64_t seed);
SuiteResult check_sign_accuracy();              // max |g - sgn| and containment
SuiteResult check_sign_inner_bound();           // 0 <= q(1+y) <= ((k-y)/2)^-1/2
SuiteResult check_sign_coeff_decay();           // per-coefficient decay bound
SuiteResult check_sign_oddness();
SuiteResult check_recurrence_exact(std::uint64_t seed);
SuiteResult check_recurrence_intermediate(std::uint64_t seed);
SuiteResult check_recurrence_noise(std::uint64_t seed);  // stability bound
SuiteResult check_ridge_contracts(std::uint64_t seed);   // solver accuracy
SuiteResult check_spectrum_map(std::uint64_t seed);
SuiteResult check_mult_s_linearity(std::uint64_t seed);
SuiteResult check_projector_properties(std::uint64_t seed);
SuiteResult check_pcp_properties(std::uint64_t seed);
SuiteResult check_pcr_properties(std::uint64_t seed);
SuiteResult check_datagen_properties(std::uint64_t seed);

std::vector<SuiteResult> run_selfcheck(std::uint64_t seed = 20250810);

}  // namespace pcpr
