#include "pcpr/pcp.hpp"

#include "pcpr/sign_poly.hpp"

#include <string>

namespace pcpr {

Vector quick_pcp(RidgeOracle& oracle, const Vector& chi,
                 const PcpParams& params) {
  if (params.n < 1)
    throw validation_error("quick_pcp: n must be >= 1 (the final ridge call "
                           "reuses the last loop output)");
  const DataMatrix& m = oracle.matrix();
  if (chi.size() != m.cols())
    throw validation_error("quick_pcp: chi has dimension " +
                           std::to_string(chi.size()) + ", matrix has " +
                           std::to_string(m.cols()) + " columns");

  const ChebSum q = sign_q_coeffs(params.kappa, params.n);
  const double shift = 1.0 + params.kappa;
  // two ridge solves per application; relative error O(eps')
  const MatVecOracle m_oracle{
      [&oracle, shift](const Vector& v) -> Vector {
        return shift * v - 2.0 * mult_s(oracle, mult_s(oracle, v));
      },
      8.0 * oracle.eps_prime(), m.cols()};

  const Vector s_hat = cheb_matrix_sum(m_oracle, q, chi);  // q_n(M) chi
  const Vector u = mult_s(oracle, s_hat);                  // ~= sgn(S) chi
  return 0.5 * u + 0.5 * chi;
}

Vector exact_pcp_reference(const EigenReference& ref, double lambda,
                           const Vector& chi) {
  return spectral_projector(ref, lambda, chi);
}

Vector exact_pcp_reference(const DataMatrix& m, double lambda,
                           const Vector& chi) {
  return exact_pcp_reference(EigenReference(m), lambda, chi);
}

}  // namespace pcpr
