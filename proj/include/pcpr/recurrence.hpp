#pragma once

#include "pcpr/chebyshev.hpp"
#include "pcpr/params.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace pcpr {

// Black-box application of a symmetric operator M with a relative error
// contract: ||apply(u) - M u|| <= err_bound * ||u|| for every u.
struct MatVecOracle {
  std::function<Vector(const Vector&)> apply;
  double err_bound = 0.0;
  Index dim = 0;
};

MatVecOracle exact_oracle(Matrix m);

// Wraps an oracle with a seeded pseudo-random perturbation of norm exactly
// eps * ||u||: worst-case magnitude, reproducible. Test instrumentation.
MatVecOracle noisy_oracle(MatVecOracle base, double eps, std::uint64_t seed);

// Constants under which the inexact recurrence is stable:
//   rho^k ||c_k|| <= C_c,  |T_k(x)| <= C_T rho^k,  |U_k(x)| <= C_U rho^k
// for all k <= N and all x in the spectrum interval of M.
struct StabilityBudget {
  int n_terms;       // N
  double c_t;        // C_T >= 1
  double c_u;        // C_U >= 1
  double rho;        // >= 1
  double c_c;        // C_c >= 0
  double eps_prime;  // oracle error
};

// Error bound eps' * 2 (1 + 2 N C_T) N C_U C_c; rejects inadmissible
// eps' > 1/(4 N C_U), for which no guarantee holds.
double predicted_error(const StabilityBudget& budget);

// Intermediate b_r vectors, r = 0..N+1 (test hook for the identity
// b_r = sum_{k>=r} U_{k-r}(M) c_k).
struct RecurrenceTrace {
  std::vector<Vector> b;
};

// Backward recurrence for sum_{k=0}^{N} c_k T_k(M) chi:
//   b_{N+1} = 0,  b_N = c_N chi,  b_r = 2 M(b_{r+1}) - b_{r+2} + c_r chi,
// output b_0 - w where w is the oracle output for b_1 (kept from the last
// loop step, so the oracle runs exactly N times; none when N = 0, where the
// degenerate sum is c_0 chi). Memory: three live vectors plus w.
Vector cheb_matrix_sum(const MatVecOracle& oracle, const ChebSum& sum,
                       const Vector& chi, RecurrenceTrace* trace = nullptr);

// Concrete budgets for the projection operator M = (1+kappa) I - 2 S^2.
//
// Gap-free: spectrum of M lies in [-1, 1+kappa], so with
// rho = 1 + kappa + sqrt(2 kappa + kappa^2) the closed forms give C_T = 1 and
// C_U = rho / (2 sqrt(2 kappa + kappa^2)) (U_k is increasing beyond 1, so its
// supremum over the interval is at 1+kappa). C_c = max_k rho^k |c_k|, finite
// because the coefficients decay at exactly rho^{-k}.
StabilityBudget budget_for_pcp(const PcpParams& params, const ChebSum& q_coeffs,
                               double eps_prime);

// Eigengap regime: spectrum of M stays in [-1, 1], so rho = 1, C_T = 1,
// C_U = n + 1, C_c = max_k |c_k|.
StabilityBudget budget_for_pcp_eigengap(const PcpParams& params,
                                        const ChebSum& q_coeffs,
                                        double eps_prime);

}  // namespace pcpr
