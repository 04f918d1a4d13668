#pragma once

#include "pcpr/metrics.hpp"
#include "pcpr/params.hpp"
#include "pcpr/recurrence.hpp"
#include "pcpr/ridge.hpp"

namespace pcpr {

// Approximate principal component projection xi ~= P_lambda chi through the
// identity P_lambda = (I + sgn(S))/2 with S = (A^T A + lambda I)^{-1}
// (A^T A - lambda I): evaluates x q_n(1+kappa-2x^2) at S via the backward
// recurrence on M = (1+kappa) I - 2 S^2. Costs exactly 2n+1 ridge solves.
Vector quick_pcp(RidgeOracle& oracle, const Vector& chi, const PcpParams& params);

// Dense-eigendecomposition reference projector (test oracle, desk scale).
Vector exact_pcp_reference(const EigenReference& ref, double lambda,
                           const Vector& chi);
Vector exact_pcp_reference(const DataMatrix& m, double lambda,
                           const Vector& chi);

}  // namespace pcpr
