#pragma once

#include "pcpr/pcp.hpp"

#include <vector>

namespace pcpr {

// Approximate principal component regression x ~= (A^T A)^+ P_lambda A^T b:
// runs the projection on A^T b, then m iterations of
//   s <- lambda * ApxRidge(A, lambda, s) + s_1
// which evaluate the geometric series for x/(1 - lambda x) at the ridge
// operator. Costs exactly 2n+m+2 ridge solves. Optional out-params expose the
// inner projection output and the iterates s_1..s_m.
Vector quick_pcr(RidgeOracle& oracle, const Vector& b, const PcrParams& params,
                 Vector* pcp_out = nullptr,
                 std::vector<Vector>* iterates = nullptr);

// Dense reference: x* = sum_{l_i >= lambda} <v_i, A^T b> / l_i v_i.
Vector exact_pcr_reference(const EigenReference& ref, const DataMatrix& m,
                           double lambda, const Vector& b);
Vector exact_pcr_reference(const DataMatrix& m, double lambda, const Vector& b);

}  // namespace pcpr
