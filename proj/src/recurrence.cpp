#include "pcpr/recurrence.hpp"

#include "pcpr/rng.hpp"

#include <cmath>
#include <memory>
#include <string>
#include <utility>

namespace pcpr {

MatVecOracle exact_oracle(Matrix m) {
  if (m.rows() != m.cols())
    throw validation_error("exact_oracle: matrix must be square");
  const Index d = m.rows();
  auto held = std::make_shared<Matrix>(std::move(m));
  return MatVecOracle{[held](const Vector& u) -> Vector { return *held * u; },
                      0.0, d};
}

MatVecOracle noisy_oracle(MatVecOracle base, double eps, std::uint64_t seed) {
  if (eps < 0.0) throw validation_error("noisy_oracle: eps must be >= 0");
  auto rng = std::make_shared<Rng>(seed);
  auto inner = std::move(base.apply);
  const Index d = base.dim;
  return MatVecOracle{
      [inner, rng, eps, d](const Vector& u) -> Vector {
        Vector out = inner(u);
        const double scale = eps * u.norm();
        if (scale > 0.0) out += scale * rng->unit_vector(d);
        return out;
      },
      base.err_bound + eps, d};
}

double predicted_error(const StabilityBudget& b) {
  if (b.n_terms < 1) throw validation_error("predicted_error: N must be >= 1");
  if (b.c_t < 1.0 || b.c_u < 1.0 || b.rho < 1.0 || b.c_c < 0.0)
    throw validation_error("predicted_error: budget constants out of range");
  if (b.eps_prime < 0.0)
    throw validation_error("predicted_error: negative eps'");
  const double admissible = 1.0 / (4.0 * b.n_terms * b.c_u);
  if (b.eps_prime > admissible)
    throw validation_error("predicted_error: eps' = " + std::to_string(b.eps_prime) +
                           " exceeds admissible 1/(4 N C_U) = " +
                           std::to_string(admissible));
  return b.eps_prime * 2.0 * (1.0 + 2.0 * b.n_terms * b.c_t) * b.n_terms *
         b.c_u * b.c_c;
}

Vector cheb_matrix_sum(const MatVecOracle& oracle, const ChebSum& sum,
                       const Vector& chi, RecurrenceTrace* trace) {
  if (chi.size() != oracle.dim)
    throw validation_error("cheb_matrix_sum: chi has dimension " +
                           std::to_string(chi.size()) + ", oracle expects " +
                           std::to_string(oracle.dim));
  const Index n = sum.degree();
  if (trace) {
    trace->b.assign(static_cast<std::size_t>(n) + 2, Vector());
    trace->b[n + 1] = Vector::Zero(chi.size());
    trace->b[n] = sum.coeffs[n] * chi;
  }
  if (n == 0) return sum.coeffs[0] * chi;

  Vector b_next = Vector::Zero(chi.size());   // b_{r+2}
  Vector b_curr = sum.coeffs[n] * chi;        // b_{r+1}
  Vector w;                                   // oracle output for b_{r+1}
  for (Index r = n - 1; r >= 0; --r) {
    w = oracle.apply(b_curr);
    Vector b_r = 2.0 * w - b_next + sum.coeffs[r] * chi;
    b_next = std::move(b_curr);
    b_curr = std::move(b_r);
    if (trace) trace->b[r] = b_curr;
  }
  return b_curr - w;  // w approximates M b_1
}

StabilityBudget budget_for_pcp(const PcpParams& params, const ChebSum& q_coeffs,
                               double eps_prime) {
  const double kappa = params.kappa;
  const double root = std::sqrt(2.0 * kappa + kappa * kappa);
  const double rho = 1.0 + kappa + root;
  const double c_u = rho / (2.0 * root);
  double c_c = 0.0;
  double rho_k = 1.0;
  for (Index k = 0; k < q_coeffs.coeffs.size(); ++k) {
    c_c = std::max(c_c, rho_k * std::abs(q_coeffs.coeffs[k]));
    rho_k *= rho;
  }
  return StabilityBudget{params.n, 1.0, c_u, rho, c_c, eps_prime};
}

StabilityBudget budget_for_pcp_eigengap(const PcpParams& params,
                                        const ChebSum& q_coeffs,
                                        double eps_prime) {
  const double c_c = q_coeffs.coeffs.cwiseAbs().maxCoeff();
  return StabilityBudget{params.n, 1.0, static_cast<double>(params.n) + 1.0,
                         1.0, c_c, eps_prime};
}

}  // namespace pcpr
