#include "pcpr/params.hpp"

#include "pcpr/sign_poly.hpp"

#include <cmath>

namespace pcpr {

PcpParams PcpParams::make(double lambda, double gamma, int n) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw validation_error("PcpParams: lambda must be in (0, 1)");
  if (!(gamma >= 0.0 && gamma <= 2.0 / 3.0))
    throw validation_error("PcpParams: gamma must be in [0, 2/3]");
  if (n < 1) throw validation_error("PcpParams: n must be >= 1");
  const double gamma_eff = std::max(gamma, std::log(static_cast<double>(n)) / n);
  if (!(gamma_eff > 0.0))
    throw validation_error(
        "PcpParams: gamma_eff = max(gamma, log(n)/n) is zero; "
        "with gamma = 0, n must be >= 2");
  const double alpha = gamma_eff / (2.0 + gamma_eff);
  return PcpParams{lambda, gamma, n, gamma_eff, alpha, 2.0 * alpha * alpha};
}

PcrParams PcrParams::make(double lambda, double gamma, int n, int m) {
  if (m < 1) throw validation_error("PcrParams: m must be >= 1");
  return PcrParams{PcpParams::make(lambda, gamma, n), m};
}

int pcp_degree_schedule(double gamma_eff, double eps, double constant) {
  if (!(gamma_eff > 0.0 && gamma_eff <= 2.0 / 3.0))
    throw validation_error("pcp_degree_schedule: gamma_eff must be in (0, 2/3]");
  const double alpha = gamma_eff / (2.0 + gamma_eff);
  const int n = sign_poly_degree(alpha, eps);
  if (constant == 1.0) return n;
  const int scaled = static_cast<int>(std::ceil(constant * n));
  return scaled < 1 ? 1 : scaled;
}

PcpParams pcp_schedule(double lambda, double gamma, double eps,
                       double constant) {
  if (!(gamma > 0.0))
    throw validation_error("pcp_schedule: gamma must be positive (use make() for gamma = 0)");
  const int n = pcp_degree_schedule(gamma, eps, constant);
  return PcpParams::make(lambda, gamma, n);
}

int pcr_reduction_schedule(double gamma_eff, double eps, double constant) {
  if (!(gamma_eff > 0.0) || !(eps > 0.0))
    throw validation_error("pcr_reduction_schedule: gamma_eff and eps must be positive");
  const int m = static_cast<int>(std::ceil(constant * std::log(1.0 / (eps * gamma_eff))));
  return m < 1 ? 1 : m;
}

PcrParams pcr_schedule(double lambda, double gamma, double eps, GapMode mode,
                       double constant) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw validation_error("pcr_schedule: lambda must be in (0, 1)");
  const int m = pcr_reduction_schedule(gamma, eps, constant);
  const double tighten = (mode == GapMode::gap_free) ? lambda : std::sqrt(lambda);
  double eps_pcp = eps * tighten / (static_cast<double>(m) * m);
  // the degree formula needs eps < 1/2; the tightened target always is for
  // eps < 1/2, but clamp to keep the helper total
  if (eps_pcp >= 0.5) eps_pcp = 0.49;
  const int n = pcp_degree_schedule(gamma, eps_pcp, constant);
  return PcrParams::make(lambda, gamma, n, m);
}

}  // namespace pcpr
