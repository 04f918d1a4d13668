#pragma once

#include "pcpr/types.hpp"

namespace pcpr {

// Projection parameters. gamma = 0 is allowed and means "derive from n":
// the effective ratio is gamma_eff = max(gamma, log(n)/n), from which
// alpha = gamma_eff/(2 + gamma_eff) and kappa = 2 alpha^2.
struct PcpParams {
  double lambda;
  double gamma;
  int n;  // inner Chebyshev degree; one run costs 2n+1 ridge solves
  double gamma_eff;
  double alpha;
  double kappa;

  static PcpParams make(double lambda, double gamma, int n);

  long ridge_calls() const { return 2L * n + 1; }
};

struct PcrParams {
  PcpParams pcp;
  int m;  // reduction iterations; one run costs 2n+m+2 ridge solves

  static PcrParams make(double lambda, double gamma, int n, int m);

  long ridge_calls() const { return 2L * pcp.n + m + 2; }
};

enum class GapMode { gap_free, eigengap };

// Degree needed for a (gamma_eff, eps) projection; natural log, constant
// multiplier exposed so experiments can tighten or relax it (default 1).
int pcp_degree_schedule(double gamma_eff, double eps, double constant = 1.0);

PcpParams pcp_schedule(double lambda, double gamma, double eps,
                       double constant = 1.0);

// m = ceil(constant * ln(1/(eps gamma_eff))), at least 1.
int pcr_reduction_schedule(double gamma_eff, double eps, double constant = 1.0);

// Full PCR schedule: picks m, tightens the inner projection target to
// eps*lambda/m^2 (gap_free) or eps*sqrt(lambda)/m^2 (eigengap), then sizes n.
PcrParams pcr_schedule(double lambda, double gamma, double eps,
                       GapMode mode = GapMode::gap_free, double constant = 1.0);

}  // namespace pcpr
