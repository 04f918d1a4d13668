#pragma once

#include "pcpr/chebyshev.hpp"

#include <iosfwd>

namespace pcpr {

// Odd polynomial g(x) = x * q_n(1 + kappa - 2 x^2) of degree 2n+1 that
// approximates sgn(x) to eps on [-1, -alpha] u [alpha, 1] and stays inside
// [-1, 1] on [-alpha, alpha], where kappa = 2 alpha^2 and q_n is the degree-n
// Chebyshev interpolation of f(t) = ((1 + kappa - t)/2)^(-1/2).
struct SignPoly {
  double alpha;
  double kappa;
  int degree_q;      // n; deg(g) = 2n + 1
  ChebSum q_coeffs;  // c_0..c_n of q_n
  double eps_target;
};

// Smallest n with n >= (1/(sqrt(2) alpha)) * ln(3 / (eps alpha^2)).
int sign_poly_degree(double alpha, double eps);

// Coefficients of q_n in closed cosine form:
//   c_k = (2 - [k=0])/(n+1) sum_j sqrt(2) cos(k th_j) (1 + kappa - cos th_j)^(-1/2),
// th_j = (j+0.5) pi / (n+1). Equals interp_coeffs of f above.
ChebSum sign_q_coeffs(double kappa, int n);

SignPoly build_sign_poly(double alpha, double eps);

double eval_sign_poly(const SignPoly& p, double x);

// q_n(t) for t in [-1, 1 + kappa]; exposed so the above-interval region
// [1, 1 + kappa] can be probed directly.
double eval_inner_q(const SignPoly& p, double t);

// Decay bound on the k-th coefficient:
//   |c_k| <= e sqrt(32 (k+1)) / kappa * (1 + kappa + sqrt(2 kappa + kappa^2))^(-k)
double coeff_decay_bound(double kappa, int k);

// CSV form: one header row (alpha,kappa,n,eps), then one coefficient per line.
void save_sign_poly_csv(std::ostream& out, const SignPoly& p);
SignPoly load_sign_poly_csv(std::istream& in);

}  // namespace pcpr
