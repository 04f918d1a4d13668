#include "pcpr/sign_poly.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

namespace pcpr {

int sign_poly_degree(double alpha, double eps) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw validation_error("sign_poly_degree: alpha must be in (0, 1]");
  if (!(eps > 0.0 && eps < 0.5))
    throw validation_error("sign_poly_degree: eps must be in (0, 0.5)");
  const double bound =
      std::log(3.0 / (eps * alpha * alpha)) / (std::numbers::sqrt2 * alpha);
  const int n = static_cast<int>(std::ceil(bound));
  return n < 1 ? 1 : n;
}

ChebSum sign_q_coeffs(double kappa, int n) {
  if (!(kappa > 0.0 && kappa <= 2.0))
    throw validation_error("sign_q_coeffs: kappa must be in (0, 2]");
  if (n < 0) throw validation_error("sign_q_coeffs: negative degree");
  Vector c(n + 1);
  for (int k = 0; k <= n; ++k) {
    double s = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double theta = (j + 0.5) * std::numbers::pi / (n + 1);
      s += std::numbers::sqrt2 * std::cos(k * theta) /
           std::sqrt(1.0 + kappa - std::cos(theta));
    }
    c[k] = (k == 0 ? 1.0 : 2.0) / (n + 1) * s;
  }
  return ChebSum{std::move(c)};
}

SignPoly build_sign_poly(double alpha, double eps) {
  const int n = sign_poly_degree(alpha, eps);  // validates alpha, eps
  const double kappa = 2.0 * alpha * alpha;
  return SignPoly{alpha, kappa, n, sign_q_coeffs(kappa, n), eps};
}

double eval_sign_poly(const SignPoly& p, double x) {
  return x * clenshaw_scalar(p.q_coeffs, 1.0 + p.kappa - 2.0 * x * x);
}

double eval_inner_q(const SignPoly& p, double t) {
  return clenshaw_scalar(p.q_coeffs, t);
}

double coeff_decay_bound(double kappa, int k) {
  const double rho = 1.0 + kappa + std::sqrt(2.0 * kappa + kappa * kappa);
  return std::numbers::e * std::sqrt(32.0 * (k + 1)) / kappa *
         std::pow(rho, -static_cast<double>(k));
}

void save_sign_poly_csv(std::ostream& out, const SignPoly& p) {
  out.precision(17);
  out << "alpha,kappa,n,eps\n";
  out << p.alpha << ',' << p.kappa << ',' << p.degree_q << ',' << p.eps_target
      << '\n';
  for (Index k = 0; k < p.q_coeffs.coeffs.size(); ++k)
    out << p.q_coeffs.coeffs[k] << '\n';
}

SignPoly load_sign_poly_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "alpha,kappa,n,eps")
    throw io_error(io_fault::malformed_header,
                   "sign-poly csv: expected header 'alpha,kappa,n,eps'");
  if (!std::getline(in, line))
    throw io_error(io_fault::truncated_payload, "sign-poly csv: missing values row");
  SignPoly p{};
  {
    std::istringstream row(line);
    char comma = 0;
    if (!(row >> p.alpha >> comma >> p.kappa >> comma >> p.degree_q >> comma >>
          p.eps_target))
      throw io_error(io_fault::bad_value, "sign-poly csv: bad values row");
  }
  if (p.degree_q < 0 || p.degree_q > (1 << 24))
    throw io_error(io_fault::dimension_overflow, "sign-poly csv: bad degree");
  Vector c(p.degree_q + 1);
  for (int k = 0; k <= p.degree_q; ++k) {
    if (!std::getline(in, line))
      throw io_error(io_fault::truncated_payload,
                     "sign-poly csv: missing coefficient " + std::to_string(k));
    try {
      c[k] = std::stod(line);
    } catch (const std::exception&) {
      throw io_error(io_fault::bad_value,
                     "sign-poly csv: bad coefficient " + std::to_string(k));
    }
  }
  p.q_coeffs = make_cheb_sum(std::move(c));
  return p;
}

}  // namespace pcpr
