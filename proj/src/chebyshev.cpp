#include "pcpr/chebyshev.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace pcpr {

ChebSum make_cheb_sum(Vector coeffs) {
  if (coeffs.size() < 1)
    throw validation_error("ChebSum: need at least one coefficient");
  if (!coeffs.allFinite())
    throw validation_error("ChebSum: non-finite coefficient");
  return ChebSum{std::move(coeffs)};
}

double cheb_t(int n, double x) {
  if (n < 0) throw validation_error("cheb_t: negative degree");
  if (n == 0) return 1.0;
  if (n == 1) return x;
  double prev = 1.0;
  double curr = x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * curr - prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

double cheb_u(int n, double x) {
  if (n < 0) throw validation_error("cheb_u: negative degree");
  if (n == 0) return 1.0;
  if (n == 1) return 2.0 * x;
  double prev = 1.0;
  double curr = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * curr - prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

Vector cheb_points(int n) {
  if (n < 0) throw validation_error("cheb_points: negative order");
  Vector pts(n + 1);
  for (int j = 0; j <= n; ++j)
    pts[j] = std::cos((j + 0.5) * std::numbers::pi / (n + 1));
  return pts;
}

ChebSum interp_coeffs(const std::function<double(double)>& f, int n) {
  if (n < 0) throw validation_error("interp_coeffs: negative degree");
  const Vector pts = cheb_points(n);
  Vector fx(n + 1);
  for (int j = 0; j <= n; ++j) {
    fx[j] = f(pts[j]);
    if (!std::isfinite(fx[j]))
      throw validation_error("interp_coeffs: f is non-finite at Chebyshev point j=" +
                             std::to_string(j));
  }
  // T_k(x_j) = cos(k (j+0.5) pi / (n+1)) since x_j = cos((j+0.5) pi / (n+1))
  Vector c(n + 1);
  for (int k = 0; k <= n; ++k) {
    double s = 0.0;
    for (int j = 0; j <= n; ++j)
      s += fx[j] * std::cos(k * (j + 0.5) * std::numbers::pi / (n + 1));
    c[k] = (k == 0 ? 1.0 : 2.0) / (n + 1) * s;
  }
  return ChebSum{std::move(c)};
}

double clenshaw_scalar(const ChebSum& sum, double x) {
  const Index n = sum.degree();
  if (n == 0) return sum.coeffs[0];
  double b_next = 0.0;             // b_{r+2}
  double b_curr = sum.coeffs[n];   // b_{r+1}, starts as b_N = c_N
  for (Index r = n - 1; r >= 0; --r) {
    const double b_r = 2.0 * x * b_curr - b_next + sum.coeffs[r];
    b_next = b_curr;
    b_curr = b_r;
  }
  return b_curr - x * b_next;  // b_0 - x b_1
}

}  // namespace pcpr
