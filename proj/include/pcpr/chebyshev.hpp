#pragma once

#include "pcpr/types.hpp"

#include <functional>

namespace pcpr {

// Coefficients c_0..c_n of a Chebyshev-basis sum  sum_k c_k T_k(x).
struct ChebSum {
  Vector coeffs;

  Index degree() const { return coeffs.size() - 1; }
};

// Validates: at least one coefficient, all finite.
ChebSum make_cheb_sum(Vector coeffs);

// Chebyshev polynomials of the first / second kind, evaluated by the
// three-term recurrence. Valid for any real x (including |x| > 1); the
// recurrence is the canonical path because it is what the matrix form does.
double cheb_t(int n, double x);
double cheb_u(int n, double x);

// Chebyshev points of order n: x_j = cos((j+0.5)pi/(n+1)), j = 0..n.
// Strictly inside (-1, 1), strictly decreasing in j.
Vector cheb_points(int n);

// Degree-n Chebyshev interpolation coefficients of f on [-1, 1]:
//   c_k = (2 - [k=0])/(n+1) * sum_j f(x_j) T_k(x_j).
// Direct O(n^2) evaluation. Rejects non-finite f(x_j), naming j.
ChebSum interp_coeffs(const std::function<double(double)>& f, int n);

// Backward (Clenshaw) recurrence; scalar reference for the matrix form.
double clenshaw_scalar(const ChebSum& sum, double x);

}  // namespace pcpr
