#pragma once

#include "pcpr/chebyshev.hpp"
#include "pcpr/ridge.hpp"

#include <functional>
#include <iosfwd>
#include <optional>

namespace pcpr {

// Exact spectral reference for A^T A: eigenvalues in descending order with
// matching orthonormal eigenvectors. Test/metrics fixture, not a performance
// path.
class EigenReference {
 public:
  explicit EigenReference(const DataMatrix& m);
  EigenReference(Vector eigenvalues_desc, Matrix eigenvectors);

  const Vector& eigenvalues() const { return eigenvalues_; }
  // column i pairs with eigenvalues()[i]
  const Matrix& eigenvectors() const { return eigenvectors_; }

  double residual(const DataMatrix& m) const;   // max_i ||A^T A v_i - l_i v_i||
  double orthonormality_defect() const;         // ||V^T V - I||_max

 private:
  Vector eigenvalues_;
  Matrix eigenvectors_;
};

// Projection onto eigenvectors with eigenvalue >= threshold. Eigenvalues
// within 1e-12 of the threshold count as above it.
Vector spectral_projector(const EigenReference& ref, double threshold,
                          const Vector& v);

// Functional calculus via dense eigendecomposition (brute-force oracles).
Matrix matrix_function(const Matrix& m, const std::function<double(double)>& f);
Vector cheb_matrix_sum_dense(const Matrix& m, const ChebSum& sum,
                             const Vector& chi);

struct PropertyMargin {
  double lhs = 0.0;
  double bound = 0.0;
  bool pass() const { return lhs <= bound; }
};

// Gap-free projection approximation (three properties):
//  1. ||P_{(1+g)l}(xi - chi)||      <= eps ||chi||
//  2. ||(I - P_{(1-g)l}) xi||       <= eps ||chi||
//  3. |<v_i, xi - chi>| <= |<v_i, chi>| + eps ||chi||   for middle-band i
struct PcpApproxReport {
  PropertyMargin head;
  PropertyMargin tail;
  PropertyMargin band;  // lhs = max_i (|<v_i, xi-chi>| - |<v_i, chi>|); 0 if band empty
  bool pass() const { return head.pass() && tail.pass() && band.pass(); }
};

PcpApproxReport check_pcp_approx(const EigenReference& ref, double lambda,
                                 double gamma, double eps, const Vector& chi,
                                 const Vector& xi);

// Gap-free regression approximation (two properties), with the comparison
// solution x~* computed at threshold (1+gamma) lambda:
//  1. ||(I - P_{(1-g)l}) x|| <= eps ||b||
//  2. ||A x - b|| <= ||A x~* - b|| + eps ||b||
struct PcrApproxReport {
  PropertyMargin tail;
  PropertyMargin regression;
  bool pass() const { return tail.pass() && regression.pass(); }
};

PcrApproxReport check_pcr_approx(const EigenReference& ref, const DataMatrix& m,
                                 double lambda, double gamma, double eps,
                                 const Vector& b, const Vector& x);

// Relative error measures of one run; absent entries are not applicable
// (zero denominator, or the method does not produce that output).
struct ApproxReport {
  std::optional<double> regression_error;        // ||x - x*|| / ||x*||
  std::optional<double> projection_error;        // ||xi - xi*|| / ||xi*||
  std::optional<double> denoising_error;         // ||(I-P_l) xi|| / ||xi||
  std::optional<double> denoising_error_small;   // ||(I-P_{c l}) xi|| / ||xi||
  long ridge_calls = 0;
};

struct RunOutputs {
  std::optional<Vector> xi;  // projection output, for input chi
  std::optional<Vector> x;   // regression output, for regressand b
  long ridge_calls = 0;
};

// chi is the projected vector when outputs.xi is present; b is the
// regressand when outputs.x is present (pass A^T b as chi for the standard
// experiment protocol).
ApproxReport error_report(const EigenReference& ref, const DataMatrix& m,
                          double lambda, const Vector& chi, const Vector& b,
                          const RunOutputs& outputs,
                          double small_threshold_factor = 0.81);

// One CSV row (header written by the caller); absent values print as "na".
void write_report_row(std::ostream& out, const ApproxReport& r);

}  // namespace pcpr
