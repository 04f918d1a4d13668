#include "pcpr/metrics.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <ostream>

namespace pcpr {

namespace {

constexpr double kThresholdTie = 1e-12;

// exact PCR solution at the given threshold: sum_{l_i >= thr} <v_i, A^T b>/l_i v_i
Vector pinv_projected_solution(const EigenReference& ref, const DataMatrix& m,
                               double threshold, const Vector& b) {
  const Vector atb = m.apply_t(b);
  Vector x = Vector::Zero(atb.size());
  const Vector& evals = ref.eigenvalues();
  const Matrix& vecs = ref.eigenvectors();
  for (Index i = 0; i < evals.size(); ++i) {
    if (evals[i] >= threshold - kThresholdTie && evals[i] > 0.0)
      x += vecs.col(i).dot(atb) / evals[i] * vecs.col(i);
  }
  return x;
}

}  // namespace

EigenReference::EigenReference(const DataMatrix& m) {
  const Matrix gram = m.a().transpose() * m.a();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram);
  if (solver.info() != Eigen::Success)
    throw convergence_error("EigenReference: eigendecomposition failed");
  // Eigen returns ascending order; flip to descending
  const Index d = gram.rows();
  eigenvalues_.resize(d);
  eigenvectors_.resize(d, d);
  for (Index i = 0; i < d; ++i) {
    eigenvalues_[i] = solver.eigenvalues()[d - 1 - i];
    eigenvectors_.col(i) = solver.eigenvectors().col(d - 1 - i);
  }
}

EigenReference::EigenReference(Vector eigenvalues_desc, Matrix eigenvectors)
    : eigenvalues_(std::move(eigenvalues_desc)),
      eigenvectors_(std::move(eigenvectors)) {
  if (eigenvalues_.size() != eigenvectors_.cols() ||
      eigenvectors_.rows() != eigenvectors_.cols())
    throw validation_error("EigenReference: inconsistent dimensions");
  for (Index i = 0; i + 1 < eigenvalues_.size(); ++i)
    if (eigenvalues_[i] < eigenvalues_[i + 1])
      throw validation_error("EigenReference: eigenvalues not descending");
}

double EigenReference::residual(const DataMatrix& m) const {
  double worst = 0.0;
  for (Index i = 0; i < eigenvalues_.size(); ++i) {
    const Vector v = eigenvectors_.col(i);
    worst = std::max(worst, (m.gram(v) - eigenvalues_[i] * v).norm());
  }
  return worst;
}

double EigenReference::orthonormality_defect() const {
  const Matrix gram = eigenvectors_.transpose() * eigenvectors_;
  return (gram - Matrix::Identity(gram.rows(), gram.cols()))
      .cwiseAbs()
      .maxCoeff();
}

Vector spectral_projector(const EigenReference& ref, double threshold,
                          const Vector& v) {
  Vector out = Vector::Zero(v.size());
  const Vector& evals = ref.eigenvalues();
  const Matrix& vecs = ref.eigenvectors();
  for (Index i = 0; i < evals.size(); ++i) {
    if (evals[i] >= threshold - kThresholdTie)
      out += vecs.col(i).dot(v) * vecs.col(i);
    else
      break;  // descending order
  }
  return out;
}

Matrix matrix_function(const Matrix& m, const std::function<double(double)>& f) {
  if (m.rows() != m.cols())
    throw validation_error("matrix_function: matrix must be square");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw convergence_error("matrix_function: eigendecomposition failed");
  Vector fd(m.rows());
  for (Index i = 0; i < m.rows(); ++i) fd[i] = f(solver.eigenvalues()[i]);
  return solver.eigenvectors() * fd.asDiagonal() *
         solver.eigenvectors().transpose();
}

Vector cheb_matrix_sum_dense(const Matrix& m, const ChebSum& sum,
                             const Vector& chi) {
  const Matrix op = matrix_function(m, [&sum](double x) {
    double acc = 0.0;
    for (Index k = 0; k < sum.coeffs.size(); ++k)
      acc += sum.coeffs[k] * cheb_t(static_cast<int>(k), x);
    return acc;
  });
  return op * chi;
}

PcpApproxReport check_pcp_approx(const EigenReference& ref, double lambda,
                                 double gamma, double eps, const Vector& chi,
                                 const Vector& xi) {
  const double chi_norm = chi.norm();
  PcpApproxReport rep;
  rep.head = {spectral_projector(ref, (1.0 + gamma) * lambda, xi - chi).norm(),
              eps * chi_norm};
  const Vector tail = xi - spectral_projector(ref, (1.0 - gamma) * lambda, xi);
  rep.tail = {tail.norm(), eps * chi_norm};
  double band_excess = 0.0;
  const Vector& evals = ref.eigenvalues();
  const Matrix& vecs = ref.eigenvectors();
  for (Index i = 0; i < evals.size(); ++i) {
    if (evals[i] < (1.0 - gamma) * lambda || evals[i] > (1.0 + gamma) * lambda)
      continue;
    const double moved = std::abs(vecs.col(i).dot(xi - chi));
    const double present = std::abs(vecs.col(i).dot(chi));
    band_excess = std::max(band_excess, moved - present);
  }
  rep.band = {band_excess, eps * chi_norm};
  return rep;
}

PcrApproxReport check_pcr_approx(const EigenReference& ref, const DataMatrix& m,
                                 double lambda, double gamma, double eps,
                                 const Vector& b, const Vector& x) {
  const double b_norm = b.norm();
  PcrApproxReport rep;
  const Vector tail = x - spectral_projector(ref, (1.0 - gamma) * lambda, x);
  rep.tail = {tail.norm(), eps * b_norm};
  const Vector x_cmp =
      pinv_projected_solution(ref, m, (1.0 + gamma) * lambda, b);
  rep.regression = {(m.apply(x) - b).norm(),
                    (m.apply(x_cmp) - b).norm() + eps * b_norm};
  return rep;
}

ApproxReport error_report(const EigenReference& ref, const DataMatrix& m,
                          double lambda, const Vector& chi, const Vector& b,
                          const RunOutputs& outputs,
                          double small_threshold_factor) {
  ApproxReport rep;
  rep.ridge_calls = outputs.ridge_calls;
  if (outputs.xi) {
    const Vector& xi = *outputs.xi;
    const Vector xi_star = spectral_projector(ref, lambda, chi);
    const double ref_norm = xi_star.norm();
    if (ref_norm > 0.0)
      rep.projection_error = (xi - xi_star).norm() / ref_norm;
    const double xi_norm = xi.norm();
    if (xi_norm > 0.0) {
      rep.denoising_error =
          (xi - spectral_projector(ref, lambda, xi)).norm() / xi_norm;
      rep.denoising_error_small =
          (xi - spectral_projector(ref, small_threshold_factor * lambda, xi))
              .norm() /
          xi_norm;
    }
  }
  if (outputs.x) {
    const Vector x_star = pinv_projected_solution(ref, m, lambda, b);
    const double ref_norm = x_star.norm();
    if (ref_norm > 0.0)
      rep.regression_error = (*outputs.x - x_star).norm() / ref_norm;
  }
  return rep;
}

void write_report_row(std::ostream& out, const ApproxReport& r) {
  const auto put = [&out](const std::optional<double>& v) {
    if (v)
      out << *v;
    else
      out << "na";
  };
  out << r.ridge_calls << ',';
  put(r.regression_error);
  out << ',';
  put(r.projection_error);
  out << ',';
  put(r.denoising_error);
  out << ',';
  put(r.denoising_error_small);
  out << '\n';
}

}  // namespace pcpr
