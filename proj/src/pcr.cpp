#include "pcpr/pcr.hpp"

#include <string>

namespace pcpr {

Vector quick_pcr(RidgeOracle& oracle, const Vector& b, const PcrParams& params,
                 Vector* pcp_out, std::vector<Vector>* iterates) {
  const DataMatrix& mat = oracle.matrix();
  if (b.size() != mat.rows())
    throw validation_error("quick_pcr: b has dimension " +
                           std::to_string(b.size()) + ", matrix has " +
                           std::to_string(mat.rows()) + " rows");
  const Vector v = quick_pcp(oracle, mat.apply_t(b), params.pcp);
  if (pcp_out) *pcp_out = v;
  if (iterates) iterates->clear();

  Vector s = v;
  const Vector s1 = oracle.solve(v);
  for (int r = 1; r <= params.m; ++r) {
    s = params.pcp.lambda * oracle.solve(s) + s1;
    if (iterates) iterates->push_back(s);
  }
  return s;
}

Vector exact_pcr_reference(const EigenReference& ref, const DataMatrix& m,
                           double lambda, const Vector& b) {
  const Vector atb = m.apply_t(b);
  Vector x = Vector::Zero(atb.size());
  const Vector& evals = ref.eigenvalues();
  const Matrix& vecs = ref.eigenvectors();
  for (Index i = 0; i < evals.size(); ++i) {
    if (evals[i] >= lambda - 1e-12 && evals[i] > 0.0)
      x += vecs.col(i).dot(atb) / evals[i] * vecs.col(i);
  }
  return x;
}

Vector exact_pcr_reference(const DataMatrix& m, double lambda,
                           const Vector& b) {
  return exact_pcr_reference(EigenReference(m), m, lambda, b);
}

}  // namespace pcpr
