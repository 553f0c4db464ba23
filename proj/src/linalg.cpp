#include "twoiso/linalg.hpp"

#include <algorithm>

namespace twoiso {

HermitianEigen hermitian_eigen(const Matrix& h) {
  const Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix psd_sqrt(const Matrix& h) {
  const auto eig = hermitian_eigen(h);
  const RealVector roots = eig.values.cwiseMax(0.0).cwiseSqrt();
  return eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

Matrix modulus(const Matrix& a) { return psd_sqrt(a.adjoint() * a); }

double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

double sup_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

Matrix adjoint_kernel_basis(const Matrix& m, double threshold) {
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullU);
  const RealVector& s = svd.singularValues();
  const Index rows = m.rows();
  std::vector<Index> kernel;
  for (Index i = 0; i < rows; ++i) {
    // Left singular vectors beyond min(rows, cols) belong to zero singular values.
    if (i >= s.size() || s(i) <= threshold) kernel.push_back(i);
  }
  return select_columns(svd.matrixU(), kernel);
}

Matrix select_columns(const Matrix& m, const std::vector<Index>& cols) {
  Matrix out(m.rows(), static_cast<Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) out.col(static_cast<Index>(k)) = m.col(cols[k]);
  return out;
}

Matrix select_block(const Matrix& m, const std::vector<Index>& rows,
                    const std::vector<Index>& cols) {
  Matrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      out(static_cast<Index>(r), static_cast<Index>(c)) = m(rows[r], cols[c]);
    }
  }
  return out;
}

}  // namespace twoiso
