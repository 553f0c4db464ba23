#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace twoiso {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

struct HermitianEigen {
  RealVector values;  // ascending
  Matrix vectors;     // columns are orthonormal eigenvectors
};

/// Eigendecomposition of the Hermitian part of `h`.
HermitianEigen hermitian_eigen(const Matrix& h);

/// Positive square root of a positive semidefinite matrix; tiny negative
/// eigenvalues from rounding are clipped to zero.
Matrix psd_sqrt(const Matrix& h);

/// |A| = (A^* A)^{1/2}.
Matrix modulus(const Matrix& a);

/// Largest singular value.
double operator_norm(const Matrix& a);

/// Largest absolute entry.
double sup_norm(const Matrix& a);

/// Orthonormal basis of ker M^*, from the left singular vectors of M whose
/// singular value is <= threshold.
Matrix adjoint_kernel_basis(const Matrix& m, double threshold);

/// Orthogonal projector onto the column span of an orthonormal Q.
inline Matrix projector(const Matrix& q) { return q * q.adjoint(); }

/// Columns / rows / square submatrix on an index list.
Matrix select_columns(const Matrix& m, const std::vector<Index>& cols);
Matrix select_block(const Matrix& m, const std::vector<Index>& rows,
                    const std::vector<Index>& cols);

}  // namespace twoiso
