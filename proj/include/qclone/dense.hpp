#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qclone {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

/// Larger of the max-entry norms of M M^dag - I and M^dag M - I.
double unitarity_defect(const Matrix& m);

double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs_diff(const Vector& a, const Vector& b);

/// Sum of absolute eigenvalues of the Hermitian difference a - b.
double trace_norm_distance(const Matrix& a, const Matrix& b);

}  // namespace qclone
