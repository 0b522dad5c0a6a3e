#include "qclone/weyl.hpp"

#include <numbers>
#include <stdexcept>

namespace qclone {

namespace {

void require_dim(int d) {
  if (d < 2) throw std::invalid_argument("dimension-too-small: d must be >= 2");
}

long long positive_mod(long long v, long long m) {
  long long r = v % m;
  return r < 0 ? r + m : r;
}

}  // namespace

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

double unitarity_defect(const Matrix& m) {
  const Matrix id = Matrix::Identity(m.rows(), m.cols());
  double left = (m * m.adjoint() - id).cwiseAbs().maxCoeff();
  double right = (m.adjoint() * m - id).cwiseAbs().maxCoeff();
  return std::max(left, right);
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

double max_abs_diff(const Vector& a, const Vector& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

double trace_norm_distance(const Matrix& a, const Matrix& b) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a - b,
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

PhaseConstants phase_constants(int d) {
  require_dim(d);
  return {d, omega_power(d, 1), tau_power(d, 1)};
}

Complex omega_power(int d, long long e) {
  require_dim(d);
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(positive_mod(e, d)) / d;
  return {std::cos(angle), std::sin(angle)};
}

Complex tau_power(int d, long long e) {
  require_dim(d);
  // tau^{2d} = e^{2 pi i (d+1)} = 1, so the exponent lives mod 2d.
  const double angle =
      std::numbers::pi * (d + 1) * static_cast<double>(positive_mod(e, 2LL * d)) / d;
  return {std::cos(angle), std::sin(angle)};
}

WeylLabel make_weyl_label(int d, long long a, long long b) {
  require_dim(d);
  return {static_cast<int>(positive_mod(a, d)), static_cast<int>(positive_mod(b, d))};
}

Matrix shift_op(int d) {
  require_dim(d);
  Matrix x = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) x((k + 1) % d, k) = 1.0;
  return x;
}

Matrix clock_op(int d) {
  require_dim(d);
  Matrix z = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) z(k, k) = omega_power(d, k);
  return z;
}

Matrix weyl_displacement(int d, long long a, long long b) {
  require_dim(d);
  // W(a,b)|k> = tau^{ab} omega^{bk} |k+a>
  const Complex phase = tau_power(d, a * b);
  const int shift = static_cast<int>(positive_mod(a, d));
  Matrix w = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) w((k + shift) % d, k) = phase * omega_power(d, b * k);
  return w;
}

Matrix weyl_displacement(int d, WeylLabel label) {
  return weyl_displacement(d, label.a, label.b);
}

Complex hs_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("dim-mismatch: operators must share dimensions");
  return (a.adjoint() * b).trace();
}

WeylLabel weyl_transpose(int d, WeylLabel label) {
  return make_weyl_label(d, -label.a, label.b);
}

WeylLabel weyl_dagger(int d, WeylLabel label) {
  return make_weyl_label(d, -label.a, -label.b);
}

}  // namespace qclone
