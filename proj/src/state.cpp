#include "qclone/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qclone/kernels.hpp"
#include "qclone/weyl.hpp"

namespace qclone {

namespace {

void require_dim(int d) {
  if (d < 2) throw std::invalid_argument("dimension-too-small: d must be >= 2");
}

std::vector<int> sorted_unique(std::span<const int> idx) {
  std::vector<int> out(idx.begin(), idx.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

double DensityOperator::trace_deviation() const {
  return std::abs(entries.trace() - Complex(1.0, 0.0));
}

double DensityOperator::hermiticity_defect() const {
  return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
}

double DensityOperator::negativity() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(entries, Eigen::EigenvaluesOnly);
  const double low = solver.eigenvalues().minCoeff();
  return low < 0 ? -low : 0.0;
}

PureState bell_pair(int d) {
  require_dim(d);
  Vector amps = Vector::Zero(static_cast<long long>(d) * d);
  const double w = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) amps[static_cast<long long>(j) * d + j] = w;
  return {RegisterLayout::generic(2, d), std::move(amps)};
}

PureState uniform_state(int d) {
  require_dim(d);
  Vector amps = Vector::Constant(d, Complex(1.0 / std::sqrt(static_cast<double>(d)), 0));
  return {RegisterLayout::generic(1, d), std::move(amps)};
}

PureState basis_state(int d, int k) {
  require_dim(d);
  if (k < 0 || k >= d) throw std::invalid_argument("bad-index: basis label out of range");
  Vector amps = Vector::Zero(d);
  amps[k] = 1.0;
  return {RegisterLayout::generic(1, d), std::move(amps)};
}

PureState fourier_state(int d, int m) {
  require_dim(d);
  Vector amps(d);
  const double w = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < d; ++k) amps[k] = w * omega_power(d, static_cast<long long>(m) * k);
  return {RegisterLayout::generic(1, d), std::move(amps)};
}

PureState tensor(std::span<const PureState> states) {
  if (states.empty()) throw std::invalid_argument("empty-list: tensor of no states");
  PureState out = states.front();
  for (size_t i = 1; i < states.size(); ++i) {
    out.layout = concat(out.layout, states[i].layout);
    out.amplitudes = kron(out.amplitudes, states[i].amplitudes);
  }
  return out;
}

PureState apply(const Matrix& op, std::span<const int> targets,
                const PureState& state) {
  PureState out{state.layout, {}};
  const auto dims = state.layout.dims();
  apply_dense(op, targets, dims, state.amplitudes, out.amplitudes);
  return out;
}

DensityOperator apply(const Matrix& op, std::span<const int> targets,
                      const DensityOperator& rho) {
  const auto dims = rho.layout.dims();
  const long long n = rho.entries.rows();
  // U rho U^dag: transform columns by U, then rows by conj(U).
  Matrix cols(n, n);
  Vector tmp;
  for (long long c = 0; c < n; ++c) {
    apply_dense(op, targets, dims, rho.entries.col(c), tmp);
    cols.col(c) = tmp;
  }
  Matrix out(n, n);
  Vector row;
  for (long long r = 0; r < n; ++r) {
    row = cols.row(r).conjugate();
    apply_dense(op, targets, dims, row, tmp);
    out.row(r) = tmp.conjugate();
  }
  return {rho.layout, std::move(out)};
}

DensityOperator partial_trace(const PureState& state, std::span<const int> keep) {
  const auto keep_sorted = sorted_unique(keep);
  const auto dims = state.layout.dims();
  Matrix rho;
  partial_trace_pure(state.amplitudes, dims, keep_sorted, rho);
  rho = ((rho + rho.adjoint()) / 2.0).eval();  // strip asymmetric float residue
  return {state.layout.select(keep_sorted), std::move(rho)};
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep) {
  const auto keep_sorted = sorted_unique(keep);
  const auto dims = rho.layout.dims();
  Matrix out;
  partial_trace_density(rho.entries, dims, keep_sorted, out);
  out = ((out + out.adjoint()) / 2.0).eval();
  return {rho.layout.select(keep_sorted), std::move(out)};
}

double max_mixed_distance(const DensityOperator& rho) {
  const long long n = rho.entries.rows();
  Matrix dev = rho.entries - Matrix::Identity(n, n) / static_cast<double>(n);
  return dev.cwiseAbs().maxCoeff();
}

int schmidt_rank(const PureState& state, const Bipartition& cut, double tol) {
  const auto keep = sorted_unique(cut.keep);
  const int m = state.layout.size();
  if (keep.empty() || static_cast<int>(keep.size()) >= m)
    throw std::invalid_argument("bad-subset: cut must be a proper non-empty subset");
  for (int k : keep)
    if (k < 0 || k >= m) throw std::invalid_argument("bad-subset: register out of range");

  const auto dims = state.layout.dims();
  std::vector<int> rest;
  for (int i = 0; i < m; ++i)
    if (!std::binary_search(keep.begin(), keep.end(), i)) rest.push_back(i);

  const auto roffs = subset_offsets(dims, rest);
  const auto koffs = subset_offsets(dims, keep);
  Matrix reshaped(koffs.size(), roffs.size());
  for (size_t r = 0; r < koffs.size(); ++r)
    for (size_t c = 0; c < roffs.size(); ++c)
      reshaped(r, c) = state.amplitudes[koffs[r] + roffs[c]];

  Eigen::BDCSVD<Matrix> svd(reshaped);
  const auto& sv = svd.singularValues();
  return static_cast<int>((sv.array() > tol).count());
}

double fidelity(const DensityOperator& rho, const PureState& target) {
  if (rho.entries.rows() != target.amplitudes.size())
    throw std::invalid_argument("dim-mismatch: density and target dims differ");
  const Complex val = target.amplitudes.adjoint() * rho.entries * target.amplitudes;
  return val.real();
}

double purity(const DensityOperator& rho) {
  return (rho.entries * rho.entries).trace().real();
}

PureState permute_registers(const PureState& state, std::span<const int> order) {
  const auto dims = state.layout.dims();
  PureState out{state.layout.select(order), {}};
  permute_registers(state.amplitudes, dims, order, out.amplitudes);
  return out;
}

PureState project_register(const PureState& state, int reg, int value) {
  const int m = state.layout.size();
  if (reg < 0 || reg >= m) throw std::invalid_argument("bad-index: register out of range");
  if (value < 0 || value >= state.layout.dim(reg))
    throw std::invalid_argument("bad-index: basis label out of range");

  const auto dims = state.layout.dims();
  std::vector<int> rest;
  for (int i = 0; i < m; ++i)
    if (i != reg) rest.push_back(i);
  const auto roffs = subset_offsets(dims, rest);
  const auto strides = big_endian_strides(dims);
  const long long base = static_cast<long long>(value) * strides[reg];

  Vector amps(roffs.size());
  for (size_t i = 0; i < roffs.size(); ++i) amps[i] = state.amplitudes[base + roffs[i]];
  return {state.layout.select(rest), std::move(amps)};
}

PureState random_pure_state(int d, std::mt19937_64& rng) {
  require_dim(d);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector amps(d);
  for (int k = 0; k < d; ++k) amps[k] = Complex(gauss(rng), gauss(rng));
  amps /= amps.norm();
  return {RegisterLayout::generic(1, d), std::move(amps)};
}

Matrix random_unitary(int d, std::mt19937_64& rng) {
  require_dim(d);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    const Complex diag = r(i, i);
    if (std::abs(diag) > 0) q.col(i) *= diag / std::abs(diag);
  }
  return q;
}

double phase_aligned_distance(const Vector& a, const Vector& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("dim-mismatch: vectors of different length");
  auto aligned = [](const Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (std::abs(v[i]) > 1e-12) {
        return Vector(v * (std::abs(v[i]) / v[i]));
      }
    }
    return v;
  };
  return max_abs_diff(aligned(a), aligned(b));
}

}  // namespace qclone
