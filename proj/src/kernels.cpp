#include "qclone/kernels.hpp"

#include <stdexcept>

namespace qclone {

namespace {

long long product(std::span<const int> dims) {
  long long p = 1;
  for (int d : dims) p *= d;
  return p;
}

void check_targets(std::span<const int> targets, std::span<const int> dims) {
  std::vector<bool> seen(dims.size(), false);
  for (int t : targets) {
    if (t < 0 || t >= static_cast<int>(dims.size()))
      throw std::invalid_argument("bad-target: register index out of range");
    if (seen[t]) throw std::invalid_argument("bad-target: duplicate register index");
    seen[t] = true;
  }
}

std::vector<int> complement(std::span<const int> chosen, int count) {
  std::vector<bool> in(count, false);
  for (int c : chosen) in[c] = true;
  std::vector<int> rest;
  rest.reserve(count - chosen.size());
  for (int i = 0; i < count; ++i)
    if (!in[i]) rest.push_back(i);
  return rest;
}

}  // namespace

std::vector<long long> big_endian_strides(std::span<const int> dims) {
  std::vector<long long> s(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
    s[i] = s[i + 1] * dims[i + 1];
  return s;
}

std::vector<long long> subset_offsets(std::span<const int> dims,
                                      std::span<const int> regs) {
  const auto strides = big_endian_strides(dims);
  long long count = 1;
  for (int r : regs) count *= dims[r];
  std::vector<long long> offsets(count);
  for (long long idx = 0; idx < count; ++idx) {
    long long rem = idx;
    long long off = 0;
    for (int j = static_cast<int>(regs.size()) - 1; j >= 0; --j) {
      const int reg = regs[j];
      off += (rem % dims[reg]) * strides[reg];
      rem /= dims[reg];
    }
    offsets[idx] = off;
  }
  return offsets;
}

void apply_dense(const Matrix& op, std::span<const int> targets,
                 std::span<const int> dims, const Vector& in, Vector& out) {
  check_targets(targets, dims);
  const long long total = product(dims);
  long long op_dim = 1;
  for (int t : targets) op_dim *= dims[t];
  if (op.rows() != op_dim || op.cols() != op_dim)
    throw std::invalid_argument("dim-mismatch: operator does not match target dims");
  if (in.size() != total)
    throw std::invalid_argument("dim-mismatch: state size does not match dims");

  // Leading targets in layout order need no permutation: the amplitude
  // array already factors as (target block) x (rest block).
  bool leading = true;
  for (size_t i = 0; i < targets.size(); ++i)
    if (targets[i] != static_cast<int>(i)) leading = false;

  const long long rest_dim = total / op_dim;
  out.resize(total);

  if (leading) {
    Eigen::Map<const Matrix> in_m(in.data(), rest_dim, op_dim);
    Eigen::Map<Matrix> out_m(out.data(), rest_dim, op_dim);
    out_m.noalias() = in_m * op.transpose();
    return;
  }

  std::vector<int> order(targets.begin(), targets.end());
  const auto rest = complement(targets, static_cast<int>(dims.size()));
  order.insert(order.end(), rest.begin(), rest.end());

  Vector buf(total);
  permute_registers(in, dims, order, buf);
  Eigen::Map<const Matrix> in_m(buf.data(), rest_dim, op_dim);
  Vector res(total);
  Eigen::Map<Matrix> res_m(res.data(), rest_dim, op_dim);
  res_m.noalias() = in_m * op.transpose();

  std::vector<int> inverse(order.size());
  for (size_t i = 0; i < order.size(); ++i) inverse[order[i]] = static_cast<int>(i);
  std::vector<int> permuted_dims(order.size());
  for (size_t i = 0; i < order.size(); ++i) permuted_dims[i] = dims[order[i]];
  permute_registers(res, permuted_dims, inverse, out);
}

void partial_trace_pure(const Vector& amps, std::span<const int> dims,
                        std::span<const int> keep, Matrix& rho) {
  check_targets(keep, dims);
  if (keep.empty() || keep.size() >= dims.size())
    throw std::invalid_argument("bad-subset: keep must be a proper non-empty subset");
  const auto traced = complement(keep, static_cast<int>(dims.size()));
  const auto koffs = subset_offsets(dims, keep);
  const auto toffs = subset_offsets(dims, traced);
  const long long kd = static_cast<long long>(koffs.size());
  const long long td = static_cast<long long>(toffs.size());

  rho.resize(kd, kd);
#pragma omp parallel for schedule(static)
  for (long long r = 0; r < kd; ++r) {
    for (long long c = 0; c < kd; ++c) {
      Complex acc = 0;
      for (long long t = 0; t < td; ++t)
        acc += amps[koffs[r] + toffs[t]] * std::conj(amps[koffs[c] + toffs[t]]);
      rho(r, c) = acc;
    }
  }
}

void partial_trace_density(const Matrix& rho_in, std::span<const int> dims,
                           std::span<const int> keep, Matrix& rho_out) {
  check_targets(keep, dims);
  if (keep.empty() || keep.size() >= dims.size())
    throw std::invalid_argument("bad-subset: keep must be a proper non-empty subset");
  const auto traced = complement(keep, static_cast<int>(dims.size()));
  const auto koffs = subset_offsets(dims, keep);
  const auto toffs = subset_offsets(dims, traced);
  const long long kd = static_cast<long long>(koffs.size());
  const long long td = static_cast<long long>(toffs.size());

  rho_out.resize(kd, kd);
#pragma omp parallel for schedule(static)
  for (long long r = 0; r < kd; ++r) {
    for (long long c = 0; c < kd; ++c) {
      Complex acc = 0;
      for (long long t = 0; t < td; ++t)
        acc += rho_in(koffs[r] + toffs[t], koffs[c] + toffs[t]);
      rho_out(r, c) = acc;
    }
  }
}

void permute_registers(const Vector& in, std::span<const int> dims,
                       std::span<const int> order, Vector& out) {
  if (order.size() != dims.size())
    throw std::invalid_argument("bad-target: permutation size mismatch");
  check_targets(order, dims);
  const long long total = product(dims);
  const auto in_strides = big_endian_strides(dims);
  const int m = static_cast<int>(dims.size());

  std::vector<int> out_dims(m);
  for (int i = 0; i < m; ++i) out_dims[i] = dims[order[i]];
  out.resize(total);

#pragma omp parallel for schedule(static)
  for (long long dst = 0; dst < total; ++dst) {
    long long rem = dst;
    long long src = 0;
    for (int i = m - 1; i >= 0; --i) {
      src += (rem % out_dims[i]) * in_strides[order[i]];
      rem /= out_dims[i];
    }
    out[dst] = in[src];
  }
}

namespace ref {

void apply_dense(const Matrix& op, std::span<const int> targets,
                 std::span<const int> dims, const Vector& in, Vector& out) {
  const long long total = product(dims);
  const auto strides = big_endian_strides(dims);
  const auto toffs = subset_offsets(dims, targets);
  const long long op_dim = static_cast<long long>(toffs.size());

  out = Vector::Zero(total);
  for (long long idx = 0; idx < total; ++idx) {
    // digit block of the targets at this index, big-endian in target order
    long long row = 0;
    for (int t : targets) row = row * dims[t] + (idx / strides[t]) % dims[t];
    const long long base = idx - toffs[row];
    for (long long col = 0; col < op_dim; ++col)
      out[idx] += op(row, col) * in[base + toffs[col]];
  }
}

void partial_trace_pure(const Vector& amps, std::span<const int> dims,
                        std::span<const int> keep, Matrix& rho) {
  const long long total = product(dims);
  const auto strides = big_endian_strides(dims);
  const int m = static_cast<int>(dims.size());
  const auto traced = complement(keep, m);

  long long kd = 1;
  for (int k : keep) kd *= dims[k];
  rho = Matrix::Zero(kd, kd);

  for (long long i = 0; i < total; ++i) {
    for (long long j = 0; j < total; ++j) {
      bool same_traced = true;
      for (int t : traced)
        if ((i / strides[t]) % dims[t] != (j / strides[t]) % dims[t]) same_traced = false;
      if (!same_traced) continue;
      long long r = 0, c = 0;
      for (int k : keep) {
        r = r * dims[k] + (i / strides[k]) % dims[k];
        c = c * dims[k] + (j / strides[k]) % dims[k];
      }
      rho(r, c) += amps[i] * std::conj(amps[j]);
    }
  }
}

void permute_registers(const Vector& in, std::span<const int> dims,
                       std::span<const int> order, Vector& out) {
  const long long total = product(dims);
  const int m = static_cast<int>(dims.size());
  const auto in_strides = big_endian_strides(dims);
  std::vector<int> out_dims(m);
  for (int i = 0; i < m; ++i) out_dims[i] = dims[order[i]];
  const auto out_strides = big_endian_strides(out_dims);

  out.resize(total);
  for (long long src = 0; src < total; ++src) {
    long long dst = 0;
    for (int i = 0; i < m; ++i) {
      const long long digit = (src / in_strides[order[i]]) % dims[order[i]];
      dst += digit * out_strides[i];
    }
    out[dst] = in[src];
  }
}

}  // namespace ref

}  // namespace qclone
