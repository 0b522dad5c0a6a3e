#pragma once

// Test-only oracles, kept independent of the library's kernel paths: full
// operator embedding by direct entry placement, displacement operators by
// repeated matrix multiplication, and brute-force marginal checks.

#include <span>
#include <vector>

#include "qclone/dense.hpp"
#include "qclone/kernels.hpp"
#include "qclone/state.hpp"
#include "qclone/weyl.hpp"

namespace oracle {

using qclone::Complex;
using qclone::Matrix;
using qclone::Vector;

/// I x op x I on the full space, entry by entry.
inline Matrix embed_full(const Matrix& op, std::span<const int> targets,
                         std::span<const int> dims) {
  long long total = 1;
  for (int d : dims) total *= d;
  const auto strides = qclone::big_endian_strides(dims);

  auto target_block = [&](long long idx) {
    long long block = 0;
    for (int t : targets) block = block * dims[t] + (idx / strides[t]) % dims[t];
    return block;
  };
  auto rest_equal = [&](long long i, long long j) {
    for (size_t r = 0; r < dims.size(); ++r) {
      bool is_target = false;
      for (int t : targets)
        if (static_cast<int>(r) == t) is_target = true;
      if (!is_target && (i / strides[r]) % dims[r] != (j / strides[r]) % dims[r])
        return false;
    }
    return true;
  };

  Matrix full = Matrix::Zero(total, total);
  for (long long i = 0; i < total; ++i)
    for (long long j = 0; j < total; ++j)
      if (rest_equal(i, j)) full(i, j) = op(target_block(i), target_block(j));
  return full;
}

/// tau^{ab} X^a Z^b via repeated multiplication of the generator matrices.
inline Matrix displacement_by_products(int d, long long a, long long b) {
  const Matrix x = qclone::shift_op(d);
  const Matrix z = qclone::clock_op(d);
  Matrix out = Matrix::Identity(d, d);
  const long long am = ((a % d) + d) % d;
  const long long bm = ((b % d) + d) % d;
  for (long long i = 0; i < am; ++i) out = x * out;
  Matrix zp = Matrix::Identity(d, d);
  for (long long i = 0; i < bm; ++i) zp = z * zp;
  return qclone::tau_power(d, a * b) * out * zp;
}

/// Max deviation from I/d^{|subset|} over every marginal of size 1..max_size.
inline double worst_marginal_deviation(const qclone::PureState& state, int max_size) {
  const int m = state.layout.size();
  double worst = 0;
  std::vector<int> subset;
  auto recurse = [&](auto&& self, int next) -> void {
    if (!subset.empty() && static_cast<int>(subset.size()) <= max_size) {
      worst = std::max(worst,
                       qclone::max_mixed_distance(qclone::partial_trace(state, subset)));
    }
    if (static_cast<int>(subset.size()) == max_size) return;
    for (int i = next; i < m; ++i) {
      subset.push_back(i);
      self(self, i + 1);
      subset.pop_back();
    }
  };
  recurse(recurse, 0);
  return worst;
}

}  // namespace oracle
