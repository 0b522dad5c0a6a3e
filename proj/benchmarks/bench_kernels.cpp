// Times the OpenMP kernels against the serial reference implementations on
// protocol-shaped workloads. Run: bench_kernels [repeats]

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qclone/kernels.hpp"
#include "qclone/weyl.hpp"

using namespace qclone;

namespace {

std::mt19937_64 rng(1);

Vector random_vec(long long n) {
  std::normal_distribution<double> g;
  Vector v(n);
  for (long long i = 0; i < n; ++i) v[i] = Complex(g(rng), g(rng));
  return v / v.norm();
}

Matrix random_op(long long n) {
  std::normal_distribution<double> g;
  Matrix m(n, n);
  for (long long r = 0; r < n; ++r)
    for (long long c = 0; c < n; ++c) m(r, c) = Complex(g(rng), g(rng));
  return m;
}

template <typename F>
double time_ms(int repeats, F&& f) {
  f();  // warm up
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < repeats; ++i) f();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() / repeats;
}

void bench_apply(int d, int registers, std::vector<int> targets, int repeats) {
  std::vector<int> dims(registers, d);
  long long total = 1;
  for (int dim : dims) total *= dim;
  long long op_dim = 1;
  for (int t : targets) op_dim *= dims[t];

  const Vector in = random_vec(total);
  const Matrix op = random_op(op_dim);
  Vector out_kernel, out_ref;

  const double t_kernel =
      time_ms(repeats, [&] { apply_dense(op, targets, dims, in, out_kernel); });
  const double t_ref =
      time_ms(repeats, [&] { ref::apply_dense(op, targets, dims, in, out_ref); });
  const double diff = max_abs_diff(out_kernel, out_ref);

  std::printf("apply   d=%d regs=%d op=%5lld  kernel %8.3f ms  reference %9.3f ms  x%5.1f  |diff| %.1e\n",
              d, registers, op_dim, t_kernel, t_ref, t_ref / t_kernel, diff);
}

void bench_ptrace(int d, int registers, std::vector<int> keep, int repeats) {
  std::vector<int> dims(registers, d);
  long long total = 1;
  for (int dim : dims) total *= dim;
  const Vector amps = random_vec(total);
  Matrix rho_kernel, rho_ref;

  const double t_kernel =
      time_ms(repeats, [&] { partial_trace_pure(amps, dims, keep, rho_kernel); });
  const double t_ref =
      time_ms(repeats, [&] { ref::partial_trace_pure(amps, dims, keep, rho_ref); });
  const double diff = max_abs_diff(rho_kernel, rho_ref);

  std::printf("ptrace  d=%d regs=%d keep=%zu   kernel %8.3f ms  reference %9.3f ms  x%5.1f  |diff| %.1e\n",
              d, registers, keep.size(), t_kernel, t_ref, t_ref / t_kernel, diff);
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 5;
#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled at build time\n");
#endif

  bench_apply(2, 7, {0, 1, 2, 3}, repeats);   // encryptor shape, n=3 qubits
  bench_apply(5, 7, {0, 1, 2, 3}, repeats);   // encryptor shape, n=3 d=5
  bench_apply(5, 7, {1, 4, 5, 6}, repeats);   // decryptor shape (permuted targets)
  bench_apply(5, 5, {1, 3, 4}, repeats);      // decryptor shape, n=2

  bench_ptrace(2, 7, {0, 1, 4}, repeats);     // three-register marginal
  bench_ptrace(5, 5, {1, 2}, repeats);        // two-register marginal
  bench_ptrace(3, 6, {0, 1, 2}, repeats);     // half of a six-register state
  return 0;
}
