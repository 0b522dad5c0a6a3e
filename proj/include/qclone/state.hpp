#pragma once

#include <random>
#include <span>

#include "qclone/dense.hpp"
#include "qclone/layout.hpp"

namespace qclone {

/// Default max-entry comparison tolerance.
inline constexpr double kDefaultTolerance = 1e-10;

/// Cutoff for rank decisions on singular values / eigenvalues, looser than
/// the entry tolerance because spectra accumulate more error.
inline constexpr double kRankTolerance = 1e-8;

struct PureState {
  RegisterLayout layout;
  Vector amplitudes;

  double norm() const { return amplitudes.norm(); }
  long long dim() const { return amplitudes.size(); }
};

struct DensityOperator {
  RegisterLayout layout;
  Matrix entries;

  long long dim() const { return entries.rows(); }
  double trace_deviation() const;
  double hermiticity_defect() const;
  /// most negative eigenvalue clamped at 0 (positivity check).
  double negativity() const;
};

/// Proper non-empty register subset defining a cut; the complement is implied.
struct Bipartition {
  std::vector<int> keep;
};

PureState bell_pair(int d);
PureState uniform_state(int d);
PureState basis_state(int d, int k);
/// Amplitudes omega^{mk} / sqrt(d); m = 0 is the uniform state.
PureState fourier_state(int d, int m);

PureState tensor(std::span<const PureState> states);

PureState apply(const Matrix& op, std::span<const int> targets,
                const PureState& state);
DensityOperator apply(const Matrix& op, std::span<const int> targets,
                      const DensityOperator& rho);

DensityOperator partial_trace(const PureState& state,
                              std::span<const int> keep);
DensityOperator partial_trace(const DensityOperator& rho,
                              std::span<const int> keep);

/// Max-entry norm of rho - I/dim.
double max_mixed_distance(const DensityOperator& rho);

int schmidt_rank(const PureState& state, const Bipartition& cut,
                 double tol = kRankTolerance);

/// <target| rho |target>, real.
double fidelity(const DensityOperator& rho, const PureState& target);

double purity(const DensityOperator& rho);

PureState permute_registers(const PureState& state, std::span<const int> order);

/// Contract register `reg` with <value|; the result is unnormalized.
PureState project_register(const PureState& state, int reg, int value);

/// Haar-uniform single-register state: i.i.d. standard complex Gaussian
/// amplitudes, normalized.
PureState random_pure_state(int d, std::mt19937_64& rng);

/// Haar-ish random unitary via QR of a complex Gaussian matrix.
Matrix random_unitary(int d, std::mt19937_64& rng);

/// Max-entry distance after normalizing each vector's first significant
/// amplitude to positive real (comparison modulo global phase).
double phase_aligned_distance(const Vector& a, const Vector& b);

}  // namespace qclone
