#pragma once

#include "qclone/dense.hpp"

namespace qclone {

/// Root-of-unity constants of a d-dimensional register: omega = e^{2 pi i / d}
/// and tau = e^{i pi (d+1)/d} with tau^2 = omega. tau has order 2d.
struct PhaseConstants {
  int d;
  Complex omega;
  Complex tau;
};

PhaseConstants phase_constants(int d);

/// omega^e, exponent reduced mod d before exponentiation.
Complex omega_power(int d, long long e);

/// tau^e, exponent reduced mod 2d before exponentiation.
Complex tau_power(int d, long long e);

/// Residue pair indexing a displacement operator; components in [0, d).
struct WeylLabel {
  int a = 0;
  int b = 0;
  friend bool operator==(const WeylLabel&, const WeylLabel&) = default;
};

WeylLabel make_weyl_label(int d, long long a, long long b);

/// Cyclic shift X |k> = |k+1 mod d>.
Matrix shift_op(int d);

/// Clock Z |k> = omega^k |k>.
Matrix clock_op(int d);

/// Displacement W(a,b) = tau^{ab} X^a Z^b, accepted for arbitrary integer
/// labels. The family is 2d-periodic in each label; for even d the operator
/// at a canonical representative (a mod d, b mod d) can differ from W(a,b)
/// by a sign, so callers that rely on W(-a,b) = W(a,b)^T must pass the
/// integer -a rather than its residue.
Matrix weyl_displacement(int d, long long a, long long b);
Matrix weyl_displacement(int d, WeylLabel label);

/// Hilbert-Schmidt inner product Tr[A^dag B].
Complex hs_inner(const Matrix& a, const Matrix& b);

/// Canonical label of the transposed operator: (-a mod d, b).
WeylLabel weyl_transpose(int d, WeylLabel label);

/// Canonical label of the adjoint operator: (-a mod d, -b mod d).
WeylLabel weyl_dagger(int d, WeylLabel label);

}  // namespace qclone
