#pragma once

#include <span>
#include <vector>

#include "qclone/state.hpp"
#include "qclone/weyl.hpp"

namespace qclone {

/// Protocol configuration: one input register A plus n signal-noise pairs,
/// laid out as [A, S1..Sn, N1..Nn]. n >= 2; with a single pair the
/// encrypted clone cannot be decrypted.
struct CloneSystem {
  int d = 0;
  int n = 0;
  RegisterLayout layout;

  CloneSystem(int d, int n);

  int input_register() const { return 0; }
  int signal_register(int i) const;  // i in 1..n
  int noise_register(int i) const;   // i in 1..n
  long long state_dim() const { return layout.total_dim(); }
};

/// Encryption phase phi(a,b) = tau^{-(a^2 + b^2 - (n+1) a b)}; unit modulus.
Complex encryption_phase(int d, int n, long long a, long long b);

/// |Psi_{-a,-b}> = tau^{-ab} (W(a,b)^dag x I) |Phi_d>, i.e. amplitudes
/// omega^{-bj}/sqrt(d) on |j-a, j>.
Vector displaced_bell(int d, long long a, long long b);

/// Unitary on [A, S1..Sn]: (1/d) sum_{a,b} phi^{-1}(a,b) W(a,b) x (W(a,b)^dag)^{x n}.
Matrix build_encryptor(const CloneSystem& sys);
std::vector<int> encryptor_targets(const CloneSystem& sys);

/// Unitary on [S_l, N_l, N_rest ascending]: sum_{a,b} phi(a,b)
/// |Psi_{-a,-b}><Psi_{-a,-b}| x (W(a,b)^T)^{x (n-1)}.
Matrix build_decryptor(const CloneSystem& sys, int l);
std::vector<int> decryptor_targets(const CloneSystem& sys, int l);

/// |Psi_0> = |psi>_A x Phi^{x n}, registers permuted to layout order.
PureState initial_state(const CloneSystem& sys, const PureState& psi);

/// U_enc |Psi_0>; hides psi in every single-register marginal of {A, S_i}.
PureState encrypt(const CloneSystem& sys, const PureState& psi);

struct DecryptionResult {
  DensityOperator recovered;  // marginal of S_l, equals |psi><psi|
  PureState post_state;
};

DecryptionResult decrypt(const CloneSystem& sys, const PureState& encrypted,
                         int l);

/// Decryptor variant for one lost noise register: the transposed factor on
/// N_lost is replaced by W(a,b) acting on the sacrificed partner signal.
/// Requires lost != l and sacrifice == lost. Acts on
/// [S_l, N_l, S_sacrifice, N_rest ascending without {l, lost}].
Matrix loss_recovery_decryptor(const CloneSystem& sys, int l, int lost,
                               int sacrifice);
std::vector<int> loss_recovery_targets(const CloneSystem& sys, int l, int lost);

struct LossRecoveryResult {
  DensityOperator recovered;  // marginal of S_l after the recovery unitary
  PureState post_state;
  double sacrificed_marginal_deviation;  // distance of rho_{S_sacrifice} from I/d
};

/// Runs the recovery unitary against the encrypted state, never touching
/// N_lost (erasure of N_lost commutes with operations on the other
/// registers, so the post-erasure density matrix route gives the same
/// marginal on S_l).
LossRecoveryResult recover_after_loss(const CloneSystem& sys,
                                      const PureState& encrypted, int l,
                                      int lost);

/// d=2 cross-check: entrywise distance between the displacement-built
/// operators and their Pauli forms with coefficients
/// alpha = (1, i, -i^{n+1}, i).
struct PauliFormComparison {
  int n = 0;
  double encryptor_diff = 0;
  double decryptor_diff = 0;             // max over l
  double input_recovery_fidelity = 0;    // rho_A after undoing the encryptor
  bool noise_transpose_invariant = false;  // sigma_mu^{x n} transpose-invariant (even n)
};

PauliFormComparison pauli_reduction_check(int n);

/// Checks (1/d) sum_{a,b} W(a,b) x W(a,b)^dag against the register swap on
/// every basis pair |i,j>.
struct SwapWitness {
  int d = 0;
  double max_deviation = 0;
  bool pass(double tol = kDefaultTolerance) const { return max_deviation <= tol; }
};

SwapWitness swap_witness(int d);

}  // namespace qclone
