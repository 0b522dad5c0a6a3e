#pragma once

#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qclone/state.hpp"

namespace qclone {

/// ((3,5)) threshold secret sharing derived from a 6-register absolutely
/// maximally entangled source: projecting the dealer register onto |i>
/// yields d orthonormal 5-share basis states.
struct QssScheme {
  int d = 0;
  RegisterLayout share_layout;           // the 5 player registers
  std::vector<PureState> basis_states;   // orthonormal, one per secret value
};

/// dealer_index names the source register measured away. Throws when the
/// source fails AME verification or the basis comes out non-orthonormal.
QssScheme build_scheme(int d, const PureState& source, int dealer_index);

/// sum_i a_i |basis_i> for secret amplitudes a.
PureState encode_secret(const QssScheme& scheme, const PureState& secret);

/// d computational secrets plus the d Fourier-phase secrets; coincidence of
/// reduced states on these probes certifies secret independence.
std::vector<PureState> default_probe_secrets(int d);

struct AccessVerdict {
  std::vector<int> subset;  // 1-based player ids
  bool authorized = false;
  /// authorized: worst recovery fidelity over probes; unauthorized: max
  /// trace-norm distance between reduced states across probe pairs.
  double evidence = 0;

  nlohmann::json to_json() const;
};

AccessVerdict adjudicate(const QssScheme& scheme, std::span<const int> subset,
                         std::span<const PureState> probes);

struct SecretRecovery {
  DensityOperator estimate;
  double fidelity = 0;        // against the reference secret
  double unitary_defect = 0;  // of the assembled recovery unitary
};

/// Recovery for an authorized subset (size >= 3; the first three players in
/// sorted order are used). The recovery unitary maps the projected basis
/// vectors onto |k1,k2,i>, so the secret lands on the last of the three
/// registers.
SecretRecovery recover_secret(const QssScheme& scheme, const PureState& encoded,
                              std::span<const int> subset,
                              const PureState& reference_secret);

}  // namespace qclone
