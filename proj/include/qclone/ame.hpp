#pragma once

#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qclone/state.hpp"

namespace qclone {

struct MarginalDeviation {
  std::vector<int> subset;
  double deviation = 0;
};

/// Result of exhaustive marginal enumeration: a state of m equal-dimension
/// registers is absolutely maximally entangled iff every floor(m/2)-register
/// marginal is maximally mixed.
struct AmeReport {
  int m = 0;
  int d = 0;
  double tolerance = kDefaultTolerance;
  std::vector<MarginalDeviation> marginals;  // lexicographic subsets
  bool is_ame = false;
  MarginalDeviation worst;

  nlohmann::json to_json() const;
};

AmeReport verify_ame(const PureState& state, double tol = kDefaultTolerance);

/// The 5-register encrypted state with uniform input (n = 2 pairs).
PureState encrypted_ame5(int d);

/// rho_{A S1 N1} of the n = 3 encrypted uniform state. At d = 2 it equals
/// (I_8 + X x X x X)/8 exactly; for other d only the numerical marginal is
/// reported (closed_form_available = false).
struct CounterexampleMarginal {
  DensityOperator marginal;
  double max_mixed_deviation = 0;
  bool closed_form_available = false;
  double closed_form_deviation = 0;
};

CounterexampleMarginal counterexample_marginal(int d = 2);

/// d orthonormal 5-register codewords: U_enc applied to f_m x Phi x Phi for
/// the Fourier inputs f_m. At d = 2 these are the |+> / |-> inputs.
std::vector<PureState> logical_codewords(int d);

/// Max-entry defect of the codeword Gram matrix from the identity.
double codeword_gram_defect(std::span<const PureState> codewords);

/// (1/sqrt d) sum_m |m> x |codeword_m> on 6 registers.
PureState ame6_from_codewords(std::span<const PureState> codewords);

/// Partial encryption of a Bell pair: encryptor applied to A2, S1, S2 of
/// Phi_{A1 A2} x Phi_{S1 N1} x Phi_{S2 N2}, layout [A1 A2 S1 S2 N1 N2].
PureState partial_encrypted_ame6(int d);

}  // namespace qclone
