#include "qclone/qss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qclone/ame.hpp"
#include "qclone/kernels.hpp"

namespace qclone {

using nlohmann::json;

namespace {

constexpr int kPlayers = 5;
constexpr int kThreshold = 3;
constexpr double kRecoverySlack = 1e-9;

std::vector<int> sorted_players(std::span<const int> subset) {
  if (subset.empty()) throw std::invalid_argument("empty-subset");
  std::vector<int> s(subset.begin(), subset.end());
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw std::invalid_argument("bad-index: duplicate player");
  if (s.front() < 1 || s.back() > kPlayers)
    throw std::invalid_argument("bad-index: players are 1..5");
  return s;
}

}  // namespace

json AccessVerdict::to_json() const {
  return {{"subset", subset}, {"authorized", authorized}, {"evidence", evidence}};
}

QssScheme build_scheme(int d, const PureState& source, int dealer_index) {
  if (dealer_index < 0 || dealer_index >= source.layout.size())
    throw std::invalid_argument("bad-dealer-index");
  if (source.layout.size() != kPlayers + 1)
    throw std::invalid_argument("dim-mismatch: source must have 6 registers");
  const AmeReport ame = verify_ame(source);
  if (!ame.is_ame)
    throw std::invalid_argument("source-not-ame: worst marginal deviation " +
                                std::to_string(ame.worst.deviation));

  QssScheme scheme;
  scheme.d = d;
  const double scale = std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) {
    PureState share = project_register(source, dealer_index, i);
    share.amplitudes *= scale;
    scheme.basis_states.push_back(std::move(share));
  }
  scheme.share_layout = scheme.basis_states.front().layout;

  Matrix gram(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      gram(i, j) = scheme.basis_states[i].amplitudes.dot(scheme.basis_states[j].amplitudes);
  if (max_abs_diff(gram, Matrix::Identity(d, d)) > kDefaultTolerance)
    throw std::invalid_argument("source-not-ame: dealer projections are not orthonormal");
  return scheme;
}

PureState encode_secret(const QssScheme& scheme, const PureState& secret) {
  if (secret.layout.size() != 1 || secret.layout.dim(0) != scheme.d)
    throw std::invalid_argument("dim-mismatch: secret must be one d-dimensional register");
  Vector amps = Vector::Zero(scheme.basis_states.front().dim());
  for (int i = 0; i < scheme.d; ++i)
    amps += secret.amplitudes[i] * scheme.basis_states[i].amplitudes;
  return {scheme.share_layout, std::move(amps)};
}

std::vector<PureState> default_probe_secrets(int d) {
  std::vector<PureState> probes;
  probes.reserve(2 * static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) probes.push_back(basis_state(d, i));
  for (int m = 0; m < d; ++m) probes.push_back(fourier_state(d, m));
  return probes;
}

SecretRecovery recover_secret(const QssScheme& scheme, const PureState& encoded,
                              std::span<const int> subset,
                              const PureState& reference_secret) {
  const auto players = sorted_players(subset);
  if (static_cast<int>(players.size()) < kThreshold)
    throw std::invalid_argument("unauthorized-subset: need at least 3 players");

  const int d = scheme.d;
  std::vector<int> t_regs{players[0] - 1, players[1] - 1, players[2] - 1};
  std::vector<int> k_regs;
  for (int r = 0; r < kPlayers; ++r)
    if (std::find(t_regs.begin(), t_regs.end(), r) == t_regs.end()) k_regs.push_back(r);

  // basis vectors on the recovery registers, indexed by (secret i, complement k)
  const long long t_dim = static_cast<long long>(d) * d * d;
  std::vector<Vector> vecs;
  vecs.reserve(t_dim);
  for (int i = 0; i < d; ++i) {
    for (int k1 = 0; k1 < d; ++k1) {
      for (int k2 = 0; k2 < d; ++k2) {
        PureState v = project_register(scheme.basis_states[i], k_regs[1], k2);
        v = project_register(v, k_regs[0], k1);
        vecs.push_back(v.amplitudes * static_cast<double>(d));
      }
    }
  }

  Matrix gram(t_dim, t_dim);
  for (long long r = 0; r < t_dim; ++r)
    for (long long c = 0; c < t_dim; ++c) gram(r, c) = vecs[r].dot(vecs[c]);
  if (max_abs_diff(gram, Matrix::Identity(t_dim, t_dim)) > kRankTolerance)
    throw std::invalid_argument("numerically-degenerate-basis");

  // U maps the (i,k)-th basis vector to |k1,k2,i>, so the secret lands on
  // the last recovery register.
  Matrix u = Matrix::Zero(t_dim, t_dim);
  long long col = 0;
  for (int i = 0; i < d; ++i)
    for (int k1 = 0; k1 < d; ++k1)
      for (int k2 = 0; k2 < d; ++k2) {
        const long long target = (static_cast<long long>(k1) * d + k2) * d + i;
        u.row(target) += vecs[col].adjoint();
        ++col;
      }

  SecretRecovery result;
  result.unitary_defect = unitarity_defect(u);

  PureState post = apply(u, t_regs, encoded);
  const int keep[] = {t_regs[2]};
  result.estimate = partial_trace(post, keep);
  result.fidelity = fidelity(result.estimate, reference_secret);
  return result;
}

AccessVerdict adjudicate(const QssScheme& scheme, std::span<const int> subset,
                         std::span<const PureState> probes) {
  const auto players = sorted_players(subset);
  if (static_cast<int>(probes.size()) < 2 * scheme.d)
    throw std::invalid_argument(
        "probes must cover at least the computational and phase secrets");
  for (const auto& probe : probes)
    if (probe.layout.size() != 1 || probe.layout.dim(0) != scheme.d)
      throw std::invalid_argument("dim-mismatch: probes must be single registers of dim d");

  AccessVerdict verdict;
  verdict.subset = players;

  std::vector<int> regs;
  for (int p : players) regs.push_back(p - 1);
  std::vector<int> complement;
  for (int r = 0; r < kPlayers; ++r)
    if (std::find(regs.begin(), regs.end(), r) == regs.end()) complement.push_back(r);

  if (static_cast<int>(players.size()) >= kThreshold) {
    double worst_fid = 1.0;
    for (const auto& probe : probes) {
      const PureState encoded = encode_secret(scheme, probe);
      worst_fid = std::min(worst_fid,
                           recover_secret(scheme, encoded, players, probe).fidelity);
    }
    double comp_dev = 0;
    if (!complement.empty()) {
      std::vector<Matrix> reduced;
      for (const auto& probe : probes)
        reduced.push_back(partial_trace(encode_secret(scheme, probe), complement).entries);
      for (size_t i = 0; i < reduced.size(); ++i)
        for (size_t j = i + 1; j < reduced.size(); ++j)
          comp_dev = std::max(comp_dev, trace_norm_distance(reduced[i], reduced[j]));
    }
    verdict.authorized =
        worst_fid >= 1.0 - kRecoverySlack && comp_dev <= kDefaultTolerance;
    verdict.evidence = worst_fid;
    return verdict;
  }

  // below threshold: reduced states must coincide across probe secrets
  std::vector<Matrix> reduced;
  for (const auto& probe : probes)
    reduced.push_back(partial_trace(encode_secret(scheme, probe), regs).entries);
  double dev = 0;
  for (size_t i = 0; i < reduced.size(); ++i)
    for (size_t j = i + 1; j < reduced.size(); ++j)
      dev = std::max(dev, trace_norm_distance(reduced[i], reduced[j]));
  verdict.authorized = false;
  verdict.evidence = dev;
  return verdict;
}

}  // namespace qclone
