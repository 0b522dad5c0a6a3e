#include "qclone/ame.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qclone/cloning.hpp"

namespace qclone {

using nlohmann::json;

namespace {

// lexicographic k-subsets of {0..m-1}
std::vector<std::vector<int>> subsets_of_size(int m, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == m - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

}  // namespace

json AmeReport::to_json() const {
  json doc;
  doc["m"] = m;
  doc["d"] = d;
  doc["tolerance"] = tolerance;
  json margs = json::array();
  for (const auto& mg : marginals)
    margs.push_back({{"subset", mg.subset}, {"deviation", mg.deviation}});
  doc["marginals"] = std::move(margs);
  doc["is_ame"] = is_ame;
  return doc;
}

AmeReport verify_ame(const PureState& state, double tol) {
  if (state.layout.size() < 2)
    throw std::invalid_argument("bad-subset: need at least two registers");
  if (!state.layout.uniform_dim())
    throw std::invalid_argument("mixed-dimensions: all registers must share one dimension");
  AmeReport report;
  report.m = state.layout.size();
  report.d = state.layout.dim(0);
  report.tolerance = tol;
  report.is_ame = true;

  const int k = report.m / 2;
  for (const auto& subset : subsets_of_size(report.m, k)) {
    const double dev = max_mixed_distance(partial_trace(state, subset));
    report.marginals.push_back({subset, dev});
    if (dev > tol) report.is_ame = false;
    if (dev > report.worst.deviation || report.worst.subset.empty())
      report.worst = {subset, dev};
  }
  return report;
}

PureState encrypted_ame5(int d) {
  const CloneSystem sys(d, 2);
  return encrypt(sys, uniform_state(d));
}

CounterexampleMarginal counterexample_marginal(int d) {
  const CloneSystem sys(d, 3);
  const PureState enc = encrypt(sys, uniform_state(d));
  const int keep[] = {sys.input_register(), sys.signal_register(1),
                      sys.noise_register(1)};
  CounterexampleMarginal out;
  out.marginal = partial_trace(enc, keep);
  out.max_mixed_deviation = max_mixed_distance(out.marginal);
  out.closed_form_available = (d == 2);
  if (d == 2) {
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    const Matrix xxx = kron(kron(x, x), x);
    const Matrix closed = (Matrix::Identity(8, 8) + xxx) / 8.0;
    out.closed_form_deviation = max_abs_diff(out.marginal.entries, closed);
  }
  return out;
}

std::vector<PureState> logical_codewords(int d) {
  const CloneSystem sys(d, 2);
  const Matrix enc = build_encryptor(sys);
  const auto targets = encryptor_targets(sys);
  std::vector<PureState> codewords;
  codewords.reserve(d);
  for (int m = 0; m < d; ++m)
    codewords.push_back(apply(enc, targets, initial_state(sys, fourier_state(d, m))));
  return codewords;
}

double codeword_gram_defect(std::span<const PureState> codewords) {
  const int k = static_cast<int>(codewords.size());
  Matrix gram(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      gram(i, j) = codewords[i].amplitudes.dot(codewords[j].amplitudes);
  return max_abs_diff(gram, Matrix::Identity(k, k));
}

PureState ame6_from_codewords(std::span<const PureState> codewords) {
  if (codewords.empty())
    throw std::invalid_argument("empty-list: no codewords given");
  const int d = static_cast<int>(codewords.size());
  if (codeword_gram_defect(codewords) > kDefaultTolerance)
    throw std::invalid_argument("non-orthonormal-codewords: gram defect above tolerance");

  const long long block = codewords.front().dim();
  Vector amps = Vector::Zero(static_cast<long long>(d) * block);
  const double w = 1.0 / std::sqrt(static_cast<double>(d));
  for (int m = 0; m < d; ++m)
    amps.segment(static_cast<long long>(m) * block, block) = w * codewords[m].amplitudes;

  std::vector<Register> regs;
  regs.push_back({"D", d});
  for (const auto& r : codewords.front().layout.registers()) regs.push_back(r);
  return {RegisterLayout(std::move(regs)), std::move(amps)};
}

PureState partial_encrypted_ame6(int d) {
  const CloneSystem sys(d, 2);

  std::vector<PureState> pairs{bell_pair(d), bell_pair(d), bell_pair(d)};
  PureState base = tensor(pairs);  // [A1 A2 S1 N1 S2 N2]
  const int order[] = {0, 1, 2, 4, 3, 5};
  base = permute_registers(base, order);

  std::vector<Register> regs{{"A1", d}, {"A2", d}, {"S1", d},
                             {"S2", d}, {"N1", d}, {"N2", d}};
  base.layout = RegisterLayout(std::move(regs));

  const int targets[] = {1, 2, 3};  // A2, S1, S2
  return apply(build_encryptor(sys), targets, base);
}

}  // namespace qclone
