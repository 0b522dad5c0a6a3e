#include "qclone/cloning.hpp"

#include <cmath>
#include <stdexcept>

namespace qclone {

namespace {

RegisterLayout clone_layout(int d, int n) {
  std::vector<Register> regs;
  regs.reserve(2 * n + 1);
  regs.push_back({"A", d});
  for (int i = 1; i <= n; ++i) regs.push_back({"S" + std::to_string(i), d});
  for (int i = 1; i <= n; ++i) regs.push_back({"N" + std::to_string(i), d});
  return RegisterLayout(std::move(regs));
}

void check_pair_index(const CloneSystem& sys, int i, const char* what) {
  if (i < 1 || i > sys.n)
    throw std::invalid_argument(std::string("bad-index: ") + what +
                                " must lie in 1.." + std::to_string(sys.n));
}

}  // namespace

CloneSystem::CloneSystem(int d_, int n_) : d(d_), n(n_) {
  if (d < 2) throw std::invalid_argument("dimension-too-small: d must be >= 2");
  if (n < 2)
    throw std::invalid_argument(
        "bad-index: n must be >= 2; a single encrypted clone cannot be decrypted");
  layout = clone_layout(d, n);
}

int CloneSystem::signal_register(int i) const {
  check_pair_index(*this, i, "signal index");
  return i;
}

int CloneSystem::noise_register(int i) const {
  check_pair_index(*this, i, "noise index");
  return n + i;
}

Complex encryption_phase(int d, int n, long long a, long long b) {
  return tau_power(d, -(a * a + b * b - (n + 1) * a * b));
}

Vector displaced_bell(int d, long long a, long long b) {
  Vector v = Vector::Zero(static_cast<long long>(d) * d);
  const double w = 1.0 / std::sqrt(static_cast<double>(d));
  const long long shift = ((a % d) + d) % d;
  for (long long j = 0; j < d; ++j) {
    const long long row = (j - shift + d) % d;
    v[row * d + j] = w * omega_power(d, -b * j);
  }
  return v;
}

Matrix build_encryptor(const CloneSystem& sys) {
  const int d = sys.d;
  long long dim = 1;
  for (int i = 0; i <= sys.n; ++i) dim *= d;
  Matrix u = Matrix::Zero(dim, dim);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const Matrix w = weyl_displacement(d, a, b);
      const Matrix w_dag = w.adjoint();
      Matrix term = w;
      for (int i = 0; i < sys.n; ++i) term = kron(term, w_dag);
      // phi^{-1} = phi conjugated (unit modulus), computed exactly
      const Complex phi_inv =
          tau_power(d, static_cast<long long>(a) * a + static_cast<long long>(b) * b -
                           static_cast<long long>(sys.n + 1) * a * b);
      u += phi_inv * term;
    }
  }
  return u / static_cast<double>(d);
}

std::vector<int> encryptor_targets(const CloneSystem& sys) {
  std::vector<int> t(sys.n + 1);
  for (int i = 0; i <= sys.n; ++i) t[i] = i;
  return t;
}

Matrix build_decryptor(const CloneSystem& sys, int l) {
  check_pair_index(sys, l, "signal index l");
  const int d = sys.d;
  long long dim = 1;
  for (int i = 0; i <= sys.n; ++i) dim *= d;
  Matrix u = Matrix::Zero(dim, dim);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const Vector bell = displaced_bell(d, a, b);
      Matrix term = bell * bell.adjoint();
      const Matrix w_t = weyl_displacement(d, a, b).transpose();
      for (int i = 1; i <= sys.n; ++i)
        if (i != l) term = kron(term, w_t);
      u += encryption_phase(d, sys.n, a, b) * term;
    }
  }
  return u;
}

std::vector<int> decryptor_targets(const CloneSystem& sys, int l) {
  check_pair_index(sys, l, "signal index l");
  std::vector<int> t{sys.signal_register(l), sys.noise_register(l)};
  for (int i = 1; i <= sys.n; ++i)
    if (i != l) t.push_back(sys.noise_register(i));
  return t;
}

PureState initial_state(const CloneSystem& sys, const PureState& psi) {
  if (psi.layout.size() != 1 || psi.layout.dim(0) != sys.d)
    throw std::invalid_argument("dim-mismatch: input must be one d-dimensional register");

  std::vector<PureState> parts;
  parts.reserve(sys.n + 1);
  parts.push_back(psi);
  for (int i = 0; i < sys.n; ++i) parts.push_back(bell_pair(sys.d));
  PureState interleaved = tensor(parts);  // [A, S1, N1, S2, N2, ...]

  std::vector<int> order;
  order.reserve(2 * sys.n + 1);
  order.push_back(0);
  for (int i = 0; i < sys.n; ++i) order.push_back(1 + 2 * i);
  for (int i = 0; i < sys.n; ++i) order.push_back(2 + 2 * i);
  PureState out = permute_registers(interleaved, order);
  out.layout = sys.layout;
  return out;
}

PureState encrypt(const CloneSystem& sys, const PureState& psi) {
  PureState out = apply(build_encryptor(sys), encryptor_targets(sys),
                        initial_state(sys, psi));
  return out;
}

DecryptionResult decrypt(const CloneSystem& sys, const PureState& encrypted, int l) {
  check_pair_index(sys, l, "signal index l");
  if (encrypted.dim() != sys.state_dim())
    throw std::invalid_argument("dim-mismatch: state does not match the system");
  PureState post = apply(build_decryptor(sys, l), decryptor_targets(sys, l), encrypted);
  const int keep[] = {sys.signal_register(l)};
  DensityOperator recovered = partial_trace(post, keep);
  return {std::move(recovered), std::move(post)};
}

Matrix loss_recovery_decryptor(const CloneSystem& sys, int l, int lost, int sacrifice) {
  check_pair_index(sys, l, "signal index l");
  check_pair_index(sys, lost, "lost noise index");
  if (lost == l)
    throw std::invalid_argument("conflicting-indices: lost noise pairs with the decrypted signal");
  if (sacrifice != lost)
    throw std::invalid_argument(
        "conflicting-indices: the sacrificed signal must partner the lost noise");

  const int d = sys.d;
  long long dim = 1;  // registers [S_l, N_l, S_lost, N_rest]: n+1 of them
  for (int i = 0; i <= sys.n; ++i) dim *= d;
  Matrix u = Matrix::Zero(dim, dim);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const Vector bell = displaced_bell(d, a, b);
      const Matrix w = weyl_displacement(d, a, b);
      Matrix term = kron(Matrix(bell * bell.adjoint()), w);  // [S_l, N_l, S_lost]
      const Matrix w_t = w.transpose();
      for (int i = 1; i <= sys.n; ++i)
        if (i != l && i != lost) term = kron(term, w_t);
      u += encryption_phase(d, sys.n, a, b) * term;
    }
  }
  return u;
}

std::vector<int> loss_recovery_targets(const CloneSystem& sys, int l, int lost) {
  std::vector<int> t{sys.signal_register(l), sys.noise_register(l),
                     sys.signal_register(lost)};
  for (int i = 1; i <= sys.n; ++i)
    if (i != l && i != lost) t.push_back(sys.noise_register(i));
  return t;
}

LossRecoveryResult recover_after_loss(const CloneSystem& sys,
                                      const PureState& encrypted, int l, int lost) {
  const Matrix u = loss_recovery_decryptor(sys, l, lost, lost);
  PureState post = apply(u, loss_recovery_targets(sys, l, lost), encrypted);
  const int keep[] = {sys.signal_register(l)};
  DensityOperator recovered = partial_trace(post, keep);
  const int sac[] = {sys.signal_register(lost)};
  const double sac_dev = max_mixed_distance(partial_trace(post, sac));
  return {std::move(recovered), std::move(post), sac_dev};
}

PauliFormComparison pauli_reduction_check(int n) {
  if (n < 2 || n > 16)
    throw std::invalid_argument("bad-index: n must lie in 2..16");
  const CloneSystem sys(2, n);

  const Matrix id = Matrix::Identity(2, 2);
  Matrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  const Matrix sigma[4] = {id, sx, sy, sz};
  const Complex i_unit(0, 1);
  Complex alpha[4] = {1.0, i_unit, -std::pow(i_unit, n + 1), i_unit};

  const long long dim = 1LL << (n + 1);
  Matrix enc_pauli = Matrix::Zero(dim, dim);
  for (int mu = 0; mu < 4; ++mu) {
    Matrix term = sigma[mu];
    for (int i = 0; i < n; ++i) term = kron(term, sigma[mu]);
    enc_pauli += (1.0 / alpha[mu]) * term;
  }
  enc_pauli /= 2.0;

  PauliFormComparison report;
  report.n = n;
  report.encryptor_diff = max_abs_diff(enc_pauli, build_encryptor(sys));

  const Vector phi_plus = bell_pair(2).amplitudes;
  for (int l = 1; l <= n; ++l) {
    Matrix dec_pauli = Matrix::Zero(dim, dim);
    for (int mu = 0; mu < 4; ++mu) {
      const Vector phi_mu = kron(sigma[mu], id) * phi_plus;
      Matrix term = phi_mu * phi_mu.adjoint();
      for (int i = 1; i <= n; ++i)
        if (i != l) term = kron(term, Matrix(sigma[mu].transpose()));
      dec_pauli += alpha[mu] * term;
    }
    report.decryptor_diff =
        std::max(report.decryptor_diff, max_abs_diff(dec_pauli, build_decryptor(sys, l)));
  }

  // sigma_y is the lone antisymmetric Pauli, so the n-fold noise factor is
  // transpose-invariant exactly when n is even.
  double noise_diff = 0;
  for (int mu = 0; mu < 4; ++mu) {
    Matrix chain = sigma[mu];
    for (int i = 1; i < n; ++i) chain = kron(chain, sigma[mu]);
    noise_diff = std::max(noise_diff, max_abs_diff(Matrix(chain.transpose()), chain));
  }
  report.noise_transpose_invariant = noise_diff <= kDefaultTolerance;

  // undoing the encryptor releases the input back onto register A
  std::mt19937_64 rng(0x5eed);
  const PureState psi = random_pure_state(2, rng);
  const PureState undone = apply(Matrix(build_encryptor(sys).adjoint()),
                                 encryptor_targets(sys), encrypt(sys, psi));
  const int keep[] = {0};
  report.input_recovery_fidelity = fidelity(partial_trace(undone, keep), psi);
  return report;
}

SwapWitness swap_witness(int d) {
  if (d < 2) throw std::invalid_argument("dimension-too-small: d must be >= 2");
  Matrix s = Matrix::Zero(static_cast<long long>(d) * d, static_cast<long long>(d) * d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const Matrix w = weyl_displacement(d, a, b);
      s += kron(w, Matrix(w.adjoint()));
    }
  }
  s /= static_cast<double>(d);

  double worst = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Vector in = Vector::Zero(static_cast<long long>(d) * d);
      in[static_cast<long long>(i) * d + j] = 1.0;
      Vector expect = Vector::Zero(static_cast<long long>(d) * d);
      expect[static_cast<long long>(j) * d + i] = 1.0;
      worst = std::max(worst, max_abs_diff(Vector(s * in), expect));
    }
  }
  return {d, worst};
}

}  // namespace qclone
