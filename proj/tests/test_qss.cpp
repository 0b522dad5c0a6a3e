#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>
#include <random>

#include "qclone/ame.hpp"
#include "qclone/qss.hpp"

using namespace qclone;

namespace {

QssScheme scheme_for(int d) {
  return build_scheme(d, partial_encrypted_ame6(d), 0);
}

}  // namespace

TEST_CASE("scheme construction") {
  for (int d : {2, 3}) {
    const QssScheme scheme = scheme_for(d);
    CHECK(static_cast<int>(scheme.basis_states.size()) == d);
    CHECK(scheme.share_layout.size() == 5);
    Matrix gram(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        gram(i, j) =
            scheme.basis_states[i].amplitudes.dot(scheme.basis_states[j].amplitudes);
    CHECK(max_abs_diff(gram, Matrix::Identity(d, d)) < 1e-10);
    for (const auto& b : scheme.basis_states) CHECK(std::abs(b.norm() - 1) < 1e-12);
  }

  CHECK_THROWS_WITH_AS(build_scheme(2, partial_encrypted_ame6(2), 9),
                       doctest::Contains("bad-dealer-index"), std::invalid_argument);
  std::vector<PureState> prod(6, uniform_state(2));
  CHECK_THROWS_WITH_AS(build_scheme(2, tensor(prod), 0),
                       doctest::Contains("source-not-ame"), std::invalid_argument);
}

TEST_CASE("secret encoding") {
  const QssScheme scheme = scheme_for(2);
  const PureState zero_enc = encode_secret(scheme, basis_state(2, 0));
  CHECK(max_abs_diff(zero_enc.amplitudes, scheme.basis_states[0].amplitudes) < 1e-13);

  const PureState plus_enc = encode_secret(scheme, uniform_state(2));
  const Vector expect = (scheme.basis_states[0].amplitudes +
                         scheme.basis_states[1].amplitudes) /
                        std::sqrt(2.0);
  CHECK(max_abs_diff(plus_enc.amplitudes, expect) < 1e-13);

  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 5; ++rep) {
    const PureState enc = encode_secret(scheme, random_pure_state(2, rng));
    CHECK(std::abs(enc.norm() - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(encode_secret(scheme, uniform_state(3)), std::invalid_argument);
}

TEST_CASE("threshold access structure, exhaustively") {
  for (int d : {2, 3}) {
    const QssScheme scheme = scheme_for(d);
    const auto probes = default_probe_secrets(d);
    int authorized = 0, unauthorized = 0;
    for (int mask = 1; mask < 32; ++mask) {
      std::vector<int> subset;
      for (int p = 1; p <= 5; ++p)
        if (mask & (1 << (p - 1))) subset.push_back(p);
      if (static_cast<int>(subset.size()) == 5 && d == 3) continue;  // covered at d=2
      const auto verdict = adjudicate(scheme, subset, probes);
      CHECK(verdict.authorized == (subset.size() >= 3));
      if (verdict.authorized) {
        ++authorized;
        CHECK(verdict.evidence > 1 - 1e-9);
      } else {
        ++unauthorized;
        CHECK(verdict.evidence < 1e-10);
      }
    }
    if (d == 2) {
      CHECK(authorized == 16);    // C(5,3) + C(5,4) + C(5,5)
      CHECK(unauthorized == 15);  // C(5,1) + C(5,2)
    }
  }
}

TEST_CASE("unauthorized marginals are maximally mixed") {
  const QssScheme scheme = scheme_for(2);
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 3; ++rep) {
    const PureState encoded = encode_secret(scheme, random_pure_state(2, rng));
    for (int mask = 1; mask < 32; ++mask) {
      std::vector<int> regs;
      for (int r = 0; r < 5; ++r)
        if (mask & (1 << r)) regs.push_back(r);
      if (regs.size() > 2) continue;
      CHECK(max_mixed_distance(partial_trace(encoded, regs)) < 1e-10);
    }
  }
}

TEST_CASE("recovery from authorized subsets") {
  std::mt19937_64 rng(2718);
  for (int d : {2, 3}) {
    const QssScheme scheme = scheme_for(d);
    std::vector<double> fidelities;
    for (int rep = 0; rep < 20; ++rep) {
      const PureState secret = random_pure_state(d, rng);
      const PureState encoded = encode_secret(scheme, secret);
      const std::vector<int> subset{1, 3, 4};
      const auto rec = recover_secret(scheme, encoded, subset, secret);
      CHECK(rec.fidelity > 1 - 1e-9);
      CHECK(rec.unitary_defect < 1e-10);
      fidelities.push_back(rec.fidelity);
    }
    // deterministic recovery: fidelity does not vary with the secret
    const auto [lo, hi] = std::minmax_element(fidelities.begin(), fidelities.end());
    CHECK(*hi - *lo < 1e-11);
  }

  // supersets recover through any contained 3-subset
  const QssScheme scheme = scheme_for(2);
  const PureState secret = random_pure_state(2, rng);
  const PureState encoded = encode_secret(scheme, secret);
  const std::vector<int> all{1, 2, 3, 4, 5};
  CHECK(recover_secret(scheme, encoded, all, secret).fidelity > 1 - 1e-9);

  const std::vector<int> pair{2, 5};
  CHECK_THROWS_WITH_AS(recover_secret(scheme, encoded, pair, secret),
                       doctest::Contains("unauthorized-subset"), std::invalid_argument);
  const std::vector<int> empty;
  CHECK_THROWS_WITH_AS(adjudicate(scheme, empty, default_probe_secrets(2)),
                       doctest::Contains("empty-subset"), std::invalid_argument);
}

TEST_CASE("decryption key set of the cloning protocol is an authorized set") {
  // with two pairs, decrypting S_l uses {S_l, N_1, N_2}: size 3
  const QssScheme scheme = scheme_for(2);
  // players over [A2 S1 S2 N1 N2]: S1=2, N1=4, N2=5
  const std::vector<int> key_set{2, 4, 5};
  const auto verdict = adjudicate(scheme, key_set, default_probe_secrets(2));
  CHECK(verdict.authorized);
  // the unauthorized example pair {A2, S2}
  const std::vector<int> pair{1, 3};
  CHECK_FALSE(adjudicate(scheme, pair, default_probe_secrets(2)).authorized);
}

TEST_CASE("insufficient or malformed probes are rejected") {
  const QssScheme scheme = scheme_for(2);
  std::vector<PureState> too_few{basis_state(2, 0)};
  const std::vector<int> subset{1, 2};
  CHECK_THROWS_AS(adjudicate(scheme, subset, too_few), std::invalid_argument);
  std::vector<PureState> wrong_dim(4, uniform_state(3));
  CHECK_THROWS_AS(adjudicate(scheme, subset, wrong_dim), std::invalid_argument);
}

TEST_CASE("degenerate share bases are detected during recovery") {
  // a hand-built scheme whose basis states coincide cannot yield an
  // orthonormal recovery basis
  const QssScheme good = scheme_for(2);
  QssScheme broken = good;
  broken.basis_states[1] = broken.basis_states[0];
  const PureState secret = basis_state(2, 0);
  const PureState encoded = encode_secret(broken, secret);
  const std::vector<int> subset{1, 2, 3};
  CHECK_THROWS_WITH_AS(recover_secret(broken, encoded, subset, secret),
                       doctest::Contains("numerically-degenerate-basis"),
                       std::invalid_argument);
}

TEST_CASE("verdict serialization") {
  const QssScheme scheme = scheme_for(2);
  const std::vector<int> subset{2, 4, 5};
  const auto verdict = adjudicate(scheme, subset, default_probe_secrets(2));
  const nlohmann::json doc = verdict.to_json();
  CHECK(doc["subset"] == nlohmann::json::array({2, 4, 5}));
  CHECK(doc["authorized"] == true);
  CHECK(doc.contains("evidence"));
}
