#include <cmath>
#include <map>

#include "doctest.h"
#include "mcdqc/authcode/oracle.hpp"
#include "mcdqc/authcode/otp.hpp"
#include "mcdqc/authcode/qas.hpp"
#include "mcdqc/qsim/kernels.hpp"
#include "mcdqc/qsim/linalg.hpp"
#include "support.hpp"

using namespace mcdqc::qsim;
using namespace mcdqc::authcode;

namespace {

const BasisState kInputs[] = {BasisState::Zero, BasisState::One, BasisState::Plus, BasisState::Minus};

// Classifies C^dag P C by brute-force overlap with the 16 two-qubit Pauli
// matrices built here, without going through density matrices.
struct PauliClass {
  int message_letter;
  int trap_letter;
};

Matrix letter(int k) {
  Matrix m(2, 2);
  const Complex i1{0, 1};
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -i1, i1, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

PauliClass classify(const Matrix& q) {
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const Complex overlap = (kron(letter(a), letter(b)).adjoint() * q).trace() / 4.0;
      if (std::abs(std::abs(overlap) - 1.0) < 1e-9) return {a, b};
    }
  FAIL("conjugated Pauli is not a Pauli");
  return {0, 0};
}

// Independent value of (p_detect, p_harmless) for a Pauli attack at m = 1, t = 1.
std::pair<double, double> classification_oracle(const PauliString& attack) {
  const auto& group = enumerate_clifford(2);
  double detect = 0, harmless = 0;
  for (const auto& c : group) {
    const auto cls = classify(c.unitary.adjoint() * attack.matrix() * c.unitary);
    const bool accepted = cls.trap_letter == 0 || cls.trap_letter == 3;
    if (!accepted) {
      detect += 1;
      continue;
    }
    for (auto s : kInputs) {
      const Vector psi = basis_vector(s);
      harmless += std::norm(psi.dot(letter(cls.message_letter) * psi)) / 4.0;
    }
  }
  return {detect / group.size(), harmless / group.size()};
}

}  // namespace

TEST_SUITE("authcode") {

TEST_CASE("one-time pad examples") {
  const auto x = PauliKey{1, {1, 0}};
  const auto z = PauliKey{1, {0, 1}};
  CHECK(max_abs_diff(otp_encrypt(basis_density(BasisState::Zero), x), basis_density(BasisState::One)) < 1e-12);
  CHECK(max_abs_diff(otp_decrypt(basis_density(BasisState::One), x), basis_density(BasisState::Zero)) < 1e-12);
  CHECK(max_abs_diff(otp_decrypt(basis_density(BasisState::Zero), z), basis_density(BasisState::Zero)) < 1e-12);
  CHECK(max_abs_diff(otp_decrypt(basis_density(BasisState::Zero), x), basis_density(BasisState::One)) < 1e-12);
  CHECK_THROWS_AS(otp_encrypt(maximally_mixed(2), x), Error);
}

TEST_CASE("one-time pad key average is maximally mixed") {
  SeededCoins coins(1);
  for (std::size_t m : {1u, 2u}) {
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix rho = test_support::random_density(m, coins);
      Matrix avg = Matrix::Zero(rho.rows(), rho.cols());
      const std::size_t keys = std::size_t{1} << (2 * m);
      for (std::size_t k = 0; k < keys; ++k) avg += otp_encrypt(rho, PauliKey::from_index(k, m));
      CHECK(max_abs_diff(avg / static_cast<double>(keys), maximally_mixed(m)) < 1e-10);
    }
  }
}

TEST_CASE("one-time pad decrypt inverts encrypt") {
  SeededCoins coins(2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + coins.uniform(2);
    const Matrix rho = test_support::random_density(m, coins);
    const auto key = PauliKey::random(m, coins);
    CHECK(max_abs_diff(otp_decrypt(otp_encrypt(rho, key), key), rho) < 1e-12);
  }
}

TEST_CASE("auth_keygen range, determinism and limits") {
  SeededCoins a(5), b(5);
  const auto ka = auth_keygen(1, 1, a, KeyMode::Enumerated);
  const auto kb = auth_keygen(1, 1, b, KeyMode::Enumerated);
  CHECK(ka.clifford.index < 11520);
  CHECK(ka.clifford.index == kb.clifford.index);
  CHECK(ka.same_as(kb));
  CHECK_THROWS_AS(auth_keygen(2, 1, a, KeyMode::Enumerated), BudgetError);
  CHECK_THROWS_AS(auth_keygen(3, 2, a, KeyMode::Sampled), BudgetError);
  CHECK_NOTHROW(auth_keygen(3, 1, a, KeyMode::Sampled));
}

TEST_CASE("auth_keygen is uniform over the 11520 keys") {
  // Pearson statistic over 11520 cells with 20 expected draws each; its mean is
  // the degrees of freedom and its standard deviation sqrt(2 df).
  SeededCoins coins(77);
  std::vector<int> counts(11520, 0);
  const int draws = 11520 * 20;
  for (int k = 0; k < draws; ++k) ++counts[auth_keygen(1, 1, coins).clifford.index];
  double chi2 = 0;
  for (int c : counts) chi2 += (c - 20.0) * (c - 20.0) / 20.0;
  const double df = 11519.0;
  CHECK(std::abs(chi2 - df) <= 4.0 * std::sqrt(2.0 * df));
}

TEST_CASE("encode then decode round-trips and identity key keeps traps visible") {
  SeededCoins coins(9);
  auto s = QuantumSubstrate::init_state({{BasisState::Plus, "A"}});
  const auto key = auth_keygen(1, 1, coins);
  const auto block = auth_encode(s, s.qubits(), key);
  CHECK(block.size() == 2);
  CHECK(s.owner_of(block[1]) == "A");
  const auto v = auth_decode(s, block, key, coins);
  CHECK(v.accepted);
  CHECK(max_abs_diff(std::get<Matrix>(v.payload), basis_density(BasisState::Plus)) < 1e-10);
  CHECK(s.num_qubits() == 1);

  auto z = QuantumSubstrate::init_state({{BasisState::Zero, "A"}});
  auth_encode(z, z.qubits(), identity_key(1, 1));
  CHECK(max_abs_diff(z.rho(), projector(0, 2)) < 1e-12);
}

TEST_CASE("completeness over every key and test input") {
  SeededCoins coins(10);
  for (const auto& c : enumerate_clifford(2)) {
    const auto key = key_from_index(1, 1, c.index);
    for (auto in : kInputs) {
      auto s = QuantumSubstrate::init_state({{in, "A"}});
      const auto block = auth_encode(s, s.qubits(), key);
      const auto v = auth_decode(s, block, key, coins);
      REQUIRE(v.accepted);
      REQUIRE(max_abs_diff(std::get<Matrix>(v.payload), basis_density(in)) < 1e-10);
    }
  }
}

TEST_CASE("key-averaged encoded state is maximally mixed for every test input") {
  std::vector<Matrix> us;
  for (const auto& c : enumerate_clifford(2)) us.push_back(c.unitary);
  const std::size_t targets[] = {0, 1};
  for (auto in : kInputs) {
    auto s = QuantumSubstrate::init_state({{in, "A"}});
    auth_encode(s, s.qubits(), identity_key(1, 1));
    const Matrix avg = kernels::twirl(s.rho(), 2, us, targets);
    CHECK(max_abs_diff(avg, maximally_mixed(2)) < 1e-9);
  }
}

TEST_CASE("decode rejects a flipped trap and releases the message") {
  SeededCoins coins(3);
  auto s = QuantumSubstrate::init_state({{BasisState::Zero, "A"}});
  const auto key = identity_key(1, 1);
  const auto block = auth_encode(s, s.qubits(), key);
  s.apply_pauli(PauliString::parse("IX"), block);
  const auto v = auth_decode(s, block, key, coins);
  CHECK_FALSE(v.accepted);
  CHECK(is_err(v.payload));
  CHECK(s.num_qubits() == 0);
  CHECK_THROWS_AS(auth_decode(s, {}, key, coins), Error);
}

TEST_CASE("key-averaged acceptance under a Pauli attack equals the oracle") {
  const auto attack = PauliString::parse("XY");
  const auto oracle = exact_detection_probability(1, 1, attack);
  double accept = 0;
  for (const auto& c : enumerate_clifford(2)) {
    const auto key = key_from_index(1, 1, c.index);
    for (auto in : kInputs) {
      auto s = QuantumSubstrate::init_state({{in, "A"}});
      const auto block = auth_encode(s, s.qubits(), key);
      s.apply_pauli(attack, block);
      s.apply(key.clifford.unitary.adjoint(), block);
      accept += s.reduced({block[1]})(0, 0).real();
    }
  }
  accept /= 11520.0 * 4.0;
  CHECK(std::abs(accept - (1.0 - oracle.p_detect)) < 1e-12);
}

TEST_CASE("oracle trivial attack and pinned constant") {
  const auto id = exact_detection_probability(1, 1, PauliString::parse("II"));
  CHECK(id.p_detect == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(id.p_harmless == doctest::Approx(1.0).epsilon(1e-12));
  const auto x1 = exact_detection_probability(1, 1, PauliString::parse("IX"));
  CHECK(std::abs(x1.p_detect - 8.0 / 15.0) < 1e-12);
  CHECK(std::abs(x1.p_harmless - 3.0 / 15.0) < 1e-12);
  CHECK(std::abs(oracle_epsilon(1, 1) - kEpsilonQsec11) < 1e-12);
  CHECK_THROWS_AS(exact_detection_probability(2, 1, Matrix::Identity(8, 8)), BudgetError);
}

TEST_CASE("every Pauli attack stays within the pinned constant and matches the classification oracle") {
  for (const auto& p : PauliString::all_nonidentity(2)) {
    const auto r = exact_detection_probability(1, 1, p);
    const auto [detect, harmless] = classification_oracle(p);
    CHECK(std::abs(r.p_detect - detect) < 1e-12);
    CHECK(std::abs(r.p_harmless - harmless) < 1e-12);
    CHECK(r.epsilon() <= kEpsilonQsec11 + 1e-12);
  }
}

}  // TEST_SUITE
