#include "mcdqc/authcode/otp.hpp"

namespace mcdqc::authcode {

using qsim::Error;
using qsim::Matrix;
using qsim::PauliLetter;

PauliKey PauliKey::random(std::size_t m, qsim::Coins& coins) {
  PauliKey k{m, std::vector<std::uint8_t>(2 * m)};
  for (auto& b : k.bits) b = static_cast<std::uint8_t>(coins.uniform(2));
  return k;
}

PauliKey PauliKey::from_index(std::size_t index, std::size_t m) {
  if (index >= (std::size_t{1} << (2 * m))) throw Error("Pauli key index out of range");
  PauliKey k{m, std::vector<std::uint8_t>(2 * m)};
  for (std::size_t b = 0; b < 2 * m; ++b)
    k.bits[b] = static_cast<std::uint8_t>((index >> (2 * m - 1 - b)) & 1U);
  return k;
}

void PauliKey::validate() const {
  if (bits.size() != 2 * m)
    throw Error("Pauli key has " + std::to_string(bits.size()) + " bits, expected " +
                std::to_string(2 * m));
}

qsim::PauliString PauliKey::pauli() const {
  validate();
  std::vector<PauliLetter> letters(m);
  for (std::size_t j = 0; j < m; ++j) {
    const bool x = bits[2 * j] != 0;
    const bool z = bits[2 * j + 1] != 0;
    letters[j] = x ? (z ? PauliLetter::Y : PauliLetter::X) : (z ? PauliLetter::Z : PauliLetter::I);
  }
  return qsim::PauliString(std::move(letters));
}

namespace {
Matrix conjugate_by(const Matrix& rho, const PauliKey& key) {
  if (rho.rows() != (Eigen::Index{1} << key.m))
    throw Error("one-time pad key covers " + std::to_string(key.m) +
                " qubits but the state has dimension " + std::to_string(rho.rows()));
  const Matrix p = key.pauli().matrix();
  return p * rho * p.adjoint();
}
}  // namespace

Matrix otp_encrypt(const Matrix& rho, const PauliKey& key) { return conjugate_by(rho, key); }
Matrix otp_decrypt(const Matrix& rho, const PauliKey& key) { return conjugate_by(rho, key); }

void otp_encrypt(qsim::QuantumSubstrate& s, const std::vector<qsim::QubitId>& qubits,
                 const PauliKey& key) {
  if (qubits.size() != key.m) throw Error("one-time pad key size does not match qubit count");
  s.apply_pauli(key.pauli(), qubits);
}

void otp_decrypt(qsim::QuantumSubstrate& s, const std::vector<qsim::QubitId>& qubits,
                 const PauliKey& key) {
  otp_encrypt(s, qubits, key);
}

}  // namespace mcdqc::authcode
