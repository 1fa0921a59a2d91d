#pragma once

#include <cstdint>
#include <vector>

#include "mcdqc/qsim/coins.hpp"
#include "mcdqc/qsim/pauli.hpp"
#include "mcdqc/qsim/substrate.hpp"

namespace mcdqc::authcode {

/// Quantum one-time-pad key: 2m bits, (x_j, z_j) for qubit j at bits[2j], bits[2j+1].
struct PauliKey {
  std::size_t m = 0;
  std::vector<std::uint8_t> bits;

  static PauliKey random(std::size_t m, qsim::Coins& coins);
  /// Key number `index` in [0, 4^m); bit 2m-1-k of index is bits[k].
  static PauliKey from_index(std::size_t index, std::size_t m);

  /// X^x Z^z on each qubit, as a Pauli string (phase dropped).
  qsim::PauliString pauli() const;
  void validate() const;
};

qsim::Matrix otp_encrypt(const qsim::Matrix& rho, const PauliKey& key);
qsim::Matrix otp_decrypt(const qsim::Matrix& rho, const PauliKey& key);

void otp_encrypt(qsim::QuantumSubstrate& s, const std::vector<qsim::QubitId>& qubits,
                 const PauliKey& key);
void otp_decrypt(qsim::QuantumSubstrate& s, const std::vector<qsim::QubitId>& qubits,
                 const PauliKey& key);

}  // namespace mcdqc::authcode
