#include "mcdqc/authcode/qas.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

#include "mcdqc/qsim/linalg.hpp"

namespace mcdqc::authcode {

using qsim::BudgetError;
using qsim::Error;
using qsim::QubitId;

std::string AuthKey::digest() const {
  if (clifford.has_index()) return "C" + std::to_string(block_size()) + "#" + std::to_string(clifford.index);
  // FNV-1a over the rounded matrix entries
  std::uint64_t h = 1469598103934665603ULL;
  for (Eigen::Index k = 0; k < clifford.unitary.size(); ++k) {
    for (double part : {clifford.unitary.data()[k].real(), clifford.unitary.data()[k].imag()}) {
      const auto v = static_cast<std::uint64_t>(std::llround(part * 1e6));
      for (int b = 0; b < 8; ++b) {
        h ^= (v >> (8 * b)) & 0xFFU;
        h *= 1099511628211ULL;
      }
    }
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "C%zu~%016llx", block_size(), static_cast<unsigned long long>(h));
  return buf;
}

bool AuthKey::same_as(const AuthKey& other) const {
  return m == other.m && t == other.t &&
         clifford.unitary.rows() == other.clifford.unitary.rows() &&
         qsim::max_abs_diff(clifford.unitary, other.clifford.unitary) < 1e-9;
}

KeyMode default_mode(std::size_t block_size) {
  return block_size <= kMaxEnumeratedBlock ? KeyMode::Enumerated : KeyMode::Sampled;
}

namespace {
void check_sizes(std::size_t m, std::size_t t, KeyMode mode) {
  if (m == 0) throw Error("authentication key needs at least one message qubit");
  const std::size_t limit = mode == KeyMode::Enumerated ? kMaxEnumeratedBlock : kMaxSampledBlock;
  if (m + t > limit)
    throw BudgetError("authentication block of " + std::to_string(m + t) + " qubits exceeds the " +
                      (mode == KeyMode::Enumerated ? "enumerated" : "sampled") + " limit of " +
                      std::to_string(limit));
}
}  // namespace

AuthKey auth_keygen(std::size_t m, std::size_t t, qsim::Coins& coins, KeyMode mode) {
  check_sizes(m, t, mode);
  AuthKey k{m, t, mode, {}};
  k.clifford = mode == KeyMode::Enumerated ? qsim::sample_clifford(m + t, coins)
                                           : qsim::sample_clifford_any(m + t, coins);
  return k;
}

AuthKey auth_keygen(std::size_t m, std::size_t t, qsim::Coins& coins) {
  return auth_keygen(m, t, coins, default_mode(m + t));
}

AuthKey identity_key(std::size_t m, std::size_t t) {
  const KeyMode mode = default_mode(m + t);
  check_sizes(m, t, mode);
  if (mode == KeyMode::Enumerated) return key_from_index(m, t, qsim::clifford_identity_index(m + t));
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << (m + t));
  return AuthKey{m, t, mode, qsim::CliffordElement{m + t, qsim::Matrix::Identity(dim, dim)}};
}

AuthKey key_from_index(std::size_t m, std::size_t t, std::size_t index) {
  check_sizes(m, t, KeyMode::Enumerated);
  const auto& group = qsim::enumerate_clifford(m + t);
  if (index >= group.size()) throw Error("Clifford index out of range");
  return AuthKey{m, t, KeyMode::Enumerated, group[index]};
}

std::vector<QubitId> auth_encode(qsim::QuantumSubstrate& s, const std::vector<QubitId>& message,
                                 const AuthKey& key) {
  if (message.size() != key.m)
    throw Error("auth_encode: key expects " + std::to_string(key.m) + " message qubits, got " +
                std::to_string(message.size()));
  const std::string owner = s.owner_of(message.front());
  std::vector<QubitId> block = message;
  if (key.t > 0) {
    const auto traps = s.append(qsim::BasisState::Zero, key.t, owner);
    block.insert(block.end(), traps.begin(), traps.end());
  }
  s.apply(key.clifford.unitary, block);
  return block;
}

bool check_traps(qsim::QuantumSubstrate& s, const std::vector<QubitId>& traps, qsim::Coins& coins) {
  if (traps.empty()) return true;
  const auto bits = s.measure(traps, coins);
  s.discard(traps);
  for (int b : bits)
    if (b != 0) return false;
  return true;
}

AuthVerdict auth_decode(qsim::QuantumSubstrate& s, const std::vector<QubitId>& block,
                        const AuthKey& key, qsim::Coins& coins) {
  if (block.size() != key.block_size())
    throw Error("auth_decode: block has " + std::to_string(block.size()) + " qubits, key expects " +
                std::to_string(key.block_size()));
  s.apply(key.clifford.unitary.adjoint(), block);
  const std::vector<QubitId> message(block.begin(), block.begin() + static_cast<long>(key.m));
  const std::vector<QubitId> traps(block.begin() + static_cast<long>(key.m), block.end());
  AuthVerdict v;
  if (!check_traps(s, traps, coins)) {
    s.discard(message);
    return v;
  }
  v.accepted = true;
  v.payload = s.reduced(message);
  v.message = message;
  return v;
}

}  // namespace mcdqc::authcode
