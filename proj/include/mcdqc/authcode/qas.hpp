#pragma once

#include <string>
#include <vector>

#include "mcdqc/qsim/clifford.hpp"
#include "mcdqc/qsim/coins.hpp"
#include "mcdqc/qsim/substrate.hpp"

namespace mcdqc::authcode {

enum class KeyMode { Enumerated, Sampled };

inline constexpr std::size_t kMaxEnumeratedBlock = 2;
inline constexpr std::size_t kMaxSampledBlock = 4;

/// Key of the Clifford trap code: a Clifford on m message qubits plus t |0> traps.
struct AuthKey {
  std::size_t m = 0;
  std::size_t t = 0;
  KeyMode mode = KeyMode::Enumerated;
  qsim::CliffordElement clifford;

  std::size_t block_size() const { return m + t; }
  /// Short printable fingerprint, used in transcripts and key-equality checks.
  std::string digest() const;
  bool same_as(const AuthKey& other) const;
};

/// Enumerated for blocks of at most 2 qubits, sampled up to 4.
KeyMode default_mode(std::size_t block_size);

/// Throws BudgetError when m + t exceeds the mode's limit, Error when m == 0.
AuthKey auth_keygen(std::size_t m, std::size_t t, qsim::Coins& coins, KeyMode mode);
AuthKey auth_keygen(std::size_t m, std::size_t t, qsim::Coins& coins);
AuthKey identity_key(std::size_t m, std::size_t t);
/// Enumerated key with the given canonical Clifford index.
AuthKey key_from_index(std::size_t m, std::size_t t, std::size_t index);

/// Appends t fresh |0> traps after the message and applies the key's Clifford to
/// the whole block. Returns the block (message qubits, then traps); the traps
/// take the owner of the first message qubit.
std::vector<qsim::QubitId> auth_encode(qsim::QuantumSubstrate& s,
                                       const std::vector<qsim::QubitId>& message,
                                       const AuthKey& key);

struct AuthVerdict {
  bool accepted = false;
  /// Reduced message state when accepted, ERR otherwise.
  qsim::MaybeState payload = qsim::ErrMarker{};
  /// Message qubits still present in the substrate (empty on reject).
  std::vector<qsim::QubitId> message;
};

/// Undoes the Clifford, measures and removes the traps, accepts iff all read 0.
/// On reject the message qubits are discarded as well.
AuthVerdict auth_decode(qsim::QuantumSubstrate& s, const std::vector<qsim::QubitId>& block,
                        const AuthKey& key, qsim::Coins& coins);

/// Trap check on a block whose Clifford has already been undone: measures and
/// removes the traps and returns whether they all read 0.
bool check_traps(qsim::QuantumSubstrate& s, const std::vector<qsim::QubitId>& traps,
                 qsim::Coins& coins);

}  // namespace mcdqc::authcode
