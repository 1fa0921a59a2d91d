#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "mcdqc/authcode/qas.hpp"
#include "mcdqc/multiclient/wiring.hpp"

namespace mcdqc::multiclient {

/// (sender, receiver, round), 0-based: the key of T_{sender->receiver}^(round).
using KeyIndex = std::tuple<std::size_t, std::size_t, std::size_t>;
using RoundKeyTable = std::map<KeyIndex, authcode::AuthKey>;

struct BlockSlots {
  std::size_t peer = 0;  // sender for incoming blocks, receiver for outgoing ones
  std::vector<std::size_t> data;
  std::vector<std::size_t> traps;
  std::vector<std::size_t> all() const;
};

/// Slot layout of the session that runs V_i^(h): incoming authenticated
/// blocks (data then traps, senders ascending), then qubits that never left
/// the client, then fresh |0> traps for the outgoing blocks.
struct RoundLayout {
  std::size_t width = 0;
  std::vector<BlockSlots> incoming;
  std::vector<std::size_t> plain;
  std::vector<std::size_t> ancillas;
  /// data_slot[p]: session slot of position p of labels(i, h).
  std::vector<std::size_t> data_slot;
  std::vector<BlockSlots> outgoing;
  /// Data the client keeps after the round, in label order: self-wires, or
  /// every output in the last round.
  std::vector<std::size_t> kept;
};

RoundLayout round_layout(const Validated& v, std::size_t i, std::size_t h, std::size_t traps);

/// V_i^(h) = (x_j E_{k_{i->j}^(h)}) U_i^(h) (x_j D_{k_{j->i}^(h-1)}) as a circuit on the
/// round layout, with D taken as the unitary part of decoding (the traps are
/// measured by the client afterwards). Self-wires are left alone. Throws
/// qsim::Error when a needed key is missing.
qsim::Circuit build_round_unitary(const Validated& v, std::size_t i, std::size_t h, const RoundKeyTable& keys,
                                  std::size_t traps);

}  // namespace mcdqc::multiclient
