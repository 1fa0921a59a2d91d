#pragma once

#include <string>
#include <vector>

#include "mcdqc/dqc/session.hpp"

namespace mcdqc::dqc {

namespace detail {
struct ResidentFactory;
}

/// An authenticated block held at the server between BB rounds. Only BB
/// sessions create these, and each remembers the digest of the key it was
/// encoded under, so a later session refuses a block with the wrong key.
class ResidentBlock {
 public:
  const std::vector<qsim::QubitId>& qubits() const { return qubits_; }
  std::size_t message_size() const { return message_size_; }
  const std::string& key_digest() const { return key_digest_; }

 private:
  friend struct detail::ResidentFactory;
  ResidentBlock(std::vector<qsim::QubitId> qubits, std::size_t message_size, std::string key_digest)
      : qubits_(std::move(qubits)), message_size_(message_size), key_digest_(std::move(key_digest)) {}

  std::vector<qsim::QubitId> qubits_;
  std::size_t message_size_ = 0;
  std::string key_digest_;
};

struct BbSession {
  std::size_t client = 1;
  std::size_t round = 1;
  qsim::Circuit program;                          // over the concatenated incoming data
  std::vector<std::vector<std::size_t>> out_groups;  // data positions of each fresh block
  BackendConfig backend;
};

struct BbOutcome {
  bool accepted = false;
  Failure failure = Failure::None;
  std::vector<ResidentBlock> blocks;      // server side, one per output group
  std::vector<authcode::AuthKey> keys;    // client side, one per output group
  std::optional<acframe::LeakRecord> leak;
};

/// BB1: the client encodes its plaintext input under a fresh key k', uploads
/// it (Upload site) and runs a BB session on it.
BbOutcome bb1_run(acframe::World& w, const BbSession& s, const std::vector<qsim::QubitId>& inputs,
                  ServerAdversary& adv);

/// BB: E_k U D_k' on server-resident blocks. Throws qsim::Error when a key does
/// not belong to its block.
BbOutcome bb_run(acframe::World& w, const BbSession& s, const std::vector<ResidentBlock>& blocks,
                 const std::vector<authcode::AuthKey>& keys, ServerAdversary& adv);

/// BB2: a BB session with a single output group, then the block is
/// downloaded (Download site) and decoded; the client ends with U rho in the
/// clear or ERR.
DqcOutcome bb2_run(acframe::World& w, const BbSession& s, const std::vector<ResidentBlock>& blocks,
                   const std::vector<authcode::AuthKey>& keys, ServerAdversary& adv);

}  // namespace mcdqc::dqc
