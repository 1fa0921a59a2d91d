#pragma once

#include <optional>
#include <vector>

#include "mcdqc/acframe/envelope.hpp"
#include "mcdqc/dqc/session.hpp"
#include "mcdqc/multiclient/wiring.hpp"

namespace mcdqc::multiclient {

struct RunOptions {
  dqc::BackendConfig backend;
  /// Every client that receives e=1 passes it on to all others before aborting.
  bool rebroadcast = true;
};

struct AbortInfo {
  std::size_t client = 0;  // 1-based
  std::size_t round = 0;   // 1-based
  dqc::Failure kind = dqc::Failure::None;
};

struct RunOutcome {
  /// One entry per client: the output state or ERR, or nothing for a client
  /// that expects no output.
  std::vector<std::optional<qsim::MaybeState>> results;
  /// All outputs together (clients in order) when nobody aborted.
  std::optional<qsim::Matrix> joint;
  std::optional<AbortInfo> abort;
  acframe::Transcript transcript;

  bool aborted() const { return abort.has_value(); }
};

/// Protocol 1: one BV-DQC session per client per round, common qubits
/// authenticated under pre-agreed keys and routed through the server.
RunOutcome protocol1_run(const Validated& v, const RunOptions& opt, dqc::ServerAdversary& adv, qsim::Coins& coins);

/// Protocol 3: BB1 / BB / BB2 sessions with the authenticated blocks kept at
/// the server between rounds; the clients only exchange keys.
RunOutcome protocol3_run(const Validated& v, const RunOptions& opt, dqc::ServerAdversary& adv, qsim::Coins& coins);

/// Protocol 2: the two-client instance of Protocol 1.
RunOutcome protocol2_run(const std::vector<qsim::BasisState>& input, const qsim::GateList& u1, const qsim::GateList& u2,
                         const RunOptions& opt, dqc::ServerAdversary& adv, qsim::Coins& coins);

/// Protocol 4: the two-client instance of Protocol 3.
RunOutcome protocol4_run(const std::vector<qsim::BasisState>& input, const qsim::GateList& u1, const qsim::GateList& u2,
                         const RunOptions& opt, dqc::ServerAdversary& adv, qsim::Coins& coins);

enum class ProtocolKind { P1, P2, P3, P4 };

std::string to_string(ProtocolKind p);
/// "1".."4" or "protocol1".."protocol4".
ProtocolKind parse_protocol(const std::string& text);

/// Runs P1 or P3 on the scenario; P2 and P4 are the same runs, restricted to
/// the two-client shape.
RunOutcome run_protocol(ProtocolKind p, const Validated& v, const RunOptions& opt, dqc::ServerAdversary& adv,
                        qsim::Coins& coins);

}  // namespace mcdqc::multiclient
