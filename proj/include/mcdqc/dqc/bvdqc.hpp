#pragma once

#include "mcdqc/dqc/session.hpp"

namespace mcdqc::dqc {

/// One BV-DQC delegation. Ideal backend: through S^bv, with the server's f
/// bit taken from the adversary. Clifford-auth backend: the client encodes
/// its input with t traps under a session Clifford C, sends the block and the
/// instruction C(U x I)C^dagger, the server applies it (the adversary may act
/// on the block afterwards), and the client undoes C and checks the traps.
DqcOutcome bvdqc_run(acframe::World& w, const DqcSession& s, ServerAdversary& adv);

}  // namespace mcdqc::dqc
