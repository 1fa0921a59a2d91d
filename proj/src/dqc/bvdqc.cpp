#include "mcdqc/dqc/bvdqc.hpp"

#include "mcdqc/acframe/resources.hpp"
#include "mcdqc/qsim/linalg.hpp"

namespace mcdqc::dqc {

using acframe::InterfaceId;
using qsim::Matrix;
using qsim::QubitId;

namespace {

std::string tag_of(const DqcSession& s) { return "@bv" + std::to_string(s.client) + "." + std::to_string(s.round); }

acframe::LeakRecord size_leak(const DqcSession& s) {
  acframe::LeakRecord l;
  l.client = s.client;
  l.round = s.round;
  l.qubits = s.inputs.size();
  l.gates = s.program.gate_count();
  return l;
}

DqcOutcome run_ideal(acframe::World& w, const DqcSession& s, ServerAdversary& adv) {
  const std::string party = client_party(s.client);
  acframe::SbvResource sbv(party, kServer, tag_of(s));
  acframe::Computation c;
  c.circuit = s.program;
  c.inputs = s.inputs;
  c.client = s.client;
  c.round = s.round;
  auto out = sbv.receive(w, w.emit(acframe::make_computation(sbv.psi_port(), sbv.psi_port(), std::move(c))));
  const bool f = adv.flip_abort({Site::Session, s.client, s.round, 0}, *w.coins);
  auto rest = sbv.receive(w, w.emit(acframe::make_control(sbv.f_port(), sbv.f_port(), f)));
  out.insert(out.end(), rest.begin(), rest.end());

  DqcOutcome o;
  for (const auto& e : out) {
    if (e.destination == sbv.leak_port()) o.leak = e.leak();
    if (e.destination == sbv.out_port()) {
      if (e.is_error()) {
        o.failure = Failure::Verification;
      } else {
        o.accepted = true;
        o.outputs = e.qubits();
      }
    }
  }
  return o;
}

DqcOutcome run_clifford(acframe::World& w, const DqcSession& s, ServerAdversary& adv) {
  const std::string party = client_party(s.client);
  const std::string tag = tag_of(s);
  const InterfaceId up_c{party, "up" + tag}, up_s{kServer, "up" + tag};
  const InterfaceId down_s{kServer, "down" + tag}, down_c{party, "down" + tag};
  const InterfaceId prog_c{party, "prog" + tag}, leak_s{kServer, "leak" + tag};
  const std::size_t width = s.inputs.size();
  const std::size_t t = s.backend.traps;

  const auto key = session_clifford(width + t, *w.coins);
  const auto traps = w.substrate.append(qsim::BasisState::Zero, t, party);
  std::vector<QubitId> block = s.inputs;
  block.insert(block.end(), traps.begin(), traps.end());
  w.substrate.apply(key.unitary, block);
  w.transfer(up_c, up_s, block);

  // the instruction is sent in the clear: W = C (U x I_t) C^dagger
  const Matrix u = qsim::kron(s.program.dense(), Matrix::Identity(Eigen::Index{1} << t, Eigen::Index{1} << t));
  acframe::Computation instruction;
  instruction.circuit = qsim::Circuit(width + t);
  instruction.circuit.append(key.unitary * u * key.unitary.adjoint(), [&] {
    std::vector<std::size_t> slots(width + t);
    for (std::size_t k = 0; k < slots.size(); ++k) slots[k] = k;
    return slots;
  }(), s.program.gate_count());
  instruction.client = s.client;
  instruction.round = s.round;
  w.emit(acframe::make_computation(prog_c, up_s, instruction));

  DqcOutcome o;
  o.leak = size_leak(s);
  w.emit(acframe::make_leak(leak_s, leak_s, *o.leak));
  if (adv.flip_abort({Site::Session, s.client, s.round, 0}, *w.coins)) {
    w.substrate.discard(block);
    w.emit(acframe::make_error(down_s, down_c));
    o.failure = Failure::Verification;
    return o;
  }
  w.substrate.apply(instruction.circuit, block);
  adv.on_quantum({Site::Session, s.client, s.round, 0}, w.substrate, block, *w.coins);
  w.transfer(down_s, down_c, block);

  w.substrate.apply(key.unitary.adjoint(), block);
  if (!authcode::check_traps(w.substrate, traps, *w.coins)) {
    w.substrate.discard(s.inputs);
    o.failure = Failure::Verification;
    return o;
  }
  o.accepted = true;
  o.outputs = s.inputs;
  return o;
}

}  // namespace

DqcOutcome bvdqc_run(acframe::World& w, const DqcSession& s, ServerAdversary& adv) {
  if (s.program.width() != s.inputs.size())
    throw qsim::Error("program width " + std::to_string(s.program.width()) + " does not match " +
                      std::to_string(s.inputs.size()) + " inputs");
  w.substrate.require_owner(s.inputs, client_party(s.client));
  if (s.backend.kind == Backend::Ideal) return run_ideal(w, s, adv);
  if (s.backend.traps == 0) throw qsim::Error("clifford-auth backend needs at least one trap");
  return run_clifford(w, s, adv);
}

}  // namespace mcdqc::dqc
