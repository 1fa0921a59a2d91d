#include "mcdqc/dqc/bb.hpp"

#include "mcdqc/acframe/resources.hpp"
#include "mcdqc/qsim/linalg.hpp"

namespace mcdqc::dqc {

using acframe::InterfaceId;
using authcode::AuthKey;
using qsim::Matrix;
using qsim::QubitId;

namespace detail {
struct ResidentFactory {
  static ResidentBlock make(std::vector<QubitId> qubits, const AuthKey& key) {
    return ResidentBlock(std::move(qubits), key.m, key.digest());
  }
};
}  // namespace detail

namespace {

std::string tag_of(const char* role, const BbSession& s) {
  return std::string("@") + role + std::to_string(s.client) + "." + std::to_string(s.round);
}

void check_groups(const BbSession& s, std::size_t data) {
  if (s.program.width() != data)
    throw qsim::Error("BB program width " + std::to_string(s.program.width()) + " does not match " +
                      std::to_string(data) + " data qubits");
  std::vector<int> seen(data, 0);
  for (const auto& g : s.out_groups) {
    if (g.empty()) throw qsim::Error("empty BB output group");
    for (auto p : g)
      if (p >= data || seen[p]++) throw qsim::Error("BB output groups do not partition the data");
  }
  for (int c : seen)
    if (c != 1) throw qsim::Error("BB output groups do not partition the data");
}

std::vector<ResidentBlock> split(const std::vector<QubitId>& all, const std::vector<AuthKey>& keys) {
  std::vector<ResidentBlock> out;
  std::size_t offset = 0;
  for (const auto& k : keys) {
    std::vector<QubitId> q(all.begin() + static_cast<long>(offset),
                           all.begin() + static_cast<long>(offset + k.block_size()));
    offset += k.block_size();
    out.push_back(detail::ResidentFactory::make(std::move(q), k));
  }
  return out;
}

BbOutcome core_ideal(acframe::World& w, const BbSession& s, const char* role, const std::vector<QubitId>& blocks,
                     const std::vector<AuthKey>& keys, ServerAdversary& adv) {
  const std::string party = client_party(s.client);
  acframe::SbbResource sbb(party, kServer, tag_of(role, s));
  acframe::Computation c;
  c.circuit = s.program;
  c.in_keys = keys;
  c.out_groups = s.out_groups;
  c.traps = s.backend.traps;
  c.client = s.client;
  c.round = s.round;
  auto out = sbb.receive(w, w.emit(acframe::make_computation(sbb.c_in(), sbb.c_in(), std::move(c))));
  auto more = sbb.receive(w, w.emit(acframe::make_qubits(sbb.s_in(), sbb.s_in(), blocks)));
  out.insert(out.end(), more.begin(), more.end());
  const bool f = adv.flip_abort({Site::Session, s.client, s.round, 0}, *w.coins);
  more = sbb.receive(w, w.emit(acframe::make_control(sbb.f_port(), sbb.f_port(), f)));
  out.insert(out.end(), more.begin(), more.end());

  BbOutcome o;
  std::vector<QubitId> fresh;
  for (const auto& e : out) {
    if (e.destination == sbb.leak_port()) o.leak = e.leak();
    if (e.destination == sbb.c_out() && e.is_error()) o.failure = Failure::Verification;
    if (e.destination == sbb.c_key()) o.keys = e.key().keys;
    if (e.destination == sbb.s_out()) fresh = e.qubits();
  }
  if (o.failure != Failure::None) {
    o.keys.clear();
    return o;
  }
  o.accepted = true;
  w.substrate.set_owner(fresh, kServer);
  o.blocks = split(fresh, o.keys);
  return o;
}

// Concrete session: the server applies W = (x C_out)(U)(X^a on the old traps)(x C'^dagger)
// and reports the old trap bits, which must equal the client's secret mask a.
BbOutcome core_clifford(acframe::World& w, const BbSession& s, const char* role, const std::vector<QubitId>& blocks,
                        const std::vector<AuthKey>& keys, ServerAdversary& adv) {
  const std::string party = client_party(s.client);
  const std::string tag = tag_of(role, s);
  const InterfaceId prog_c{party, "prog" + tag}, prog_s{kServer, "prog" + tag};
  const InterfaceId bits_s{kServer, "bits" + tag}, bits_c{party, "bits" + tag};
  const InterfaceId leak_s{kServer, "leak" + tag};
  const std::size_t t = s.backend.traps;

  // slot layout: old blocks, then t new traps per output group
  std::vector<std::size_t> data_slot, old_trap_slot;
  std::size_t slot = 0;
  for (const auto& k : keys) {
    for (std::size_t q = 0; q < k.m; ++q) data_slot.push_back(slot++);
    for (std::size_t q = 0; q < k.t; ++q) old_trap_slot.push_back(slot++);
  }
  const std::size_t old_width = slot;
  const std::size_t width = old_width + t * s.out_groups.size();
  if (width > 8) throw qsim::BudgetError("BB session instruction on " + std::to_string(width) + " qubits");

  std::vector<int> mask(old_trap_slot.size());
  for (auto& b : mask) b = static_cast<int>(w.coins->uniform(2));
  std::vector<AuthKey> fresh_keys;
  for (const auto& g : s.out_groups) fresh_keys.push_back(authcode::auth_keygen(g.size(), t, *w.coins));

  qsim::Circuit wc(width);
  slot = 0;
  for (const auto& k : keys) {
    std::vector<std::size_t> targets(k.block_size());
    for (auto& x : targets) x = slot++;
    wc.append(k.clifford.unitary.adjoint(), targets, 0);
  }
  for (std::size_t k = 0; k < mask.size(); ++k)
    if (mask[k]) wc.append(qsim::gate_matrix(qsim::GateKind::X), {old_trap_slot[k]}, 0);
  for (const auto& op : s.program.ops()) {
    std::vector<std::size_t> targets;
    for (auto x : op.targets) targets.push_back(data_slot[x]);
    wc.append(op.unitary, targets, 0);
  }
  std::size_t next_trap = old_width;
  std::vector<std::vector<std::size_t>> group_slots;
  for (std::size_t g = 0; g < s.out_groups.size(); ++g) {
    std::vector<std::size_t> targets;
    for (auto p : s.out_groups[g]) targets.push_back(data_slot[p]);
    for (std::size_t q = 0; q < t; ++q) targets.push_back(next_trap++);
    wc.append(fresh_keys[g].clifford.unitary, targets, 0);
    group_slots.push_back(targets);
  }
  acframe::Computation instruction;
  instruction.circuit = qsim::Circuit(width);
  std::vector<std::size_t> all(width);
  for (std::size_t k = 0; k < width; ++k) all[k] = k;
  instruction.circuit.append(wc.dense(), all, s.program.gate_count());
  instruction.client = s.client;
  instruction.round = s.round;
  w.emit(acframe::make_computation(prog_c, prog_s, instruction));

  BbOutcome o;
  acframe::LeakRecord leak;
  leak.client = s.client;
  leak.round = s.round;
  leak.qubits = data_slot.size();
  leak.gates = s.program.gate_count();
  o.leak = leak;
  w.emit(acframe::make_leak(leak_s, leak_s, leak));

  if (adv.flip_abort({Site::Session, s.client, s.round, 0}, *w.coins)) {
    w.substrate.discard(blocks);
    w.emit(acframe::make_error(bits_s, bits_c));
    o.failure = Failure::Verification;
    return o;
  }
  const auto new_traps = w.substrate.append(qsim::BasisState::Zero, t * s.out_groups.size(), kServer);
  std::vector<QubitId> handles = blocks;
  handles.insert(handles.end(), new_traps.begin(), new_traps.end());
  w.substrate.apply(instruction.circuit, handles);
  adv.on_quantum({Site::Session, s.client, s.round, 0}, w.substrate, handles, *w.coins);

  std::vector<QubitId> old_traps;
  for (auto x : old_trap_slot) old_traps.push_back(handles[x]);
  const auto bits = w.substrate.measure(old_traps, *w.coins);
  w.substrate.discard(old_traps);
  std::vector<std::uint8_t> report(bits.begin(), bits.end());
  w.emit(acframe::make_bits(bits_s, bits_c, report));

  if (bits != mask) {
    std::vector<QubitId> rest;
    for (std::size_t x = 0; x < width; ++x)
      if (w.substrate.contains(handles[x])) rest.push_back(handles[x]);
    w.substrate.discard(rest);
    o.failure = Failure::Verification;
    return o;
  }
  o.accepted = true;
  o.keys = fresh_keys;
  for (std::size_t g = 0; g < group_slots.size(); ++g) {
    std::vector<QubitId> q;
    for (auto x : group_slots[g]) q.push_back(handles[x]);
    o.blocks.push_back(detail::ResidentFactory::make(std::move(q), fresh_keys[g]));
  }
  return o;
}

BbOutcome core(acframe::World& w, const BbSession& s, const char* role, const std::vector<QubitId>& blocks,
               const std::vector<AuthKey>& keys, ServerAdversary& adv) {
  std::size_t data = 0;
  for (const auto& k : keys) data += k.m;
  check_groups(s, data);
  if (s.backend.traps == 0) throw qsim::Error("BB sessions need at least one trap");
  if (s.backend.kind == Backend::Ideal) return core_ideal(w, s, role, blocks, keys, adv);
  return core_clifford(w, s, role, blocks, keys, adv);
}

std::vector<QubitId> concat(const std::vector<ResidentBlock>& blocks) {
  std::vector<QubitId> all;
  for (const auto& b : blocks) all.insert(all.end(), b.qubits().begin(), b.qubits().end());
  return all;
}

void check_keys(const std::vector<ResidentBlock>& blocks, const std::vector<AuthKey>& keys) {
  if (blocks.size() != keys.size() || blocks.empty()) throw qsim::Error("key/block mismatch: counts differ");
  for (std::size_t k = 0; k < blocks.size(); ++k)
    if (blocks[k].key_digest() != keys[k].digest() || blocks[k].qubits().size() != keys[k].block_size())
      throw qsim::Error("key/block mismatch: block " + std::to_string(k) + " was not encoded under this key");
}

}  // namespace

BbOutcome bb1_run(acframe::World& w, const BbSession& s, const std::vector<QubitId>& inputs, ServerAdversary& adv) {
  const std::string party = client_party(s.client);
  w.substrate.require_owner(inputs, party);
  const auto kprime = authcode::auth_keygen(inputs.size(), s.backend.traps, *w.coins);
  const auto block = authcode::auth_encode(w.substrate, inputs, kprime);
  const std::string tag = tag_of("bb1.", s);
  w.transfer({party, "up" + tag}, {kServer, "up" + tag}, block);
  adv.on_quantum({Site::Upload, s.client, s.round, 0}, w.substrate, block, *w.coins);
  return core(w, s, "bb1.", block, {kprime}, adv);
}

BbOutcome bb_run(acframe::World& w, const BbSession& s, const std::vector<ResidentBlock>& blocks,
                 const std::vector<AuthKey>& keys, ServerAdversary& adv) {
  check_keys(blocks, keys);
  return core(w, s, "bb.", concat(blocks), keys, adv);
}

DqcOutcome bb2_run(acframe::World& w, const BbSession& s, const std::vector<ResidentBlock>& blocks,
                   const std::vector<AuthKey>& keys, ServerAdversary& adv) {
  check_keys(blocks, keys);
  BbSession single = s;
  std::size_t data = 0;
  for (const auto& k : keys) data += k.m;
  single.out_groups = {std::vector<std::size_t>(data)};
  for (std::size_t k = 0; k < data; ++k) single.out_groups[0][k] = k;
  auto r = core(w, single, "bb2.", concat(blocks), keys, adv);

  DqcOutcome o;
  o.leak = r.leak;
  if (!r.accepted) {
    o.failure = r.failure;
    return o;
  }
  const std::string party = client_party(s.client);
  const std::string tag = tag_of("bb2.", s);
  const auto block = r.blocks.at(0).qubits();
  adv.on_quantum({Site::Download, s.client, s.round, 0}, w.substrate, block, *w.coins);
  w.transfer({kServer, "down" + tag}, {party, "down" + tag}, block);
  auto v = authcode::auth_decode(w.substrate, block, r.keys.at(0), *w.coins);
  if (!v.accepted) {
    o.failure = Failure::Authentication;
    return o;
  }
  o.accepted = true;
  o.outputs = v.message;
  return o;
}

}  // namespace mcdqc::dqc
