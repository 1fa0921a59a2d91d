#include "mcdqc/acframe/resources.hpp"

#include <algorithm>

namespace mcdqc::acframe {

using qsim::Error;
using qsim::QubitId;

namespace {

bool same(const InterfaceId& a, const InterfaceId& b) { return a == b; }

[[noreturn]] void unknown_port(const std::string& who, const Envelope& in) {
  throw Error(who + " has no input port " + in.destination.str());
}

}  // namespace

// ---------------------------------------------------------------- K

KeyResource::KeyResource(std::size_t m, std::size_t t, std::string a, std::string b, std::string tag)
    : m_(m), t_(t), a_(std::move(a)), b_(std::move(b)), tag_(std::move(tag)) {
  const std::size_t limit =
      authcode::default_mode(m + t) == authcode::KeyMode::Enumerated ? authcode::kMaxEnumeratedBlock
                                                                     : authcode::kMaxSampledBlock;
  if (m == 0 || m + t > limit) throw qsim::BudgetError("key size outside the authentication code limits");
}

std::vector<InterfaceId> KeyResource::outside() const {
  return {{a_, "key" + tag_}, {b_, "key" + tag_}, {"E", "key" + tag_}};
}

std::vector<Envelope> KeyResource::receive(World& w, const Envelope& in) {
  const InterfaceId pa{a_, "key" + tag_}, pb{b_, "key" + tag_}, pe{"E", "key" + tag_};
  if (same(in.destination, pe)) return {};
  bool* served = nullptr;
  if (same(in.destination, pa)) served = &served_a_;
  else if (same(in.destination, pb)) served = &served_b_;
  else unknown_port(name(), in);
  if (*served) throw Error(name() + ": double key request at " + in.destination.str());
  *served = true;
  if (!key_) key_ = authcode::auth_keygen(m_, t_, *w.coins);
  return {w.emit(make_key(in.destination, in.destination, KeyValue{{*key_}}))};
}

// ---------------------------------------------------------------- C^q-insec

InsecureQChannel::InsecureQChannel(bool filtered, std::string sender, std::string receiver, std::string tag,
                                   std::string adversary)
    : filtered_(filtered),
      sender_(std::move(sender)),
      receiver_(std::move(receiver)),
      tag_(std::move(tag)),
      adversary_(std::move(adversary)) {}

std::vector<InterfaceId> InsecureQChannel::outside() const {
  return {in_port(), tap_port(), inject_port(), out_port()};
}

std::vector<Envelope> InsecureQChannel::receive(World& w, const Envelope& in) {
  if (same(in.destination, in_port())) {
    const auto& qs = in.qubits();
    if (filtered_) return {w.emit_qubits(out_port(), out_port(), qs)};
    return {w.emit_qubits(tap_port(), tap_port(), qs)};
  }
  if (same(in.destination, inject_port())) {
    if (filtered_) throw Error(name() + ": delivery without a prior send on a filtered channel");
    return {w.emit_qubits(out_port(), out_port(), in.qubits())};
  }
  unknown_port(name(), in);
}

// ---------------------------------------------------------------- C^c-auth

AuthCChannel::AuthCChannel(std::string sender, std::string receiver, std::string tag, std::string adversary)
    : sender_(std::move(sender)),
      receiver_(std::move(receiver)),
      tag_(std::move(tag)),
      adversary_(std::move(adversary)) {}

std::vector<InterfaceId> AuthCChannel::outside() const { return {in_port(), out_port(), leak_port()}; }

std::vector<Envelope> AuthCChannel::receive(World& w, const Envelope& in) {
  if (same(in.destination, in_port())) {
    std::size_t length = 0;
    if (in.kind == EnvelopeKind::ClassicalBits) length = in.bits().size();
    else if (in.kind == EnvelopeKind::KeyValue) length = in.key().keys.size();
    else if (in.kind == EnvelopeKind::ControlBit) length = 1;
    else throw Error(name() + " carries classical messages only");
    LeakRecord leak;
    leak.message_length = length;
    leak.sent = true;
    std::vector<Envelope> out;
    out.push_back(w.emit(make_leak(leak_port(), leak_port(), leak)));
    Envelope e = in;
    e.source = out_port();
    e.destination = out_port();
    out.push_back(w.emit(std::move(e)));
    return out;
  }
  if (in.destination.party == adversary_) throw Error(name() + ": no input port at the adversary interface");
  unknown_port(name(), in);
}

// ---------------------------------------------------------------- C^q-sec

SecureQChannel::SecureQChannel(std::string sender, std::string receiver, std::string tag)
    : sender_(std::move(sender)), receiver_(std::move(receiver)), tag_(std::move(tag)) {}

std::vector<InterfaceId> SecureQChannel::outside() const {
  return {{sender_, "qin" + tag_}, {receiver_, "qout" + tag_}, {"E", "leak" + tag_}, {"E", "f" + tag_}};
}

std::vector<Envelope> SecureQChannel::settle(World& w) {
  if (!f_ || !pending_) return {};
  const InterfaceId out{receiver_, "qout" + tag_};
  auto qs = std::move(*pending_);
  pending_.reset();
  if (*f_) {
    w.substrate.discard(qs);
    return {w.emit(make_error(out, out))};
  }
  return {w.emit_qubits(out, out, std::move(qs))};
}

std::vector<Envelope> SecureQChannel::receive(World& w, const Envelope& in) {
  const InterfaceId qin{sender_, "qin" + tag_}, leak{"E", "leak" + tag_}, f{"E", "f" + tag_};
  std::vector<Envelope> out;
  if (same(in.destination, qin)) {
    if (pending_) throw Error(name() + ": a message is already in flight");
    pending_ = in.qubits();
    w.substrate.set_owner(*pending_, name());
    LeakRecord l;
    l.message_length = pending_->size();
    l.sent = true;
    out.push_back(w.emit(make_leak(leak, leak, l)));
  } else if (same(in.destination, f)) {
    f_ = in.control();
  } else {
    unknown_port(name(), in);
  }
  for (auto& e : settle(w)) out.push_back(std::move(e));
  return out;
}

// ---------------------------------------------------------------- S^bv

SbvResource::SbvResource(std::string client, std::string server, std::string tag)
    : client_(std::move(client)), server_(std::move(server)), tag_(std::move(tag)) {}

std::vector<InterfaceId> SbvResource::outside() const { return {psi_port(), out_port(), leak_port(), f_port()}; }

std::vector<Envelope> SbvResource::settle(World& w) {
  if (!f_ || !pending_) return {};
  Computation c = std::move(*pending_);
  pending_.reset();
  if (*f_) {
    w.substrate.discard(c.inputs);
    return {w.emit(make_error(out_port(), out_port()))};
  }
  w.substrate.apply(c.circuit, c.inputs);
  return {w.emit_qubits(out_port(), out_port(), c.inputs)};
}

std::vector<Envelope> SbvResource::receive(World& w, const Envelope& in) {
  std::vector<Envelope> out;
  if (same(in.destination, psi_port())) {
    if (pending_) throw Error(name() + ": a computation is already pending");
    const auto& c = in.computation();
    if (c.circuit.width() != c.inputs.size())
      throw Error(name() + ": malformed psi (program width " + std::to_string(c.circuit.width()) + ", " +
                  std::to_string(c.inputs.size()) + " inputs)");
    w.substrate.require_owner(c.inputs, client_);
    w.substrate.set_owner(c.inputs, name());
    pending_ = c;
    LeakRecord leak;
    leak.client = c.client;
    leak.round = c.round;
    leak.qubits = c.inputs.size();
    leak.gates = c.circuit.gate_count();
    out.push_back(w.emit(make_leak(leak_port(), leak_port(), leak)));
  } else if (same(in.destination, f_port())) {
    f_ = in.control();
  } else {
    unknown_port(name(), in);
  }
  for (auto& e : settle(w)) out.push_back(std::move(e));
  return out;
}

// ---------------------------------------------------------------- S^bb

SbbResource::SbbResource(std::string client, std::string server, std::string tag)
    : client_(std::move(client)), server_(std::move(server)), tag_(std::move(tag)) {}

std::vector<InterfaceId> SbbResource::outside() const {
  return {c_in(), c_key(), c_out(), s_in(), s_out(), leak_port(), f_port()};
}

std::vector<Envelope> SbbResource::settle(World& w) {
  std::vector<Envelope> out;
  if (!computation_ || !blocks_) return out;
  const Computation& c = *computation_;
  if (!leaked_) {
    LeakRecord leak;
    leak.client = c.client;
    leak.round = c.round;
    leak.qubits = c.circuit.width();
    leak.gates = c.circuit.gate_count();
    out.push_back(w.emit(make_leak(leak_port(), leak_port(), leak)));
    leaked_ = true;
  }
  if (!f_) return out;

  auto blocks = std::move(*blocks_);
  Computation comp = std::move(*computation_);
  blocks_.reset();
  computation_.reset();
  leaked_ = false;

  if (*f_) {
    w.substrate.discard(blocks);
    out.push_back(w.emit(make_error(c_out(), c_out())));
    return out;
  }

  // D_k' on every incoming block
  std::vector<QubitId> data;
  std::vector<QubitId> rejected_data;
  bool ok = true;
  std::size_t offset = 0;
  for (const auto& key : comp.in_keys) {
    const std::vector<QubitId> block(blocks.begin() + static_cast<long>(offset),
                                     blocks.begin() + static_cast<long>(offset + key.block_size()));
    offset += key.block_size();
    w.substrate.apply(key.clifford.unitary.adjoint(), block);
    const std::vector<QubitId> msg(block.begin(), block.begin() + static_cast<long>(key.m));
    const std::vector<QubitId> traps(block.begin() + static_cast<long>(key.m), block.end());
    if (!authcode::check_traps(w.substrate, traps, *w.coins)) ok = false;
    data.insert(data.end(), msg.begin(), msg.end());
  }
  if (!ok) {
    w.substrate.discard(data);
    out.push_back(w.emit(make_error(c_out(), c_out())));
    return out;
  }
  w.substrate.apply(comp.circuit, data);

  KeyValue fresh;
  std::vector<QubitId> encoded;
  for (const auto& g : comp.out_groups) {
    if (g.empty()) continue;
    std::vector<QubitId> group;
    for (auto pos : g) group.push_back(data[pos]);
    auto key = authcode::auth_keygen(group.size(), comp.traps, *w.coins);
    const auto block = authcode::auth_encode(w.substrate, group, key);
    encoded.insert(encoded.end(), block.begin(), block.end());
    fresh.keys.push_back(std::move(key));
  }
  out.push_back(w.emit(make_key(c_key(), c_key(), std::move(fresh))));
  out.push_back(w.emit_qubits(s_out(), s_out(), std::move(encoded)));
  return out;
}

std::vector<Envelope> SbbResource::receive(World& w, const Envelope& in) {
  if (same(in.destination, c_in())) {
    if (computation_) throw Error(name() + ": a computation is already pending");
    computation_ = in.computation();
  } else if (same(in.destination, s_in())) {
    if (blocks_) throw Error(name() + ": blocks already pending");
    blocks_ = in.qubits();
    w.substrate.set_owner(*blocks_, name());
  } else if (same(in.destination, f_port())) {
    f_ = in.control();
  } else {
    unknown_port(name(), in);
  }
  if (computation_ && blocks_) {
    std::size_t expected = 0;
    for (const auto& k : computation_->in_keys) expected += k.block_size();
    if (expected != blocks_->size())
      throw Error(name() + ": k' covers " + std::to_string(expected) + " qubits but " +
                  std::to_string(blocks_->size()) + " arrived");
    std::size_t data = 0;
    for (const auto& k : computation_->in_keys) data += k.m;
    if (computation_->circuit.width() != data) throw Error(name() + ": program width does not match the incoming data");
    std::vector<int> seen(data, 0);
    for (const auto& g : computation_->out_groups)
      for (auto pos : g) {
        if (pos >= data || seen[pos]++) throw Error(name() + ": output groups do not partition the data");
      }
    for (int c : seen)
      if (c != 1) throw Error(name() + ": output groups do not partition the data");
  }
  return settle(w);
}

// ---------------------------------------------------------------- S^n-bv

SnbvResource::SnbvResource(GlobalWiring wiring, std::string server)
    : wiring_(std::move(wiring)), server_(std::move(server)), psi_(wiring_.n) {}

std::vector<InterfaceId> SnbvResource::outside() const {
  std::vector<InterfaceId> ids;
  for (std::size_t i = 0; i < wiring_.n; ++i) {
    ids.push_back({client_party(i), "psi"});
    ids.push_back({client_party(i), "out"});
  }
  ids.push_back({server_, "leak"});
  ids.push_back({server_, "f"});
  return ids;
}

std::vector<Envelope> SnbvResource::settle(World& w) {
  std::vector<Envelope> out;
  if (done_ || !f_) return out;
  for (const auto& p : psi_)
    if (!p) return out;
  done_ = true;

  std::map<std::size_t, QubitId> handle;
  for (std::size_t i = 0; i < wiring_.n; ++i)
    for (std::size_t k = 0; k < wiring_.input_labels[i].size(); ++k)
      handle[wiring_.input_labels[i][k]] = psi_[i]->inputs[k];

  if (*f_) {
    std::vector<QubitId> all;
    for (auto& [label, q] : handle) all.push_back(q);
    w.substrate.discard(all);
    for (std::size_t i = 0; i < wiring_.n; ++i)
      if (!wiring_.output_labels[i].empty()) {
        const InterfaceId o{client_party(i), "out"};
        out.push_back(w.emit(make_error(o, o)));
      }
    return out;
  }
  for (std::size_t h = 0; h < wiring_.m; ++h)
    for (std::size_t i = 0; i < wiring_.n; ++i) {
      std::vector<QubitId> slots;
      for (auto label : wiring_.round_labels[i][h]) slots.push_back(handle.at(label));
      w.substrate.apply(psi_[i]->rounds[h], slots);
    }
  for (std::size_t i = 0; i < wiring_.n; ++i) {
    if (wiring_.output_labels[i].empty()) continue;
    std::vector<QubitId> qs;
    for (auto label : wiring_.output_labels[i]) qs.push_back(handle.at(label));
    const InterfaceId o{client_party(i), "out"};
    out.push_back(w.emit_qubits(o, o, std::move(qs)));
  }
  return out;
}

std::vector<Envelope> SnbvResource::receive(World& w, const Envelope& in) {
  std::vector<Envelope> out;
  if (same(in.destination, InterfaceId{server_, "f"})) {
    f_ = in.control();
  } else if (in.destination.port == "psi") {
    std::size_t i = wiring_.n;
    for (std::size_t k = 0; k < wiring_.n; ++k)
      if (in.destination.party == client_party(k)) i = k;
    if (i == wiring_.n) unknown_port(name(), in);
    if (psi_[i]) throw Error(name() + ": psi already received from " + client_party(i));
    const auto& c = in.computation();
    if (c.inputs.size() != wiring_.input_labels[i].size() || c.rounds.size() != wiring_.m)
      throw Error(name() + ": malformed psi from " + client_party(i));
    for (std::size_t h = 0; h < wiring_.m; ++h)
      if (c.rounds[h].width() != wiring_.round_labels[i][h].size())
        throw Error(name() + ": malformed psi from " + client_party(i) + " (round " + std::to_string(h + 1) +
                    " width)");
    w.substrate.require_owner(c.inputs, client_party(i));
    w.substrate.set_owner(c.inputs, name());
    psi_[i] = c;
    const InterfaceId leak{server_, "leak"};
    for (std::size_t h = 0; h < wiring_.m; ++h) {
      LeakRecord l;
      l.client = i + 1;
      l.round = h + 1;
      l.qubits = c.rounds[h].width();
      l.gates = c.rounds[h].gate_count();
      out.push_back(w.emit(make_leak(leak, leak, l)));
    }
  } else {
    unknown_port(name(), in);
  }
  for (auto& e : settle(w)) out.push_back(std::move(e));
  return out;
}

}  // namespace mcdqc::acframe
