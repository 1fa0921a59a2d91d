#include "mcdqc/multiclient/protocols.hpp"

#include <map>

#include "mcdqc/acframe/resources.hpp"
#include "mcdqc/dqc/bb.hpp"
#include "mcdqc/dqc/bvdqc.hpp"
#include "mcdqc/multiclient/round_unitary.hpp"

namespace mcdqc::multiclient {

using acframe::InterfaceId;
using dqc::client_party;
using qsim::QubitId;

namespace {

std::string wire_tag(char kind, std::size_t from, std::size_t to, std::size_t h) {
  return std::string("#") + kind + std::to_string(from + 1) + ">" + std::to_string(to + 1) + "@" +
         std::to_string(h + 1);
}

/// State shared by both protocols: the world, the outcome being built and
/// the abort path.
class Run {
 public:
  Run(const Validated& v, const RunOptions& opt, dqc::ServerAdversary& adv, qsim::Coins& coins)
      : v_(v), opt_(opt), adv_(adv), coins_(coins), w_(coins, &out_.transcript), outputs_(v.n()) {
    out_.results.resize(v.n());
    for (std::size_t i = 0; i < v.n(); ++i)
      for (auto b : v.scenario.clients[i].inputs) inputs_.push_back(w_.substrate.append(b, 1, client_party(i + 1)));
  }

  acframe::World& world() { return w_; }
  dqc::ServerAdversary& adv() { return adv_; }
  const RunOptions& options() const { return opt_; }

  /// Input qubits of client i in label order.
  std::vector<QubitId> inputs(std::size_t i) const {
    std::vector<QubitId> out;
    for (auto l : v_.wiring.input_labels[i]) out.push_back(inputs_[l][0]);
    return out;
  }

  void set_output(std::size_t i, std::vector<QubitId> qs) { outputs_[i] = std::move(qs); }

  void send_classical(std::size_t from, std::size_t to, const std::string& tag, acframe::Envelope msg) {
    acframe::AuthCChannel ch(client_party(from + 1), client_party(to + 1), tag, dqc::kServer);
    msg.source = ch.in_port();
    msg.destination = ch.in_port();
    ch.receive(w_, w_.emit(std::move(msg)));
  }

  void abort(std::size_t i, std::size_t h, dqc::Failure kind) {
    out_.abort = AbortInfo{i + 1, h + 1, kind};
    const auto signal = [&](std::size_t from, std::size_t to) {
      send_classical(from, to, wire_tag('e', from, to, h), acframe::make_control({}, {}, true));
    };
    for (std::size_t k = 0; k < v_.n(); ++k)
      if (k != i) signal(i, k);
    if (opt_.rebroadcast)
      for (std::size_t k = 0; k < v_.n(); ++k) {
        if (k == i) continue;
        for (std::size_t l = 0; l < v_.n(); ++l)
          if (l != k && l != i) signal(k, l);
      }
    const auto left = w_.substrate.qubits();
    w_.substrate.discard(left);
  }

  RunOutcome finish() {
    if (out_.aborted()) {
      for (std::size_t i = 0; i < v_.n(); ++i)
        if (v_.expects_output(i)) out_.results[i] = qsim::MaybeState{qsim::ErrMarker{}};
      return std::move(out_);
    }
    std::vector<QubitId> all;
    for (std::size_t i = 0; i < v_.n(); ++i) {
      if (!v_.expects_output(i)) continue;
      if (outputs_[i].size() != v_.wiring.output_labels[i].size())
        throw qsim::InvariantError("client " + std::to_string(i + 1) + " ended with the wrong number of outputs");
      out_.results[i] = qsim::MaybeState{w_.substrate.reduced(outputs_[i])};
      all.insert(all.end(), outputs_[i].begin(), outputs_[i].end());
    }
    if (all.size() != w_.substrate.num_qubits())
      throw qsim::InvariantError("qubits left over after an accepted run");
    out_.joint = w_.substrate.reduced(all);
    return std::move(out_);
  }

 private:
  const Validated& v_;
  RunOptions opt_;
  dqc::ServerAdversary& adv_;
  qsim::Coins& coins_;
  RunOutcome out_;
  acframe::World w_;
  std::vector<std::vector<QubitId>> inputs_;  // by global label
  std::vector<std::vector<QubitId>> outputs_;
};

// Sends a block from client i to client j through the server over C^q-insec.
void route(Run& run, std::size_t i, std::size_t j, std::size_t h, const std::vector<QubitId>& block) {
  auto& w = run.world();
  acframe::InsecureQChannel ch(false, client_party(i + 1), client_party(j + 1), wire_tag('q', i, j, h), dqc::kServer);
  ch.receive(w, w.emit_qubits(ch.in_port(), ch.in_port(), block));
  run.adv().on_quantum({dqc::Site::Route, i + 1, h + 1, j + 1}, w.substrate, block, *w.coins);
  ch.receive(w, w.emit_qubits(ch.inject_port(), ch.inject_port(), block));
}

RoundKeyTable agree_keys(Run& run, const Validated& v, std::size_t traps) {
  RoundKeyTable keys;
  auto& w = run.world();
  for (std::size_t h = 0; h + 1 < v.m(); ++h)
    for (std::size_t i = 0; i < v.n(); ++i)
      for (std::size_t j = 0; j < v.n(); ++j) {
        const auto& t = v.transfer(i, j, h);
        if (i == j || t.empty()) continue;
        acframe::KeyResource k(t.size(), traps, client_party(i + 1), client_party(j + 1), wire_tag('k', i, j, h));
        for (const auto& party : {client_party(i + 1), client_party(j + 1)}) {
          const InterfaceId port{party, "key" + wire_tag('k', i, j, h)};
          k.receive(w, w.emit(acframe::make_control(port, port, true)));
        }
        keys.emplace(KeyIndex{i, j, h}, *k.key());
      }
  return keys;
}

}  // namespace

RunOutcome protocol1_run(const Validated& v, const RunOptions& opt, dqc::ServerAdversary& adv, qsim::Coins& coins) {
  Run run(v, opt, adv, coins);
  auto& w = run.world();
  const std::size_t t = opt.backend.traps;
  const auto keys = agree_keys(run, v, t);

  std::vector<std::vector<QubitId>> plain(v.n());
  for (std::size_t i = 0; i < v.n(); ++i) plain[i] = run.inputs(i);
  std::map<std::pair<std::size_t, std::size_t>, std::vector<QubitId>> inbox;

  for (std::size_t h = 0; h < v.m(); ++h) {
    std::map<std::pair<std::size_t, std::size_t>, std::vector<QubitId>> next_inbox;
    std::vector<std::vector<QubitId>> next_plain(v.n());
    for (std::size_t i = 0; i < v.n(); ++i) {
      const auto layout = round_layout(v, i, h, t);
      if (layout.width == 0) continue;
      std::vector<QubitId> slots(layout.width);
      for (const auto& b : layout.incoming) {
        const auto& block = inbox.at({b.peer, i});
        const auto all = b.all();
        for (std::size_t k = 0; k < all.size(); ++k) slots[all[k]] = block[k];
      }
      for (std::size_t k = 0; k < layout.plain.size(); ++k) slots[layout.plain[k]] = plain[i][k];
      if (!layout.ancillas.empty()) {
        const auto fresh = w.substrate.append(qsim::BasisState::Zero, layout.ancillas.size(), client_party(i + 1));
        for (std::size_t k = 0; k < fresh.size(); ++k) slots[layout.ancillas[k]] = fresh[k];
      }

      dqc::DqcSession s;
      s.client = i + 1;
      s.round = h + 1;
      s.inputs = slots;
      s.program = build_round_unitary(v, i, h, keys, t);
      s.backend = opt.backend;
      const auto o = dqc::bvdqc_run(w, s, adv);
      if (!o.accepted) {
        run.abort(i, h, o.failure);
        return run.finish();
      }
      std::vector<QubitId> traps;
      for (const auto& b : layout.incoming)
        for (auto x : b.traps) traps.push_back(o.outputs[x]);
      if (!traps.empty() && !authcode::check_traps(w.substrate, traps, *w.coins)) {
        run.abort(i, h, dqc::Failure::Authentication);
        return run.finish();
      }
      std::vector<QubitId> kept;
      for (auto x : layout.kept) kept.push_back(o.outputs[x]);
      for (const auto& b : layout.outgoing) {
        std::vector<QubitId> block;
        for (auto x : b.all()) block.push_back(o.outputs[x]);
        route(run, i, b.peer, h, block);
        next_inbox[{i, b.peer}] = std::move(block);
      }
      if (h + 1 == v.m()) run.set_output(i, std::move(kept));
      else next_plain[i] = std::move(kept);
    }
    inbox = std::move(next_inbox);
    plain = std::move(next_plain);
  }
  return run.finish();
}

namespace {

struct Held {
  dqc::ResidentBlock block;
  authcode::AuthKey key;
};
using Resident = std::map<std::pair<std::size_t, std::size_t>, Held>;

// Keys go to their receivers over C^c-auth; the blocks stay at the server.
void deliver(Run& run, std::size_t i, std::size_t h, const std::vector<std::size_t>& receivers, dqc::BbOutcome& r,
             Resident& next) {
  for (std::size_t g = 0; g < receivers.size(); ++g) {
    const auto j = receivers[g];
    if (j != i) {
      const auto tag = wire_tag('k', i, j, h);
      run.send_classical(i, j, tag, acframe::make_key({}, {}, acframe::KeyValue{{r.keys[g]}}));
    }
    next.emplace(std::make_pair(i, j), Held{r.blocks[g], r.keys[g]});
  }
}

void gather(const Resident& now, std::size_t i, std::size_t n, std::vector<dqc::ResidentBlock>& blocks,
            std::vector<authcode::AuthKey>& keys) {
  for (std::size_t j = 0; j < n; ++j) {
    const auto it = now.find({j, i});
    if (it == now.end()) continue;
    blocks.push_back(it->second.block);
    keys.push_back(it->second.key);
  }
}

void resident_window(Run& run, const Resident& now, std::size_t h) {
  auto& w = run.world();
  for (const auto& [pair, held] : now)
    run.adv().on_quantum({dqc::Site::Resident, pair.first + 1, h + 1, pair.second + 1}, w.substrate,
                         held.block.qubits(), *w.coins);
}

}  // namespace

RunOutcome protocol3_run(const Validated& v, const RunOptions& opt, dqc::ServerAdversary& adv, qsim::Coins& coins) {
  Run run(v, opt, adv, coins);
  auto& w = run.world();
  const std::size_t n = v.n(), m = v.m();

  // groups of round h for client i: one per nonempty T_{i->j}^(h), or a single
  // group holding everything when there is no next round
  const auto groups_of = [&](std::size_t i, std::size_t h, std::vector<std::size_t>& receivers) {
    std::vector<std::vector<std::size_t>> groups;
    receivers.clear();
    if (h + 1 >= m) {
      std::vector<std::size_t> all(v.labels(i, h).size());
      for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
      groups.push_back(all);
      receivers.push_back(i);
      return groups;
    }
    for (std::size_t j = 0; j < n; ++j) {
      const auto& t = v.transfer(i, j, h);
      if (t.empty()) continue;
      groups.push_back(v.positions(i, h, t));
      receivers.push_back(j);
    }
    return groups;
  };

  Resident now;
  for (std::size_t i = 0; i < n; ++i) {
    if (v.labels(i, 0).empty()) continue;
    dqc::BbSession s;
    s.client = i + 1;
    s.round = 1;
    s.program = v.round_circuit(i, 0);
    std::vector<std::size_t> receivers;
    s.out_groups = groups_of(i, 0, receivers);
    s.backend = opt.backend;
    auto r = dqc::bb1_run(w, s, run.inputs(i), adv);
    if (!r.accepted) {
      run.abort(i, 0, r.failure);
      return run.finish();
    }
    deliver(run, i, 0, receivers, r, now);
  }

  for (std::size_t h = 1; h + 1 < m; ++h) {
    resident_window(run, now, h - 1);
    Resident next;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<dqc::ResidentBlock> blocks;
      std::vector<authcode::AuthKey> keys;
      gather(now, i, n, blocks, keys);
      if (blocks.empty()) continue;
      dqc::BbSession s;
      s.client = i + 1;
      s.round = h + 1;
      s.program = v.round_circuit(i, h);
      std::vector<std::size_t> receivers;
      s.out_groups = groups_of(i, h, receivers);
      s.backend = opt.backend;
      auto r = dqc::bb_run(w, s, blocks, keys, adv);
      if (!r.accepted) {
        run.abort(i, h, r.failure);
        return run.finish();
      }
      deliver(run, i, h, receivers, r, next);
    }
    now = std::move(next);
  }

  // last round; with m = 1 the BB1 blocks are simply brought home
  const std::size_t last = m == 1 ? 1 : m - 1;
  resident_window(run, now, last - 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<dqc::ResidentBlock> blocks;
    std::vector<authcode::AuthKey> keys;
    gather(now, i, n, blocks, keys);
    if (blocks.empty()) continue;
    std::size_t width = 0;
    for (const auto& k : keys) width += k.m;
    dqc::BbSession s;
    s.client = i + 1;
    s.round = last + 1;
    s.program = m == 1 ? qsim::Circuit(width) : v.round_circuit(i, last);
    s.backend = opt.backend;
    const auto o = dqc::bb2_run(w, s, blocks, keys, adv);
    if (!o.accepted) {
      run.abort(i, last, o.failure);
      return run.finish();
    }
    run.set_output(i, o.outputs);
  }
  return run.finish();
}

RunOutcome protocol2_run(const std::vector<qsim::BasisState>& input, const qsim::GateList& u1, const qsim::GateList& u2,
                         const RunOptions& opt, dqc::ServerAdversary& adv, qsim::Coins& coins) {
  const auto v = validate_scenario(two_client_scenario(input, u1, u2));
  return protocol1_run(v, opt, adv, coins);
}

RunOutcome protocol4_run(const std::vector<qsim::BasisState>& input, const qsim::GateList& u1, const qsim::GateList& u2,
                         const RunOptions& opt, dqc::ServerAdversary& adv, qsim::Coins& coins) {
  const auto v = validate_scenario(two_client_scenario(input, u1, u2));
  return protocol3_run(v, opt, adv, coins);
}

std::string to_string(ProtocolKind p) {
  switch (p) {
    case ProtocolKind::P1: return "protocol1";
    case ProtocolKind::P2: return "protocol2";
    case ProtocolKind::P3: return "protocol3";
    case ProtocolKind::P4: return "protocol4";
  }
  return "?";
}

ProtocolKind parse_protocol(const std::string& text) {
  for (auto p : {ProtocolKind::P1, ProtocolKind::P2, ProtocolKind::P3, ProtocolKind::P4}) {
    const auto name = to_string(p);
    if (text == name || text == name.substr(name.size() - 1)) return p;
  }
  throw qsim::Error("unknown protocol '" + text + "' (expected 1, 2, 3 or 4)");
}

namespace {

void require_two_client_shape(const Validated& v) {
  const bool ok = v.n() == 2 && v.m() == 2 && v.wiring.input_labels[1].empty() && v.labels(0, 1).empty();
  if (!ok)
    throw ValidationError(
        "the two-client protocols need n=2, m=2, input only at client 1 and every qubit forwarded to client 2");
}

}  // namespace

RunOutcome run_protocol(ProtocolKind p, const Validated& v, const RunOptions& opt, dqc::ServerAdversary& adv,
                        qsim::Coins& coins) {
  if (p == ProtocolKind::P2 || p == ProtocolKind::P4) require_two_client_shape(v);
  if (p == ProtocolKind::P1 || p == ProtocolKind::P2) return protocol1_run(v, opt, adv, coins);
  return protocol3_run(v, opt, adv, coins);
}

}  // namespace mcdqc::multiclient
