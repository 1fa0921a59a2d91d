#include <cmath>
#include <set>

#include "doctest.h"
#include "mcdqc/acframe/advantage.hpp"
#include "mcdqc/acframe/compose.hpp"
#include "mcdqc/acframe/exhaustive.hpp"
#include "mcdqc/acframe/resources.hpp"
#include "mcdqc/authcode/oracle.hpp"
#include "mcdqc/authcode/otp.hpp"
#include "mcdqc/qsim/linalg.hpp"
#include "oracles/statevector.hpp"
#include "support.hpp"
#include "systems.hpp"

using namespace mcdqc::qsim;
using namespace mcdqc::acframe;
using mcdqc::authcode::AuthKey;

namespace {

using namespace test_systems;

// Pauli one-time pad box that encrypts a fixed basis state at activation.
class OtpBox final : public System {
 public:
  explicit OtpBox(BasisState s) : s_(s) {}
  std::string name() const override { return "otp"; }
  std::vector<InterfaceId> outside() const override { return {{"E", "tap"}}; }
  std::vector<Envelope> receive(World&, const Envelope&) override { return {}; }
  std::vector<Envelope> activate(World& w) override {
    const auto q = w.substrate.append(s_, 1, "E");
    const auto key = mcdqc::authcode::PauliKey::random(1, *w.coins);
    mcdqc::authcode::otp_encrypt(w.substrate, q, key);
    return {w.emit(make_qubits({"E", "tap"}, {"E", "tap"}, q))};
  }

 private:
  BasisState s_;
};

// Simulator for the QAS construction: prepares a dummy block under its own key
// and sets f by checking the injected block against that key.
class QsecSimulator final : public System {
 public:
  std::string name() const override { return "sigma_E"; }
  std::vector<InterfaceId> outside() const override {
    return {{"E", "key~"}, {"E", "tap~"}, {"E", "inject~"}};
  }
  std::vector<InterfaceId> inside() const override { return {{"E", "leak"}, {"E", "f"}}; }
  std::vector<Envelope> receive(World& w, const Envelope& in) override {
    if (in.destination == InterfaceId{"E", "key~"}) return {};
    if (in.destination == InterfaceId{"E", "leak"}) {
      const auto dummy = w.substrate.append(BasisState::Zero, in.leak().message_length, "E");
      key_ = mcdqc::authcode::auth_keygen(dummy.size(), 1, *w.coins);
      const auto block = mcdqc::authcode::auth_encode(w.substrate, dummy, *key_);
      return {w.emit_qubits({"E", "tap~"}, {"E", "tap~"}, block)};
    }
    if (in.destination == InterfaceId{"E", "inject~"}) {
      const auto v = mcdqc::authcode::auth_decode(w.substrate, in.qubits(), *key_, *w.coins);
      if (v.accepted) w.substrate.discard(v.message);
      return {w.emit(make_control({"E", "f"}, {"E", "f"}, !v.accepted))};
    }
    throw Error("simulator has no port " + in.destination.str());
  }

 private:
  std::optional<AuthKey> key_;
};

SystemPtr real_qauth(bool filtered) {
  std::vector<SystemPtr> parts;
  parts.push_back(make<EncodeConverter>("A"));
  parts.push_back(make<DecodeConverter>("B"));
  parts.push_back(make<KeyResource>(1, 1, "A", "B", "~"));
  parts.push_back(make<InsecureQChannel>(filtered, "A", "B", "~"));
  if (filtered)
    parts.push_back(make<Filter>(std::vector<InterfaceId>{{"E", "key~"}, {"E", "tap~"}, {"E", "inject~"}},
                                 std::map<InterfaceId, bool>{}));
  return compose(std::move(parts));
}

SystemPtr filtered_qsec(bool f) {
  std::vector<SystemPtr> parts;
  parts.push_back(make<SecureQChannel>());
  parts.push_back(make<Filter>(std::vector<InterfaceId>{{"E", "leak"}, {"E", "f"}},
                               std::map<InterfaceId, bool>{{{"E", "f"}, f}}));
  return compose(std::move(parts));
}


}  // namespace

TEST_SUITE("acframe") {

TEST_CASE("key resource delivers the same key at both ends; E is inert") {
  SeededCoins coins(1);
  World w(coins);
  KeyResource k(1, 1);
  CHECK(send_control(w, k, {"E", "key"}, true).empty());
  const auto a = send_control(w, k, {"A", "key"}, true);
  const auto b = send_control(w, k, {"B", "key"}, true);
  REQUIRE(a.size() == 1);
  REQUIRE(b.size() == 1);
  CHECK(a[0].key().keys[0].same_as(b[0].key().keys[0]));
  CHECK_THROWS_AS(send_control(w, k, {"A", "key"}, true), Error);
  CHECK_THROWS_AS(KeyResource(3, 2), BudgetError);
}

TEST_CASE("independent key sessions collide at the keyspace rate") {
  SeededCoins coins(2);
  int equal = 0;
  const int sessions = 2000;
  for (int s = 0; s < sessions; ++s) {
    World w(coins);
    KeyResource k1(1, 1), k2(1, 1);
    const auto a = send_control(w, k1, {"A", "key"}, true);
    const auto b = send_control(w, k2, {"A", "key"}, true);
    equal += a[0].key().keys[0].same_as(b[0].key().keys[0]);
  }
  // expected 2000 / 11520 = 0.17 collisions
  CHECK(equal <= 3);
}

TEST_CASE("insecure channel: pass-through, replacement and Pauli tampering") {
  SeededCoins coins(3);
  {
    World w(coins);
    InsecureQChannel ch(true);
    const auto out = send_qubits(w, ch, ch.in_port(), prepare(w, BasisState::Plus));
    REQUIRE(out.size() == 1);
    CHECK(out[0].destination == ch.out_port());
    CHECK(max_abs_diff(w.substrate.reduced(out[0].qubits()), basis_density(BasisState::Plus)) < 1e-12);
    const auto fake = prepare(w, BasisState::Zero, "E");
    CHECK_THROWS_AS(send_qubits(w, ch, ch.inject_port(), fake), Error);
  }
  {
    World w(coins);
    InsecureQChannel ch(false);
    const auto tapped = send_qubits(w, ch, ch.in_port(), prepare(w, BasisState::One));
    REQUIRE(tapped.size() == 1);
    CHECK(tapped[0].destination == ch.tap_port());
    const auto fresh = w.substrate.append(BasisState::Zero, 1, "E");
    const auto out = send_qubits(w, ch, ch.inject_port(), fresh);
    CHECK(max_abs_diff(w.substrate.reduced(out[0].qubits()), basis_density(BasisState::Zero)) < 1e-12);
  }
  {
    World w(coins);
    InsecureQChannel ch(false);
    const Matrix rho = test_support::random_density(1, coins);
    const auto q = w.substrate.append(rho, "A");
    const auto tapped = send_qubits(w, ch, ch.in_port(), q);
    w.substrate.apply_pauli(PauliString::parse("Y"), tapped[0].qubits());
    const auto out = send_qubits(w, ch, ch.inject_port(), tapped[0].qubits());
    const Matrix y = PauliString::parse("Y").matrix();
    CHECK(max_abs_diff(w.substrate.reduced(out[0].qubits()), y * rho * y.adjoint()) < 1e-12);
  }
}

TEST_CASE("authenticated classical channel") {
  SeededCoins coins(4);
  World w(coins);
  AuthCChannel ch;
  const auto out = ch.receive(w, w.emit(make_bits(ch.in_port(), ch.in_port(), {1})));
  REQUIRE(out.size() == 2);
  const auto* leak = find_at(out, ch.leak_port());
  const auto* msg = find_at(out, ch.out_port());
  REQUIRE(leak);
  REQUIRE(msg);
  CHECK(leak->leak().message_length == 1);
  CHECK(msg->bits() == std::vector<std::uint8_t>{1});
  CHECK_THROWS_AS(ch.receive(w, w.emit(make_bits({"E", "leak"}, {"E", "leak"}, {0}))), Error);
}

TEST_CASE("secure quantum channel: f=0 delivers, f=1 gives ERR, leak comes first") {
  SeededCoins coins(5);
  for (bool f : {false, true}) {
    Transcript t;
    World w(coins, &t);
    SecureQChannel ch;
    const auto leak = send_qubits(w, ch, {"A", "qin"}, prepare(w, BasisState::Plus));
    REQUIRE(leak.size() == 1);
    CHECK(leak[0].kind == EnvelopeKind::LeakRecord);
    CHECK(leak[0].leak().message_length == 1);
    const auto out = send_control(w, ch, {"E", "f"}, f);
    REQUIRE(out.size() == 1);
    CHECK(out[0].step > leak[0].step);
    if (f) {
      CHECK(out[0].is_error());
      CHECK(w.substrate.num_qubits() == 0);
    } else {
      CHECK(max_abs_diff(w.substrate.reduced(out[0].qubits()), basis_density(BasisState::Plus)) < 1e-12);
    }
    CHECK_NOTHROW(t.check_structure());
  }
}

TEST_CASE("S^bv definition table") {
  struct Row {
    BasisState in;
    const char* gates;
    bool f;
    std::optional<BasisState> expect;
  };
  const Row rows[] = {{BasisState::Zero, "X 0", false, BasisState::One},
                      {BasisState::Plus, "H 0", false, BasisState::Zero},
                      {BasisState::Zero, "H 0", false, BasisState::Plus},
                      {BasisState::Minus, "X 0", true, std::nullopt},
                      {BasisState::One, "I 0", true, std::nullopt}};
  SeededCoins coins(6);
  for (const auto& r : rows) {
    Transcript t;
    World w(coins, &t);
    SbvResource sbv;
    Computation c;
    c.circuit = Circuit::from_gates(GateList::parse(r.gates), 1);
    c.inputs = prepare(w, r.in, "C");
    c.client = 1;
    c.round = 1;
    send_control(w, sbv, sbv.f_port(), r.f);
    const auto out = sbv.receive(w, w.emit(make_computation(sbv.psi_port(), sbv.psi_port(), c)));
    const auto* leak = find_at(out, sbv.leak_port());
    const auto* res = find_at(out, sbv.out_port());
    REQUIRE(leak);
    REQUIRE(res);
    CHECK(leak->leak().qubits == 1);
    CHECK(leak->leak().gates == 1);
    if (r.expect) {
      REQUIRE(res->kind == EnvelopeKind::QubitHandles);
      CHECK(max_abs_diff(w.substrate.reduced(res->qubits()), basis_density(*r.expect)) < 1e-12);
    } else {
      CHECK(res->is_error());
    }
    CHECK_NOTHROW(t.check_structure());
  }
  SeededCoins c2(7);
  World w(c2);
  SbvResource sbv;
  Computation bad;
  bad.circuit = Circuit::from_gates(GateList::parse("CNOT 0 1"), 2);
  bad.inputs = prepare(w, BasisState::Zero, "C");
  CHECK_THROWS_AS(sbv.receive(w, w.emit(make_computation(sbv.psi_port(), sbv.psi_port(), bad))), Error);
}

TEST_CASE("S^bb definition table") {
  SeededCoins coins(8);
  auto run = [&](const AuthKey& kprime, const char* gates, bool f, BasisState in, World& w) {
    SbbResource sbb;
    const auto msg = prepare(w, in, "C");
    const auto block = mcdqc::authcode::auth_encode(w.substrate, msg, kprime);
    w.substrate.set_owner(block, "S");
    Computation c;
    c.circuit = Circuit::from_gates(GateList::parse(gates), 1);
    c.in_keys = {kprime};
    c.out_groups = {{0}};
    send_control(w, sbb, sbb.f_port(), f);
    auto out = sbb.receive(w, w.emit(make_computation(sbb.c_in(), sbb.c_in(), c)));
    auto rest = sbb.receive(w, w.emit(make_qubits(sbb.s_in(), sbb.s_in(), block)));
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
  };
  SUBCASE("identity k', U = I, f = 0: fresh key decodes the block back to rho") {
    World w(coins);
    const auto out = run(mcdqc::authcode::identity_key(1, 1), "I 0", false, BasisState::Minus, w);
    SbbResource probe;
    const auto* key = find_at(out, probe.c_key());
    const auto* block = find_at(out, probe.s_out());
    REQUIRE(key);
    REQUIRE(block);
    CHECK(find_at(out, probe.leak_port()));
    const auto v = mcdqc::authcode::auth_decode(w.substrate, block->qubits(), key->key().keys[0], coins);
    REQUIRE(v.accepted);
    CHECK(max_abs_diff(std::get<Matrix>(v.payload), basis_density(BasisState::Minus)) < 1e-10);
  }
  SUBCASE("f = 1 gives ERR at C and no key") {
    World w(coins);
    const auto out = run(mcdqc::authcode::identity_key(1, 1), "X 0", true, BasisState::Zero, w);
    SbbResource probe;
    REQUIRE(find_at(out, probe.c_out()));
    CHECK(find_at(out, probe.c_out())->is_error());
    CHECK_FALSE(find_at(out, probe.c_key()));
    CHECK(find_at(out, probe.leak_port()));
    CHECK(w.substrate.num_qubits() == 0);
  }
  SUBCASE("random k', U = X: chain decodes to X rho X") {
    for (int trial = 0; trial < 20; ++trial) {
      World w(coins);
      const Matrix rho = test_support::random_density(1, coins);
      SbbResource sbb;
      const auto kprime = mcdqc::authcode::auth_keygen(1, 1, coins);
      const auto msg = w.substrate.append(rho, "C");
      const auto block = mcdqc::authcode::auth_encode(w.substrate, msg, kprime);
      w.substrate.set_owner(block, "S");
      Computation c;
      c.circuit = Circuit::from_gates(GateList::parse("X 0"), 1);
      c.in_keys = {kprime};
      c.out_groups = {{0}};
      send_control(w, sbb, sbb.f_port(), false);
      sbb.receive(w, w.emit(make_computation(sbb.c_in(), sbb.c_in(), c)));
      const auto out = sbb.receive(w, w.emit(make_qubits(sbb.s_in(), sbb.s_in(), block)));
      const auto v = mcdqc::authcode::auth_decode(w.substrate, find_at(out, sbb.s_out())->qubits(),
                                                  find_at(out, sbb.c_key())->key().keys[0], coins);
      REQUIRE(v.accepted);
      const Matrix x = gate_matrix(GateKind::X);
      CHECK(max_abs_diff(std::get<Matrix>(v.payload), x * rho * x) < 1e-9);
    }
  }
  SUBCASE("k' sized for a different block is rejected") {
    World w(coins);
    SbbResource sbb;
    const auto block = w.substrate.append(BasisState::Zero, 3, "S");
    Computation c;
    c.circuit = Circuit::from_gates(GateList::parse("I 0"), 1);
    c.in_keys = {mcdqc::authcode::identity_key(1, 1)};
    c.out_groups = {{0}};
    sbb.receive(w, w.emit(make_computation(sbb.c_in(), sbb.c_in(), c)));
    CHECK_THROWS_AS(sbb.receive(w, w.emit(make_qubits(sbb.s_in(), sbb.s_in(), block))), Error);
  }
  SUBCASE("tampered block gives ERR") {
    World w(coins);
    SbbResource sbb;
    const auto msg = prepare(w, BasisState::Zero, "C");
    const auto block = mcdqc::authcode::auth_encode(w.substrate, msg, mcdqc::authcode::identity_key(1, 1));
    w.substrate.set_owner(block, "S");
    w.substrate.apply_pauli(PauliString::parse("IX"), block);
    Computation c;
    c.circuit = Circuit::from_gates(GateList::parse("I 0"), 1);
    c.in_keys = {mcdqc::authcode::identity_key(1, 1)};
    c.out_groups = {{0}};
    send_control(w, sbb, sbb.f_port(), false);
    sbb.receive(w, w.emit(make_computation(sbb.c_in(), sbb.c_in(), c)));
    const auto out = sbb.receive(w, w.emit(make_qubits(sbb.s_in(), sbb.s_in(), block)));
    REQUIRE(find_at(out, sbb.c_out()));
    CHECK(find_at(out, sbb.c_out())->is_error());
    CHECK_FALSE(find_at(out, sbb.c_key()));
  }
}

TEST_CASE("S^n-bv: two-client chain outputs U_c2 U_c1 rho_c1 at C2") {
  GlobalWiring wiring;
  wiring.n = 2;
  wiring.input_labels = {{0}, {}};
  wiring.m = 2;
  wiring.round_labels = {{{0}, {}}, {{}, {0}}};
  wiring.output_labels = {{}, {0}};
  SeededCoins coins(9);
  const std::pair<const char*, const char*> programs[] = {{"H 0", "S 0"}, {"X 0", "X 0"}, {"H 0", "I 0"}};
  for (const auto& [u1, u2] : programs) {
    for (bool f : {false, true}) {
      Transcript t;
      World w(coins, &t);
      SnbvResource snbv(wiring);
      Computation c1, c2;
      c1.inputs = prepare(w, BasisState::Zero, "C1");
      c1.rounds = {Circuit::from_gates(GateList::parse(u1), 1), Circuit(0)};
      c2.rounds = {Circuit(0), Circuit::from_gates(GateList::parse(u2), 1)};
      send_control(w, snbv, {"S", "f"}, f);
      auto out = snbv.receive(w, w.emit(make_computation({"C1", "psi"}, {"C1", "psi"}, c1)));
      auto rest = snbv.receive(w, w.emit(make_computation({"C2", "psi"}, {"C2", "psi"}, c2)));
      out.insert(out.end(), rest.begin(), rest.end());
      const auto* res = find_at(out, {"C2", "out"});
      REQUIRE(res);
      CHECK_FALSE(find_at(out, {"C1", "out"}));
      CHECK(find_at(out, {"S", "leak"}));
      if (f) {
        CHECK(res->is_error());
      } else {
        auto psi = oracle::product_state("0");
        for (const char* text : {u1, u2}) {
          const auto gates = GateList::parse(text);
          for (const auto& g : gates.gates()) oracle::apply(psi, std::string(gate_name(g.kind)), g.targets);
        }
        CHECK(trace_distance(w.substrate.reduced(res->qubits()), oracle::reduced_density(psi, {0})) < 1e-12);
      }
      CHECK_NOTHROW(t.check_structure());
    }
  }
}

TEST_CASE("S^n-bv: n=3, m=2 crossed wiring with identity programs permutes the inputs") {
  GlobalWiring wiring;
  wiring.n = 3;
  wiring.m = 2;
  wiring.input_labels = {{0, 1}, {2, 3}, {4, 5}};
  // T_1->1 = {0}, T_1->2 = {1}, T_2->1 = {3}, T_2->3 = {2}, T_3->2 = {4}, T_3->3 = {5}
  wiring.round_labels = {{{0, 1}, {0, 3}}, {{2, 3}, {1, 4}}, {{4, 5}, {2, 5}}};
  wiring.output_labels = {{0, 3}, {1, 4}, {2, 5}};
  const BasisState in[] = {BasisState::Zero, BasisState::One, BasisState::Plus,
                           BasisState::Minus, BasisState::One, BasisState::Plus};
  SeededCoins coins(10);
  World w(coins);
  SnbvResource snbv(wiring);
  send_control(w, snbv, {"S", "f"}, false);
  std::vector<Envelope> out;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto party = SnbvResource::client_party(i);
    Computation c;
    for (auto k : wiring.input_labels[i]) c.inputs.push_back(prepare(w, in[k], party)[0]);
    c.rounds = {Circuit(2), Circuit(2)};
    auto r = snbv.receive(w, w.emit(make_computation({party, "psi"}, {party, "psi"}, c)));
    out.insert(out.end(), r.begin(), r.end());
  }
  for (std::size_t i = 0; i < 3; ++i) {
    const auto* res = find_at(out, {SnbvResource::client_party(i), "out"});
    REQUIRE(res);
    const Matrix expect =
        kron(basis_density(in[wiring.output_labels[i][0]]), basis_density(in[wiring.output_labels[i][1]]));
    CHECK(max_abs_diff(w.substrate.reduced(res->qubits()), expect) < 1e-12);
  }
}

TEST_CASE("composition: filters, dangling ports and double bindings") {
  std::vector<SystemPtr> parts;
  parts.push_back(make<SbvResource>());
  parts.push_back(bottom_filter({"S", "leak"}, {"S", "f"}));
  Composite honest(std::move(parts));
  const auto ids = honest.outside();
  CHECK(std::set<InterfaceId>(ids.begin(), ids.end()) ==
        std::set<InterfaceId>{{"C", "psi"}, {"C", "out"}});

  SeededCoins coins(11);
  World w(coins);
  CHECK(honest.activate(w).empty());
  Computation c;
  c.circuit = Circuit::from_gates(GateList::parse("X 0"), 1);
  c.inputs = prepare(w, BasisState::Zero, "C");
  const auto out = honest.receive(w, w.emit(make_computation({"C", "psi"}, {"C", "psi"}, c)));
  REQUIRE(out.size() == 1);
  CHECK(max_abs_diff(w.substrate.reduced(out[0].qubits()), basis_density(BasisState::One)) < 1e-12);

  std::vector<SystemPtr> dangling;
  dangling.push_back(make<EncodeConverter>("A"));
  CHECK_THROWS_AS(Composite(std::move(dangling)), Error);

  std::vector<SystemPtr> twice;
  twice.push_back(make<SecureQChannel>());
  twice.push_back(bottom_filter({"E", "leak"}, {"E", "f"}));
  twice.push_back(bottom_filter({"E", "leak"}, {"E", "f"}));
  CHECK_THROWS_AS(Composite(std::move(twice)), Error);

  CHECK(real_qauth(true)->outside() == std::vector<InterfaceId>{{"A", "qin"}, {"B", "qout"}});
}

TEST_CASE("filtered QAS construction behaves exactly like the honest secure channel") {
  for (auto s : {BasisState::Zero, BasisState::Plus, BasisState::Minus}) {
    const double d = exact_advantage([] { return real_qauth(true); }, [] { return filtered_qsec(false); },
                                     send_basis(s, {"A", "qin"}));
    CHECK(d < 1e-9);
  }
}

TEST_CASE("QAS construction against a Pauli-tampering adversary stays within the pinned constant") {
  auto ideal = [] {
    std::vector<SystemPtr> parts;
    parts.push_back(make<SecureQChannel>());
    parts.push_back(make<QsecSimulator>());
    return compose(std::move(parts));
  };
  double worst = 0;
  for (const char* p : {"XI", "ZI", "IX", "XZ", "YY"}) {
    const auto attack = PauliString::parse(p);
    const Strategy tamper = [attack](World& w, System& sys) {
      const auto tapped = send_qubits(w, sys, {"A", "qin"}, prepare(w, BasisState::Plus));
      const auto* t = find_at(tapped, {"E", "tap~"});
      if (!t) throw Error("no tap");
      w.substrate.apply_pauli(attack, t->qubits());
      return send_qubits(w, sys, {"E", "inject~"}, t->qubits());
    };
    const double d = exact_advantage([] { return real_qauth(false); }, ideal, tamper);
    worst = std::max(worst, d);
    CHECK(d <= mcdqc::authcode::kEpsilonQsec11 + 1e-9);
  }
  CHECK(worst > 0);
}

TEST_CASE("compose is associative on random transcripts") {
  auto attack_strategy = [](std::size_t seed) {
    return [seed](World& w, System& sys) {
      SeededCoins pick(seed);
      const BasisState inputs[] = {BasisState::Zero, BasisState::One, BasisState::Plus, BasisState::Minus};
      auto out = send_qubits(w, sys, {"A", "qin"}, prepare(w, inputs[pick.uniform(4)]));
      const auto* t = find_at(out, {"E", "tap~"});
      REQUIRE(t);
      const auto all = PauliString::all_nonidentity(2);
      if (pick.uniform(2)) w.substrate.apply_pauli(all[pick.uniform(all.size())], t->qubits());
      return send_qubits(w, sys, {"E", "inject~"}, t->qubits());
    };
  };
  auto left = [] {
    std::vector<SystemPtr> ab;
    ab.push_back(make<EncodeConverter>("A"));
    ab.push_back(make<DecodeConverter>("B"));
    std::vector<SystemPtr> parts;
    parts.push_back(compose(std::move(ab), true));
    parts.push_back(parallel(make<KeyResource>(1, 1, "A", "B", "~"), make<InsecureQChannel>(false, "A", "B", "~")));
    return compose(std::move(parts));
  };
  auto right = [] {
    std::vector<SystemPtr> bc;
    bc.push_back(make<DecodeConverter>("B"));
    bc.push_back(make<KeyResource>(1, 1, "A", "B", "~"));
    bc.push_back(make<InsecureQChannel>(false, "A", "B", "~"));
    std::vector<SystemPtr> parts;
    parts.push_back(make<EncodeConverter>("A"));
    parts.push_back(compose(std::move(bc)));
    return compose(std::move(parts));
  };
  for (std::size_t trial = 0; trial < 100; ++trial) {
    std::string dumps[2];
    Matrix states[2];
    for (int side = 0; side < 2; ++side) {
      SeededCoins coins(derive_seed(12, trial));
      Transcript t;
      World w(coins, &t);
      auto sys = side == 0 ? left() : right();
      const auto out = attack_strategy(trial)(w, *sys);
      dumps[side] = t.dump();
      states[side] = w.substrate.rho();
    }
    REQUIRE(dumps[0] == dumps[1]);
    REQUIRE(max_abs_diff(states[0], states[1]) == 0.0);
  }
}

TEST_CASE("exact advantage examples") {
  const auto strategy = send_basis(BasisState::Plus, {"A", "qin"});
  CHECK(exact_advantage([] { return filtered_qsec(false); }, [] { return filtered_qsec(false); }, strategy) <
        1e-12);
  CHECK(std::abs(exact_advantage([] { return filtered_qsec(false); }, [] { return filtered_qsec(true); },
                                 strategy) -
                 1.0) < 1e-12);
  const Strategy idle = [](World&, System&) { return std::vector<Envelope>{}; };
  CHECK(exact_advantage([] { return make<OtpBox>(BasisState::Zero); },
                        [] { return make<OtpBox>(BasisState::One); }, idle) < 1e-10);
  CHECK(exact_advantage([] { return make<OtpBox>(BasisState::Zero); },
                        [] { return make<OtpBox>(BasisState::Plus); }, idle) < 1e-10);
  CHECK_THROWS_AS(exact_advantage([] { return filtered_qsec(false); }, [] { return make<SecureQChannel>(); },
                                  strategy),
                  Error);
}

TEST_CASE("sampled advantage examples and cross-validation") {
  const auto plus = send_basis(BasisState::Plus, {"A", "qin"});
  const auto same = mc_advantage([] { return filtered_qsec(false); }, [] { return filtered_qsec(false); }, plus,
                                 10000, 13);
  CHECK(same.estimate <= 0.02);
  const auto apart = mc_advantage([] { return filtered_qsec(false); }, [] { return filtered_qsec(true); }, plus,
                                  10000, 14);
  CHECK(apart.estimate >= 0.95);
  CHECK_THROWS_AS(mc_advantage([] { return filtered_qsec(false); }, [] { return filtered_qsec(true); }, plus, 99, 1),
                  Error);

  // classical-looking outputs, where a computational-basis guess is optimal
  const Matrix id = Matrix::Identity(2, 2), x = gate_matrix(GateKind::X);
  const auto zero = send_basis(BasisState::Zero, {"A", "in"});
  const std::pair<double, double> pairs[] = {{0.7, 0.4}, {0.5, 0.5}, {0.9, 0.1}};
  for (const auto& [pa, pb] : pairs) {
    const SystemFactory a = [&, pa = pa] { return make<RandomChannel>(id, x, pa); };
    const SystemFactory b = [&, pb = pb] { return make<RandomChannel>(id, x, pb); };
    const double exact = exact_advantage(a, b, zero);
    CHECK(std::abs(exact - std::abs(pa - pb)) < 1e-12);
    const auto mc = mc_advantage(a, b, zero, 4000, 15);
    CHECK(std::abs(mc.estimate - exact) <= mc.half_width);
  }
}

TEST_CASE("metric axioms and composition bounds on random small systems") {
  SeededCoins coins(16);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = metric_axioms_once(coins);
    CHECK(m.self < 1e-12);
    CHECK(m.asymmetry < 1e-12);
    CHECK(m.triangle <= 1e-9);
    CHECK(m.converter <= 1e-9);
    CHECK(m.parallel <= 1e-9);
    CHECK(m.chain <= 1e-9);
  }
}

TEST_CASE("exhaustive coins visit every branch with the right weights") {
  double total = 0;
  std::size_t paths = 0;
  explore([&](ExhaustiveCoins& c) {
    const double probs[] = {0.25, 0.0, 0.75};
    c.weighted(probs);
    c.uniform(3);
    total += c.path_probability();
    ++paths;
  });
  CHECK(paths == 6);
  CHECK(std::abs(total - 1.0) < 1e-12);
  CHECK_THROWS_AS(explore([](ExhaustiveCoins& c) { c.uniform(10); }, 5), BudgetError);
}

TEST_CASE("leak ports carry leak records only") {
  Transcript t;
  SeededCoins coins(17);
  World w(coins, &t);
  w.emit(make_control({"E", "leak"}, {"E", "leak"}, true));
  CHECK_THROWS_AS(t.check_structure(), InvariantError);
}

}  // TEST_SUITE
