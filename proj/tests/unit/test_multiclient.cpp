#include <cmath>

#include "../oracles/bridge.hpp"
#include "doctest.h"
#include "mcdqc/multiclient/bounds.hpp"
#include "mcdqc/multiclient/global_circuit.hpp"
#include "mcdqc/multiclient/protocols.hpp"
#include "mcdqc/multiclient/round_unitary.hpp"
#include "mcdqc/qsim/linalg.hpp"
#include "support.hpp"

using namespace mcdqc;
using namespace mcdqc::qsim;
using namespace mcdqc::multiclient;

namespace {

Validated validated(const oracle::Case& c) { return validate_scenario(oracle::to_scenario(c)); }

RunOptions options(dqc::Backend b, bool rebroadcast = true) { return {{b, 1}, rebroadcast}; }

class RouteAttack final : public dqc::ServerAdversary {
 public:
  RouteAttack(dqc::Site site, PauliString p) : site_(site), p_(std::move(p)) {}
  void on_quantum(const dqc::SiteInfo& at, QuantumSubstrate& s, const std::vector<QubitId>& qs, Coins&) override {
    if (at.site == site_) s.apply_pauli(p_, qs);
  }

 private:
  dqc::Site site_;
  PauliString p_;
};

class FlipAt final : public dqc::ServerAdversary {
 public:
  FlipAt(std::size_t client, std::size_t round) : client_(client), round_(round) {}
  bool flip_abort(const dqc::SiteInfo& at, Coins&) override { return at.client == client_ && at.round == round_; }

 private:
  std::size_t client_, round_;
};

// Dense embedding written out over basis indices, qubit 0 most significant.
Matrix embed_ref(const Matrix& op, const std::vector<std::size_t>& targets, std::size_t width) {
  const std::size_t dim = std::size_t{1} << width, k = targets.size();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const auto bit = [&](std::size_t x, std::size_t q) { return (x >> (width - 1 - q)) & 1U; };
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      bool rest_equal = true;
      for (std::size_t q = 0; q < width; ++q)
        if (std::find(targets.begin(), targets.end(), q) == targets.end() && bit(r, q) != bit(c, q)) rest_equal = false;
      if (!rest_equal) continue;
      std::size_t lr = 0, lc = 0;
      for (std::size_t t = 0; t < k; ++t) {
        lr = (lr << 1) | bit(r, targets[t]);
        lc = (lc << 1) | bit(c, targets[t]);
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          op(static_cast<Eigen::Index>(lr), static_cast<Eigen::Index>(lc));
    }
  return out;
}

const Matrix& cnot_ref() {
  static const Matrix m = [] {
    Matrix c = Matrix::Zero(4, 4);
    c(0, 0) = c(1, 1) = c(2, 3) = c(3, 2) = 1;
    return c;
  }();
  return m;
}

void check_against_oracle(const RunOutcome& r, const oracle::GlobalResult& expected, const char* name) {
  INFO(name);
  REQUIRE_FALSE(r.aborted());
  for (std::size_t i = 0; i < r.results.size(); ++i) {
    if (expected.per_client[i].size() == 0) {
      CHECK_FALSE(r.results[i].has_value());
      continue;
    }
    REQUIRE(r.results[i].has_value());
    REQUIRE_FALSE(is_err(*r.results[i]));
    CHECK(oracle::trace_distance(std::get<Matrix>(*r.results[i]), expected.per_client[i]) < tol::kComparison);
  }
  CHECK(oracle::trace_distance(*r.joint, expected.joint) < tol::kComparison);
}

}  // namespace

TEST_SUITE("multiclient") {

TEST_CASE("validation accepts the n=3, m=2 figure shape and pads unitaries") {
  oracle::Case c{"fig", 3, 2, {{"0+", {"CNOT 0 1"}}, {"1", {"H 0", "X 0"}}, {"+", {}}}, {{1, 2, 1, {1}}, {2, 3, 1, {2}}}};
  const auto v = validated(c);
  CHECK(v.total_qubits == 4);
  for (const auto& cl : v.scenario.clients) CHECK(cl.unitaries.size() == 2);
  CHECK(v.labels(0, 1) == std::vector<std::size_t>{0});
  CHECK(v.labels(1, 1) == std::vector<std::size_t>{1});
  CHECK(v.labels(2, 1) == std::vector<std::size_t>{2, 3});
  CHECK(v.transfer(1, 1, 0).empty());
}

TEST_CASE("validation rejects overlapping and dangling wires") {
  oracle::Case overlap{"o", 2, 2, {{"00", {}}, {"0", {}}}, {{1, 2, 1, {0}}, {1, 1, 1, {0}}}};
  CHECK_THROWS_WITH_AS(validated(overlap), doctest::Contains("overlapping wires: label 0"), ValidationError);
  oracle::Case dangling{"d", 2, 2, {{"0", {}}, {"0", {}}}, {{1, 2, 1, {1}}}};
  CHECK_THROWS_WITH_AS(validated(dangling), doctest::Contains("dangling output: label 1"), ValidationError);
  oracle::Case late{"r", 2, 1, {{"0", {}}, {"0", {}}}, {{1, 2, 1, {0}}}};
  CHECK_THROWS_AS(validated(late), ValidationError);
  oracle::Case wide{"w", 2, 1, {{"0", {"CNOT 0 1"}}, {"0", {}}}, {}};
  CHECK_THROWS_AS(validated(wide), ValidationError);
  oracle::Case many{"u", 1, 1, {{"0", {"X 0", "X 0"}}}, {}};
  CHECK_THROWS_AS(validated(many), ValidationError);
}

TEST_CASE("validation: m=1 with no wires is accepted, budget is enforced") {
  oracle::Case solo{"s", 2, 1, {{"0", {"H 0"}}, {"1", {}}}, {}};
  CHECK_NOTHROW(validated(solo));
  oracle::Case big{"b", 2, 1, {{"0000000", {}}, {"000000", {}}}, {}};
  CHECK_THROWS_AS(validated(big), BudgetError);
}

TEST_CASE("global evaluation matches the reference on the battery") {
  for (const auto& c : oracle::battery()) {
    INFO(c.name);
    const auto got = evaluate_global(validated(c));
    const auto want = oracle::evaluate(c);
    CHECK(oracle::trace_distance(got.joint, want.joint) < tol::kComparison);
  }
}

TEST_CASE("round unitary: first round with identity U is the encoding") {
  oracle::Case c{"enc", 2, 2, {{"0", {}}, {"", {}}}, {{1, 2, 1, {0}}}};
  const auto v = validated(c);
  SeededCoins coins(1);
  RoundKeyTable keys;
  keys.emplace(KeyIndex{0, 1, 0}, authcode::auth_keygen(1, 1, coins));
  const auto first = build_round_unitary(v, 0, 0, keys, 1);
  CHECK(max_abs_diff(first.dense(), keys.at({0, 1, 0}).clifford.unitary) < tol::kComparison);
  const auto last = build_round_unitary(v, 1, 1, keys, 1);
  CHECK(max_abs_diff(last.dense(), keys.at({0, 1, 0}).clifford.unitary.adjoint()) < tol::kComparison);
  CHECK_THROWS_AS(build_round_unitary(v, 0, 0, {}, 1), Error);
}

TEST_CASE("round unitary: middle round equals the dense composition") {
  // client 2 round 2: decode the block from client 1, CNOT with its own
  // qubit, encode label 0 for client 1
  oracle::Case c{"mid", 2, 3, {{"+", {"H 0", "", ""}}, {"0", {"", "CNOT 0 1", ""}}},
                 {{1, 2, 1, {0}}, {2, 1, 2, {0}}}};
  const auto v = validated(c);
  SeededCoins coins(2);
  RoundKeyTable keys;
  keys.emplace(KeyIndex{0, 1, 0}, authcode::auth_keygen(1, 1, coins));
  keys.emplace(KeyIndex{1, 0, 1}, authcode::auth_keygen(1, 1, coins));
  const auto layout = round_layout(v, 1, 1, 1);
  REQUIRE(layout.width == 4);
  // slots: 0 data from client 1, 1 its trap, 2 own qubit, 3 fresh trap
  const Matrix expected = embed_ref(keys.at({1, 0, 1}).clifford.unitary, {0, 3}, 4) * embed_ref(cnot_ref(), {0, 2}, 4) *
                          embed_ref(keys.at({0, 1, 0}).clifford.unitary.adjoint(), {0, 1}, 4);
  const Matrix got = build_round_unitary(v, 1, 1, keys, 1).dense();
  const Matrix rho = test_support::random_density(4, coins);
  CHECK(max_abs_diff(got * rho * got.adjoint(), expected * rho * expected.adjoint()) < tol::kComparison);
  CHECK(max_abs_diff(got, expected) < tol::kComparison);
}

TEST_CASE("Protocol 1: n=2, m=1 independent clients") {
  const auto c = oracle::battery()[0];
  SeededCoins coins(3);
  dqc::HonestServer honest;
  const auto r = protocol1_run(validated(c), options(dqc::Backend::Ideal), honest, coins);
  REQUIRE_FALSE(r.aborted());
  CHECK(trace_distance(std::get<Matrix>(*r.results[0]), basis_density(BasisState::One)) < tol::kComparison);
  CHECK(trace_distance(std::get<Matrix>(*r.results[1]), basis_density(BasisState::Zero)) < tol::kComparison);
}

TEST_CASE("Protocol 1 and 3 honest runs match the global circuit on both backends") {
  for (const auto& c : oracle::battery()) {
    const auto v = validated(c);
    const auto want = oracle::evaluate(c);
    for (auto backend : {dqc::Backend::Ideal, dqc::Backend::CliffordAuth}) {
      SeededCoins coins(derive_seed(5, v.total_qubits));
      dqc::HonestServer honest;
      check_against_oracle(protocol1_run(v, options(backend), honest, coins), want, c.name.c_str());
      check_against_oracle(protocol3_run(v, options(backend), honest, coins), want, c.name.c_str());
    }
  }
}

TEST_CASE("Protocol 2 examples") {
  const std::tuple<BasisState, const char*, const char*, BasisState> table[] = {
      {BasisState::Zero, "X 0", "X 0", BasisState::Zero},
      {BasisState::Zero, "H 0", "I 0", BasisState::Plus},
  };
  for (const auto& [in, u1, u2, out] : table)
    for (auto backend : {dqc::Backend::Ideal, dqc::Backend::CliffordAuth}) {
      SeededCoins coins(6);
      dqc::HonestServer honest;
      const auto r2 = protocol2_run({in}, GateList::parse(u1), GateList::parse(u2), options(backend), honest, coins);
      REQUIRE_FALSE(r2.aborted());
      CHECK_FALSE(r2.results[0].has_value());
      CHECK(trace_distance(std::get<Matrix>(*r2.results[1]), basis_density(out)) < tol::kComparison);
      const auto r4 = protocol4_run({in}, GateList::parse(u1), GateList::parse(u2), options(backend), honest, coins);
      REQUIRE_FALSE(r4.aborted());
      CHECK(trace_distance(std::get<Matrix>(*r4.results[1]), basis_density(out)) < tol::kComparison);
    }
  // S H |0>
  auto psi = oracle::product_state("0");
  oracle::apply(psi, "H", {0});
  oracle::apply(psi, "S", {0});
  SeededCoins coins(7);
  dqc::HonestServer honest;
  const auto r = protocol2_run({BasisState::Zero}, GateList::parse("H 0"), GateList::parse("S 0"),
                               options(dqc::Backend::Ideal), honest, coins);
  CHECK(oracle::trace_distance(std::get<Matrix>(*r.results[1]), oracle::reduced_density(psi, {0})) < tol::kComparison);
}

TEST_CASE("tampering with the forwarded block aborts everybody") {
  // One-trap block: the check fails for 8 of the 15 conjugated Paulis.
  const std::size_t trials = 3000;
  SeededCoins coins(8);
  std::size_t aborted = 0;
  for (std::size_t k = 0; k < trials; ++k) {
    RouteAttack attack(dqc::Site::Route, PauliString::parse("XI"));
    const auto r = protocol2_run({BasisState::Zero}, GateList::parse("I 0"), GateList::parse("I 0"),
                                 options(dqc::Backend::Ideal), attack, coins);
    if (!r.aborted()) continue;
    ++aborted;
    CHECK(r.abort->kind == dqc::Failure::Authentication);
    CHECK(r.abort->client == 2);
    REQUIRE(r.results[1].has_value());
    CHECK(is_err(*r.results[1]));
  }
  const double p = 8.0 / 15.0, n = static_cast<double>(trials);
  CHECK(std::abs(static_cast<double>(aborted) / n - p) < 3 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("tampering with a resident block in Protocol 3") {
  // n = 2, m = 3 so that a block sits at the server between two BB rounds.
  oracle::Case c{"res", 2, 3, {{"0", {"", "", ""}}, {"", {"", "", ""}}}, {{1, 2, 1, {0}}, {2, 1, 2, {0}}}};
  const auto v = validated(c);
  const std::size_t trials = 2000;
  std::size_t aborted = 0;
  SeededCoins coins(9);
  for (std::size_t k = 0; k < trials; ++k) {
    RouteAttack attack(dqc::Site::Resident, PauliString::parse("ZX"));
    const auto r = protocol3_run(v, options(dqc::Backend::CliffordAuth), attack, coins);
    if (r.aborted()) ++aborted;
  }
  // two resident windows, each caught with probability 8/15
  const double p = 1.0 - (7.0 / 15.0) * (7.0 / 15.0), n = static_cast<double>(trials);
  CHECK(std::abs(static_cast<double>(aborted) / n - p) < 3 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("a refused first session sends e=1 and both clients output ERR") {
  for (bool hardened : {true, false}) {
    SeededCoins coins(10);
    FlipAt flip(1, 1);
    const auto r = protocol4_run({BasisState::Plus}, GateList::parse("H 0"), GateList::parse("X 0"),
                                 options(dqc::Backend::Ideal, hardened), flip, coins);
    REQUIRE(r.aborted());
    CHECK(r.abort->kind == dqc::Failure::Verification);
    CHECK(r.abort->client == 1);
    CHECK(is_err(*r.results[1]));
    std::size_t signals = 0;
    for (const auto& e : r.transcript.records())
      if (e.kind == acframe::EnvelopeKind::ControlBit && e.destination.port.rfind("cout#e", 0) == 0) ++signals;
    CHECK(signals == 1);
  }
}

TEST_CASE("rebroadcast doubles the abort signals among three clients") {
  const auto c = oracle::battery()[3];
  for (bool hardened : {true, false}) {
    SeededCoins coins(11);
    FlipAt flip(2, 1);
    const auto r = protocol1_run(validated(c), options(dqc::Backend::Ideal, hardened), flip, coins);
    REQUIRE(r.aborted());
    std::size_t signals = 0;
    for (const auto& e : r.transcript.records())
      if (e.kind == acframe::EnvelopeKind::ControlBit && e.destination.port.rfind("cout#e", 0) == 0) ++signals;
    CHECK(signals == (hardened ? 4U : 2U));
    for (std::size_t i = 0; i < 3; ++i)
      if (r.results[i]) CHECK(is_err(*r.results[i]));
    r.transcript.check_structure();
  }
}

TEST_CASE("runs are seed-deterministic") {
  const auto c = oracle::battery()[2];
  const auto v = validated(c);
  std::string dumps[2];
  for (auto& d : dumps) {
    SeededCoins coins(12);
    dqc::HonestServer honest;
    d = protocol3_run(v, options(dqc::Backend::CliffordAuth), honest, coins).transcript.dump();
  }
  CHECK(dumps[0] == dumps[1]);
}

TEST_CASE("two-client shape is required for Protocols 2 and 4") {
  SeededCoins coins(13);
  dqc::HonestServer honest;
  CHECK_THROWS_AS(run_protocol(ProtocolKind::P2, validated(oracle::battery()[0]), options(dqc::Backend::Ideal), honest,
                               coins),
                  ValidationError);
  CHECK_NOTHROW(run_protocol(ProtocolKind::P4, validated(oracle::battery()[9]), options(dqc::Backend::Ideal), honest,
                             coins));
  CHECK(parse_protocol("3") == ProtocolKind::P3);
  CHECK(parse_protocol("protocol2") == ProtocolKind::P2);
  CHECK_THROWS_AS(parse_protocol("5"), Error);
}

TEST_CASE("error bound formulas") {
  const double bv = 0.01, q = 0.02, bb = 0.03;
  CHECK(error_bound(2, 1, bv, q, bb, BoundVariant::Protocol1) == doctest::Approx(2 * bv));
  CHECK(two_client_bound(bv, q, bb, BoundVariant::Protocol1) == doctest::Approx(q + 2 * bv));
  CHECK(error_bound(3, 2, bv, q, bb, BoundVariant::Protocol1) == doctest::Approx(6 * bv + 6 * q));
  CHECK(error_bound(2, 1, bv, q, bb, BoundVariant::Protocol3) == doctest::Approx(2 * bb + 4 * q));
  CHECK(two_client_bound(bv, q, bb, BoundVariant::Protocol3) == doctest::Approx(2 * bb + 3 * q));
  CHECK_THROWS_AS(error_bound(0, 1, bv, q, bb, BoundVariant::Protocol1), Error);
  CHECK_THROWS_AS(error_bound(2, 1, 1.5, q, bb, BoundVariant::Protocol1), Error);
  const auto ideal = pinned_epsilons({dqc::Backend::Ideal, 1});
  CHECK(ideal.bv == 0.0);
  CHECK(ideal.qsec == doctest::Approx(4.0 / 15.0));
}

}  // TEST_SUITE
