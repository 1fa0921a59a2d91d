#pragma once

#include <string>
#include <vector>

#include "mcdqc/acframe/resources.hpp"
#include "mcdqc/qsim/gates.hpp"

namespace mcdqc::multiclient {

/// Input and local unitaries of one client. Gate indices of round h refer to
/// positions in that round's label list (see Validated::round_labels).
struct ClientSpec {
  std::vector<qsim::BasisState> inputs;
  std::vector<qsim::GateList> unitaries;
};

/// T_{from->to}^(round): global labels of round-`round` outputs of client
/// `from` fed into round `round + 1` of client `to`. Clients and rounds are
/// 1-based here, as in scenario files.
struct Wire {
  std::size_t from = 0;
  std::size_t to = 0;
  std::size_t round = 0;
  std::vector<std::size_t> labels;
};

/// Global labels are assigned to inputs in client order: client 1's inputs
/// get 0..k1-1, client 2's the next k2, and so on. A round-h output label not
/// named in any wire stays with its client.
struct Scenario {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<ClientSpec> clients;
  std::vector<Wire> wires;
};

class ValidationError : public qsim::Error {
 public:
  using qsim::Error::Error;
};

/// A scenario with padding applied and the label flow worked out. All
/// indices are 0-based.
struct Validated {
  Scenario scenario;
  acframe::GlobalWiring wiring;
  /// transfers[h][i][j]: sorted labels going from client i after round h to
  /// client j for round h + 1, h < m - 1. Includes i == j.
  std::vector<std::vector<std::vector<std::vector<std::size_t>>>> transfers;
  std::size_t total_qubits = 0;

  std::size_t n() const { return scenario.n; }
  std::size_t m() const { return scenario.m; }
  const std::vector<std::size_t>& labels(std::size_t i, std::size_t h) const { return wiring.round_labels[i][h]; }
  const std::vector<std::size_t>& transfer(std::size_t i, std::size_t j, std::size_t h) const {
    return transfers[h][i][j];
  }
  /// Positions within labels(i, h) of the given labels.
  std::vector<std::size_t> positions(std::size_t i, std::size_t h, const std::vector<std::size_t>& which) const;
  qsim::Circuit round_circuit(std::size_t i, std::size_t h) const;
  bool expects_output(std::size_t i) const { return !wiring.output_labels[i].empty(); }
};

/// Pads unitary lists to m, assigns labels, and checks the wiring. Throws
/// ValidationError for overlapping wires, dangling outputs, bad indices or gate
/// lists wider than their round, and BudgetError past the qubit budget.
Validated validate_scenario(Scenario s);

/// Two-client shape shared by the two-client protocols: client 1
/// holds the input and runs U1 in round 1, everything is forwarded to client
/// 2, which runs U2 in round 2.
Scenario two_client_scenario(std::vector<qsim::BasisState> input, qsim::GateList u1, qsim::GateList u2);

}  // namespace mcdqc::multiclient
