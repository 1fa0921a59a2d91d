#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "mcdqc/qsim/types.hpp"

namespace mcdqc::qsim {

enum class GateKind { I, X, Y, Z, H, S, T, CNOT, CZ };

std::size_t arity(GateKind kind);
std::string_view gate_name(GateKind kind);
/// Throws Error for names outside {I, X, Y, Z, H, S, T, CNOT, CZ}.
GateKind parse_gate_kind(std::string_view name);
/// Dense matrix of a single gate; first target is the more significant factor.
const Matrix& gate_matrix(GateKind kind);

struct Gate {
  GateKind kind = GateKind::I;
  std::vector<std::size_t> targets;
};

/// Ordered gate sequence over local qubit indices [0, width).
class GateList {
 public:
  GateList() = default;
  explicit GateList(std::vector<Gate> gates);

  /// Throws on arity mismatch or repeated target within one gate.
  void push(GateKind kind, std::vector<std::size_t> targets);

  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }
  /// One past the largest referenced index (0 for an empty list).
  std::size_t min_width() const;

  /// Parse "H 0; CNOT 0 1; T 2". Empty text gives an empty list.
  static GateList parse(std::string_view text);

 private:
  std::vector<Gate> gates_;
};

/// Inverse expressed in the same gate alphabet (S^-1 = S^3, T^-1 = T^7).
GateList inverse(const GateList& g);

/// Dense unitary of g on `width` qubits (qubit 0 most significant).
Matrix dense(const GateList& g, std::size_t width);

/// One step of a circuit: a small dense unitary on local targets.
struct LocalOp {
  Matrix unitary;
  std::vector<std::size_t> targets;
};

/// A unitary program over `width` local slots, stored as a product of small
/// dense operators so it can be applied without building the full matrix.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::size_t width) : width_(width) {}

  static Circuit from_gates(const GateList& g, std::size_t width);

  std::size_t width() const { return width_; }
  const std::vector<LocalOp>& ops() const { return ops_; }
  /// Number of elementary gates folded into this circuit (used for leakage records).
  std::size_t gate_count() const { return gate_count_; }

  Circuit& append(Matrix unitary, std::vector<std::size_t> targets, std::size_t gates = 1);
  Circuit& append(const GateList& g, const std::vector<std::size_t>& slot_of_index);

  Matrix dense() const;

 private:
  std::size_t width_ = 0;
  std::size_t gate_count_ = 0;
  std::vector<LocalOp> ops_;
};

/// Embed a k-qubit operator acting on `targets` into a dense matrix on `width` qubits.
Matrix embed(const Matrix& op, const std::vector<std::size_t>& targets, std::size_t width);

}  // namespace mcdqc::qsim
