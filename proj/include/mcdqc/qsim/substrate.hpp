#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "mcdqc/qsim/coins.hpp"
#include "mcdqc/qsim/gates.hpp"
#include "mcdqc/qsim/pauli.hpp"
#include "mcdqc/qsim/types.hpp"

namespace mcdqc::qsim {

/// One entry of an init_state spec: a single-qubit basis state or an explicit
/// density-matrix block on several qubits.
struct InitBlock {
  std::variant<BasisState, Matrix> state;
  std::string owner;
};

/// Global density matrix plus a ledger of who currently holds each qubit.
///
/// Qubits are addressed by stable QubitId handles. Positions in rho follow
/// creation order (oldest = most significant) and shift when qubits are removed.
class QuantumSubstrate {
 public:
  QuantumSubstrate();

  /// Throws BudgetError beyond kMaxQubits, Error on a non-normalised block.
  static QuantumSubstrate init_state(const std::vector<InitBlock>& spec);

  std::size_t num_qubits() const { return order_.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
  const Matrix& rho() const { return rho_; }
  /// Handles in tensor-factor order.
  const std::vector<QubitId>& qubits() const { return order_; }

  bool contains(QubitId q) const;
  std::size_t position_of(QubitId q) const;
  std::vector<std::size_t> positions_of(const std::vector<QubitId>& qs) const;
  const std::string& owner_of(QubitId q) const;
  void set_owner(const std::vector<QubitId>& qs, const std::string& owner);
  /// Throws Error unless every handle exists and is held by `owner`.
  void require_owner(const std::vector<QubitId>& qs, const std::string& owner) const;
  std::vector<QubitId> owned_by(const std::string& owner) const;

  /// Append fresh qubits as least-significant factors.
  std::vector<QubitId> append(BasisState s, std::size_t count, const std::string& owner);
  std::vector<QubitId> append(const Matrix& block, const std::string& owner);

  void apply(const Matrix& u, const std::vector<QubitId>& targets);
  /// Gate index k acts on targets[k].
  void apply(const GateList& g, const std::vector<QubitId>& targets);
  /// Circuit slot k acts on slots[k].
  void apply(const Circuit& c, const std::vector<QubitId>& slots);
  void apply_pauli(const PauliString& p, const std::vector<QubitId>& targets);

  /// Reduced state on `keep` in the listed order.
  Matrix reduced(const std::vector<QubitId>& keep) const;

  /// Computational-basis measurement; the qubits stay in the substrate, collapsed.
  std::vector<int> measure(const std::vector<QubitId>& targets, Coins& coins);
  /// Trace out and forget the given qubits.
  void discard(const std::vector<QubitId>& qs);

  /// Throws InvariantError if rho or the ledger is inconsistent.
  void check_invariants() const;

 private:
  void ensure_budget(std::size_t extra) const;

  Matrix rho_;
  std::vector<QubitId> order_;
  std::map<QubitId, std::string> owner_;
  std::uint32_t next_id_ = 0;
};

// Value-semantics forms of the substrate operations.
QuantumSubstrate apply_gates(QuantumSubstrate s, const GateList& g,
                             const std::vector<QubitId>& targets);
QuantumSubstrate apply_pauli(QuantumSubstrate s, const PauliString& p,
                             const std::vector<QubitId>& targets);
Matrix partial_trace(const QuantumSubstrate& s, const std::vector<QubitId>& keep);

struct MeasureResult {
  std::vector<int> bits;
  QuantumSubstrate state;
};
MeasureResult measure_computational(QuantumSubstrate s, const std::vector<QubitId>& targets,
                                    Coins& coins);

}  // namespace mcdqc::qsim
