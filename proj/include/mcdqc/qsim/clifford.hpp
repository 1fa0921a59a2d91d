#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "mcdqc/qsim/coins.hpp"
#include "mcdqc/qsim/pauli.hpp"
#include "mcdqc/qsim/types.hpp"

namespace mcdqc::qsim {

/// Element of the n-qubit Clifford group modulo global phase.
struct CliffordElement {
  static constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

  std::size_t num_qubits = 0;
  Matrix unitary;                 // phase-normalised representative
  std::size_t index = kNoIndex;   // canonical index; only set for n <= 2

  bool has_index() const { return index != kNoIndex; }
};

/// 24 for n = 1, 11520 for n = 2.
std::size_t clifford_group_order(std::size_t n);

/// Complete duplicate-free list in canonical-index order, built once by closure
/// of the generators ({H, S} for n = 1; H and S on each qubit plus CNOT for n = 2)
/// and deduplicated by a phase-normalised matrix fingerprint.
const std::vector<CliffordElement>& enumerate_clifford(std::size_t n);

/// Canonical index of the identity element.
std::size_t clifford_identity_index(std::size_t n);

/// Exactly uniform draw from the enumerated group (n in {1, 2}).
const CliffordElement& sample_clifford(std::size_t n, Coins& coins);

/// Random Clifford for 1 <= n <= 6: layered random circuit of single-qubit
/// Cliffords and CNOTs, finished by a uniform Pauli. Not exactly uniform over the
/// group, but its distribution is invariant under Pauli multiplication, so
/// key averages of encoded states are exact Pauli twirls. Uses the exact
/// sampler for n <= 2.
CliffordElement sample_clifford_any(std::size_t n, Coins& coins);

/// C P C^dagger as a signed Pauli. Throws Error if the result is not a Pauli.
PauliString conjugate(const CliffordElement& c, const PauliString& p);
PauliString conjugate(const Matrix& u, const PauliString& p);

/// True if u maps every single-qubit X and Z to a signed Pauli under conjugation.
bool is_clifford(const Matrix& u);

/// Global-phase-normalised copy (first non-negligible entry made real positive).
Matrix normalize_phase(const Matrix& u);

}  // namespace mcdqc::qsim
