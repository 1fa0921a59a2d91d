#pragma once

// Small pure-state simulator used as an independent reference in tests.
// Gate definitions and index arithmetic are written out here on purpose and
// share nothing with the library kernels.

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;

struct StateVector {
  std::size_t n = 0;
  std::vector<C> amp;
};

/// Product state from characters '0', '1', '+', '-'; qubit 0 most significant.
StateVector product_state(const std::string& letters);

/// Apply a named gate (I X Y Z H S T CNOT CZ) to the given qubits.
void apply(StateVector& psi, const std::string& gate, const std::vector<std::size_t>& targets);

/// Reduced density matrix on `keep`, in the listed order.
Eigen::MatrixXcd reduced_density(const StateVector& psi, const std::vector<std::size_t>& keep);

/// Trace distance via eigenvalues of the Hermitian difference.
double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace oracle
