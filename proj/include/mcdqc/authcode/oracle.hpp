#pragma once

#include <vector>

#include "mcdqc/qsim/pauli.hpp"
#include "mcdqc/qsim/types.hpp"

namespace mcdqc::authcode {

struct DetectionResult {
  double p_detect = 0.0;    // trap check rejects
  double p_harmless = 0.0;  // accepted and the message is left as it was
  /// Probability the attack passes and changes the message.
  double epsilon() const { return 1.0 - p_detect - p_harmless; }
};

/// Test inputs used by the oracle: every product of |0>, |1>, |+>, |->.
std::vector<qsim::Vector> oracle_test_inputs(std::size_t m);

/// Exact average over all keys of the enumerated Clifford group on m + t <= 2
/// qubits and over oracle_test_inputs(m). `attack` acts on the whole block
/// (message qubits first, then traps).
DetectionResult exact_detection_probability(std::size_t m, std::size_t t, const qsim::Matrix& attack);
DetectionResult exact_detection_probability(std::size_t m, std::size_t t,
                                            const qsim::PauliString& attack);

/// max over all non-identity Pauli attacks on the block of epsilon().
double oracle_epsilon(std::size_t m, std::size_t t);

/// Regression constant: oracle_epsilon(1, 1). The oracle reproduces it exactly
/// and the authcode tests check that it still does.
inline constexpr double kEpsilonQsec11 = 4.0 / 15.0;

}  // namespace mcdqc::authcode
