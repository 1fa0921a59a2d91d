#pragma once

// Density-matrix kernels. Matrices are column-major dim x dim with
// dim = 2^num_qubits; qubit 0 is the most significant bit of a basis index.
//
// `serial` is the reference implementation and is kept for testing and
// benchmarking; `parallel` runs the same loops under OpenMP. The dispatching
// entry points at the bottom pick one by size.

#include <cstddef>
#include <span>
#include <vector>

#include "mcdqc/qsim/types.hpp"

namespace mcdqc::qsim::kernels {

namespace serial {
/// rho <- U rho on the given targets.
void apply_left(Matrix& rho, std::size_t num_qubits, const Matrix& u,
                std::span<const std::size_t> targets);
/// rho <- rho U^dagger on the given targets.
void apply_right_adjoint(Matrix& rho, std::size_t num_qubits, const Matrix& u,
                         std::span<const std::size_t> targets);
/// Reduced state on `keep` (result ordered as listed in keep).
Matrix partial_trace(const Matrix& rho, std::size_t num_qubits,
                     std::span<const std::size_t> keep);
/// (1/|us|) sum_U U rho U^dagger with every U acting on the same targets.
Matrix twirl(const Matrix& rho, std::size_t num_qubits, std::span<const Matrix> us,
             std::span<const std::size_t> targets);
}  // namespace serial

namespace parallel {
void apply_left(Matrix& rho, std::size_t num_qubits, const Matrix& u,
                std::span<const std::size_t> targets);
void apply_right_adjoint(Matrix& rho, std::size_t num_qubits, const Matrix& u,
                         std::span<const std::size_t> targets);
Matrix partial_trace(const Matrix& rho, std::size_t num_qubits,
                     std::span<const std::size_t> keep);
Matrix twirl(const Matrix& rho, std::size_t num_qubits, std::span<const Matrix> us,
             std::span<const std::size_t> targets);
}  // namespace parallel

/// Below this many qubits the serial kernels are used.
inline constexpr std::size_t kParallelThresholdQubits = 6;

void conjugate(Matrix& rho, std::size_t num_qubits, const Matrix& u,
               std::span<const std::size_t> targets);
Matrix partial_trace(const Matrix& rho, std::size_t num_qubits,
                     std::span<const std::size_t> keep);
Matrix twirl(const Matrix& rho, std::size_t num_qubits, std::span<const Matrix> us,
             std::span<const std::size_t> targets);

namespace detail {
/// Bit offset of each local basis index for the given targets.
std::vector<std::size_t> local_offsets(std::size_t num_qubits,
                                       std::span<const std::size_t> targets);
std::size_t target_mask(std::size_t num_qubits, std::span<const std::size_t> targets);
/// All indices with every target bit cleared, ascending.
std::vector<std::size_t> base_indices(std::size_t num_qubits,
                                      std::span<const std::size_t> targets);
}  // namespace detail

}  // namespace mcdqc::qsim::kernels
