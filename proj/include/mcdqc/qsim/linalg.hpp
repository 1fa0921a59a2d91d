#pragma once

#include <span>

#include "mcdqc/qsim/types.hpp"

namespace mcdqc::qsim {

Matrix kron(const Matrix& a, const Matrix& b);
Matrix basis_density(BasisState s);
Vector basis_vector(BasisState s);
Matrix maximally_mixed(std::size_t num_qubits);
/// |x><x| for a computational basis index x on num_qubits qubits.
Matrix projector(std::size_t index, std::size_t num_qubits);

bool is_hermitian(const Matrix& m, double tolerance = tol::kStructural);
bool is_unitary(const Matrix& m, double tolerance = tol::kStructural);
double min_eigenvalue(const Matrix& hermitian);
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Throws InvariantError if rho is not Hermitian, unit-trace and PSD.
void check_density(const Matrix& rho, const char* context);

/// (1/2) sum |eig(a - b)|. Throws Error on dimension mismatch.
double trace_distance(const Matrix& a, const Matrix& b);
/// Trace norm of a Hermitian matrix.
double trace_norm(const Matrix& hermitian);
/// Distance where ERR is orthogonal to every state and equal to itself.
double trace_distance(const MaybeState& a, const MaybeState& b);

}  // namespace mcdqc::qsim
