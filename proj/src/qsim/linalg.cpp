#include "mcdqc/qsim/linalg.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace mcdqc::qsim {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector basis_vector(BasisState s) {
  const double r = 1.0 / std::sqrt(2.0);
  Vector v(2);
  switch (s) {
    case BasisState::Zero: v << 1, 0; break;
    case BasisState::One: v << 0, 1; break;
    case BasisState::Plus: v << r, r; break;
    case BasisState::Minus: v << r, -r; break;
  }
  return v;
}

Matrix basis_density(BasisState s) {
  const Vector v = basis_vector(s);
  return v * v.adjoint();
}

Matrix maximally_mixed(std::size_t num_qubits) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
  return Matrix::Identity(dim, dim) / static_cast<double>(dim);
}

Matrix projector(std::size_t index, std::size_t num_qubits) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
  Matrix p = Matrix::Zero(dim, dim);
  p(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
  return p;
}

bool is_hermitian(const Matrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

bool is_unitary(const Matrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  const Matrix id = Matrix::Identity(m.rows(), m.cols());
  return (m * m.adjoint() - id).cwiseAbs().maxCoeff() <= tolerance;
}

double min_eigenvalue(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

void check_density(const Matrix& rho, const char* context) {
  std::ostringstream why;
  if (rho.rows() != rho.cols()) {
    why << "non-square density matrix";
  } else if (!is_hermitian(rho)) {
    why << "density matrix not Hermitian";
  } else if (std::abs(rho.trace() - Complex{1.0, 0.0}) > tol::kStructural) {
    why << "density matrix trace " << rho.trace().real() << " != 1";
  } else if (rho.rows() > 0 && min_eigenvalue(rho) < -tol::kPsd) {
    why << "density matrix not PSD";
  } else {
    return;
  }
  throw InvariantError(std::string(context) + ": " + why.str());
}

double trace_norm(const Matrix& hermitian) {
  if (hermitian.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error("trace_distance: dimension mismatch");
  const Matrix diff = a - b;
  // symmetrise to absorb rounding before the Hermitian solver
  return 0.5 * trace_norm(0.5 * (diff + diff.adjoint()));
}

double trace_distance(const MaybeState& a, const MaybeState& b) {
  if (is_err(a) && is_err(b)) return 0.0;
  if (is_err(a) || is_err(b)) return 1.0;
  return trace_distance(std::get<Matrix>(a), std::get<Matrix>(b));
}

}  // namespace mcdqc::qsim
