#include "mcdqc/authcode/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "mcdqc/authcode/qas.hpp"
#include "mcdqc/qsim/clifford.hpp"
#include "mcdqc/qsim/linalg.hpp"

namespace mcdqc::authcode {

using qsim::Matrix;
using qsim::Vector;

std::vector<Vector> oracle_test_inputs(std::size_t m) {
  std::vector<Vector> out;
  const std::size_t count = std::size_t{1} << (2 * m);
  for (std::size_t idx = 0; idx < count; ++idx) {
    Vector v = Vector::Ones(1);
    for (std::size_t j = 0; j < m; ++j) {
      const auto s = static_cast<qsim::BasisState>((idx >> (2 * (m - 1 - j))) & 3U);
      const Vector q = qsim::basis_vector(s);
      Vector next(v.size() * 2);
      for (Eigen::Index a = 0; a < v.size(); ++a) next.segment(2 * a, 2) = v(a) * q;
      v = next;
    }
    out.push_back(v);
  }
  return out;
}

DetectionResult exact_detection_probability(std::size_t m, std::size_t t, const Matrix& attack) {
  if (m == 0) throw qsim::Error("oracle needs at least one message qubit");
  if (m + t > kMaxEnumeratedBlock)
    throw qsim::BudgetError("oracle enumerates blocks of at most " +
                            std::to_string(kMaxEnumeratedBlock) + " qubits");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << (m + t));
  if (attack.rows() != dim || attack.cols() != dim)
    throw qsim::Error("attack does not act on the whole block");
  const auto& group = qsim::enumerate_clifford(m + t);
  const auto inputs = oracle_test_inputs(m);
  const auto trap_dim = static_cast<Eigen::Index>(std::size_t{1} << t);

  // ψ ⊗ |0...0> has support on indices a * 2^t
  std::vector<Vector> padded;
  for (const auto& psi : inputs) {
    Vector v = Vector::Zero(dim);
    for (Eigen::Index a = 0; a < psi.size(); ++a) v(a * trap_dim) = psi(a);
    padded.push_back(v);
  }

  double accept = 0.0, harmless = 0.0;
  for (const auto& c : group) {
    const Matrix effective = c.unitary.adjoint() * attack * c.unitary;
    for (const auto& v : padded) {
      const Vector out = effective * v;
      for (Eigen::Index a = 0; a < dim; a += trap_dim) accept += std::norm(out(a));
      harmless += std::norm(v.dot(out));
    }
  }
  const double total = static_cast<double>(group.size() * padded.size());
  return DetectionResult{1.0 - accept / total, harmless / total};
}

DetectionResult exact_detection_probability(std::size_t m, std::size_t t,
                                            const qsim::PauliString& attack) {
  if (attack.length() != m + t) throw qsim::Error("Pauli attack length does not match the block");
  return exact_detection_probability(m, t, attack.matrix());
}

double oracle_epsilon(std::size_t m, std::size_t t) {
  double worst = 0.0;
  for (const auto& p : qsim::PauliString::all_nonidentity(m + t))
    worst = std::max(worst, exact_detection_probability(m, t, p).epsilon());
  return worst;
}

}  // namespace mcdqc::authcode
