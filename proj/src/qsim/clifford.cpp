#include "mcdqc/qsim/clifford.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>

#include "mcdqc/qsim/gates.hpp"
#include "mcdqc/qsim/linalg.hpp"

namespace mcdqc::qsim {

namespace {

using Fingerprint = std::vector<long long>;

Fingerprint fingerprint(const Matrix& normalized) {
  Fingerprint fp;
  fp.reserve(static_cast<std::size_t>(normalized.size()) * 2);
  for (Eigen::Index k = 0; k < normalized.size(); ++k) {
    fp.push_back(std::llround(normalized.data()[k].real() * 1e6));
    fp.push_back(std::llround(normalized.data()[k].imag() * 1e6));
  }
  return fp;
}

std::vector<Matrix> generators(std::size_t n) {
  const Matrix& h = gate_matrix(GateKind::H);
  const Matrix& s = gate_matrix(GateKind::S);
  if (n == 1) return {h, s};
  const Matrix id = Matrix::Identity(2, 2);
  return {kron(h, id), kron(id, h), kron(s, id), kron(id, s), gate_matrix(GateKind::CNOT)};
}

std::vector<CliffordElement> build_group(std::size_t n) {
  const auto gens = generators(n);
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  std::map<Fingerprint, Matrix> seen;
  std::deque<Matrix> frontier;
  const Matrix id = Matrix::Identity(dim, dim);
  seen.emplace(fingerprint(id), id);
  frontier.push_back(id);
  while (!frontier.empty()) {
    const Matrix cur = frontier.front();
    frontier.pop_front();
    for (const auto& g : gens) {
      Matrix next = normalize_phase(g * cur);
      auto fp = fingerprint(next);
      if (seen.find(fp) == seen.end()) {
        seen.emplace(std::move(fp), next);
        frontier.push_back(std::move(next));
      }
    }
  }
  // std::map iteration is the canonical (lexicographic fingerprint) order
  std::vector<CliffordElement> out;
  out.reserve(seen.size());
  for (auto& [fp, m] : seen) out.push_back(CliffordElement{n, m, out.size()});
  if (out.size() != clifford_group_order(n))
    throw InvariantError("Clifford closure produced " + std::to_string(out.size()) + " elements");
  return out;
}

}  // namespace

std::size_t clifford_group_order(std::size_t n) {
  if (n == 1) return 24;
  if (n == 2) return 11520;
  throw Error("Clifford enumeration supports n in {1, 2}, got " + std::to_string(n));
}

Matrix normalize_phase(const Matrix& u) {
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    const Complex x = u.data()[k];
    if (std::abs(x) > 1e-6) return u * (std::abs(x) / x);
  }
  return u;
}

const std::vector<CliffordElement>& enumerate_clifford(std::size_t n) {
  clifford_group_order(n);  // validates n
  static const std::vector<CliffordElement> one = build_group(1);
  static const std::vector<CliffordElement> two = build_group(2);
  return n == 1 ? one : two;
}

std::size_t clifford_identity_index(std::size_t n) {
  const auto& group = enumerate_clifford(n);
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  const Matrix id = Matrix::Identity(dim, dim);
  for (const auto& c : group)
    if (max_abs_diff(c.unitary, id) < 1e-9) return c.index;
  throw InvariantError("identity missing from Clifford enumeration");
}

const CliffordElement& sample_clifford(std::size_t n, Coins& coins) {
  const auto& group = enumerate_clifford(n);
  return group[coins.uniform(group.size())];
}

CliffordElement sample_clifford_any(std::size_t n, Coins& coins) {
  if (n == 0 || n > 6) throw Error("sampled Clifford supports 1..6 qubits, got " + std::to_string(n));
  if (n <= 2) return sample_clifford(n, coins);
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  const auto& singles = enumerate_clifford(1);
  Matrix u = Matrix::Identity(dim, dim);
  const std::size_t layers = 2 * n + 2;
  std::vector<std::size_t> order(n);
  for (std::size_t layer = 0; layer < layers; ++layer) {
    for (std::size_t q = 0; q < n; ++q) {
      const auto& c = singles[coins.uniform(singles.size())];
      const Matrix op = embed(c.unitary, {q}, n);
      u = op * u;
    }
    // random disjoint CNOT pairs with random orientation
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t k = n; k > 1; --k) std::swap(order[k - 1], order[coins.uniform(k)]);
    for (std::size_t k = 0; k + 1 < n; k += 2) {
      std::vector<std::size_t> pair = {order[k], order[k + 1]};
      if (coins.uniform(2) == 1) std::swap(pair[0], pair[1]);
      u = embed(gate_matrix(GateKind::CNOT), pair, n) * u;
    }
  }
  const auto mask = PauliString::from_index(coins.uniform(std::size_t{1} << (2 * n)), n);
  u = mask.matrix() * u;
  return CliffordElement{n, normalize_phase(u), CliffordElement::kNoIndex};
}

PauliString conjugate(const Matrix& u, const PauliString& p) {
  return as_signed_pauli(u * p.matrix() * u.adjoint());
}

PauliString conjugate(const CliffordElement& c, const PauliString& p) {
  return conjugate(c.unitary, p);
}

bool is_clifford(const Matrix& u) {
  std::size_t n = 0;
  while ((Eigen::Index{1} << n) < u.rows()) ++n;
  if (!is_unitary(u)) return false;
  for (std::size_t q = 0; q < n; ++q) {
    for (auto letter : {PauliLetter::X, PauliLetter::Z}) {
      std::vector<PauliLetter> letters(n, PauliLetter::I);
      letters[q] = letter;
      try {
        (void)conjugate(u, PauliString(letters));
      } catch (const Error&) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace mcdqc::qsim
