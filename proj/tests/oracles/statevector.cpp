#include "oracles/statevector.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace oracle {

namespace {

std::size_t bit(std::size_t index, std::size_t n, std::size_t q) { return (index >> (n - 1 - q)) & 1U; }

void one_qubit(StateVector& psi, std::size_t q, C a, C b, C c, C d) {
  const std::size_t stride = std::size_t{1} << (psi.n - 1 - q);
  for (std::size_t i = 0; i < psi.amp.size(); ++i) {
    if (i & stride) continue;
    const C x0 = psi.amp[i];
    const C x1 = psi.amp[i | stride];
    psi.amp[i] = a * x0 + b * x1;
    psi.amp[i | stride] = c * x0 + d * x1;
  }
}

}  // namespace

StateVector product_state(const std::string& letters) {
  StateVector psi;
  psi.n = letters.size();
  psi.amp.assign(std::size_t{1} << psi.n, C{1.0, 0.0});
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < psi.amp.size(); ++i) {
    for (std::size_t q = 0; q < psi.n; ++q) {
      const std::size_t b = bit(i, psi.n, q);
      switch (letters[q]) {
        case '0': psi.amp[i] *= b == 0 ? 1.0 : 0.0; break;
        case '1': psi.amp[i] *= b == 1 ? 1.0 : 0.0; break;
        case '+': psi.amp[i] *= r; break;
        case '-': psi.amp[i] *= b == 0 ? r : -r; break;
        default: throw std::invalid_argument("bad product-state letter");
      }
    }
  }
  return psi;
}

void apply(StateVector& psi, const std::string& gate, const std::vector<std::size_t>& t) {
  const double r = 1.0 / std::sqrt(2.0);
  const C i1{0.0, 1.0};
  if (gate == "I") return;
  if (gate == "X") return one_qubit(psi, t.at(0), 0, 1, 1, 0);
  if (gate == "Y") return one_qubit(psi, t.at(0), 0, -i1, i1, 0);
  if (gate == "Z") return one_qubit(psi, t.at(0), 1, 0, 0, -1);
  if (gate == "H") return one_qubit(psi, t.at(0), r, r, r, -r);
  if (gate == "S") return one_qubit(psi, t.at(0), 1, 0, 0, i1);
  if (gate == "T") return one_qubit(psi, t.at(0), 1, 0, 0, std::polar(1.0, M_PI / 4));
  if (gate == "CNOT" || gate == "CZ") {
    const std::size_t c = t.at(0), x = t.at(1);
    const std::size_t xs = std::size_t{1} << (psi.n - 1 - x);
    for (std::size_t i = 0; i < psi.amp.size(); ++i) {
      if (!bit(i, psi.n, c)) continue;
      if (gate == "CZ") {
        if (bit(i, psi.n, x)) psi.amp[i] = -psi.amp[i];
      } else if (!(i & xs)) {
        std::swap(psi.amp[i], psi.amp[i | xs]);
      }
    }
    return;
  }
  throw std::invalid_argument("oracle: unknown gate " + gate);
}

Eigen::MatrixXcd reduced_density(const StateVector& psi, const std::vector<std::size_t>& keep) {
  const std::size_t k = keep.size();
  const auto dk = static_cast<Eigen::Index>(std::size_t{1} << k);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk, dk);
  std::vector<char> kept(psi.n, 0);
  for (auto q : keep) kept[q] = 1;
  auto local = [&](std::size_t i) {
    std::size_t a = 0;
    for (std::size_t j = 0; j < k; ++j) a = (a << 1) | bit(i, psi.n, keep[j]);
    return a;
  };
  auto rest = [&](std::size_t i) {
    std::size_t r = 0;
    for (std::size_t q = 0; q < psi.n; ++q)
      if (!kept[q]) r = (r << 1) | bit(i, psi.n, q);
    return r;
  };
  for (std::size_t i = 0; i < psi.amp.size(); ++i)
    for (std::size_t j = 0; j < psi.amp.size(); ++j)
      if (rest(i) == rest(j))
        out(static_cast<Eigen::Index>(local(i)), static_cast<Eigen::Index>(local(j))) +=
            psi.amp[i] * std::conj(psi.amp[j]);
  return out;
}

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const Eigen::MatrixXcd d = a - b;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((d + d.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace oracle
