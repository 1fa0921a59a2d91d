#pragma once

#include <cmath>

#include "mcdqc/qsim/coins.hpp"
#include "mcdqc/qsim/gates.hpp"
#include "mcdqc/qsim/linalg.hpp"
#include "mcdqc/qsim/substrate.hpp"

namespace test_support {

using namespace mcdqc::qsim;

inline double gaussian(SeededCoins& coins) {
  const double u1 = std::max(coins.unit(), 1e-300);
  const double u2 = coins.unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

/// Random mixed state: G G^dagger / tr for a complex Gaussian G.
inline Matrix random_density(std::size_t n, SeededCoins& coins) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  Matrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = Complex(gaussian(coins), gaussian(coins));
  Matrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

inline QuantumSubstrate random_substrate(std::size_t n, SeededCoins& coins) {
  return QuantumSubstrate::init_state({{random_density(n, coins), "C"}});
}

inline GateList random_gate_list(std::size_t width, std::size_t length, Coins& coins) {
  static const GateKind one[] = {GateKind::I, GateKind::X, GateKind::Y, GateKind::Z,
                                 GateKind::H, GateKind::S, GateKind::T};
  GateList g;
  for (std::size_t k = 0; k < length; ++k) {
    if (width >= 2 && coins.uniform(3) == 0) {
      const std::size_t a = coins.uniform(width);
      std::size_t b = coins.uniform(width - 1);
      if (b >= a) ++b;
      g.push(coins.uniform(2) ? GateKind::CNOT : GateKind::CZ, {a, b});
    } else {
      g.push(one[coins.uniform(7)], {coins.uniform(width)});
    }
  }
  return g;
}

}  // namespace test_support
