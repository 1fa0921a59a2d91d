#pragma once

#include <string>

#include "mcdqc/dqc/session.hpp"

namespace mcdqc::multiclient {

enum class BoundVariant { Protocol1, Protocol3 };

/// Protocol1: mn eps_bv + n(n-1)(m-1) eps_qsec.
/// Protocol3: mn eps_bb + n(n-1)(m-1) eps_qsec + 2n eps_qsec.
/// Throws qsim::Error for n or m below 1 or an epsilon outside [0, 1].
double error_bound(std::size_t n, std::size_t m, double eps_bv, double eps_qsec, double eps_bb, BoundVariant variant);

/// The two-client statements: eps_qsec + 2 eps_bv for the Protocol 1 instance
/// and 2 eps_bb + 3 eps_qsec for the Protocol 3 instance.
double two_client_bound(double eps_bv, double eps_qsec, double eps_bb, BoundVariant variant);

struct Epsilons {
  double bv = 0;
  double bb = 0;
  double qsec = 0;
};

/// Pinned per-subprotocol errors. The channel code is the one-trap Clifford
/// code on every backend; the ideal backend's sessions are exact.
Epsilons pinned_epsilons(const dqc::BackendConfig& backend);

}  // namespace mcdqc::multiclient
