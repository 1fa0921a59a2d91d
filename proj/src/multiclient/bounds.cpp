#include "mcdqc/multiclient/bounds.hpp"

#include "mcdqc/authcode/oracle.hpp"

namespace mcdqc::multiclient {

namespace {

void check_eps(double e, const char* name) {
  if (!(e >= 0.0 && e <= 1.0)) throw qsim::Error(std::string(name) + " must lie in [0, 1]");
}

}  // namespace

double error_bound(std::size_t n, std::size_t m, double eps_bv, double eps_qsec, double eps_bb, BoundVariant variant) {
  if (n < 1 || m < 1) throw qsim::Error("error_bound needs n >= 1 and m >= 1");
  check_eps(eps_bv, "eps_bv");
  check_eps(eps_qsec, "eps_qsec");
  check_eps(eps_bb, "eps_bb");
  const double nn = static_cast<double>(n), mm = static_cast<double>(m);
  const double channels = nn * (nn - 1) * (mm - 1) * eps_qsec;
  if (variant == BoundVariant::Protocol1) return mm * nn * eps_bv + channels;
  return mm * nn * eps_bb + channels + 2 * nn * eps_qsec;
}

double two_client_bound(double eps_bv, double eps_qsec, double eps_bb, BoundVariant variant) {
  check_eps(eps_bv, "eps_bv");
  check_eps(eps_qsec, "eps_qsec");
  check_eps(eps_bb, "eps_bb");
  if (variant == BoundVariant::Protocol1) return eps_qsec + 2 * eps_bv;
  return 2 * eps_bb + 3 * eps_qsec;
}

Epsilons pinned_epsilons(const dqc::BackendConfig& backend) {
  Epsilons e;
  e.qsec = authcode::kEpsilonQsec11;
  if (backend.kind == dqc::Backend::CliffordAuth) {
    e.bv = authcode::kEpsilonQsec11;
    e.bb = authcode::kEpsilonQsec11;
  }
  return e;
}

}  // namespace mcdqc::multiclient
