#include "mcdqc/dqc/session.hpp"

#include "mcdqc/qsim/clifford.hpp"

namespace mcdqc::dqc {

std::string to_string(Backend b) { return b == Backend::Ideal ? "ideal" : "clifford-auth"; }

Backend parse_backend(const std::string& text) {
  if (text == "ideal") return Backend::Ideal;
  if (text == "clifford-auth") return Backend::CliffordAuth;
  throw qsim::Error("unknown backend '" + text + "' (expected ideal or clifford-auth)");
}

std::string to_string(Site s) {
  switch (s) {
    case Site::Session: return "session";
    case Site::Route: return "route";
    case Site::Upload: return "upload";
    case Site::Resident: return "resident";
    case Site::Download: return "download";
  }
  return "?";
}

Site parse_site(const std::string& text) {
  for (auto s : {Site::Session, Site::Route, Site::Upload, Site::Resident, Site::Download})
    if (to_string(s) == text) return s;
  throw qsim::Error("unknown site '" + text + "' (expected session, route, upload, resident or download)");
}

std::string to_string(Failure f) {
  switch (f) {
    case Failure::None: return "none";
    case Failure::Verification: return "verification";
    case Failure::Authentication: return "authentication";
  }
  return "?";
}

std::string client_party(std::size_t client) { return "C" + std::to_string(client); }

qsim::CliffordElement session_clifford(std::size_t size, qsim::Coins& coins) {
  if (size == 0 || size > 6) throw qsim::BudgetError("session block of " + std::to_string(size) + " qubits");
  if (size <= 2) return qsim::sample_clifford(size, coins);
  return qsim::sample_clifford_any(size, coins);
}

}  // namespace mcdqc::dqc
