#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mcdqc/acframe/envelope.hpp"
#include "mcdqc/authcode/qas.hpp"
#include "mcdqc/qsim/gates.hpp"

namespace mcdqc::dqc {

enum class Backend { Ideal, CliffordAuth };

std::string to_string(Backend b);
/// "ideal" or "clifford-auth"; throws qsim::Error otherwise.
Backend parse_backend(const std::string& text);

struct BackendConfig {
  Backend kind = Backend::Ideal;
  std::size_t traps = 1;  // trap qubits per authenticated block
};

/// Where a dishonest server may act on quantum data it holds.
enum class Site {
  Session,   // during a BV-DQC or BB session
  Route,     // a common-qubit block passing through the server between clients
  Upload,    // the first encoded upload of a BB1 session
  Resident,  // a block kept at the server between BB rounds
  Download,  // the final block of a BB2 session on its way to the client
};

std::string to_string(Site s);
Site parse_site(const std::string& text);

struct SiteInfo {
  Site site = Site::Session;
  std::size_t client = 0;  // 1-based client the data belongs to
  std::size_t round = 0;   // 1-based round
  std::size_t peer = 0;    // receiving client for Route, 0 otherwise
};

/// The server's side of every session. The default is honest.
class ServerAdversary {
 public:
  virtual ~ServerAdversary() = default;
  /// f bit of an ideal-resource session; for the concrete backend a refusal
  /// to return the result.
  virtual bool flip_abort(const SiteInfo&, qsim::Coins&) { return false; }
  /// Chance to act on server-held qubits.
  virtual void on_quantum(const SiteInfo&, qsim::QuantumSubstrate&, const std::vector<qsim::QubitId>&, qsim::Coins&) {}
};

class HonestServer final : public ServerAdversary {};

inline constexpr const char* kServer = "S";

std::string client_party(std::size_t client);

/// psi_c = (rho_c, U) plus the bookkeeping of one delegation.
struct DqcSession {
  std::size_t client = 1;
  std::size_t round = 1;
  std::vector<qsim::QubitId> inputs;  // held by client_party(client)
  qsim::Circuit program;
  BackendConfig backend;
};

enum class Failure { None, Verification, Authentication };

std::string to_string(Failure f);

struct DqcOutcome {
  bool accepted = false;
  Failure failure = Failure::None;
  std::vector<qsim::QubitId> outputs;     // held by the client; empty on ERR
  std::vector<authcode::AuthKey> keys;    // BB roles only; empty on ERR
  std::optional<acframe::LeakRecord> leak;
};

/// Key for a concrete session block of `size` qubits: exactly uniform over
/// the group up to 2 qubits, the Pauli-invariant sampler up to 6.
qsim::CliffordElement session_clifford(std::size_t size, qsim::Coins& coins);

}  // namespace mcdqc::dqc
